import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00847', methods=['GET', 'POST'])
def BenchmarkTest00847():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    mode = 0755
    value = random.random()
    return 'ok'
