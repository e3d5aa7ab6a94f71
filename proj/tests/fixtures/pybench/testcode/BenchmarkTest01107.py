import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest01107', methods=['GET', 'POST'])
def BenchmarkTest01107():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    value = random.random()
    return 'ok'
