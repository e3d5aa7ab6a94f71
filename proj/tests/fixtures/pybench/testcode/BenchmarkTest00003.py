import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00003', methods=['GET', 'POST'])
def BenchmarkTest00003():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    value = secrets.randbelow(100)
    return 'ok'
