import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00791', methods=['GET', 'POST'])
def BenchmarkTest00791():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    digest = hashlib.sha256(param.encode()).hexdigest()
    return 'ok'
