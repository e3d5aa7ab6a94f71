import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest01201', methods=['GET', 'POST'])
def BenchmarkTest01201():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    digest = hashlib.sha256(param.encode()).hexdigest()
    return 'ok'
