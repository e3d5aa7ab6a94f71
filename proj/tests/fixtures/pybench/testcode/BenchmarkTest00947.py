import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00947', methods=['GET', 'POST'])
def BenchmarkTest00947():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    digest = hashlib.md5(param.encode()).hexdigest()
    return 'ok'
