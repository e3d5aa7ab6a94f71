import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00555', methods=['GET', 'POST'])
def BenchmarkTest00555():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    obj = pickle.loads(base64.b64decode(param))
    return 'ok'
