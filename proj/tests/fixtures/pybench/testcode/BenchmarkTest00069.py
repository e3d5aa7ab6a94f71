import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00069', methods=['GET', 'POST'])
def BenchmarkTest00069():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    try:
        digest = hashlib.sha256(param.encode()).hexdigest()
    except ValueError, err:
        return str(err)
    return 'ok'
