import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00593', methods=['GET', 'POST'])
def BenchmarkTest00593():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    obj = json.loads(param)
    return 'ok'
