import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00619', methods=['GET', 'POST'])
def BenchmarkTest00619():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    mode = 0755
    obj = json.loads(param)
    return 'ok'
