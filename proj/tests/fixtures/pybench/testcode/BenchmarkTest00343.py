import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00343', methods=['GET', 'POST'])
def BenchmarkTest00343():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    output = os.popen("ls " + param).read()
    return 'ok'
