import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00866', methods=['GET', 'POST'])
def BenchmarkTest00866():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    result = ast.literal_eval(param)
    return 'ok'
