import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00178', methods=['GET', 'POST'])
def BenchmarkTest00178():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    result = eval(param)
    return 'ok'
