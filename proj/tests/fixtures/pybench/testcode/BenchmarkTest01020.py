import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest01020', methods=['GET', 'POST'])
def BenchmarkTest01020():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    query = "(uid=" + param + ")"
    return 'ok'
