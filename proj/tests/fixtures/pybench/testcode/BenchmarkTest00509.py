import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00509', methods=['GET', 'POST'])
def BenchmarkTest00509():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    path = os.path.join(BASE_DIR, param)
    return 'ok'
