import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00159', methods=['GET', 'POST'])
def BenchmarkTest00159():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    path = os.path.join(BASE_DIR, "safe.txt")
    return 'ok'
