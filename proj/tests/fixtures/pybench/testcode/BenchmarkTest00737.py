import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00737', methods=['GET', 'POST'])
def BenchmarkTest00737():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    try:
        value = random.random()
    except ValueError, err:
        return str(err)
    return 'ok'
