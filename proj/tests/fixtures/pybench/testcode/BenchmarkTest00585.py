import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00585', methods=['GET', 'POST'])
def BenchmarkTest00585():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    try:
        output = subprocess.run(["ls", param], capture_output=True).stdout
    except ValueError, err:
        return str(err)
    return 'ok'
