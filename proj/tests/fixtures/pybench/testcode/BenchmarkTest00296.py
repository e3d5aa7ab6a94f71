import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00296', methods=['GET', 'POST'])
def BenchmarkTest00296():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    response.set_cookie("session", param)
    return 'ok'
