import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00602', methods=['GET', 'POST'])
def BenchmarkTest00602():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    response.set_cookie("session", param, secure=True, httponly=True)
    return 'ok'
