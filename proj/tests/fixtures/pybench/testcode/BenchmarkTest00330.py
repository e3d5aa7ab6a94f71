import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00330', methods=['GET', 'POST'])
def BenchmarkTest00330():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    session["userid"] = param
    return 'ok'
