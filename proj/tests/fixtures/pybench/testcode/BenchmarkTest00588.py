import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00588', methods=['GET', 'POST'])
def BenchmarkTest00588():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    return "<p>" + param + "</p>"
