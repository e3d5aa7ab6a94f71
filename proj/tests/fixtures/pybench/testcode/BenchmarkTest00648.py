import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00648', methods=['GET', 'POST'])
def BenchmarkTest00648():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    return "<p>" + param + "</p>"
