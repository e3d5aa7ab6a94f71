import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00174', methods=['GET', 'POST'])
def BenchmarkTest00174():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    return "<p>" + html.escape(param) + "</p>"
