import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00497', methods=['GET', 'POST'])
def BenchmarkTest00497():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    return "<p>" + html.escape(param) + "</p>"
