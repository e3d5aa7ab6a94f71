import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00194', methods=['GET', 'POST'])
def BenchmarkTest00194():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    doc = defusedxml.ElementTree.fromstring(param)
    return 'ok'
