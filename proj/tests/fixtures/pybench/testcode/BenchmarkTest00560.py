import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00560', methods=['GET', 'POST'])
def BenchmarkTest00560():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    doc = lxml.etree.fromstring(param)
    return 'ok'
