import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest01123', methods=['GET', 'POST'])
def BenchmarkTest01123():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    doc = lxml.etree.fromstring(param)
    return 'ok'
