import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00144', methods=['GET', 'POST'])
def BenchmarkTest00144():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    nodes = root.xpath("/users/user[@id=$id]", id=param)
    return 'ok'
