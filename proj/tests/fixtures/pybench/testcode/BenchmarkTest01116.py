import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest01116', methods=['GET', 'POST'])
def BenchmarkTest01116():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    print "value: %s" % param
    digest = hashlib.md5(param.encode()).hexdigest()
    return 'ok'
