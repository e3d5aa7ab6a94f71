import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00452', methods=['GET', 'POST'])
def BenchmarkTest00452():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    print "value: %s" % param
    obj = pickle.loads(base64.b64decode(param))
    return 'ok'
