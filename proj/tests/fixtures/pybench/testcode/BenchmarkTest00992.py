import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00992', methods=['GET', 'POST'])
def BenchmarkTest00992():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    print "value: %s" % param
    session["userid"] = "constant"
    return 'ok'
