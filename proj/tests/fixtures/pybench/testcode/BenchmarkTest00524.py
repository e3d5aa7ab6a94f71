import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00524', methods=['GET', 'POST'])
def BenchmarkTest00524():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    return flask.redirect(param)
