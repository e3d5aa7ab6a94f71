import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest00407', methods=['GET', 'POST'])
def BenchmarkTest00407():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    return flask.redirect("/home")
