import base64, hashlib, html, json, os, random, secrets, subprocess
import flask

BASE_DIR = '/srv/testfiles'


@app.route('/BenchmarkTest01186', methods=['GET', 'POST'])
def BenchmarkTest01186():
    param = flask.request.args.get('param', '')
    if not param:
        param = 'default'
    cur.execute("SELECT * FROM users WHERE name = ?", (param,))
    return 'ok'
