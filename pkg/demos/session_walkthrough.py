"""Drive the HTTP session service end to end: the five-step pentagon walk.

Starts the service on a free port, creates a session on the A2 seed,
records one generator step, classifies it, completes the walk, and shows
the state returning to its exact starting fingerprint.
"""

import json
import threading
import urllib.request

from clustermod.service import make_server

server = make_server(port=0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = "http://127.0.0.1:%d" % server.server_address[1]
print("service at", base)


def call(method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


doc = call("POST", "/api/session", {"catalog": "a2"})
sid = doc["session"]
initial = doc["state"]
print("session", sid, "A-values", initial["a_values"], "X-values", initial["x_values"])

call("POST", "/api/session/%s/mutate" % sid, {"vertex": 0})
state = call("POST", "/api/session/%s/permute" % sid, {"cycles": "(0 1)"})
print("after one generator step, recorded word:", repr(state["word"]))

report = call("POST", "/api/session/%s/classify" % sid, {"budgets": {"max_order": 64}})
print("classify:", report["text"])

for _ in range(4):
    call("POST", "/api/session/%s/mutate" % sid, {"vertex": 0})
    state = call("POST", "/api/session/%s/permute" % sid, {"cycles": "(0 1)"})

print("after the full five-step walk:")
print("  word:", repr(state["word"]))
print("  A-values back to start:", state["a_values"] == initial["a_values"])
print("  X-values back to start:", state["x_values"] == initial["x_values"])
print("  seed back to start:", state["seed"] == initial["seed"])

orbit = call("GET", "/api/session/%s/orbit?flavor=x&steps=5" % sid)
print("orbit of the recorded (now trivial) word is constant:",
      all(row["coords"] == orbit["orbit"][0]["coords"] for row in orbit["orbit"]))

server.shutdown()
