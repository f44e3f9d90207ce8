"""Local HTTP session service driving the interactive mutation UI.

In-memory sessions only; state is a recorded word over an initial seed, and
replaying that word always reproduces the current state.  Requests within a
session are serialized through a per-session lock.
"""

from __future__ import annotations

import json
import threading
import uuid
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import documents as docs
from .catalog import catalog, catalog_names
from .classify import ClassifyBudgets, classify
from .dynamics import PRIMES, apply_word, base_points, permute_point
from .dynamics import a_mutate_point, x_mutate_point
from .errors import ClusterError, FrozenVertex, ParseError, UnknownName, ValidationError
from .seeds import MappingClassWord, Seed, apply_word_to_seed, compose_words, is_mapping_class, mutate, relabel
from .tropical import TropicalPoint, apply_word_tropical


def quiver_doc(seed: Seed) -> dict:
    arrows = []
    n = seed.rank
    for i in range(n):
        for j in range(n):
            e = seed.epsilon[i][j]
            if e > 0:
                arrows.append(
                    {"from": seed.vertices[i], "to": seed.vertices[j], "weight": docs.rat_str(e)}
                )
    return {
        "vertices": list(seed.vertices),
        "frozen": sorted(seed.frozen, key=str),
        "arrows": arrows,
    }


class Session:
    def __init__(self, seed: Seed):
        self.id = uuid.uuid4().hex[:12]
        self.initial_seed = seed
        self.seed = seed
        self.word = MappingClassWord.make()
        self.a_values = base_points(seed, "A", 1)[0]
        self.x_values = base_points(seed, "X", 1)[0]
        self.undo_stack = []
        self.lock = threading.Lock()

    def snapshot(self):
        self.undo_stack.append((self.seed, self.word, self.a_values, self.x_values))

    def state_doc(self) -> dict:
        return {
            "session": self.id,
            "seed": docs.emit_seed(self.seed),
            "quiver": quiver_doc(self.seed),
            "word": docs.emit_word(self.word),
            "a_values": [docs.rat_str(c) for c in self.a_values.coords],
            "x_values": [docs.rat_str(c) for c in self.x_values.coords],
            "is_mapping_class": is_mapping_class(self.initial_seed, self.word),
            "undo_depth": len(self.undo_stack),
        }

    def mutate(self, vertex):
        resolved = None
        for v in self.seed.vertices:
            if v == vertex or str(v) == str(vertex):
                resolved = v
                break
        if resolved is None:
            raise ClusterError("unknown vertex %r" % (vertex,))
        if resolved in self.seed.frozen:
            raise FrozenVertex("FrozenVertex: %r" % (vertex,))
        self.snapshot()
        self.a_values = a_mutate_point(self.seed, resolved, self.a_values)
        self.x_values = x_mutate_point(self.seed, resolved, self.x_values)
        self.seed = mutate(self.seed, resolved)
        self.word = compose_words(self.word, MappingClassWord.make([resolved]))

    def permute(self, cycles_text):
        sigma_word = docs.parse_word("perm %s" % cycles_text, self.seed)
        sigma = sigma_word.sigma
        self.snapshot()
        self.a_values = permute_point(self.seed, sigma, self.a_values)
        self.x_values = permute_point(self.seed, sigma, self.x_values)
        self.seed = relabel(self.seed, sigma)
        self.word = compose_words(self.word, MappingClassWord.make((), sigma))

    def undo(self):
        if not self.undo_stack:
            raise ClusterError("nothing to undo")
        self.seed, self.word, self.a_values, self.x_values = self.undo_stack.pop()


class Service:
    def __init__(self):
        self.sessions = {}
        self.lock = threading.Lock()

    def create(self, seed: Seed) -> Session:
        session = Session(seed)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.lock:
            return self.sessions.get(session_id)


class _Handler(BaseHTTPRequestHandler):
    service: Service = None

    def log_message(self, *args):  # quiet by default
        pass

    def _send(self, status: int, doc):
        body = json.dumps(doc, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _body(self):
        length = int(self.headers.get("Content-Length") or 0)
        if not length:
            return {}
        try:
            return json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError:
            raise ParseError("request body is not JSON")

    def _session(self, session_id):
        session = self.service.get(session_id)
        if session is None:
            self._send(404, {"error": "unknown session %s" % session_id})
        return session

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts == ["api", "catalog"]:
                return self._send(200, {"names": list(catalog_names())})
            if len(parts) == 4 and parts[:2] == ["api", "session"] and parts[3] == "state":
                session = self._session(parts[2])
                if session is None:
                    return
                with session.lock:
                    return self._send(200, session.state_doc())
            if len(parts) == 4 and parts[:2] == ["api", "session"] and parts[3] == "orbit":
                session = self._session(parts[2])
                if session is None:
                    return
                query = parse_qs(url.query)
                flavor = query.get("flavor", ["x"])[0]
                steps = int(query.get("steps", ["10"])[0])
                if steps < 0 or steps > 10_000:
                    return self._send(400, {"error": "steps out of range"})
                with session.lock:
                    return self._orbit(session, flavor, steps)
            return self._send(404, {"error": "no such endpoint"})
        except ClusterError as exc:
            return self._send(400, {"error": str(exc)})

    def _orbit(self, session: Session, flavor: str, steps: int):
        seed = session.initial_seed
        word = session.word
        if not is_mapping_class(seed, word):
            return self._send(400, {"error": "NotMappingClass: orbit needs an epsilon-preserving word"})
        rows = []
        if flavor in ("a", "x"):
            cur = base_points(seed, flavor.upper(), 1)[0]
            for step in range(steps + 1):
                rows.append({"step": step, "coords": [docs.rat_str(c) for c in cur.coords]})
                if step < steps:
                    cur = apply_word(seed, word, cur)
        elif flavor == "trop":
            n = seed.mutable_rank
            cur = TropicalPoint("X", tuple(Fraction(PRIMES[i]) for i in range(n)), ())
            for step in range(steps + 1):
                rows.append({"step": step, "coords": [docs.rat_str(c) for c in cur.coords]})
                if step < steps:
                    cur = apply_word_tropical(seed, word, cur)
        else:
            return self._send(400, {"error": "flavor must be a, x or trop"})
        return self._send(200, {"flavor": flavor, "steps": steps, "orbit": rows})

    def do_POST(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts == ["api", "session"]:
                return self._create_session()
            if len(parts) == 4 and parts[:2] == ["api", "session"]:
                session = self._session(parts[2])
                if session is None:
                    return
                action = parts[3]
                body = self._body()
                with session.lock:
                    if action == "mutate":
                        session.mutate(body.get("vertex"))
                        return self._send(200, session.state_doc())
                    if action == "permute":
                        session.permute(body.get("cycles", ""))
                        return self._send(200, session.state_doc())
                    if action == "undo":
                        session.undo()
                        return self._send(200, session.state_doc())
                    if action == "classify":
                        return self._classify(session, body)
            return self._send(404, {"error": "no such endpoint"})
        except (FrozenVertex,) as exc:
            return self._send(400, {"error": "FrozenVertex", "detail": str(exc)})
        except ClusterError as exc:
            return self._send(400, {"error": str(exc)})

    def _create_session(self):
        body = self._body()
        try:
            if "catalog" in body:
                seed = catalog(body["catalog"]).seed
            else:
                seed = docs.parse_seed(body)
        except (UnknownName, ParseError, ValidationError) as exc:
            return self._send(400, {"error": str(exc)})
        session = self.service.create(seed)
        doc = session.state_doc()
        return self._send(200, {"session": session.id, "state": doc})

    def _classify(self, session: Session, body):
        seed = session.initial_seed
        word = session.word
        if not is_mapping_class(seed, word):
            out = apply_word_to_seed(seed, word)
            diff = [
                {
                    "i": seed.vertices[i],
                    "j": seed.vertices[j],
                    "expected": docs.rat_str(seed.epsilon[i][j]),
                    "got": docs.rat_str(out.epsilon[i][j]),
                }
                for i in range(seed.rank)
                for j in range(seed.rank)
                if seed.epsilon[i][j] != out.epsilon[i][j]
            ]
            return self._send(400, {"error": "NotMappingClass", "epsilon_diff": diff})
        budgets_body = body.get("budgets", {}) or {}
        budgets = ClassifyBudgets(
            max_order=int(budgets_body.get("max_order", 1024)),
            max_power=int(budgets_body.get("max_power", 64)),
            tropical_iters=int(budgets_body.get("tropical_iters", 500)),
        )
        report = classify(seed, word, budgets)
        doc = docs.report_doc(report)
        doc["text"] = docs.report_text(report)
        if report.verdict == "inconclusive":
            return self._send(409, doc)
        return self._send(200, doc)


def make_server(host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    service = Service()
    handler = type("Handler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def run(host: str = "127.0.0.1", port: int = 8763):
    server = make_server(host, port)
    print("clustermod service on http://%s:%d" % server.server_address)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
