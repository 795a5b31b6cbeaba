"""JSON-over-HTTP service around a bundle.

Reads are unrestricted and always see a consistent snapshot; state
mutation (revise/reinstate) is single-writer per state and answers 409
when a writer already holds the state, rather than queueing. What-if
evaluation never touches the store: overrides are applied to copies and
the fresh result is returned. Every response carries the engine version
and the current bundle content hash.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any, Optional
from urllib.parse import parse_qs, urlparse

from . import __version__
from .bundle import Bundle, bundle_hash, canonical_json
from .diagnostics import SessionEvent, SessionLog, diagnose, insularity
from .evaluation import InvalidLatticeError, UnknownSourceError, evaluate
from .foundations import FOUNDATION_NAMES, FoundationVector
from .model import AgentProfile, TrustPolicy
from .moral import compute_footprint
from .recommend import recommend_authorities
from .revision import MergeError, NewInformation, ReinstateError, reinstate, revise


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message
        super().__init__(message)


class BundleStore:
    """Holds the live bundle and enforces the write contract."""

    def __init__(self, bundle: Bundle):
        self._bundle = bundle
        self._hash = bundle_hash(bundle)
        self._swap_lock = threading.Lock()
        self._state_locks: dict[str, threading.Lock] = {}
        self._session_lock = threading.Lock()

    def snapshot(self) -> tuple[Bundle, str]:
        return self._bundle, self._hash

    def state_lock(self, state_id: str) -> threading.Lock:
        with self._swap_lock:
            return self._state_locks.setdefault(state_id, threading.Lock())

    def replace_state(self, state) -> None:
        with self._swap_lock:
            old = self._bundle
            states = dict(old.states)
            states[state.id] = state
            self._bundle = replace(old, states=states)
            self._hash = bundle_hash(self._bundle)

    def replace_session(self, session: SessionLog) -> None:
        with self._swap_lock:
            old = self._bundle
            sessions = dict(old.sessions)
            sessions[session.id] = session
            self._bundle = replace(old, sessions=sessions)
            self._hash = bundle_hash(self._bundle)


def _override_profile(profile: AgentProfile, body: dict) -> AgentProfile:
    weights = profile.foundation_weights
    if "foundation_weights" in body:
        fw = body["foundation_weights"]
        if not isinstance(fw, dict):
            raise ApiError(400, "foundation_weights: expected object")
        merged = weights.to_dict()
        for k, v in fw.items():
            if k not in FOUNDATION_NAMES:
                raise ApiError(400, f"foundation_weights.{k}: unknown foundation")
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ApiError(400, f"foundation_weights.{k}: expected number")
            merged[k] = float(v)
        try:
            weights = FoundationVector.from_dict(merged)
        except ValueError as exc:
            raise ApiError(400, f"foundation_weights: {exc}") from exc

    source_trust = {sid: dict(entry) for sid, entry in profile.source_trust.items()}
    if "source_trust" in body:
        st = body["source_trust"]
        if not isinstance(st, dict):
            raise ApiError(400, "source_trust: expected object")
        for sid, v in st.items():
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                source_trust[sid] = {"default": float(v)}
            elif isinstance(v, dict):
                source_trust[sid] = {d: float(x) for d, x in v.items()}
            else:
                raise ApiError(400, f"source_trust.{sid}: expected number or object")

    try:
        return AgentProfile(
            id=profile.id,
            foundation_weights=weights,
            beliefs=dict(profile.beliefs),
            pretrusted=dict(profile.pretrusted),
            source_trust=source_trust,
            competence_domains=profile.competence_domains,
            bias_dispositions=profile.bias_dispositions,
        )
    except ValueError as exc:
        raise ApiError(400, f"source_trust: {exc}") from exc


_POLICY_FIELDS = {"tau", "lambda", "prior", "uncommitted", "ingest_threshold"}


def _override_policy(policy: TrustPolicy, body: dict) -> TrustPolicy:
    kwargs = {}
    for key in _POLICY_FIELDS & set(body):
        v = body[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ApiError(400, f"{key}: expected number")
        kwargs["lambda_" if key == "lambda" else key] = float(v)
    if not kwargs:
        return policy
    try:
        return replace(policy, **kwargs)
    except ValueError as exc:
        raise ApiError(400, str(exc)) from exc


_ALLOWED_OVERRIDES = {"foundation_weights", "source_trust"} | _POLICY_FIELDS


class Api:
    """Transport-independent endpoint logic; handlers return JSON payloads."""

    def __init__(self, store: BundleStore):
        self.store = store

    # -- reads --------------------------------------------------------------

    def list_lattices(self) -> list[dict]:
        bundle, _ = self.store.snapshot()
        out = []
        for sid in sorted(bundle.states):
            st = bundle.states[sid]
            out.append({
                "state_id": sid,
                "lattice_id": st.lattice.id,
                "target_claim_id": st.lattice.target_claim_id,
                "node_count": len(st.lattice.nodes),
                "profile": st.profile_id,
                "policy": st.policy_id,
            })
        return out

    def _find_state(self, bundle: Bundle, lattice_id: str):
        st = bundle.state_for_lattice(lattice_id)
        if st is None:
            raise ApiError(404, f"unknown lattice {lattice_id!r}")
        return st

    def get_lattice(self, lattice_id: str) -> dict:
        bundle, _ = self.store.snapshot()
        st = self._find_state(bundle, lattice_id)
        return {
            "lattice": st.lattice.to_dict(),
            "evaluation": st.evaluation.to_dict(),
            "profile": st.profile_id,
            "policy": st.policy_id,
        }

    def whatif(self, lattice_id: str, body: dict) -> dict:
        bundle, _ = self.store.snapshot()
        st = self._find_state(bundle, lattice_id)
        if not isinstance(body, dict):
            raise ApiError(400, "override body must be an object")
        unknown = set(body) - _ALLOWED_OVERRIDES
        if unknown:
            raise ApiError(400, f"unknown override fields: {sorted(unknown)}")
        profile = _override_profile(bundle.profile(st.profile_id), body)
        policy = _override_policy(bundle.policy(st.policy_id), body)
        try:
            result = evaluate(st.lattice, profile, bundle.sources, policy, bundle.lexicon)
        except (InvalidLatticeError, UnknownSourceError) as exc:
            raise ApiError(400, str(exc)) from exc
        return {"lattice_id": st.lattice.id, "evaluation": result.to_dict()}

    def nudges(self, session_id: str) -> dict:
        bundle, _ = self.store.snapshot()
        session = bundle.sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id!r}")
        lattice = None
        profile = None
        policy = None
        topic = None
        if session.lattice_id:
            st = bundle.state_for_lattice(session.lattice_id)
            if st is not None:
                lattice = st.lattice
                profile = bundle.profiles.get(session.profile_id or st.profile_id)
                policy = bundle.policies.get(session.policy_id or st.policy_id)
                target = lattice.nodes.get(lattice.target_claim_id)
                if target is not None:
                    topic = target.first_topic()
        flags = diagnose(session, lattice, bundle.sources, profile, policy)
        nudges = [
            {
                "kind": f.kind,
                "severity": f.severity,
                "mevir_diagnosis": f.mevir_diagnosis,
                "message": f.explanation,
                "subject_ids": list(f.subject_ids),
                "recommend_topic": topic,
            }
            for f in flags
        ]
        payload: dict = {"session_id": session_id, "nudges": nudges}
        if lattice is not None:
            payload["insularity"] = insularity(lattice, bundle.sources)
        return payload

    def recommend(self, query: dict) -> dict:
        bundle, _ = self.store.snapshot()
        topic = query.get("topic")
        if not topic:
            raise ApiError(400, "topic: required query parameter")
        try:
            k = int(query.get("k", 3))
            min_reputation = float(query.get("min_reputation", 0.5))
        except ValueError as exc:
            raise ApiError(400, f"bad query parameter: {exc}") from exc
        if k < 1:
            raise ApiError(400, "k: must be >= 1")
        ids = recommend_authorities(topic, bundle.sources, k=k, min_reputation=min_reputation)
        return {"topic": topic, "recommendations": ids}

    def footprint(self, query: dict) -> dict:
        bundle, _ = self.store.snapshot()
        if "text" not in query:
            raise ApiError(400, "text: required query parameter")
        if bundle.lexicon is None:
            raise ApiError(400, "bundle has no lexicon")
        return compute_footprint(query["text"], bundle.lexicon).to_dict()

    # -- writes -------------------------------------------------------------

    def revise(self, state_id: str, body: dict) -> dict:
        bundle, _ = self.store.snapshot()
        st = bundle.states.get(state_id)
        if st is None:
            raise ApiError(404, f"unknown state {state_id!r}")
        try:
            info = NewInformation.from_dict(body)
        except (ValueError, KeyError, TypeError) as exc:
            raise ApiError(400, f"invalid new-information body: {exc}") from exc
        lock = self.store.state_lock(state_id)
        if not lock.acquire(blocking=False):
            raise ApiError(409, f"state {state_id!r} is being revised by another writer")
        try:
            bundle, _ = self.store.snapshot()
            st = bundle.states[state_id]
            profile = bundle.profile(st.profile_id)
            policy = bundle.policy(st.policy_id)
            try:
                new_state = revise(st, info, profile, bundle.sources, policy, bundle.lexicon)
            except (MergeError, UnknownSourceError, InvalidLatticeError) as exc:
                raise ApiError(400, str(exc)) from exc
            self.store.replace_state(new_state)
        finally:
            lock.release()
        entry = new_state.revision_log[-1]
        return {"state": new_state.to_dict(), "entry": entry.to_dict()}

    def reinstate(self, state_id: str, body: dict) -> dict:
        bundle, _ = self.store.snapshot()
        st = bundle.states.get(state_id)
        if st is None:
            raise ApiError(404, f"unknown state {state_id!r}")
        if not isinstance(body, dict) or "revision_id" not in body:
            raise ApiError(400, "revision_id: required")
        revision_id = body["revision_id"]
        if isinstance(revision_id, bool) or not isinstance(revision_id, int):
            raise ApiError(400, "revision_id: expected integer")
        lock = self.store.state_lock(state_id)
        if not lock.acquire(blocking=False):
            raise ApiError(409, f"state {state_id!r} is being revised by another writer")
        try:
            bundle, _ = self.store.snapshot()
            st = bundle.states[state_id]
            profile = bundle.profile(st.profile_id)
            policy = bundle.policy(st.policy_id)
            try:
                new_state = reinstate(st, revision_id, profile, bundle.sources, policy, bundle.lexicon)
            except ReinstateError as exc:
                raise ApiError(400, str(exc)) from exc
            self.store.replace_state(new_state)
        finally:
            lock.release()
        return {"state": new_state.to_dict()}

    def append_events(self, session_id: str, body: dict) -> dict:
        bundle, _ = self.store.snapshot()
        session = bundle.sessions.get(session_id)
        if session is None:
            raise ApiError(404, f"unknown session {session_id!r}")
        if not isinstance(body, dict) or not isinstance(body.get("events"), list):
            raise ApiError(400, "events: required array")
        with self.store._session_lock:
            bundle, _ = self.store.snapshot()
            session = bundle.sessions[session_id]
            try:
                new_events = tuple(SessionEvent.from_dict(e) for e in body["events"])
                updated = SessionLog(
                    id=session.id,
                    events=session.events + new_events,
                    lattice_id=session.lattice_id,
                    profile_id=session.profile_id,
                    policy_id=session.policy_id,
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise ApiError(400, f"invalid events: {exc}") from exc
            for ev in new_events:
                if ev.kind == "consulted" and ev.source_id not in bundle.sources:
                    raise ApiError(400, f"events: dangling reference: source {ev.source_id!r}")
            self.store.replace_session(updated)
        return {"session": updated.to_dict()}


_ROUTES: list[tuple[str, re.Pattern, str]] = [
    ("GET", re.compile(r"^/api/lattices$"), "list_lattices"),
    ("GET", re.compile(r"^/api/lattices/(?P<id>[^/]+)$"), "get_lattice"),
    ("POST", re.compile(r"^/api/lattices/(?P<id>[^/]+)/evaluate$"), "whatif"),
    ("POST", re.compile(r"^/api/states/(?P<id>[^/]+)/revise$"), "revise"),
    ("POST", re.compile(r"^/api/states/(?P<id>[^/]+)/reinstate$"), "reinstate"),
    ("GET", re.compile(r"^/api/sessions/(?P<id>[^/]+)/nudges$"), "nudges"),
    ("POST", re.compile(r"^/api/sessions/(?P<id>[^/]+)/events$"), "append_events"),
    ("GET", re.compile(r"^/api/recommend$"), "recommend"),
    ("GET", re.compile(r"^/api/footprint$"), "footprint"),
]


def _dispatch(api: Api, method: str, path: str, query: dict, body: Optional[dict]) -> Any:
    for verb, pattern, name in _ROUTES:
        m = pattern.match(path)
        if not m:
            continue
        if verb != method:
            raise ApiError(405, f"method {method} not allowed on {path}")
        handler = getattr(api, name)
        ident = m.groupdict().get("id")
        if name in ("recommend", "footprint"):
            return handler(query)
        if name == "list_lattices":
            return handler()
        if name in ("get_lattice", "nudges"):
            return handler(ident)
        return handler(ident, body if body is not None else {})
    raise ApiError(404, f"no such endpoint: {path}")


class _Handler(BaseHTTPRequestHandler):
    api: Api  # set by make_server
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _respond(self, status: int, payload: Any) -> None:
        _, digest = self.api.store.snapshot()
        doc = {
            "engine_version": __version__,
            "bundle_hash": digest,
        }
        if status < 400:
            doc["result"] = payload
        else:
            doc["error"] = payload
        body = canonical_json(doc)
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _handle(self, method: str) -> None:
        parsed = urlparse(self.path)
        query = {k: v[0] for k, v in parse_qs(parsed.query, keep_blank_values=True).items()}
        body = None
        if method == "POST":
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b"{}"
            try:
                body = json.loads(raw or b"{}")
            except json.JSONDecodeError as exc:
                self._respond(400, {"message": f"malformed JSON body: {exc.msg}"})
                return
        try:
            result = _dispatch(self.api, method, parsed.path, query, body)
        except ApiError as exc:
            self._respond(exc.status, {"message": exc.message})
            return
        self._respond(200, result)

    def do_GET(self):
        self._handle("GET")

    def do_POST(self):
        self._handle("POST")

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()


def make_server(bundle: Bundle, port: int = 8340, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    store = BundleStore(bundle)
    api = Api(store)
    handler = type("BoundHandler", (_Handler,), {"api": api})
    server = ThreadingHTTPServer((host, port), handler)
    server.api = api  # type: ignore[attr-defined]
    return server


def serve(bundle: Bundle, port: int = 8340, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted."""
    server = make_server(bundle, port=port, host=host)
    print(f"mevir service on http://{host}:{server.server_address[1]}/api/lattices")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
