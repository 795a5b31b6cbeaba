#!/usr/bin/env python3
"""Records real service responses for the workbench test suite.

Boots the HTTP service in-process on an ephemeral port, replays the
requests the workbench makes, and freezes the raw response documents
(envelopes included) into frontend/tests/fixtures/payloads.json. The
frontend tests then run against genuine engine output without needing a
live Python process.
"""

from __future__ import annotations

import json
import os
import sys
import threading
import urllib.request

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from mevir.fixtures import load_fixture
from mevir.server import make_server

OUT = os.path.join(os.path.dirname(__file__), "..", "frontend", "tests", "fixtures")

FLIP_OVERRIDES = {
    "lambda": 1.0,
    "foundation_weights": {"care": 0.9, "authority": 0.8, "liberty": 0.05, "purity": 0.05},
    "source_trust": {"who": 0.95, "voz-livre": 0.05},
}


def record(server, method: str, path: str, body=None):
    base = f"http://127.0.0.1:{server.server_address[1]}"
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"} if data else {})
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return {"status": resp.status, "body": json.loads(resp.read())}
    except urllib.error.HTTPError as exc:
        return {"status": exc.code, "body": json.loads(exc.read())}


def main() -> None:
    os.makedirs(OUT, exist_ok=True)
    payloads: dict[str, dict] = {}

    vaccine = make_server(load_fixture("vaccine.json"), port=0)
    t = threading.Thread(target=vaccine.serve_forever, daemon=True)
    t.start()
    try:
        payloads["lattices"] = record(vaccine, "GET", "/api/lattices")
        payloads["lattice_vaccine"] = record(vaccine, "GET", "/api/lattices/lat-vx-central")
        payloads["whatif_empty"] = record(vaccine, "POST", "/api/lattices/lat-vx-central/evaluate", {})
        payloads["whatif_flip"] = record(
            vaccine, "POST", "/api/lattices/lat-vx-central/evaluate", FLIP_OVERRIDES)
        payloads["whatif_bad_weight"] = record(
            vaccine, "POST", "/api/lattices/lat-vx-central/evaluate",
            {"foundation_weights": {"care": 2.0}})
        payloads["whatif_tau99"] = record(
            vaccine, "POST", "/api/lattices/lat-vx-central/evaluate", {"tau": 0.99})
        payloads["lattice_after_whatif"] = record(vaccine, "GET", "/api/lattices/lat-vx-central")
        payloads["recommend_public_health"] = record(
            vaccine, "GET", "/api/recommend?topic=public-health&k=3&min_reputation=0.5")
        payloads["footprint_caption"] = record(
            vaccine, "GET", "/api/footprint?text=my%20body%20my%20rules")
        payloads["lattice_missing"] = record(vaccine, "GET", "/api/lattices/nope")
    finally:
        vaccine.shutdown()
        vaccine.server_close()

    echo = make_server(load_fixture("echo.json"), port=0)
    t = threading.Thread(target=echo.serve_forever, daemon=True)
    t.start()
    try:
        payloads["nudges_echo"] = record(echo, "GET", "/api/sessions/session-echo/nudges")
        payloads["recommend_politics"] = record(
            echo, "GET", "/api/recommend?topic=politics&k=3&min_reputation=0.5")
        payloads["events_append"] = record(
            echo, "POST", "/api/sessions/session-echo/events",
            {"events": [{"kind": "consulted", "step": 10, "claim_id": "ec-a",
                         "source_id": "echo-net-a", "supports_current_stance": False}]})
    finally:
        echo.shutdown()
        echo.server_close()

    # sanity: the flip really flips relative to stored, and stored GETs agree
    stored = payloads["lattice_vaccine"]["body"]["result"]["evaluation"]["verdicts"]["vx-central"]
    flipped = payloads["whatif_flip"]["body"]["result"]["evaluation"]["verdicts"]["vx-central"]
    assert stored == "accepted" and flipped == "rejected", (stored, flipped)
    assert payloads["lattice_after_whatif"]["body"]["result"] == payloads["lattice_vaccine"]["body"]["result"]
    assert [n["kind"] for n in payloads["nudges_echo"]["body"]["result"]["nudges"]] == ["confirmation"]

    path = os.path.join(OUT, "payloads.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"overrides_that_flip": FLIP_OVERRIDES, "payloads": payloads},
                  fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path} ({len(payloads)} recorded responses)")


if __name__ == "__main__":
    main()
