"""Command-line interface: contracts, determinism, exit codes."""

import json
import subprocess
import sys

import pytest

from mevir.bundle import emit_bundle
from mevir.cli import run_cli
from mevir.fixtures import demo_lexicon_text, load_fixture

from dot_grammar import check_dot


@pytest.fixture
def vaccine_path(tmp_path):
    p = tmp_path / "vaccine.json"
    p.write_bytes(emit_bundle(load_fixture("vaccine.json")))
    return str(p)


@pytest.fixture
def revision_path(tmp_path):
    p = tmp_path / "revision.json"
    p.write_bytes(emit_bundle(load_fixture("revision.json")))
    return str(p)


@pytest.fixture
def lexicon_path(tmp_path):
    p = tmp_path / "demo.tsv"
    p.write_text(demo_lexicon_text(), encoding="utf-8")
    return str(p)


def run(capsysbinary, argv) -> tuple[int, bytes, bytes]:
    code = run_cli(argv)
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err


class TestFootprint:
    def test_empty_text_zero_vector(self, capsysbinary, lexicon_path):
        code, out, err = run(capsysbinary, ["footprint", "--text", "", "--lexicon", lexicon_path])
        assert code == 0
        doc = json.loads(out)
        assert doc["matched_count"] == 0
        assert all(v == 0.0 for v in doc["vector"].values())

    def test_caption_scores_liberty_and_purity(self, capsysbinary, lexicon_path):
        code, out, _ = run(capsysbinary, ["footprint", "--text", "My body my rules", "--lexicon", lexicon_path])
        assert code == 0
        doc = json.loads(out)
        assert doc["vector"]["liberty"] == pytest.approx(0.5)
        assert doc["vector"]["purity"] == pytest.approx(0.5)

    def test_missing_lexicon_is_data_error(self, capsysbinary):
        code, _, err = run(capsysbinary, ["footprint", "--text", "x", "--lexicon", "/nope.tsv"])
        assert code == 2
        assert b"error" in err


class TestUsageErrors:
    def test_unknown_subcommand_exit_one(self, capsysbinary):
        code, _, err = run(capsysbinary, ["frobnicate"])
        assert code == 1
        assert err

    def test_missing_bundle_exit_one(self, capsysbinary, monkeypatch):
        monkeypatch.delenv("MEVIR_BUNDLE", raising=False)
        code, _, err = run(capsysbinary, ["recommend", "--topic", "climate"])
        assert code == 1

    def test_env_var_supplies_bundle(self, capsysbinary, monkeypatch, vaccine_path):
        monkeypatch.setenv("MEVIR_BUNDLE", vaccine_path)
        code, out, _ = run(capsysbinary, ["recommend", "--topic", "public-health"])
        assert code == 0
        assert json.loads(out)["recommendations"]


class TestEvaluate:
    def test_adherent_accepts_central_claim(self, capsysbinary, vaccine_path):
        code, out, _ = run(capsysbinary, [
            "evaluate", "--bundle", vaccine_path, "--lattice", "lat-vx-central",
            "--profile", "adherent", "--policy", "policy-adherent",
        ])
        assert code == 0
        doc = json.loads(out)
        assert doc["verdicts"]["vx-central"] == "accepted"
        assert "trace" not in doc

    def test_nonadherent_rejects_central_claim(self, capsysbinary, vaccine_path):
        code, out, _ = run(capsysbinary, [
            "evaluate", "--bundle", vaccine_path, "--lattice", "lat-vx-central",
            "--profile", "nonadherent", "--policy", "policy-nonadherent",
        ])
        assert code == 0
        assert json.loads(out)["verdicts"]["vx-central"] == "rejected"

    def test_trace_flag_adds_trace(self, capsysbinary, vaccine_path):
        code, out, _ = run(capsysbinary, [
            "evaluate", "--bundle", vaccine_path, "--lattice", "lat-vx-central",
            "--profile", "adherent", "--policy", "policy-adherent", "--trace",
        ])
        doc = json.loads(out)
        assert "trace" in doc
        assert "support" in doc["trace"]["vx-central"]

    def test_unknown_lattice_exit_two(self, capsysbinary, vaccine_path):
        code, _, err = run(capsysbinary, [
            "evaluate", "--bundle", vaccine_path, "--lattice", "nope",
            "--profile", "adherent", "--policy", "policy-adherent",
        ])
        assert code == 2


class TestDeterminism:
    @pytest.mark.parametrize("argv_builder", [
        lambda b: ["elaborate", "--bundle", b, "--claim", "vx-central",
                   "--profile", "builder-vaccine", "--policy", "policy-builder", "--budget", "10"],
        lambda b: ["evaluate", "--bundle", b, "--lattice", "lat-vx-central",
                   "--profile", "adherent", "--policy", "policy-adherent", "--trace"],
        lambda b: ["recommend", "--bundle", b, "--topic", "public-health"],
        lambda b: ["export", "--bundle", b, "--lattice", "lat-vx-central", "--format", "dot"],
        lambda b: ["diagnose", "--bundle", b, "--session", "session-echo", "--lattice", "lat-ec-central"],
    ])
    def test_repeat_runs_byte_identical(self, capsysbinary, vaccine_path, tmp_path, argv_builder):
        bundle = vaccine_path
        if "session-echo" in str(argv_builder(bundle)):
            p = tmp_path / "echo.json"
            p.write_bytes(emit_bundle(load_fixture("echo.json")))
            bundle = str(p)
        code1, out1, _ = run(capsysbinary, argv_builder(bundle))
        code2, out2, _ = run(capsysbinary, argv_builder(bundle))
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1


class TestExport:
    def test_dot_output_parses(self, capsysbinary, vaccine_path):
        code, out, _ = run(capsysbinary, [
            "export", "--bundle", vaccine_path, "--lattice", "lat-vx-central", "--format", "dot",
        ])
        assert code == 0
        check_dot(out.decode("utf-8"))


class TestReviseReinstate:
    def test_revise_then_reinstate_round_trip(self, capsysbinary, revision_path, tmp_path):
        info = {
            "claim": {"id": "rv-n1", "text": "New trial reports significant harm from T.",
                      "topics": ["medicine"], "evidence_kind": "statistical",
                      "proxy_kind": "clinical-trial"},
            "source_id": "rv-src",
            "edges": [{"id": "rv-e-new", "from": "rv-n1", "to": "rv-c2",
                       "kind": "supports", "declared_weight": 0.6}],
            "anchors": [{"node_id": "rv-n1", "kind": "authority", "source_id": "rv-src"}],
        }
        info_path = tmp_path / "info.json"
        info_path.write_text(json.dumps(info), encoding="utf-8")

        revised_path = tmp_path / "revised.json"
        code, _, err = run(capsysbinary, [
            "revise", "--bundle", revision_path, "--state", "state-revision",
            "--info", str(info_path), "-o", str(revised_path),
        ])
        assert code == 0, err
        revised = json.loads(revised_path.read_text())
        state = next(s for s in revised["states"] if s["id"] == "state-revision")
        assert state["revision_log"][-1]["disposition"] == "applied"
        assert state["lattice"]["disabled_edges"] == ["rv-e-new"]

        code, out, err = run(capsysbinary, [
            "reinstate", "--bundle", str(revised_path), "--state", "state-revision",
            "--revision", str(state["revision_log"][-1]["id"]),
        ])
        assert code == 0, err
        restored = json.loads(out)
        rstate = next(s for s in restored["states"] if s["id"] == "state-revision")
        original = json.loads(open(revision_path, "rb").read().decode("utf-8"))
        ostate = next(s for s in original["states"] if s["id"] == "state-revision")
        assert rstate["lattice"] == ostate["lattice"]
        assert rstate["revision_log"][-1]["disposition"] == "reversed"

    def test_reinstate_unknown_revision_exit_two(self, capsysbinary, revision_path):
        code, _, _ = run(capsysbinary, [
            "reinstate", "--bundle", revision_path, "--state", "state-revision", "--revision", "99",
        ])
        assert code == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "mevir.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "mevir" in proc.stdout
