"""Command-line interface.

Every subcommand reads a bundle (explicit --bundle or the MEVIR_BUNDLE
environment variable), computes, and writes canonical JSON to stdout or to
-o. Outputs are byte-deterministic: the same bundle and arguments always
produce the same bytes. Exit codes: 0 success, 1 usage error, 2
data/validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import __version__
from .bundle import Bundle, BundleError, bundle_to_dict, canonical_json, parse_bundle
from .diagnostics import diagnose, insularity
from .dot import export_dot
from .elaboration import Budget, UnknownClaimError, elaborate
from .evaluation import InvalidLatticeError, UnknownSourceError, evaluate
from .model import CycleError
from .moral import MoralLexicon, compute_footprint
from .recommend import recommend_authorities
from .revision import MergeError, NewInformation, ReinstateError, reinstate, revise


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mevir", description="Trust-lattice decision support engine")
    parser.add_argument("--version", action="version", version=f"mevir {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_bundle(p):
        p.add_argument("--bundle", default=os.environ.get("MEVIR_BUNDLE"),
                       help="bundle JSON path (default: $MEVIR_BUNDLE)")

    def add_out(p):
        p.add_argument("-o", "--output", help="write output to file instead of stdout")

    p = sub.add_parser("elaborate", help="build a lattice for a claim")
    add_bundle(p)
    p.add_argument("--claim", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--policy", required=True)
    p.add_argument("--budget", type=int, default=50)
    add_out(p)

    p = sub.add_parser("evaluate", help="score a stored lattice")
    add_bundle(p)
    p.add_argument("--lattice", required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--policy", required=True)
    p.add_argument("--trace", action="store_true", help="include per-node trace")
    add_out(p)

    p = sub.add_parser("footprint", help="moral footprint of a text")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text")
    group.add_argument("--file")
    p.add_argument("--lexicon", required=True, help="lexicon TSV path")
    add_out(p)

    p = sub.add_parser("diagnose", help="bias flags for a session over a lattice")
    add_bundle(p)
    p.add_argument("--session", required=True)
    p.add_argument("--lattice", required=True)
    add_out(p)

    p = sub.add_parser("revise", help="apply new information to a state")
    add_bundle(p)
    p.add_argument("--state", required=True)
    p.add_argument("--info", required=True, help="NewInformation JSON path")
    add_out(p)

    p = sub.add_parser("reinstate", help="undo an applied revision")
    add_bundle(p)
    p.add_argument("--state", required=True)
    p.add_argument("--revision", type=int, required=True)
    add_out(p)

    p = sub.add_parser("recommend", help="diverse credible authorities for a topic")
    add_bundle(p)
    p.add_argument("--topic", required=True)
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--min-reputation", type=float, default=0.5)
    add_out(p)

    p = sub.add_parser("export", help="export a lattice")
    add_bundle(p)
    p.add_argument("--lattice", required=True)
    p.add_argument("--format", choices=("dot",), default="dot")
    add_out(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    add_bundle(p)
    p.add_argument("--port", type=int, default=8340)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def _load_bundle(args) -> Bundle:
    if not args.bundle:
        raise _UsageError("--bundle is required (or set MEVIR_BUNDLE)")
    try:
        with open(args.bundle, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _DataError(f"cannot read bundle: {exc}") from exc
    try:
        return parse_bundle(data, lexicon_base=os.path.dirname(os.path.abspath(args.bundle)))
    except BundleError as exc:
        raise _DataError(f"invalid bundle: {exc}") from exc


def _write(payload: bytes, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()


def _require_state(bundle: Bundle, state_id: str):
    st = bundle.states.get(state_id)
    if st is None:
        raise _DataError(f"unknown state {state_id!r}")
    return st


def _require_lattice_state(bundle: Bundle, lattice_id: str):
    st = bundle.state_for_lattice(lattice_id)
    if st is None:
        raise _DataError(f"unknown lattice {lattice_id!r}")
    return st


def _cmd_elaborate(args) -> bytes:
    bundle = _load_bundle(args)
    try:
        profile = bundle.profile(args.profile)
        policy = bundle.policy(args.policy)
    except KeyError as exc:
        raise _DataError(str(exc)) from exc
    try:
        lattice = elaborate(
            bundle.corpus, args.claim, profile, policy,
            Budget(max_expansions=args.budget), bundle.sources,
        )
    except (UnknownClaimError, CycleError, ValueError) as exc:
        raise _DataError(str(exc)) from exc
    state_doc = {
        "id": lattice.id,
        "profile": args.profile,
        "policy": args.policy,
        "lattice": lattice.to_dict(),
        "revision_log": [],
    }
    return canonical_json(state_doc)


def _cmd_evaluate(args) -> bytes:
    bundle = _load_bundle(args)
    st = _require_lattice_state(bundle, args.lattice)
    try:
        profile = bundle.profile(args.profile)
        policy = bundle.policy(args.policy)
    except KeyError as exc:
        raise _DataError(str(exc)) from exc
    try:
        result = evaluate(st.lattice, profile, bundle.sources, policy, bundle.lexicon)
    except (InvalidLatticeError, UnknownSourceError) as exc:
        raise _DataError(str(exc)) from exc
    return canonical_json(result.to_dict(include_trace=args.trace))


def _cmd_footprint(args) -> bytes:
    if args.text is not None:
        text = args.text
    else:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _DataError(f"cannot read text file: {exc}") from exc
    try:
        with open(args.lexicon, "r", encoding="utf-8") as fh:
            lexicon = MoralLexicon.from_tsv(fh.read(), name=os.path.basename(args.lexicon))
    except OSError as exc:
        raise _DataError(f"cannot read lexicon: {exc}") from exc
    except ValueError as exc:
        raise _DataError(f"invalid lexicon: {exc}") from exc
    return canonical_json(compute_footprint(text, lexicon).to_dict())


def _cmd_diagnose(args) -> bytes:
    bundle = _load_bundle(args)
    session = bundle.sessions.get(args.session)
    if session is None:
        raise _DataError(f"unknown session {args.session!r}")
    st = _require_lattice_state(bundle, args.lattice)
    profile = bundle.profiles.get(session.profile_id or st.profile_id)
    policy = bundle.policies.get(session.policy_id or st.policy_id)
    flags = diagnose(session, st.lattice, bundle.sources, profile, policy)
    payload = {
        "flags": [f.to_dict() for f in flags],
        "insularity": insularity(st.lattice, bundle.sources),
    }
    return canonical_json(payload)


def _cmd_revise(args) -> bytes:
    bundle = _load_bundle(args)
    st = _require_state(bundle, args.state)
    try:
        with open(args.info, "r", encoding="utf-8") as fh:
            info = NewInformation.from_dict(json.load(fh))
    except OSError as exc:
        raise _DataError(f"cannot read info file: {exc}") from exc
    except (ValueError, KeyError) as exc:
        raise _DataError(f"invalid new-information document: {exc}") from exc
    profile = bundle.profile(st.profile_id)
    policy = bundle.policy(st.policy_id)
    try:
        new_state = revise(st, info, profile, bundle.sources, policy, bundle.lexicon)
    except (MergeError, UnknownSourceError, InvalidLatticeError) as exc:
        raise _DataError(str(exc)) from exc
    bundle.states[new_state.id] = new_state
    return canonical_json(bundle_to_dict(bundle))


def _cmd_reinstate(args) -> bytes:
    bundle = _load_bundle(args)
    st = _require_state(bundle, args.state)
    profile = bundle.profile(st.profile_id)
    policy = bundle.policy(st.policy_id)
    try:
        new_state = reinstate(st, args.revision, profile, bundle.sources, policy, bundle.lexicon)
    except (ReinstateError, InvalidLatticeError) as exc:
        raise _DataError(str(exc)) from exc
    bundle.states[new_state.id] = new_state
    return canonical_json(bundle_to_dict(bundle))


def _cmd_recommend(args) -> bytes:
    bundle = _load_bundle(args)
    if args.k < 1:
        raise _UsageError("-k must be >= 1")
    ids = recommend_authorities(args.topic, bundle.sources, k=args.k,
                                min_reputation=args.min_reputation)
    return canonical_json({"topic": args.topic, "recommendations": ids})


def _cmd_export(args) -> bytes:
    bundle = _load_bundle(args)
    st = _require_lattice_state(bundle, args.lattice)
    profile = bundle.profile(st.profile_id)
    policy = bundle.policy(st.policy_id)
    result = evaluate(st.lattice, profile, bundle.sources, policy, bundle.lexicon)
    return export_dot(st.lattice, result).encode("utf-8")


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except SystemExit as exc:  # --version / --help
        return int(exc.code or 0)

    handlers = {
        "elaborate": _cmd_elaborate,
        "evaluate": _cmd_evaluate,
        "footprint": _cmd_footprint,
        "diagnose": _cmd_diagnose,
        "revise": _cmd_revise,
        "reinstate": _cmd_reinstate,
        "recommend": _cmd_recommend,
        "export": _cmd_export,
    }
    try:
        if args.command == "serve":
            from .server import serve

            bundle = _load_bundle(args)
            serve(bundle, port=args.port, host=args.host)
            return 0
        payload = handlers[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(payload, getattr(args, "output", None))
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
