"""Command-line interface and parameter documents.

A parameter document (JSON, or YAML when PyYAML is installed) looks like::

    {"group_kind": "odd-orthogonal", "sharp": null,
     "blocks": [{"rho": {"name": "1", "dim": 1, "kind": "orthogonal"},
                 "A": "3/2", "B": "3/2", "zeta": "+"}],
     "epsilon": ["-"]}

``epsilon`` is aligned with ``blocks``.  Exit codes: 0 success or pass,
1 validation failure, failed check or unsupported evaluation, 2 usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import SUITES, Bounds, run_suites
from .general import minimal_dominating, pi_general
from .groth import JacQuery, render
from .jacquet import Unsupported, jac_seq
from .packets import pi_explicit, pi_recursive
from .params import (
    Block,
    CuspLabel,
    HalfInt,
    Parameter,
    SignChar,
    is_diagonal_discrete,
    parse_sign,
    sign_str,
    validate_parameter,
    validate_sign_char,
)
from .stability import stable_sum

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class DocError(ValueError):
    """The document cannot be read as a parameter."""


# ---------------------------------------------------------------------------
# Parameter documents
# ---------------------------------------------------------------------------


def _read_text(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), ""
    try:
        return Path(path).read_text(), Path(path).suffix.lower()
    except OSError as exc:
        raise DocError(f"cannot read {path}: {exc.strerror}") from exc


def load_data(path: str) -> dict:
    text, suffix = _read_text(path)
    if suffix in (".yaml", ".yml"):
        try:
            import yaml
        except ImportError as exc:
            raise DocError("YAML input needs PyYAML; use JSON instead") from exc
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise DocError(f"bad YAML: {exc}") from exc
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocError(f"bad JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DocError("document must be a mapping")
    return data


def _label(raw) -> CuspLabel:
    if raw is None:
        return CuspLabel()
    if isinstance(raw, str):
        return CuspLabel.parse(raw)
    if isinstance(raw, dict):
        return CuspLabel(str(raw.get("name", "1")), int(raw.get("dim", 1)), raw.get("kind", "orthogonal"))
    raise DocError(f"bad rho {raw!r}")


def doc_blocks(data: dict) -> tuple[Parameter, list[tuple[Block, int]] | None]:
    """Parameter and ``(block, sign)`` pairs in document order, unchecked."""
    blocks_raw = data.get("blocks")
    if not isinstance(blocks_raw, list):
        raise DocError("'blocks' must be a list")
    blocks = []
    for i, raw in enumerate(blocks_raw):
        try:
            blocks.append(
                Block(_label(raw.get("rho")), HalfInt(str(raw["A"])), HalfInt(str(raw["B"])), parse_sign(raw.get("zeta", "+")))
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise DocError(f"block {i}: {exc}") from exc
    sharp = data.get("sharp")
    try:
        p = Parameter(tuple(blocks), data.get("group_kind"), None if sharp is None else parse_sign(sharp))
    except ValueError as exc:
        raise DocError(str(exc)) from exc
    eps = data.get("epsilon")
    if eps is None:
        return p, None
    if not isinstance(eps, list) or len(eps) != len(blocks):
        raise DocError("'epsilon' must list one sign per block")
    try:
        signs = [parse_sign(s) for s in eps]
    except ValueError as exc:
        raise DocError(str(exc)) from exc
    return p, list(zip(blocks, signs))


def doc_param(data: dict) -> tuple[Parameter, SignChar]:
    """Parse and validate a document into a parameter with its sign character."""
    p, pairs = doc_blocks(data)
    rep = validate_parameter(p, "discrete")
    if not rep.ok:
        raise DocError(str(rep))
    if pairs is None:
        raise DocError("'epsilon' is required")
    e = SignChar.of(pairs)
    rep = validate_sign_char(p, e)
    if not rep.ok:
        raise DocError(str(rep))
    return p, e


def load_doc(path: str) -> tuple[Parameter, SignChar]:
    return doc_param(load_data(path))


def dump_doc(p: Parameter, e: SignChar | None = None) -> dict:
    """Document for ``(p, e)``; ``doc_param(dump_doc(p, e)) == (p, e)``."""
    out: dict = {"group_kind": p.group_kind, "sharp": None if p.sharp is None else sign_str(p.sharp)}
    out["blocks"] = [
        {
            "rho": {"name": b.rho.name, "dim": b.rho.dim, "kind": b.rho.kind},
            "A": str(b.top),
            "B": str(b.bottom),
            "zeta": sign_str(b.orient),
        }
        for b in p.blocks
    ]
    if e is not None:
        out["epsilon"] = [sign_str(e[b]) for b in p.blocks]
    return out


def parse_query(text: str) -> JacQuery:
    """``"rho:x"`` or a bare ``"x"`` on the trivial label."""
    label, sep, x = text.rpartition(":")
    try:
        return JacQuery(CuspLabel.parse(label) if sep else CuspLabel(), HalfInt(x))
    except (ValueError, KeyError) as exc:
        raise DocError(f"bad query {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def emit(args, payload: dict, text: str) -> None:
    if args.format == "machine-readable":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _block_choice(p: Parameter, index: int | None) -> Block | None:
    if index is None:
        return None
    if not 0 <= index < len(p.blocks):
        raise DocError(f"--block must be between 0 and {len(p.blocks) - 1}")
    return p.blocks[index]


def packet_value(p: Parameter, e: SignChar, block: Block | None = None):
    """Evaluated packet member: the signed recursion when the parameter is
    diagonal-discrete, the domination construction otherwise."""
    if is_diagonal_discrete(p):
        return pi_recursive(p, e, block, mode="evaluate")
    return pi_general(p, e)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    data = load_data(args.file)
    violations = []
    try:
        p, pairs = doc_blocks(data)
    except DocError as exc:
        violations.append(str(exc))
        p = pairs = None
    if p is not None:
        violations += validate_parameter(p, "discrete").violations
        if pairs is not None and not violations:
            e = SignChar.of(pairs)
            violations += validate_sign_char(p, e).violations
    diag = p is not None and not violations and is_diagonal_discrete(p)
    payload = {"ok": not violations, "violations": violations, "diagonal_discrete": diag}
    text = "ok" if not violations else "\n".join(f"error: {v}" for v in violations)
    if not violations:
        text += " (diagonal-discrete)" if diag else " (discrete, not diagonal-discrete)"
    emit(args, payload, text)
    return EXIT_OK if not violations else EXIT_FAIL


def cmd_packet(args) -> int:
    p, e = load_doc(args.file)
    block = _block_choice(p, args.block)
    if args.mode == "explicit":
        if not is_diagonal_discrete(p):
            raise DocError("explicit constituents need a diagonal-discrete parameter")
        packet = pi_explicit(p, e)
        items = [str(c) for c in packet]
        emit(args, {"constituents": items}, "\n".join(items) if items else "0")
        return EXIT_OK
    value = packet_value(p, e, block)
    emit(args, {"value": render(value)}, render(value))
    return EXIT_OK


def cmd_jac(args) -> int:
    p, e = load_doc(args.file)
    qs = [parse_query(q) for q in args.queries]
    value = jac_seq(qs, packet_value(p, e))
    emit(args, {"value": render(value)}, render(value))
    return EXIT_OK


def cmd_stable(args) -> int:
    p, _ = load_doc(args.file)
    s = stable_sum(p, mode="evaluate", center_only=p.sharp is not None)
    signs = [{"epsilon": str(e), "sign": sign_str(c)} for e, c in s.signs.items()]
    text = "\n".join(f"{sign_str(c)} {e}" for e, c in s.signs.items())
    emit(args, {"value": render(s.value), "signs": signs}, f"{text}\nsum: {render(s.value)}")
    return EXIT_OK


def cmd_general(args) -> int:
    p, e = load_doc(args.file)
    d = minimal_dominating(p)
    value = pi_general(p, e)
    payload = {"dominator": dump_doc(d.source), "shifts": d.shifts(), "value": render(value)}
    emit(args, payload, f"dominator: {d.source}\nvalue: {render(value)}")
    return EXIT_OK


def cmd_check(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    bounds = Bounds.parse(args.bounds) if args.bounds else None
    results = run_suites(names, bounds)
    ok = all(r.ok for r in results)
    lines = []
    for r in results:
        lines.append(r.summary())
        lines += [f"  counterexample: {f}" for f in r.failures]
    emit(args, {"ok": ok, "suites": [r.as_dict() for r in results]}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arthur-packets", description="Exact packet computations for classical groups.")
    ap.add_argument("--format", choices=("text", "machine-readable"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a parameter document")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("packet", help="packet member of a signed parameter")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("gk", "explicit"), default="gk")
    sp.add_argument("--block", type=int, help="index of the block to expand first")
    sp.set_defaults(func=cmd_packet)

    sp = sub.add_parser("jac", help="apply Jacquet queries rho:x in order")
    sp.add_argument("file")
    sp.add_argument("queries", nargs="+")
    sp.set_defaults(func=cmd_jac)

    sp = sub.add_parser("stable", help="stable combination over all sign characters")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_stable)

    sp = sub.add_parser("general", help="packet member through the minimal dominating parameter")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_general)

    sp = sub.add_parser("check", help="run property suites over enumerated families")
    sp.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    sp.add_argument("--bounds", help='family bounds, e.g. "blocks=2,gap=2,b=3"')
    sp.set_defaults(func=cmd_check)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    # --format is accepted before or after the subcommand
    argv = list(sys.argv[1:] if argv is None else argv)
    for i, a in enumerate(argv):
        if a.startswith("--format"):
            if a == "--format" and i + 1 < len(argv):
                argv = [a, argv[i + 1]] + argv[:i] + argv[i + 2 :]
            else:
                argv = [a] + argv[:i] + argv[i + 1 :]
            break
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DocError as exc:
        emit(args, {"ok": False, "error": str(exc)}, f"error: {exc}")
        return EXIT_USAGE if args.command != "validate" else EXIT_FAIL
    except Unsupported as exc:
        emit(args, {"ok": False, "unsupported": str(exc)}, f"unsupported: {exc}")
        return EXIT_FAIL
    except ValueError as exc:
        emit(args, {"ok": False, "error": str(exc)}, f"error: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
