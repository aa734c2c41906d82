"""Command line interface: ``kotoric <group> <command> ...``.

Exit status is 0 on success, 1 when a computation cannot be carried out
(for example KO of a manifold that is not Sq^2-acyclic) and 2 on malformed
input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .dj import SimplicialComplex, dj_equal, limit_tuple, minimal_nonfaces, sr_reduce_ko
from .ko import KoElement, ko_equal, ko_mul
from .ku import Truncation
from .notation import ParseError, parse, render
from .toric import (
    InvalidCharacteristic,
    Manifold,
    NotSq2Acyclic,
    bb_numbers,
    fixtures,
    is_sq2_acyclic,
    manifold_ko_equal,
    manifold_ko_rank,
    manifold_ku,
    mod2_cohomology,
    validate_characteristic,
)
from .worked import CHECK_GROUPS


class InputError(Exception):
    """Malformed command line input."""


def _element_json(a: KoElement) -> dict[str, Any]:
    return {"degree": a.degree, "element": render(a)}


def _trunc(text: str | None, m: int) -> Truncation:
    if text is None:
        return Truncation.uniform(m, 6)
    try:
        d = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"--trunc must be comma separated integers, got {text!r}") from exc
    if len(d) == 1 and m > 1:
        d = d * m
    if len(d) != m:
        raise InputError(f"--trunc has {len(d)} entries, elements have {m} variables")
    try:
        return Truncation(d)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parse(text: str, m: int | None) -> KoElement:
    try:
        return parse(text, m)
    except ParseError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from exc


def _parse_pair(a: str, b: str, m: int | None) -> tuple[KoElement, KoElement]:
    if m is None:
        # both operands must live in the same ring; take the larger inferred rank
        m = max(_parse(a, None).m, _parse(b, None).m)
    return _parse(a, m), _parse(b, m)


def _load_json(source: str) -> Any:
    text = source
    if not source.lstrip().startswith("{"):
        path = Path(source)
        if not path.exists():
            return None
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON ({exc})") from exc


def _load_complex(source: str) -> SimplicialComplex:
    data = _load_json(source)
    if data is None:
        raise InputError(f"{source}: no such file")
    if "complex" in data:
        data = data["complex"]
    try:
        return SimplicialComplex.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _load_manifold(source: str) -> Manifold:
    data = _load_json(source)
    if data is None:
        key = Path(source).stem.lower()
        builtin = fixtures()
        if key in builtin:
            return builtin[key]
        raise InputError(f"{source}: no such file or built-in fixture ({', '.join(builtin)})")
    try:
        return Manifold.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc


# ---------------------------------------------------------------------------
# handlers return (json payload, text)


def _ring_normalize(args):
    a = _parse(args.expr, args.m)
    return _element_json(a), render(a)


def _ring_mul(args):
    a, b = _parse_pair(args.a, args.b, args.m)
    try:
        p = ko_mul(a, b)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return _element_json(p), render(p)


def _ring_equal(args):
    a, b = _parse_pair(args.a, args.b, args.m)
    trunc = _trunc(args.trunc, a.m) if args.trunc is not None else None
    try:
        eq = ko_equal(a, b, trunc)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    mode = f"truncated {trunc}" if trunc else "symbolic"
    return {"equal": eq, "mode": mode}, str(eq).lower()


def _dj_reduce(args):
    K = _load_complex(args.complex)
    a = _parse(args.expr, K.m)
    r = sr_reduce_ko(a, K)
    payload = _element_json(r)
    payload["minimal_nonfaces"] = [list(f) for f in minimal_nonfaces(K)]
    return payload, render(r)


def _dj_equal(args):
    K = _load_complex(args.complex)
    a, b = _parse_pair(args.a, args.b, K.m)
    try:
        eq = dj_equal(a, b, K, _trunc(args.trunc, K.m))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"equal": eq}, str(eq).lower()


def _dj_limit(args):
    K = _load_complex(args.complex)
    a = _parse(args.expr, K.m)
    t = limit_tuple(a, K)
    comps = [{"facet": list(f), "element": render(t.components[f])} for f in K.facets]
    text = "\n".join(f"{list(c['facet'])}: {c['element']}" for c in comps)
    return {"components": comps}, text


def _toric_validate(args):
    M = _load_manifold(args.manifold)
    try:
        ok = validate_characteristic(M.K, M.lam)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"valid": ok}, str(ok).lower()


def _toric_bb(args):
    M = _load_manifold(args.manifold)
    H = mod2_cohomology(M.K, M.lam)
    bb = bb_numbers(M.K, M.lam)
    payload = {"betti": list(H.betti), "m": list(bb.m), "s": list(bb.s)}
    text = f"betti {list(H.betti)}\ns {list(bb.s)}\nm {list(bb.m)}"
    return payload, text


def _toric_acyclic(args):
    M = _load_manifold(args.manifold)
    ok = is_sq2_acyclic(M.K, M.lam)
    return {"acyclic": ok}, str(ok).lower()


def _model(M: Manifold, window: int | None):
    try:
        return manifold_ku(M.K, M.lam, window)
    except InvalidCharacteristic:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _toric_ko_equal(args):
    M = _load_manifold(args.manifold)
    a, b = _parse_pair(args.a, args.b, M.K.m)
    model = _model(M, args.window)
    try:
        eq = manifold_ko_equal(a, b, model)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"equal": eq}, str(eq).lower()


def _toric_ko_rank(args):
    M = _load_manifold(args.manifold)
    model = _model(M, args.window)
    r = manifold_ko_rank(model, args.degree)
    return {"degree": args.degree, "rank": r, "ku_rank": model.rank}, str(r)


def _verify(args):
    groups = []
    lines = []
    all_ok = True
    for title, fn in CHECK_GROUPS.items():
        checks = fn()
        groups.append(
            {"group": title, "checks": [{"name": c.name, "passed": c.passed} for c in checks]}
        )
        for c in checks:
            all_ok &= c.passed
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {title}: {c.name}")
    lines.append("all checks passed" if all_ok else "some checks FAILED")
    return {"groups": groups, "passed": all_ok}, "\n".join(lines), 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kotoric", description="KO-theory of torus spaces and toric manifolds")
    p.add_argument("--json", action="store_true", help="machine readable output")
    top = p.add_subparsers(dest="group", required=True)

    def add(sub, name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.set_defaults(func=fn)
        q.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return q

    ring = top.add_parser("ring", help="arithmetic in KO^*(BT^m)").add_subparsers(dest="cmd", required=True)
    q = add(ring, "normalize", _ring_normalize, "normal form of an element")
    q.add_argument("expr")
    q.add_argument("--m", type=int)
    q = add(ring, "mul", _ring_mul, "product of two elements")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--m", type=int)
    q = add(ring, "equal", _ring_equal, "equality, symbolic or in a truncated model")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--m", type=int)
    q.add_argument("--trunc", help='truncation "d1,d2,..." (even entries >= 2)')

    dj = top.add_parser("dj", help="Davis-Januszkiewicz quotients").add_subparsers(dest="cmd", required=True)
    q = add(dj, "reduce", _dj_reduce, "Stanley-Reisner reduction")
    q.add_argument("complex", help="complex JSON file or inline JSON")
    q.add_argument("expr")
    q = add(dj, "equal", _dj_equal, "equality in KO^*(DJ(K))")
    q.add_argument("complex")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--trunc", help="truncation, default 6 in every variable")
    q = add(dj, "limit", _dj_limit, "facetwise restriction tuple")
    q.add_argument("complex")
    q.add_argument("expr")

    toric = top.add_parser("toric", help="quasitoric manifolds").add_subparsers(dest="cmd", required=True)
    for name, fn, help_ in [
        ("validate", _toric_validate, "check the characteristic matrix"),
        ("bb", _toric_bb, "mod 2 Betti numbers and BB-numbers"),
        ("acyclic", _toric_acyclic, "Sq^2-acyclicity"),
    ]:
        q = add(toric, name, fn, help_)
        q.add_argument("manifold", help="manifold JSON file, inline JSON or built-in name")
    q = add(toric, "ko-equal", _toric_ko_equal, "equality in KO^*(M)")
    q.add_argument("manifold")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("--window", type=int)
    q = add(toric, "ko-rank", _toric_ko_rank, "rank of KO^degree(M)")
    q.add_argument("manifold")
    q.add_argument("--degree", type=int, required=True, help="cohomological degree, e.g. 0 or -2")
    q.add_argument("--window", type=int)

    verify = top.add_parser("verify", help="built-in worked examples").add_subparsers(dest="cmd", required=True)
    add(verify, "paper-examples", _verify, "run every worked example")
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (NotSq2Acyclic, InvalidCharacteristic, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    payload, text, *code = result
    if args.json:
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return code[0] if code else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
