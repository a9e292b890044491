"""Command-line surface.

Poset files are lines ``n <int>`` then ``rel <a> <b>`` (meaning a <= b);
code files are a header ``q <prime> n <len> k <rows>`` followed by k rows
of n residues.  ``#`` starts a comment.  Structured output (--format
json) is one JSON document per run with stable fields {command, inputs,
verdicts, witnesses, timings, seed}.

Exit codes: 0 success, 1 input error, 2 capacity skip, 3 internal
disagreement between a closed form and its oracle (must never occur).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .characterize import CheckBudget, DEFAULT_SEED, Verdict, full_report
from .code import LinearCode
from .errors import (
    CapacityError,
    FieldError,
    FormatError,
    InternalCheckError,
    NonHierarchicalError,
    NotAPartialOrderError,
    PosetCodesError,
    ZeroCodeError,
)
from .hierarchy import (
    canonical_decompose,
    closed_invariants,
    hierarchical_weight_enumerator,
    macwilliams_dual_enumerator,
)
from .isometry import enumerate_group, group_order
from .pmetric import brute_invariants, p_weight_enumerator
from .poset import Poset


# -- text formats ------------------------------------------------------------


def _clean_lines(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line


def parse_poset(text: str) -> Poset:
    """Poset from its text form; diagnostics carry line numbers."""
    n = None
    pairs = []
    for ln, line in _clean_lines(text):
        tok = line.split()
        if tok[0] == "n":
            if n is not None:
                raise FormatError("duplicate 'n' line", ln)
            if len(tok) != 2 or not tok[1].isdigit():
                raise FormatError("expected 'n <int>'", ln)
            n = int(tok[1])
        elif tok[0] == "rel":
            if n is None:
                raise FormatError("'rel' before 'n'", ln)
            if len(tok) != 3 or not all(t.isdigit() for t in tok[1:]):
                raise FormatError("expected 'rel <a> <b>'", ln)
            a, b = int(tok[1]), int(tok[2])
            if not (1 <= a <= n and 1 <= b <= n):
                raise FormatError(f"label out of range 1..{n}", ln)
            pairs.append((a, b))
        else:
            raise FormatError(f"unknown directive {tok[0]!r}", ln)
    if n is None:
        raise FormatError("missing 'n' line")
    try:
        return Poset.from_relations(n, pairs)
    except NotAPartialOrderError as e:
        raise FormatError(str(e))


def format_poset(P: Poset) -> str:
    lines = [f"n {P.n}"]
    lines += [f"rel {a} {b}" for a, b in P.covers()]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    """Linear code from its text form (normalized to full row rank)."""
    lines = list(_clean_lines(text))
    if not lines:
        raise FormatError("empty code file")
    ln, header = lines[0]
    tok = header.split()
    if len(tok) != 6 or tok[0] != "q" or tok[2] != "n" or tok[4] != "k":
        raise FormatError("expected header 'q <prime> n <len> k <rows>'", ln)
    try:
        q, n, k = int(tok[1]), int(tok[3]), int(tok[5])
    except ValueError:
        raise FormatError("non-integer header field", ln)
    if len(lines) - 1 != k:
        raise FormatError(f"expected {k} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln, line in lines[1:]:
        try:
            row = [int(t) for t in line.split()]
        except ValueError:
            raise FormatError("non-integer matrix entry", ln)
        if len(row) != n:
            raise FormatError(f"row has {len(row)} entries, expected {n}", ln)
        if any(x < 0 or x >= q for x in row):
            raise FormatError(f"entry out of range [0, {q})", ln)
        rows.append(row)
    try:
        return LinearCode(q, n, rows)
    except FieldError as e:
        raise FormatError(str(e))


def format_code(C: LinearCode) -> str:
    lines = [f"q {C.q} n {C.n} k {C.k}"]
    lines += [" ".join(str(int(x)) for x in row) for row in C.generator]
    return "\n".join(lines) + "\n"


# -- report plumbing ---------------------------------------------------------


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, Verdict):
        return x.value
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    return x


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(_jsonable(report), sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _poset_summary(P: Poset) -> dict:
    return {"n": P.n, "covers": P.covers(), "levels": [list(g) for g in P.levels]}


def _code_summary(C: LinearCode) -> dict:
    return {"q": C.q, "n": C.n, "k": C.k, "rows": C.generator.tolist()}


def _inv_dict(inv) -> dict:
    out = {"d": inv.d, "packing": inv.packing, "covering": inv.covering,
           "chebyshev": inv.chebyshev}
    if hasattr(inv, "center"):
        out["center"] = list(inv.center)
    return out


def _load(args):
    with open(args.poset, "r", encoding="utf-8") as fh:
        P = parse_poset(fh.read())
    C = None
    if getattr(args, "code", None):
        with open(args.code, "r", encoding="utf-8") as fh:
            C = parse_code(fh.read())
        if args.q is not None and args.q != C.q:
            raise FormatError(f"--q {args.q} contradicts the code header q {C.q}")
    return P, C


# -- commands ----------------------------------------------------------------


def _cmd_invariants(args) -> int:
    start = time.perf_counter()
    P, C = _load(args)
    brute = brute_invariants(P, C)
    closed = agree = None
    if P.is_hierarchical and not C.is_zero:
        inv = closed_invariants(P, C)
        closed = {"d": inv.d, "packing": inv.packing, "covering": inv.covering,
                  "chebyshev": inv.chebyshev, "t1": inv.t1, "h": inv.h, "r": inv.r}
        agree = (
            inv.d == brute.d
            and inv.packing == brute.packing
            and inv.covering == brute.covering
            and inv.chebyshev == brute.chebyshev
        )
    report = {
        "command": "invariants",
        "inputs": {"poset": _poset_summary(P), "code": _code_summary(C)},
        "verdicts": {"brute": _inv_dict(brute), "closed": closed, "agree": agree},
        "witnesses": {"chebyshev_center": list(brute.center)},
        "timings": {"total": time.perf_counter() - start},
        "seed": args.seed,
    }
    lines = [
        f"brute:  d={brute.d} packing={brute.packing} covering={brute.covering} "
        f"chebyshev={brute.chebyshev} center={''.join(map(str, brute.center))}",
    ]
    if closed is None:
        lines.append("closed: not applicable (poset not hierarchical or zero code)")
    else:
        lines.append(
            f"closed: d={closed['d']} packing={closed['packing']} "
            f"covering={closed['covering']} chebyshev={closed['chebyshev']}"
        )
        lines.append(f"closed forms {'AGREE' if agree else 'DISAGREE'} with the oracle")
    _emit(args, report, lines)
    if agree is False:
        raise InternalCheckError("closed invariants disagree with the brute oracle")
    return 0


def _cmd_decompose(args) -> int:
    start = time.perf_counter()
    P, C = _load(args)
    dec = canonical_decompose(P, C)
    verified = dec.certificate.apply_code(C) == dec.assembled()
    report = {
        "command": "decompose",
        "inputs": {"poset": _poset_summary(P), "code": _code_summary(C)},
        "verdicts": {
            "dimensions": list(dec.dimensions),
            "components": [_code_summary(comp) for comp in dec.components],
            "certificate_verified": verified,
        },
        "witnesses": {"certificate_matrix": dec.certificate.matrix.tolist()},
        "timings": {"total": time.perf_counter() - start},
        "seed": args.seed,
    }
    lines = [f"levels: {P.level_sizes}  component dims: {dec.dimensions}"]
    for i, comp in enumerate(dec.components, start=1):
        rows = [" ".join(str(int(x)) for x in r) for r in comp.generator] or ["(zero)"]
        lines.append(f"level {i} (coords {dec.level_coords[i - 1]}): " + "; ".join(rows))
    lines.append(f"certificate {'verified' if verified else 'FAILED'}")
    _emit(args, report, lines)
    if not verified:
        raise InternalCheckError("canonical certificate failed to verify")
    return 0


def _cmd_macwilliams(args) -> int:
    start = time.perf_counter()
    P, C = _load(args)
    formula = macwilliams_dual_enumerator(P, C).coefficients
    oracle = p_weight_enumerator(P.dual(), C.dual()).coefficients
    agree = formula == oracle
    report = {
        "command": "macwilliams",
        "inputs": {"poset": _poset_summary(P), "code": _code_summary(C)},
        "verdicts": {"formula": list(formula), "oracle": list(oracle), "agree": agree},
        "witnesses": {},
        "timings": {"total": time.perf_counter() - start},
        "seed": args.seed,
    }
    lines = [
        f"dual enumerator (formula): {list(formula)}",
        f"dual enumerator (oracle):  {list(oracle)}",
        f"{'AGREE' if agree else 'DISAGREE'}",
    ]
    _emit(args, report, lines)
    if not agree:
        raise InternalCheckError("MacWilliams formula disagrees with the brute oracle")
    return 0


def _cmd_enumerator(args) -> int:
    start = time.perf_counter()
    P, C = _load(args)
    oracle = p_weight_enumerator(P, C).coefficients
    formula = agree = None
    if P.is_hierarchical:
        formula = hierarchical_weight_enumerator(P, C).coefficients
        agree = formula == oracle
    report = {
        "command": "enumerator",
        "inputs": {"poset": _poset_summary(P), "code": _code_summary(C)},
        "verdicts": {
            "oracle": list(oracle),
            "formula": list(formula) if formula else None,
            "agree": agree,
        },
        "witnesses": {},
        "timings": {"total": time.perf_counter() - start},
        "seed": args.seed,
    }
    lines = [f"weight enumerator: {list(oracle)}"]
    if formula is not None:
        lines.append(f"hierarchical formula: {list(formula)} "
                     f"({'AGREE' if agree else 'DISAGREE'})")
    _emit(args, report, lines)
    if agree is False:
        raise InternalCheckError("enumerator formula disagrees with the direct count")
    return 0


def _cmd_characterize(args) -> int:
    start = time.perf_counter()
    P, _ = _load(args)
    q = args.q if args.q is not None else 2
    budget = CheckBudget(
        max_group=args.budget_group,
        max_space=args.budget_space,
        seed=args.seed,
    )
    report_obj = full_report(P, q, budget)
    report = {
        "command": "characterize",
        "inputs": {"poset": _poset_summary(P), "q": q},
        "verdicts": report_obj.verdicts,
        "witnesses": {c.name: c.witness for c in report_obj.checks if c.witness},
        "timings": {c.name: c.elapsed for c in report_obj.checks}
        | {"total": time.perf_counter() - start},
        "seed": args.seed,
        "hierarchical": report_obj.hierarchical,
    }
    lines = [f"poset on [{P.n}] with levels {P.level_sizes}; q = {q}"]
    for c in report_obj.checks:
        tag = {"holds": "HOLD", "fails": "FAIL", "skipped-capacity": "SKIP"}[c.verdict.value]
        lines.append(f"P{c.index} {c.name:<24} {tag}  {c.note}")
    lines.append(
        f"verdict: poset is {'hierarchical' if report_obj.hierarchical else 'NOT hierarchical'}"
    )
    _emit(args, report, lines)
    return 2 if report_obj.skipped else 0


def _cmd_isometries(args) -> int:
    start = time.perf_counter()
    P, _ = _load(args)
    q = args.q if args.q is not None else 2
    order = group_order(P, q)
    listing = None
    if not args.count:
        if order > args.budget_group:
            raise CapacityError(f"group of order {order} exceeds --budget-group")
        listing = [
            {"phi": list(T.phi), "U": T.tri.U.tolist()} for T in enumerate_group(P, q)
        ]
    report = {
        "command": "isometries",
        "inputs": {"poset": _poset_summary(P), "q": q},
        "verdicts": {"order": order},
        "witnesses": {"elements": listing},
        "timings": {"total": time.perf_counter() - start},
        "seed": args.seed,
    }
    lines = [f"|GL_P(F_{q})| = {order}"]
    if listing is not None:
        for el in listing:
            lines.append(f"phi={tuple(el['phi'])} U={el['U']}")
    _emit(args, report, lines)
    return 0


# -- entry point -------------------------------------------------------------


def _add_common(sp, with_code: bool):
    sp.add_argument("poset", help="poset file")
    if with_code:
        sp.add_argument("code", help="code file")
    sp.add_argument("--q", type=int, default=None, help="field order (poset-only commands)")
    sp.add_argument("--budget-group", type=int, default=2**20, dest="budget_group")
    sp.add_argument("--budget-space", type=int, default=2**16, dest="budget_space")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetcodes",
        description="Poset metrics on F_q^n: invariants, decomposition, "
        "MacWilliams identities, hierarchy characterization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, with_code in (
        ("invariants", _cmd_invariants, True),
        ("decompose", _cmd_decompose, True),
        ("macwilliams", _cmd_macwilliams, True),
        ("enumerator", _cmd_enumerator, True),
        ("characterize", _cmd_characterize, False),
        ("isometries", _cmd_isometries, False),
    ):
        sp = sub.add_parser(name)
        _add_common(sp, with_code)
        sp.set_defaults(func=fn)
    sub.choices["isometries"].add_argument("--count", action="store_true",
                                           help="print only the group order")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, FieldError, NotAPartialOrderError, ZeroCodeError,
            NonHierarchicalError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return 2
    except InternalCheckError as e:
        print(f"INTERNAL DISAGREEMENT: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
