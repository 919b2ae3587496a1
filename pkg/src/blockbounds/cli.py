"""Command-line entry point: ``blockbounds build|bound|model|verify``.

Spec files are YAML (JSON is valid YAML too). A subsection spec looks like::

    p: 3
    n: 1
    cartan: [[3, 2, 2, 2], [2, 3, 2, 2], [2, 2, 3, 2], [2, 2, 2, 3]]
    subgroup_generators: [2]
    action: [[2, 1, 3, 4]]
    mode: major

and a model spec carries a ``model`` mapping instead, e.g.
``model: {kind: metacyclic, p: 3, n1: 1, n2: 1, l1: 2, l2: 2, d: 2}``.

Exit codes: 0 success, 2 unreadable input, 3 a mathematical invariant
failed, 4 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

import yaml

from . import _linalg as la
from .errors import CapExceeded
from .gram import GramMatrix, NotPSD
from .gram_search import DEFAULT_BUDGET, max_k, quick_upper_bound
from .intbasis import DEFAULT_VERIFY_CAP, build_basis, verify_basis
from .lattice import congruent, is_lll_reduced, prune, smith_normal_form
from .models import (
    ORACLE_ORDER_CAP,
    brauer_diff,
    conjugacy_count,
    finallem_bound,
    k0_semidirect,
    metacyclic_class_count,
    metacyclic_coefficient_gram,
    metacyclic_q,
    semidirect_coefficients,
    semidirect_gram_sum,
    semidirect_model,
    verify_orthogonality,
)
from .ortho import ActionCartanMismatch, InvalidSpec, SubsectionSpec, block_of, build_m
from .qforms import MAX_ENUM_RANK, QuadraticForm, bound_outer, bound_stable, dynkin_a, tensor

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_CAP = 0, 2, 3, 4


class ParseError(ValueError):
    pass


class InvariantFailure(ValueError):
    pass


# -- spec parsing ---------------------------------------------------------------


def _int(doc: dict, key: str, default: Any = ...) -> int:
    if key not in doc:
        if default is ...:
            raise ParseError(f"missing field '{key}'")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"field '{key}' must be an integer, got {v!r}")
    return v


def _matrix(value: Any, name: str, square: bool = False) -> list[list[int]]:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError(f"'{name}' must be a non-empty list of rows")
    width = len(value[0])
    for r in value:
        if len(r) != width:
            raise ParseError(f"'{name}' is not rectangular")
        for x in r:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"'{name}' has a non-integer entry {x!r}")
    if square and width != len(value):
        raise ParseError(f"'{name}' must be square")
    return [list(r) for r in value]


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ParseError(f"{path} is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("spec file must hold a mapping")
    return doc


def parse_subsection(doc: dict) -> tuple[SubsectionSpec, bool]:
    p, n = _int(doc, "p"), _int(doc, "n")
    cartan = _matrix(doc.get("cartan"), "cartan", square=True)
    if "l" in doc and _int(doc, "l") != len(cartan):
        raise ParseError(f"l = {doc['l']} does not match the {len(cartan)}x{len(cartan)} Cartan matrix")
    gens = doc.get("subgroup_generators", [])
    if not isinstance(gens, list) or not all(isinstance(g, int) and not isinstance(g, bool) for g in gens):
        raise ParseError("'subgroup_generators' must be a list of integers")
    if any(g % p == 0 for g in gens):
        raise ParseError("subgroup generators must be coprime to p")
    action = doc.get("action")
    if action is not None:
        action = _matrix(action, "action") if action else []
        if any(len(a) != len(cartan) for a in action):
            raise ParseError("each action entry must permute 1..l")
    mode = doc.get("mode", "non-major")
    if mode not in ("major", "non-major"):
        raise ParseError("mode must be 'major' or 'non-major'")
    try:
        spec = SubsectionSpec.create(p, n, cartan, gens, action)
    except InvalidSpec as exc:
        raise InvariantFailure(str(exc)) from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return spec, mode == "major"


def _spec_echo(spec: SubsectionSpec, major: bool) -> dict:
    gens = list(spec.subgroup.generators())
    return {
        "p": spec.modulus.p,
        "n": spec.modulus.n,
        "l": spec.l,
        "cartan": [list(r) for r in spec.cartan],
        "subgroup": list(spec.subgroup.elements),
        "subgroup_generators": gens,
        "action": [[x + 1 for x in spec.action[g]] for g in gens],
        "mode": "major" if major else "non-major",
    }


# -- report assembly ---------------------------------------------------------------


def build_report(spec: SubsectionSpec, major: bool, delta: Fraction) -> dict:
    m = build_m(spec)
    red = prune(m, delta)
    return {
        "input": _spec_echo(spec, major),
        "M": m.to_list(),
        "reduced": red.reduced.to_list(),
        "transform": [list(r) for r in red.transform],
        "elementary_divisors": list(smith_normal_form(m)),
    }


def _form_from_args(args, l: int) -> QuadraticForm:
    if args.form == "a":
        return dynkin_a(l)
    if not args.form_matrix:
        raise ParseError("--form custom needs --form-matrix")
    try:
        g = yaml.safe_load(args.form_matrix)
    except yaml.YAMLError as exc:
        raise ParseError(f"--form-matrix: {exc}") from exc
    g = _matrix(g, "--form-matrix", square=True)
    if len(g) != l:
        raise ParseError(f"custom form must have rank l = {l}")
    q = QuadraticForm(tuple(tuple(r) for r in g), 2)
    if not q.is_positive_definite():
        raise InvariantFailure("custom form is not positive definite")
    return q


def bound_report(spec: SubsectionSpec, major: bool, args) -> dict:
    rep = build_report(spec, major, args.delta)
    q = _form_from_args(args, spec.l)
    mod = spec.modulus
    bounds: dict[str, Any] = {"form": [list(r) for r in q.gram], "form_denominator": q.denom}
    try:
        bounds["outer"] = bound_outer(q, spec.cartan, mod.order)
    except ValueError:
        bounds["outer"] = None
    if spec.is_trivial_action():
        k0 = k0_semidirect(mod.p, mod.n, spec.subgroup.r, spec.subgroup.s)
        bounds["stable"] = bound_stable(q, spec.cartan, k0)
    tq = tensor(q, dynkin_a(mod.m))
    bounds["quick"] = quick_upper_bound(rep["M"], tq, check_minimum=tq.rank <= MAX_ENUM_RANK)
    rep["bounds"] = bounds
    candidates = [v for v in (bounds.get("outer"), bounds.get("stable"), bounds["quick"]) if v is not None]
    best = min(candidates)
    source = "form bound"
    if args.search == "on":
        res = max_k(rep["reduced"], args.budget)
        rep["search"] = {
            "k": res.k,
            "exact": res.exact,
            "nodes": res.nodes,
            "witness": [list(r) for r in res.witness.rows] if res.witness else None,
        }
        if res.exact and res.k <= best:
            best, source = res.k, "search"
    rep["best"] = best
    rep["best_source"] = source
    rep["interpretation"] = f"{'k(B)' if major else 'k0(B)'} ≤ {best}"
    return rep


def model_report(doc: dict, cap: int) -> dict:
    kind = doc.get("kind")
    if kind == "semidirect":
        p, n, gamma = _int(doc, "p"), _int(doc, "n"), _int(doc, "gamma")
        mdl = semidirect_model(p, n, gamma)
        basis = build_basis(mdl.modulus, mdl.subgroup)
        a = semidirect_coefficients(mdl, basis)
        rep: dict[str, Any] = {
            "kind": kind,
            "params": {"p": p, "n": n, "gamma": gamma},
            "s": mdl.s,
            "r": mdl.r,
            "rows": [[str(v), mult] for v, mult in mdl.rows],
            "basis": [str(b) for b in basis.basis_elems],
            "gram": la.gram_of_rows(a, len(basis)),
            "k0_formula": k0_semidirect(p, n, mdl.r, mdl.s),
            "gram_sum": semidirect_gram_sum(mdl, basis),
        }
        k, k0 = conjugacy_count(p, n, gamma, cap)
        rep["oracle"] = {"k": k, "k0": k0}
        return rep
    if kind == "metacyclic":
        keys = ("p", "n1", "n2", "l1", "l2", "d")
        vals = {k: _int(doc, k) for k in keys}
        g1, g2 = doc.get("gamma1"), doc.get("gamma2")
        mdl = metacyclic_q(**vals, gamma1=g1, gamma2=g2)
        gram = metacyclic_coefficient_gram(mdl)
        rep = {
            "kind": kind,
            "params": {**vals, "gamma1": mdl.gamma1, "gamma2": mdl.gamma2},
            "rows": [[[str(e) for e in r.entries], r.multiplicity] for r in mdl.rows],
            "row_count": mdl.row_count,
            "orthogonal": verify_orthogonality(mdl),
            "gram": gram.to_list(),
            "finallem": finallem_bound(**vals),
            "brauer_diff": brauer_diff(vals["p"], vals["n1"], vals["n2"], vals["l1"], vals["l2"]),
        }
        res = max_k(gram)
        rep["max_k"] = {"k": res.k, "exact": res.exact}
        rep["oracle_k"] = metacyclic_class_count(**vals, gamma1=mdl.gamma1, gamma2=mdl.gamma2, cap=cap)
        return rep
    raise ParseError("model kind must be 'semidirect' or 'metacyclic'")


def verify_report(spec: SubsectionSpec, major: bool, args) -> dict:
    """Run the invariant suite; every entry is a (name, passed) pair."""
    checks: list[tuple[str, bool]] = []
    m = build_m(spec)
    checks.append(("M positive semidefinite", m.rank() is not None))
    ml = spec.modulus.m
    sym = all(
        block_of(m, s, t, ml) == la.transpose(block_of(m, t, s, ml)) for s in range(spec.l) for t in range(spec.l)
    )
    checks.append(("block symmetry A_st = A_ts^T", sym))
    red = prune(m, args.delta)
    checks.append(("reduction reproduces M", red.reproduces(m)))
    checks.append(("LLL size reduction and Lovasz condition", is_lll_reduced(red.reduced, args.delta)))
    again = prune(red.reduced, args.delta)
    if red.reduced.size <= 6:
        checks.append(("pruning is idempotent up to congruence", congruent(again.reduced, red.reduced)))
    full = max_k(m, args.budget, reduce=False)
    reduced = max_k(red.reduced, args.budget)
    checks.append(("max_k unchanged by reduction", full.exact and reduced.exact and full.k == reduced.k))
    r = red.reduced.size
    shear = [[1 if j >= i else 0 for j in range(r)] for i in range(r)]
    moved = GramMatrix(la.matmul(la.matmul(shear, red.reduced.to_list()), la.transpose(shear)))
    checks.append(("max_k invariant under congruence", max_k(moved, args.budget).k == reduced.k))
    checks.append(("witness validates", full.witness is None or full.witness.validates(m)))
    checks.append(("trace bounds max_k", full.k <= m.trace()))
    basis_cap = min(args.cap, DEFAULT_VERIFY_CAP)
    if spec.modulus.order <= basis_cap:
        basis = build_basis(spec.modulus, spec.subgroup)
        checks.append(("integral basis verified", verify_basis(basis, basis_cap)))
    first = json.dumps(build_report(spec, major, args.delta), sort_keys=True)
    second = json.dumps(build_report(spec, major, args.delta), sort_keys=True)
    checks.append(("deterministic report", first == second))
    return {"input": _spec_echo(spec, major), "checks": [{"name": n, "passed": ok} for n, ok in checks]}


# -- output ---------------------------------------------------------------------------


def _fmt_matrix(rows) -> str:
    return str(GramMatrix(rows, check=False)) if rows else "()"


def render_text(command: str, rep: dict) -> str:
    lines = []
    if "input" in rep:
        i = rep["input"]
        lines.append(f"p^n = {i['p']}^{i['n']}, l = {i['l']}, N = {i['subgroup']}, mode = {i['mode']}")
    if command in ("build", "bound"):
        lines += ["M =", _fmt_matrix(rep["M"]), "reduced =", _fmt_matrix(rep["reduced"])]
        lines.append("elementary divisors: " + " ".join(map(str, rep["elementary_divisors"])))
    if command == "bound":
        b = rep["bounds"]
        for key in ("outer", "stable", "quick"):
            if b.get(key) is not None:
                lines.append(f"{key} bound: {b[key]}")
        if "search" in rep:
            s = rep["search"]
            tag = "exact" if s["exact"] else "lower bound only (budget exhausted)"
            lines.append(f"search: k = {s['k']} ({tag}, {s['nodes']} nodes)")
        lines.append(rep["interpretation"])
    if command == "model":
        lines.append(f"{rep['kind']} model {rep['params']}")
        for row in rep["rows"]:
            lines.append(f"  {row[0]}  x{row[1]}")
        lines += ["coefficient Gram =", _fmt_matrix(rep["gram"])]
        if rep["kind"] == "semidirect":
            lines.append(f"k0 (formula) = {rep['k0_formula']}, Dynkin sum = {rep['gram_sum']}")
            lines.append(f"class count oracle: k = {rep['oracle']['k']}, k0 = {rep['oracle']['k0']}")
        else:
            lines.append(f"rows = {rep['row_count']}, orthogonality {'holds' if rep['orthogonal'] else 'FAILS'}")
            lines.append(f"closed-form bound = {rep['finallem']}, k - l = {rep['brauer_diff']}, max_k = {rep['max_k']['k']}")
            lines.append(f"class count oracle: k(B) = {rep['oracle_k']}")
    if command == "verify":
        for c in rep["checks"]:
            lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}")
    return "\n".join(lines)


def emit(command: str, rep: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(rep, sort_keys=True, indent=2)
    return render_text(command, rep)


# -- argument handling ---------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text}") from exc


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blockbounds", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--delta", type=_fraction, default=Fraction(3, 4), help="LLL parameter (default 3/4)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--cap", type=int, default=ORACLE_ORDER_CAP, help="size cap for brute-force checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", parents=[common], help="build and reduce M")
    p_build.add_argument("spec")

    p_bound = sub.add_parser("bound", parents=[common], help="form bounds and exact search")
    p_bound.add_argument("spec")
    p_bound.add_argument("--form", choices=("a", "custom"), default="a")
    p_bound.add_argument("--form-matrix", help="doubled Gram of a custom form, e.g. '[[2,-1],[-1,2]]'")
    p_bound.add_argument("--search", choices=("on", "off"), default="on")

    p_model = sub.add_parser("model", parents=[common], help="semidirect or metacyclic model data")
    p_model.add_argument("kind", nargs="?", choices=("semidirect", "metacyclic"))
    p_model.add_argument("--spec", help="YAML file with a 'model' mapping")
    for name in ("p", "n", "gamma", "n1", "n2", "l1", "l2", "d", "gamma1", "gamma2"):
        p_model.add_argument(f"--{name}", type=int)

    p_verify = sub.add_parser("verify", parents=[common], help="run the invariant suite on a spec")
    p_verify.add_argument("spec")
    return parser


def _model_doc(args) -> dict:
    if args.spec:
        doc = load_document(args.spec)
        doc = doc.get("model", doc)
        if not isinstance(doc, dict):
            raise ParseError("'model' must be a mapping")
        return doc
    if not args.kind:
        raise ParseError("give a model kind or --spec")
    doc: dict[str, Any] = {"kind": args.kind}
    for name in ("p", "n", "gamma", "n1", "n2", "l1", "l2", "d", "gamma1", "gamma2"):
        if getattr(args, name) is not None:
            doc[name] = getattr(args, name)
    return doc


def run(args) -> tuple[int, str]:
    if args.command == "model":
        rep = model_report(_model_doc(args), args.cap)
        return EXIT_OK, emit("model", rep, args.json)
    spec, major = parse_subsection(load_document(args.spec))
    if args.command == "build":
        rep = build_report(spec, major, args.delta)
    elif args.command == "bound":
        rep = bound_report(spec, major, args)
    else:
        rep = verify_report(spec, major, args)
        code = EXIT_OK if all(c["passed"] for c in rep["checks"]) else EXIT_INVARIANT
        return code, emit("verify", rep, args.json)
    return EXIT_OK, emit(args.command, rep, args.json)


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    if not Fraction(1, 4) < args.delta < 1:
        print("error: --delta must lie strictly between 1/4 and 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        code, out = run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc} (raise --cap to allow it)", file=sys.stderr)
        return EXIT_CAP
    except ActionCartanMismatch as exc:
        print(f"invariant violated (action/Cartan mismatch): {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvariantFailure, NotPSD, ValueError) as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
