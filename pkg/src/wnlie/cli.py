"""Command-line front end: ``wnlie --input ALG.json --command radical``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from fractions import Fraction
from typing import Callable

from . import errors as E
from .exactla.poly import format_rational
from .families import KNGenus0, from_family_json
from .families.affine import affine_coordinatize, ideal_shape_check, is_lie_isomorphism, standard_embedding, tensor_algebra
from .fdlie import (
    FinDimLie,
    center,
    centroid,
    derivations,
    filtration_theoremA,
    h2_trivial,
    is_characteristic,
    is_perfect,
    is_solvable,
    paper_radical,
    series,
    simple_quotients,
    solvable_radical,
)
from .graded import (
    GradedLie,
    Window,
    abelian_section_probe,
    cocycle_holds,
    find_reduction,
    from_explicit_json,
    graded_h2_degree0,
    window_view,
)
from .identities import NcPolynomial, central_identity_p2, verify_central_identity
from .roots import TorusSpec, default_torus, qm_cover_check, rank1_classify, root_data, simple_module

SCHEMA_VERSION = 1
DEFAULT_SEED = 0


# --- input ------------------------------------------------------------------------


def parse_input(source) -> tuple[object, dict]:
    """Read an algebra (or other payload) from a path, ``-`` or a dict; returns ``(payload, options)``.

    Accepted shapes: finite-dimensional algebra JSON, explicit graded JSON,
    family JSON, ``{"nvars": ...}`` polynomials, ``{"module": ...}`` and the
    envelope ``{"algebra": ..., "options": {...}}``.
    """
    if isinstance(source, dict):
        obj = source
    else:
        text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise E.ParseError(exc.msg, location=f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(obj, dict):
        raise E.ParseError("top-level JSON must be an object", location="$")
    options = {}
    if "algebra" in obj:
        options = dict(obj.get("options", {}))
        obj = obj["algebra"]
    return parse_payload(obj), options


def parse_payload(obj: dict):
    if "family" in obj:
        return from_family_json(obj)
    if "lattice_rank" in obj:
        return from_explicit_json(obj)
    if "nvars" in obj:
        return NcPolynomial.from_json(obj)
    if "module" in obj:
        return obj["module"]
    if "dim" in obj:
        return FinDimLie.from_json(obj, check=not obj.get("unchecked", False))
    raise E.ParseError("unrecognized input: expected an algebra, family, polynomial or module", location="$")


def emit(algebra, window: Window | None = None) -> str:
    """Canonical JSON text for an algebra; ``parse_payload(json.loads(emit(g)))`` rebuilds it."""
    if isinstance(algebra, GradedLie):
        obj = algebra.to_json(window)
    elif isinstance(algebra, KNGenus0):
        obj = algebra.spec
    else:
        obj = getattr(algebra, "spec", None) or algebra.to_json()
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


# --- helpers ---------------------------------------------------------------------------


class Certificates:
    def __init__(self):
        self.items: list[dict] = []

    def add(self, name: str, passed, witness=None):
        item = {"name": name, "passed": passed}
        if witness is not None:
            item["witness"] = witness
        self.items.append(item)

    @property
    def failed(self) -> bool:
        return any(c["passed"] is False for c in self.items)


def _rows(s) -> list:
    return [[format_rational(x) for x in r] for r in s.rows]


def _need_finite(alg) -> FinDimLie:
    if not isinstance(alg, FinDimLie):
        raise E.UnsupportedType("this command needs a finite-dimensional algebra")
    return alg


def _need_graded(alg) -> GradedLie:
    if isinstance(alg, KNGenus0):
        if alg.punctures == [Fraction(0)]:
            return alg.as_witt()
        raise E.UnsupportedType("only kn_genus0 with the single puncture 0 carries a Z-grading")
    if not isinstance(alg, GradedLie):
        raise E.UnsupportedType("this command needs a graded algebra")
    return alg


def _window(opts: dict, default: int, rank: int = 1) -> Window:
    r = opts.get("window") or default
    if r < 1:
        raise ValueError("window radius must be at least 1")
    return Window.radius(r, rank)


def _json_scalar(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    return x


# --- commands ------------------------------------------------------------------------------


def cmd_describe(alg, opts, cert):
    if isinstance(alg, FinDimLie):
        return {
            "kind": "finite",
            "name": alg.name,
            "dim": alg.dim,
            "labels": list(alg.labels),
            "field": alg.field.to_json(),
            "abelian": alg.is_abelian(),
            "solvable": is_solvable(alg),
            "perfect": is_perfect(alg),
            "center_dim": center(alg).dim,
            "derived_dims": [s.dim for s in series(alg, "derived")],
            "lower_central_dims": [s.dim for s in series(alg, "lower_central")],
            "algebra": json.loads(emit(alg)),
        }
    if isinstance(alg, KNGenus0):
        return {"kind": "kn_genus0", "punctures": alg.spec["punctures"], "meta": alg.meta}
    if isinstance(alg, NcPolynomial):
        return {"kind": "nc_polynomial", "nvars": alg.nvars, "degree": alg.degree, "multilinear": alg.is_multilinear, "polynomial": alg.to_json()}
    g = _need_graded(alg)
    w = _window(opts, 3, g.rank)
    view = window_view(g, w)
    bad = view.interior_jacobi_violations(limit=1)
    cert.add("interior_jacobi", not bad, [list(t) for t in bad] or None)
    return {
        "kind": "graded",
        "name": g.name,
        "rank": g.rank,
        "meta": g.meta,
        "window": [list(b) for b in w.box],
        "component_dims": {",".join(map(str, d)): g.dim(d) for d in g.support(w)},
        "algebra": json.loads(emit(g, None if g.spec is not None else w)),
    }


def cmd_series(alg, opts, cert):
    g = _need_finite(alg)
    kind = opts.get("kind") or "derived"
    terms = series(g, kind)
    return {"kind": kind, "dims": [s.dim for s in terms], "terms": [_rows(s) for s in terms]}


def cmd_radical(alg, opts, cert):
    g = _need_finite(alg)
    rad = solvable_radical(g)
    prad = paper_radical(g)
    z = center(g)
    ideals = simple_quotients(g, opts.get("seed", DEFAULT_SEED))
    cert.add("radical_equals_solvable_radical", prad == rad)
    return {
        "radical": _rows(prad),
        "radical_dim": prad.dim,
        "codim": g.dim - prad.dim,
        "solvable_radical_dim": rad.dim,
        "equals_center": prad == z,
        "center_dim": z.dim,
        "maximal_ideals": [{"dim": r.ideal.dim, "codim": r.codim, "quotient_centroid_dim": r.quotient_centroid_dim} for r in ideals],
    }


def cmd_centroid(alg, opts, cert):
    return centroid(_need_finite(alg), seed=opts.get("seed", DEFAULT_SEED)).to_json()


def cmd_derivations(alg, opts, cert):
    return derivations(_need_finite(alg)).to_json()


def cmd_characteristic(alg, opts, cert):
    g = _need_finite(alg)
    out = []
    for k, rep in enumerate(simple_quotients(g, opts.get("seed", DEFAULT_SEED))):
        res = is_characteristic(g, rep.ideal)
        witness = None if res.characteristic else {"vector": [format_rational(x) for x in res.vector]}
        cert.add(f"ideal[{k}]_characteristic", res.characteristic, witness)
        out.append({"codim": rep.codim, "characteristic": res.characteristic})
    return {"ideals": out, "checked": len(out)}


def cmd_filtration(alg, opts, cert):
    g = _need_finite(alg)
    rep = filtration_theoremA(g)
    for k, s in enumerate(rep.steps):
        cert.add(f"step[{k}]_perfect_ideal", s.perfect_ideal)
        cert.add(f"step[{k}]_central_extension", s.central_extension)
    return {"finite_radical_dim": rep.finite_radical.dim, "steps": [s.to_json() for s in rep.steps], "dims": [t.dim for t in rep.terms]}


def cmd_h2(alg, opts, cert):
    return h2_trivial(_need_finite(alg)).to_json()


def cmd_h2_degree0(alg, opts, cert):
    g = _need_graded(alg)
    w = _window(opts, 8)
    rep = graded_h2_degree0(g, w)
    out = rep.to_json()
    out["window"] = w.box[0][1]
    ratios = {}
    if rep.dim == 1 and rep.values.get(2):
        for m in (3, 4):
            if m in rep.values:
                ratios[f"c{m}/c2"] = format_rational(rep.ratio(m))
    out["ratios"] = ratios
    if rep.dim:
        cert.add("cocycle_identity", cocycle_holds(g, w, rep.representative))
    return out


def cmd_identity_verify(alg, opts, cert):
    p = alg if isinstance(alg, NcPolynomial) else central_identity_p2()
    d = int(opts.get("degree") or 2)
    strategy = opts.get("strategy") or "exhaustive_matrix_units"
    rep = verify_central_identity(p, d, strategy, int(opts.get("trials") or 1000), opts.get("seed", DEFAULT_SEED), opts.get("jobs", 1))
    cert.add("central", rep.central, rep.to_json()["noncentral_witness"])
    cert.add("attains_one", rep.attains_one, rep.to_json()["attainment_witness"])
    return rep.to_json()


def cmd_reduce(alg, opts, cert):
    g = _need_graded(alg)
    w = _window(opts, 3, g.rank)
    try:
        red = find_reduction(g, w)
    except E.NoReductionFound as exc:
        cert.add("reduction_found", False, {"offending_fiber": exc.offending_fiber, "tried": exc.tried})
        return {"pi": None}
    cert.add("reduction_found", True)
    if "fiber_scan" in red.certificate:
        cert.add("kernel_meets_support_only_at_origin", red.certificate["fiber_scan"])
    return {"pi": list(red.pi), "certificate": red.certificate}


def cmd_probe(alg, opts, cert):
    g = _need_graded(alg)
    top = opts.get("window") or 12
    depths = opts.get("depths") or list(range(4, top + 1))
    rep = abelian_section_probe(g, depths, member=lambda d: d[0] >= 1)
    return rep.to_json()


def _torus(view, opts):
    if "torus" in opts:
        return TorusSpec([[Fraction(x) for x in h] for h in opts["torus"]])
    return default_torus(view)


def _root_view(alg, opts):
    if isinstance(alg, FinDimLie):
        return alg
    g = _need_graded(alg)
    return window_view(g, _window(opts, 6, g.rank))


def cmd_roots(alg, opts, cert):
    v = _root_view(alg, opts)
    datum = root_data(v, _torus(v, opts))
    return datum.to_json()


def cmd_rank1(alg, opts, cert):
    v = _root_view(alg, opts)
    datum = root_data(v, _torus(v, opts))
    rep = rank1_classify(datum)
    if rep.consistent is not None:
        cert.add("family_label_consistent", rep.consistent)
    return rep.to_json()


def _modules(alg, opts):
    spec = alg if isinstance(alg, dict) else opts.get("module")
    if spec:
        hw = spec["highest_weight"]
        return [simple_module(spec["algebra"], hw if isinstance(hw, int) else tuple(hw))]
    return [simple_module("sl2", m) for m in range(0, 11)] + [simple_module("sl3", (1, 0)), simple_module("sl3", (1, 1))]


def cmd_qm_check(alg, opts, cert):
    out = []
    for m in _modules(alg, opts):
        v = qm_cover_check(m)
        cert.add(f"{m.algebra}{list(m.highest_weight)}_covered", v.covered, None if v.witness is None else list(v.witness))
        out.append({"module": m.to_json(), "verdict": v.to_json()})
    return {"modules": out}


def _affine_inputs(alg, opts):
    g = _need_finite(alg)
    if "s" in opts:
        s = FinDimLie.from_json(opts["s"])
        emb = [[Fraction(x) for x in r] for r in opts["embedding"]]
        return g, s, emb
    if not hasattr(g, "tensor_factors"):
        raise E.UnsupportedType("give options s and embedding, or a tensor family input")
    return g, g.tensor_factors[0], standard_embedding(g)


def cmd_affine(alg, opts, cert):
    g, s, emb = _affine_inputs(alg, opts)
    co = affine_coordinatize(g, s, emb)
    a = co.algebra
    if co.case == "b" and a.is_commutative and a.is_associative:
        rebuilt = tensor_algebra(s, a)
        cert.add("round_trip_isomorphism", is_lie_isomorphism(rebuilt, g, co.transport(s)))
    return {"algebra": a.to_json(), "certificate": co.certificate}


def cmd_ideal_shape(alg, opts, cert):
    g = _need_finite(alg)
    if not hasattr(g, "tensor_factors"):
        raise E.UnsupportedType("ideal-shape needs a tensor family input")
    s, a = g.tensor_factors
    tests = opts.get("tests") or [(0, a.basis_vector(j)) for j in range(a.dim)]
    tests = [(int(i), [Fraction(x) for x in v]) for i, v in tests]
    out = []
    for k, r in enumerate(ideal_shape_check(g, tests)):
        cert.add(f"test[{k}]_shape", r.matches)
        out.append({"lie_ideal_dim": r.lie_ideal_dim, "coordinate_ideal_dim": r.coordinate_ideal_dim, "matches": r.matches})
    return {"tests": out}


COMMANDS: dict[str, Callable] = {
    "describe": cmd_describe,
    "series": cmd_series,
    "radical": cmd_radical,
    "centroid": cmd_centroid,
    "derivations": cmd_derivations,
    "characteristic-check": cmd_characteristic,
    "filtration": cmd_filtration,
    "h2": cmd_h2,
    "h2-degree0": cmd_h2_degree0,
    "identity-verify": cmd_identity_verify,
    "reduce-grading": cmd_reduce,
    "probe-abelian": cmd_probe,
    "roots": cmd_roots,
    "rank1": cmd_rank1,
    "qm-check": cmd_qm_check,
    "affine-coordinatize": cmd_affine,
    "ideal-shape": cmd_ideal_shape,
}

NO_INPUT_OK = {"identity-verify", "qm-check"}


def dispatch(command: str, algebra, options: dict) -> tuple[dict, int]:
    """Run one command; returns the report and the exit code (0 ok, 2 failed certificate)."""
    if command not in COMMANDS:
        raise E.UnknownCommand(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    if algebra is None and command not in NO_INPUT_OK:
        raise ValueError(f"{command} needs --input")
    cert = Certificates()
    start = time.perf_counter()
    results = COMMANDS[command](algebra, options, cert)
    report = {
        "v": SCHEMA_VERSION,
        "command": command,
        "options": {k: v for k, v in sorted(options.items()) if k not in ("timing", "jobs") and not callable(v)},
        "results": results,
        "certificates": cert.items,
        "status": "certificate_failed" if cert.failed else "ok",
    }
    if options.get("timing"):
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, 2 if cert.failed else 0


def error_report(command: str | None, exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("location", "triple", "offending_fiber", "factor"):
        val = getattr(exc, attr, None)
        if val is not None:
            err[attr] = _jsonable(val)
    return {"v": SCHEMA_VERSION, "command": command, "error": err, "status": "error"}


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    lines = [f"command: {report.get('command')}", f"status: {report.get('status')}"]
    if "error" in report:
        lines.append(f"error: {report['error']['type']}: {report['error']['message']}")
    for c in report.get("certificates", []):
        mark = {True: "PASS", False: "FAIL", None: "INCONCLUSIVE"}[c["passed"]]
        lines.append(f"[{mark}] {c['name']}")

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}.{k}" if prefix else str(k), val[k])
        else:
            lines.append(f"{prefix}: {json.dumps(_jsonable(val), sort_keys=True, ensure_ascii=False)}")

    walk("", report.get("results", {}))
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".wnlie-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wnlie", description="Exact analyses of Lie algebras from JSON input.")
    p.add_argument("positional_command", nargs="?", metavar="COMMAND", help="same as --command")
    p.add_argument("--input", "-i", help="JSON file, or - for stdin")
    p.add_argument("--command", "-c", help=f"one of: {', '.join(COMMANDS)}")
    p.add_argument("--window", type=int, help="window radius")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o", help="write the report here (atomically)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--strategy", help="identity-verify strategy: exhaustive_matrix_units or randomized")
    p.add_argument("--trials", type=int, help="random trials for randomized strategies")
    p.add_argument("--degree", type=int, help="matrix size d for identity-verify")
    p.add_argument("--kind", help="series kind: derived or lower_central")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command or args.positional_command
    fmt = args.format
    try:
        if command is None:
            raise E.UnknownCommand("no command given")
        algebra, options = (None, {})
        if args.input is not None:
            algebra, options = parse_input(args.input)
        for key in ("window", "strategy", "trials", "degree", "kind"):
            val = getattr(args, key)
            if val is not None:
                options[key] = val
        options.setdefault("seed", args.seed)
        if args.seed != DEFAULT_SEED:
            options["seed"] = args.seed
        options["jobs"] = max(1, args.jobs)
        if args.timing:
            options["timing"] = True
        report, code = dispatch(command, algebra, options)
    except Exception as exc:  # noqa: BLE001 - every failure becomes an error report
        if not isinstance(exc, (E.WnlieError, ValueError, KeyError, TypeError, OSError, ArithmeticError)):
            raise
        report, code = error_report(command, exc), 1
    text = render(report, fmt)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    if code == 1:
        sys.stderr.write(f"wnlie: {report['error']['type']}: {report['error']['message']}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
