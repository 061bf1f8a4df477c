"""Command-line front end.

Every command prints one JSON report on stdout. Exit codes: 0 when a
verdict was computed, 1 on parse or precondition failure, 2 when internal
cross-checks disagree (always a bug).

Inputs are named objects from workspace files (``-w FILE``, repeatable) or
direct paths to single-object JSON files.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import barycentric as bc
from . import formats as F
from .laws import run_all
from .lawvere import dl_via_potentials, l_distance
from .measure import DiscreteMeasure
from .numeric import DEFAULT_TOL, NumericModeError, fmt, to_number
from .ometric import tensor, validate
from .storder import (
    METHODS,
    NotOrdered,
    OracleBoundError,
    marginal_lift,
    order_density_approx,
    permutation_split,
    split,
)
from .transport import wasserstein

KINDS = ("spaces", "lawvere", "measures", "tuples", "cones", "point_measures", "vectors", "functions")


class CLIError(Exception):
    """Parse or precondition failure (exit code 1)."""


class Disagreement(Exception):
    """Internal cross-check failed (exit code 2)."""


def _guess_kind(obj: dict) -> str:
    for key, kind in (
        ("dist", "spaces"),
        ("dl", "lawvere"),
        ("atoms", "point_measures"),
        ("items", "tuples"),
        ("rows", "cones"),
        ("vector", "vectors"),
        ("table", "functions"),
        ("weights", "measures"),
    ):
        if key in obj:
            return kind
    raise CLIError(f"cannot tell what kind of object this is: keys {sorted(obj)}")


class Workspace:
    """Named spaces, measures, cones and tuples; fixed numeric mode."""

    def __init__(self, approx: bool = False, tol: float = DEFAULT_TOL):
        self.approx = approx
        self.tol = tol
        self.raw: dict[str, dict] = {k: {} for k in KINDS}
        self.cache: dict = {}

    def load(self, path: str) -> None:
        obj = F.load_json(path)
        if not isinstance(obj, dict):
            raise CLIError(f"{path}: expected a JSON object")
        if any(k in obj for k in KINDS):
            for kind in KINDS:
                self.raw[kind].update(obj.get(kind, {}))
        else:
            self.raw[_guess_kind(obj)][Path(path).stem] = obj

    def _raw(self, kind: str, ref) -> dict:
        if isinstance(ref, dict):
            return ref
        if ref in self.raw[kind]:
            return self.raw[kind][ref]
        if Path(ref).is_file():
            obj = F.load_json(ref)
            if _guess_kind(obj) != kind:
                raise CLIError(f"{ref} is not a {kind[:-1]}")
            self.raw[kind][ref] = obj
            return obj
        raise CLIError(f"no {kind[:-1]} named {ref!r}")

    def space(self, ref=None):
        if ref is None:
            if len(self.raw["spaces"]) != 1:
                raise CLIError("object does not name its space and the workspace has no single space")
            ref = next(iter(self.raw["spaces"]))
        key = ("spaces", ref if isinstance(ref, str) else id(ref))
        if key not in self.cache:
            self.cache[key] = F.space_from_json(self._raw("spaces", ref), self.approx, self.tol)
        return self.cache[key]

    def measure(self, ref) -> DiscreteMeasure:
        obj = self._raw("measures", ref)
        return F.measure_from_json(obj, self.space(obj.get("space")))

    def tuple(self, ref):
        obj = self._raw("tuples", ref)
        X = self.space(obj.get("space"))
        items = tuple(F.label(v) for v in obj["items"])
        return X, items

    def cone(self, ref):
        return F.cone_from_json(self._raw("cones", ref))

    def point_measure(self, ref):
        return F.point_measure_from_json(self._raw("point_measures", ref))

    def vector(self, ref):
        return tuple(to_number(a) for a in self._raw("vectors", ref)["vector"])

    def function(self, ref):
        return F.function_table_from_json(self._raw("functions", ref))


def cmd_validate(ws, a):
    X = ws.space(a.space)
    v = validate(X)
    return {
        "command": "validate",
        "valid": not v,
        "verdict": "valid" if not v else "invalid",
        "violations": [{"axiom": x.axiom, "indices": list(x.indices)} for x in v],
    }


def cmd_dist(ws, a):
    p, q = ws.measure(a.p), ws.measure(a.q)
    res = wasserstein(p, q)
    dual = res.potential.dual_value(p, q)
    if p.base.exact and dual != res.value:
        raise Disagreement(f"duality gap: primal {res.value} dual {dual}")
    return {
        "command": "dist",
        "value": fmt(res.value),
        "coupling": F.coupling_to_json(res.coupling),
        "potential": {F.key_of(x): fmt(v) for x, v in res.potential.f.items()},
        "dual_value": fmt(dual),
    }


def cmd_dl(ws, a):
    X = ws.space(a.space)
    L = l_distance(X)
    out = {"command": "dl"}
    if a.x is None:
        out.update(F.lawvere_to_json(L))
        return out
    x, y = F.label(a.x), F.label(a.y)
    if x not in X.index or y not in X.index:
        raise CLIError("unknown point")
    out["value"] = fmt(L.d(x, y))
    if X.exact:
        val, wit = dl_via_potentials(X, x, y)
        if val != L.d(x, y):
            raise Disagreement(f"shortest path {L.d(x, y)} != potential LP {val}")
        out["witness"] = {F.key_of(k): fmt(v) for k, v in wit.items()}
    return out


def _witness_json(w):
    out = {"verdict": w.verdict}
    if w.coupling is not None:
        out["coupling"] = F.coupling_to_json(w.coupling)
    if w.upper_set is not None:
        out["upper_set"] = [F.unlabel(x) for x in w.upper_set]
    if w.function is not None:
        out["function"] = {F.key_of(x): fmt(v) for x, v in w.function.items()}
        out["gap"] = fmt(w.gap)
    return out


def cmd_order_check(ws, a):
    p, q = ws.measure(a.p), ws.measure(a.q)
    names = list(METHODS) if a.method == "all" else [a.method]
    results = {}
    for name in names:
        try:
            results[name] = METHODS[name](p, q)
        except OracleBoundError as exc:
            if a.method != "all":
                raise CLIError(str(exc)) from None
    verdicts = {w.verdict for w in results.values()}
    report = {
        "command": "order-check",
        "verdict": next(iter(verdicts)) if len(verdicts) == 1 else None,
        "agree": len(verdicts) == 1,
        "methods": {k: _witness_json(w) for k, w in results.items()},
    }
    bad = [k for k, w in results.items() if not w.verify(p, q)]
    if len(verdicts) > 1 or bad:
        report["unverified"] = bad
        raise Disagreement(report)
    return report


def _refusal(exc: NotOrdered, command: str):
    raise CLIError({"command": command, "refused": True, "reason": str(exc), "witness": _witness_json(exc.witness)})


def cmd_split(ws, a):
    X, xs = ws.tuple(a.xs)
    Y, ys = ws.tuple(a.ys)
    if X != Y:
        raise CLIError("tuples live on different spaces")
    try:
        s = split(X, xs, ys)
    except NotOrdered as exc:
        _refusal(exc, "split")
    return {
        "command": "split",
        "size": s.size,
        "phi": list(s.phi.assignment),
        "psi": list(s.psi.assignment),
        "pairs": [[F.unlabel(x), F.unlabel(y)] for x, y in s.pairs(xs, ys)],
    }


def cmd_perm_split(ws, a):
    X, xs = ws.tuple(a.xs)
    Y, ys = ws.tuple(a.ys)
    if X != Y or len(xs) != len(ys):
        raise CLIError("tuples must share a space and a length")
    try:
        sigma = permutation_split(X, xs, ys)
    except NotOrdered as exc:
        _refusal(exc, "perm-split")
    return {"command": "perm-split", "sigma": sigma}


def cmd_density(ws, a):
    p, q = ws.measure(a.p), ws.measure(a.q)
    try:
        xs, ys = order_density_approx(p, q, a.eps)
    except NotOrdered as exc:
        _refusal(exc, "density")
    return {
        "command": "density",
        "n": len(xs),
        "xs": [F.unlabel(x) for x in xs],
        "ys": [F.unlabel(y) for y in ys],
    }


def cmd_lift(ws, a):
    X, pbar = ws.tuple(a.p)
    Y, qbar = ws.tuple(a.q)
    obj = ws._raw("tuples", a.r)
    rbar = tuple(F.label(v) for v in obj["items"])
    if any(not isinstance(r, tuple) or len(r) != 2 for r in rbar):
        raise CLIError("the pair tuple must list [x, y] items")
    T = tensor(X, Y)
    if any(r not in T.index for r in rbar):
        raise CLIError("pair tuple has points outside X x Y")
    try:
        lift = marginal_lift(X, Y, rbar, pbar, qbar)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    return {
        "command": "lift",
        "tuple": [F.unlabel(s) for s in lift.tuple],
        "sigma": lift.sigma,
        "sigma_prime": lift.sigma_prime,
        "distance": fmt(lift.distance),
    }


def cmd_barycenter(ws, a):
    return {"command": "barycenter", "barycenter": F.vec_to_json(bc.barycenter(ws.point_measure(a.measure)))}


def cmd_separate(ws, a):
    space = ws.cone(a.cone)
    v = ws.vector(a.vector)
    if len(v) != space.dim:
        raise CLIError("vector dimension does not match the cone")
    h = bc.separate(space, v)
    out = {"command": "separate", "in_cone": h is None, "functional": None}
    if h is not None:
        out["functional"] = F.vec_to_json(h)
        out["value_at_vector"] = fmt(bc.dot(h, v))
    return out


def cmd_classify_map(ws, a):
    f = ws.function(a.function)
    samples = [ws.point_measure(s) for s in a.samples]
    try:
        res = bc.classify_map(f, ws.cone(a.space_in), ws.cone(a.space_out), samples, norm=a.norm)
    except (bc.NotAMorphism, ValueError) as exc:
        raise CLIError(str(exc)) from None
    return {
        "command": "classify-map",
        "verdict": res.verdict,
        "certificates": {
            k: {"atoms": [F.vec_to_json(x) for x in p.atoms], "weights": [fmt(w) for w in p.weights]}
            for k, p in res.certificates.items()
        },
    }


def cmd_laws(ws, a):
    spaces = [ws.space(name) for name in ws.raw["spaces"]] or None
    if spaces and not all(X.exact for X in spaces):
        raise CLIError("law suites run in exact mode")
    rep = run_all(a.seed, a.count, spaces)
    out = {
        "command": "laws",
        "seed": a.seed,
        "count": a.count,
        "suites": {k: {"violations": len(v), "examples": v[:3]} for k, v in rep.items()},
    }
    if any(rep.values()):
        raise Disagreement(out)
    return out


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; here 2 is reserved for disagreements."""

    def error(self, message):
        raise CLIError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ordkant", description=__doc__.splitlines()[0])
    ap.add_argument("-w", "--workspace", action="append", default=[], help="workspace JSON file")
    ap.add_argument("--mode", choices=["exact", "approx"], default="exact")
    ap.add_argument("--tol", type=float, default=DEFAULT_TOL)
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate")
    s.add_argument("space")
    s.set_defaults(fn=cmd_validate)
    s = sub.add_parser("dist")
    s.add_argument("p")
    s.add_argument("q")
    s.set_defaults(fn=cmd_dist)
    s = sub.add_parser("dl")
    s.add_argument("space")
    s.add_argument("x", nargs="?")
    s.add_argument("y", nargs="?")
    s.set_defaults(fn=cmd_dl)
    s = sub.add_parser("order-check")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--method", choices=["coupling", "uppersets", "duality", "all"], default="all")
    s.set_defaults(fn=cmd_order_check)
    for name, fn in (("split", cmd_split), ("perm-split", cmd_perm_split)):
        s = sub.add_parser(name)
        s.add_argument("xs")
        s.add_argument("ys")
        s.set_defaults(fn=fn)
    s = sub.add_parser("density")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--eps", default="1/100")
    s.set_defaults(fn=cmd_density)
    s = sub.add_parser("lift")
    s.add_argument("r", help="pair tuple over X x Y")
    s.add_argument("p", help="tuple over X")
    s.add_argument("q", help="tuple over Y")
    s.set_defaults(fn=cmd_lift)
    s = sub.add_parser("barycenter")
    s.add_argument("measure")
    s.set_defaults(fn=cmd_barycenter)
    s = sub.add_parser("separate")
    s.add_argument("cone")
    s.add_argument("vector")
    s.set_defaults(fn=cmd_separate)
    s = sub.add_parser("classify-map")
    s.add_argument("function")
    s.add_argument("--in", dest="space_in", required=True)
    s.add_argument("--out", dest="space_out", required=True)
    s.add_argument("--samples", nargs="+", required=True)
    s.add_argument("--norm", choices=sorted(bc.NORMS), default="l1", help="metric for the shortness check")
    s.set_defaults(fn=cmd_classify_map)
    s = sub.add_parser("laws")
    s.add_argument("--count", type=int, default=50)
    s.set_defaults(fn=cmd_laws)
    return ap


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    """Execute one command; returns the exit code. Exactly one JSON report goes to ``out``."""
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except CLIError as exc:
        out.write(F.dumps({"command": None, "error": str(exc)}) + "\n")
        print(f"error: {exc}", file=err)
        return 1
    ws = Workspace(approx=a.mode == "approx", tol=a.tol)
    try:
        for path in a.workspace:
            ws.load(path)
        report = a.fn(ws, a)
    except Disagreement as exc:
        payload = exc.args[0]
        if not isinstance(payload, dict):
            payload = {"command": a.command, "disagreement": str(payload)}
        out.write(F.dumps(payload) + "\n")
        print(f"internal cross-check disagreement: {payload}", file=err)
        return 2
    except CLIError as exc:
        payload = exc.args[0]
        if not isinstance(payload, dict):
            payload = {"command": a.command, "error": str(payload)}
        out.write(F.dumps(payload) + "\n")
        print(f"error: {payload.get('reason') or payload.get('error')}", file=err)
        return 1
    except (F.FormatError, NumericModeError, ValueError, KeyError) as exc:
        out.write(F.dumps({"command": a.command, "error": str(exc)}) + "\n")
        print(f"error: {exc}", file=err)
        return 1
    out.write(F.dumps(report) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
