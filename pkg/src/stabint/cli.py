"""Command line front end.  Every command prints one JSON object per result.

Exit codes: 0 when a result was computed (negative verdicts included),
1 when the input lies outside what can be decided, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Optional

from . import dfinite, dynsys, integrate, ore, stability
from .elementary import ElemSum
from .ore import Kind, OreOperator
from .parse import (
    ExprSyntaxError,
    NormalizationReject,
    parse,
    parse_elementary,
    parse_operator,
    parse_poly,
    parse_ratfunc,
)
from .poly import format_poly, integer_roots
from .ratfunc import Derivation, format_ratfunc
from .series import TruncSeries

EXIT_OK, EXIT_UNDECIDED, EXIT_INPUT = 0, 1, 2


class Undecided(Exception):
    """Raised by handlers to report an out-of-fragment or unsupported input."""

    def __init__(self, record: dict):
        super().__init__(record.get("reason", ""))
        self.record = record


Result = tuple[dict, int]


# -- serialization ----------------------------------------------------------


def _obstruction_json(o: stability.Obstruction) -> dict:
    out: dict = {"kind": o.kind}
    if o.index is not None:
        out["index"] = o.index
    if o.pole is not None:
        out["pole"] = format_poly(o.pole)
    if o.detail:
        out["detail"] = o.detail
    return out


def verdict_json(text: str, v: stability.Verdict, depth: Optional[int] = None) -> dict:
    rec = {"input": text, "derivation": v.derivation.value, "setting": v.setting, "verdict": v.status}
    if isinstance(v, stability.NotStable):
        rec["obstruction"] = _obstruction_json(v.obstruction)
    elif isinstance(v, stability.OutOfFragment):
        rec["reason"] = v.reason
    elif depth:
        if v.witness_available:
            rec["witness_chain"] = [str(link) for link in v.chain(depth).links]
        else:
            rec["note"] = v.note
    return rec


def _frac(c: Fraction) -> str:
    return str(Fraction(c))


def _series_json(s: TruncSeries) -> list:
    return [_frac(c) for c in s.coeffs]


# -- argument helpers --------------------------------------------------------


def _derivation(name: str) -> Derivation:
    return Derivation(name)


def parse_series(text: str, T: Optional[int] = None) -> tuple[TruncSeries, Optional[OreOperator]]:
    """Named generator (with its recurrence) or a comma-separated list of rationals."""
    text = text.strip()
    if text in ("exp", "geom") or text.startswith("poly:"):
        return dfinite.named_series(text, T)
    values = [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    if not values:
        raise ValueError("empty series")
    return TruncSeries(tuple(values)), None


# -- stability ----------------------------------------------------------------


def stable_record(text: str, derivation: Derivation = Derivation.DDX, setting: Optional[str] = None,
                  depth: Optional[int] = None) -> Result:
    setting = setting or ("field" if derivation is Derivation.EULER else "elementary")
    parsed = parse(text)
    if parsed.value is None:
        rec = {"input": text, "derivation": derivation.value, "setting": setting,
               "verdict": "out_of_fragment", "reason": parsed.reject}
        return rec, EXIT_UNDECIDED
    v = stability.decide(parsed.value, derivation, setting)
    code = EXIT_UNDECIDED if isinstance(v, stability.OutOfFragment) else EXIT_OK
    return verdict_json(text, v, depth), code


def cmd_stable(args) -> Result:
    return stable_record(args.expr, _derivation(args.derivation), args.over, args.depth)


def cmd_witness(args) -> Result:
    d = _derivation(args.derivation)
    rec, code = stable_record(args.expr, d, args.over, None)
    if rec["verdict"] == "not_stable":
        rec["error"] = "no witness chain: the input is not stable"
        return rec, EXIT_INPUT
    if rec["verdict"] != "stable":
        return rec, code
    v = stability.decide(parse_elementary(args.expr), d, rec["setting"])
    if not v.witness_available:
        rec["note"] = v.note
        return rec, EXIT_UNDECIDED
    chain = v.chain(args.depth)
    rec["witness_chain"] = [str(link) for link in chain.links]
    rec["verified"] = stability.check_chain(v.input, chain)
    return rec, EXIT_OK


def cmd_moments(args) -> Result:
    f = parse_ratfunc(args.expr)
    i = stability.moment_obstruction(f, args.N)
    return {"input": args.expr, "N": args.N, "index": i}, EXIT_OK


# -- integration ----------------------------------------------------------------


def cmd_integrable(args) -> Result:
    d = _derivation(args.derivation)
    e = parse_elementary(args.expr)
    rec: dict = {"input": args.expr, "derivation": d.value}
    if e.is_rational():
        g = integrate.integrable_in_field(e.as_rational(), d)
        if g is None:
            rec["status"] = "not_integrable"
            rec["obstruction"] = "nonzero simple part after Hermite reduction"
        else:
            rec["status"] = "integrable"
            rec["witness"] = format_ratfunc(g)
        return rec, EXIT_OK
    term = e.single()
    if d is Derivation.DDX and term is not None and term.logpow == 0 and term.has_exp:
        try:
            h = integrate.fexpg_solve(term.f, term.expo.diff())
        except integrate.Unsupported as exc:
            raise Undecided({**rec, "status": "unsupported", "reason": str(exc)})
        if h is None:
            rec["status"] = "not_integrable"
            rec["obstruction"] = "no rational h with f = h' + h*g'"
        else:
            rec["status"] = "integrable"
            rec["witness"] = str(ElemSum.term(h, 0, term.expo))
        return rec, EXIT_OK
    if d is Derivation.DDX and term is not None and term.logpow == 1 and not term.has_exp:
        lh = integrate.liouville_hardy(term.f)
        if lh is None:
            rec["status"] = "not_integrable"
            rec["obstruction"] = "f is not of the form c/x + g'"
        else:
            rec["status"] = "integrable"
            rec["witness"] = {"c": _frac(lh.c), "g": format_ratfunc(lh.g)}
        return rec, EXIT_OK
    raise Undecided({**rec, "status": "unsupported", "reason": "only f, f*exp(g) and f*log(x) are handled"})


def cmd_lh(args) -> Result:
    f = parse_ratfunc(args.expr)
    lh = integrate.liouville_hardy(f)
    rec: dict = {"input": args.expr}
    if lh is None:
        rec["status"] = "not_of_form"
    else:
        rec["status"] = "of_form"
        rec["witness"] = {"c": _frac(lh.c), "g": format_ratfunc(lh.g)}
    return rec, EXIT_OK


def cmd_dred(args) -> Result:
    f = parse_ratfunc(args.expr)
    ok = integrate.is_differential_reduced(f)
    rec = {"input": args.expr, "status": "reduced" if ok else "not_reduced"}
    if not f.den.is_constant():
        r = integrate.residue_polynomial(f)
        rec["witness"] = format_poly(r, "z")
        if not ok:
            roots = [] if r.is_zero() else integer_roots(r)
            rec["obstruction"] = {"integer_residues": roots} if roots else {"integer_residues": "all"}
    return rec, EXIT_OK


def cmd_risch(args) -> Result:
    P, a, b = parse_poly(args.P), parse_poly(args.a), parse_poly(args.b)
    sol = integrate.risch_de_poly(P, a, b, args.m)
    rec: dict = {"P": args.P, "a": args.a, "b": args.b, "m": args.m}
    if sol is None:
        rec["status"] = "no_solution"
    else:
        rec["status"] = "solution"
        rec["witness"] = format_poly(sol.Q)
    return rec, EXIT_OK


def cmd_skolem(args) -> Result:
    e = parse_elementary(args.expr)
    term = e.single()
    if term is None or term.logpow or not term.has_exp:
        raise Undecided({"input": args.expr, "status": "unsupported", "reason": "expected f*exp(g) with g nonconstant"})
    try:
        idx = integrate.skolem_scan(term.f, term.expo, args.max)
    except integrate.Unsupported as exc:
        raise Undecided({"input": args.expr, "status": "unsupported", "reason": str(exc)})
    return {"input": args.expr, "max": args.max, "status": "computed", "integrable_indices": idx}, EXIT_OK


# -- operators --------------------------------------------------------------


def _is_constant_text(text: str) -> bool:
    return not any(ch in text for ch in "xnDS")


def cmd_ore(args) -> Result:
    A = parse_operator(args.A)
    rec: dict = {"op": args.ore_cmd, "A": args.A}
    if args.ore_cmd == "apply":
        if A.kind is Kind.DIFF:
            out = ore.apply(A, parse_ratfunc(args.B))
            rec["result"] = format_ratfunc(out)
        else:
            values = [Fraction(v) for v in args.B.split(",") if v.strip()]
            rec["result"] = [_frac(v) for v in ore.apply(A, values, args.start)]
        rec["B"] = args.B
        return rec, EXIT_OK
    B = parse_operator(args.B)
    if B.kind is not A.kind:
        # a bare constant on one side takes the kind of the other
        if _is_constant_text(args.A):
            A = parse_operator(args.A, B.kind)
        else:
            B = parse_operator(args.B, A.kind)
    rec["B"] = args.B
    if args.ore_cmd == "mul":
        rec["result"] = str(A * B)
    elif args.ore_cmd == "divmod":
        q, r = ore.right_divmod(A, B) if args.side == "right" else ore.left_divmod(A, B)
        rec.update(side=args.side, quotient=str(q), remainder=str(r))
    elif args.ore_cmd == "gcrd":
        rec["result"] = str(ore.gcrd(A, B))
    else:
        rec["result"] = str(ore.lclm(A, B))
    return rec, EXIT_OK


# -- D-finite ----------------------------------------------------------------


def cmd_dfinite(args) -> Result:
    sub = args.df_cmd
    if sub == "guess":
        s, _ = parse_series(args.series, args.T)
        L = dfinite.guess_min_annihilator(s, args.max_ord, args.max_deg)
        rec = {"series": args.series, "max_ord": args.max_ord, "max_deg": args.max_deg}
        if L is None:
            rec["status"] = "none"
        else:
            rec.update(status="found", operator=str(L), order=L.order)
        return rec, EXIT_OK
    if sub == "certify":
        s, P = parse_series(args.series, args.T)
        if args.rec:
            P = parse_operator(args.rec, Kind.SHIFT)
        if P is None:
            raise ValueError("a recurrence (--rec) is needed for explicit coefficient lists")
        try:
            c = dfinite.eventual_stability_certificate(s, P, args.max_m, args.window)
        except dfinite.NoCertificateWithinLimits as exc:
            raise Undecided({"series": args.series, "status": "no_certificate", "reason": str(exc),
                             "profile": exc.profile})
        return {
            "series": args.series, "status": "certified", "m": c.m, "stable_order": c.stable_order,
            "annihilators": [str(L) for L in c.annihilators], "bound_used": c.bound_used,
            "deg_bound": c.deg_bound, "profile": list(c.profile), "truncation": c.truncation,
        }, EXIT_OK
    if sub == "bound":
        P = parse_operator(args.rec, Kind.SHIFT)
        deg_bound, order_bound = dfinite.eventual_stability_bound(P)
        return {"rec": args.rec, "deg_bound": deg_bound, "order_bound": order_bound}, EXIT_OK
    if sub == "integral":
        L = parse_operator(args.op, Kind.DIFF)
        r = dfinite.integral_diff(L)
        return {"op": args.op, "result": str(r.operator), "minimality": r.minimality}, EXIT_OK
    if sub == "formal-integral":
        s, _ = parse_series(args.series, args.T)
        return {"series": args.series, "result": _series_json(dfinite.formal_integral(s))}, EXIT_OK
    if args.direction == "d2s":
        L = parse_operator(args.op, Kind.DIFF)
        return {"direction": "d2s", "op": args.op, "result": str(dfinite.diff_to_rec(L))}, EXIT_OK
    if args.series is None:
        raise ValueError("s2d needs a series")
    P = parse_operator(args.op, Kind.SHIFT)
    s, _ = parse_series(args.series, args.T)
    L = dfinite.rec_to_diff(P, s)
    return {"direction": "s2d", "op": args.op, "series": args.series, "result": str(L)}, EXIT_OK


# -- dynamical systems --------------------------------------------------------


def _label(a) -> object:
    return a if isinstance(a, (str, int)) else str(a)


def _sorted(subset) -> list:
    return sorted((_label(a) for a in subset), key=lambda v: (isinstance(v, str), str(v) if isinstance(v, str) else v))


def _report_json(sys_: dynsys.FiniteDynSys, check: bool) -> dict:
    r = dynsys.analyze(sys_)
    rec: dict = {"fix": _sorted(r.fix), "per": _sorted(r.per), "stab": _sorted(r.stab), "attrac": _sorted(r.attrac)}
    if check:
        g = dynsys.check_godelle(sys_)
        rec["godelle"] = {"chain": g.chain, "invariant": g.invariant, "surjective": g.surjective,
                          "stab_equals_attrac": g.stab_equals_attrac, "maximal": g.maximal, "ok": g.ok}
    return rec


def cmd_dynsys(args) -> Result:
    if args.dyn_cmd == "godelle":
        sys_ = dynsys.godelle_truncation(args.N, args.M)
        return {"N": args.N, "M": args.M, **_report_json(sys_, args.check)}, EXIT_OK
    with open(args.file, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        sys_ = dynsys.FiniteDynSys.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed system description: {exc}")
    return _report_json(sys_, args.check), EXIT_OK


# -- batch --------------------------------------------------------------------


def cmd_batch(args) -> Result:
    with open(args.file, encoding="utf-8") as fh:
        lines = [line.strip() for line in fh]
    lines = [line for line in lines if line]
    d = _derivation(args.derivation)

    def one(text: str) -> dict:
        rec, _ = guarded(lambda: stable_record(text, d, args.over, args.depth), {"input": text})
        return rec

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        records = list(pool.map(one, lines))
    for rec in records:
        print(json.dumps(rec))
    return {}, EXIT_OK


# -- plumbing ---------------------------------------------------------------------


def guarded(fn: Callable[[], Result], context: dict) -> Result:
    """Run a handler, mapping failures onto error records and exit codes."""
    try:
        return fn()
    except Undecided as exc:
        return exc.record, EXIT_UNDECIDED
    except NormalizationReject as exc:
        return {**context, "status": "out_of_fragment", "reason": str(exc)}, EXIT_UNDECIDED
    except (integrate.Unsupported, stability.WitnessUnavailable) as exc:
        return {**context, "status": "unsupported", "reason": str(exc)}, EXIT_UNDECIDED
    except ExprSyntaxError as exc:
        return {**context, "status": "error", "error": str(exc), "position": exc.pos}, EXIT_INPUT
    except (ValueError, TypeError, ZeroDivisionError, OSError) as exc:
        return {**context, "status": "error", "error": str(exc)}, EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stabint", description="Stability and integrability in differential fields.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_derivation(sp):
        sp.add_argument("--derivation", choices=["ddx", "euler"], default="ddx")
        return sp

    sp = with_derivation(sub.add_parser("stable", help="decide stability of an expression"))
    sp.add_argument("expr")
    sp.add_argument("--over", choices=["elementary", "field"], default=None,
                    help="ambient structure (default: elementary for ddx, field for euler)")
    sp.add_argument("--depth", type=int, default=None, help="attach a witness chain of this depth")
    sp.set_defaults(handler=cmd_stable)

    sp = with_derivation(sub.add_parser("witness", help="build and verify a witness chain"))
    sp.add_argument("expr")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--over", choices=["elementary", "field"], default=None)
    sp.set_defaults(handler=cmd_witness)

    sp = sub.add_parser("moments", help="first moment index i with x^i*f not integrable")
    sp.add_argument("expr")
    sp.add_argument("-N", type=int, default=10)
    sp.set_defaults(handler=cmd_moments)

    sp = with_derivation(sub.add_parser("integrable", help="elementary integrability in the supported shapes"))
    sp.add_argument("expr")
    sp.set_defaults(handler=cmd_integrable)

    for name, handler, text in (("lh", cmd_lh, "is f of the form c/x + g'"),
                                ("dred", cmd_dred, "differential-reduced test")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("expr")
        sp.set_defaults(handler=handler)

    sp = sub.add_parser("risch", help="solve P = b*Q' + (a + (m+1)*b')*Q for polynomial Q")
    sp.add_argument("--P", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.set_defaults(handler=cmd_risch)

    sp = sub.add_parser("skolem", help="indices i <= max with x^i*f*exp(g) integrable")
    sp.add_argument("expr")
    sp.add_argument("--max", type=int, default=10)
    sp.set_defaults(handler=cmd_skolem)

    sp = sub.add_parser("ore", help="operator arithmetic")
    osub = sp.add_subparsers(dest="ore_cmd", required=True)
    for name in ("mul", "divmod", "gcrd", "lclm", "apply"):
        op = osub.add_parser(name)
        op.add_argument("A")
        op.add_argument("B")
        if name == "divmod":
            op.add_argument("--side", choices=["right", "left"], default="right")
        if name == "apply":
            op.add_argument("--start", type=int, default=0)
    sp.set_defaults(handler=cmd_ore)

    sp = sub.add_parser("dfinite", help="D-finite series tools")
    dsub = sp.add_subparsers(dest="df_cmd", required=True)
    g = dsub.add_parser("guess")
    g.add_argument("series")
    g.add_argument("--max-ord", type=int, default=3)
    g.add_argument("--max-deg", type=int, default=3)
    g.add_argument("-T", type=int, default=None)
    c = dsub.add_parser("certify")
    c.add_argument("series")
    c.add_argument("--rec", default=None)
    c.add_argument("--max-m", type=int, default=6)
    c.add_argument("--window", type=int, default=2)
    c.add_argument("-T", type=int, default=None)
    cv = dsub.add_parser("convert")
    cv.add_argument("direction", choices=["d2s", "s2d"])
    cv.add_argument("op")
    cv.add_argument("series", nargs="?", default=None)
    cv.add_argument("-T", type=int, default=None)
    b = dsub.add_parser("bound")
    b.add_argument("rec")
    i = dsub.add_parser("integral")
    i.add_argument("op")
    fi = dsub.add_parser("formal-integral")
    fi.add_argument("series")
    fi.add_argument("-T", type=int, default=None)
    sp.set_defaults(handler=cmd_dfinite)

    sp = sub.add_parser("dynsys", help="finite dynamical systems")
    ysub = sp.add_subparsers(dest="dyn_cmd", required=True)
    a = ysub.add_parser("analyze")
    a.add_argument("file")
    a.add_argument("--check", action="store_true", help="also check Godelle's theorem on the instance")
    gt = ysub.add_parser("godelle")
    gt.add_argument("-N", type=int, default=3)
    gt.add_argument("-M", type=int, default=3)
    gt.add_argument("--check", action="store_true")
    sp.set_defaults(handler=cmd_dynsys)

    sp = with_derivation(sub.add_parser("batch", help="decide stability for each line of a file"))
    sp.add_argument("file")
    sp.add_argument("--over", choices=["elementary", "field"], default=None)
    sp.add_argument("--depth", type=int, default=None)
    sp.add_argument("--workers", type=int, default=4)
    sp.set_defaults(handler=cmd_batch)
    return p


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    context = {"input": args.expr} if hasattr(args, "expr") else {}
    rec, code = guarded(lambda: args.handler(args), context)
    if rec:
        print(json.dumps(rec))
    return code


if __name__ == "__main__":
    sys.exit(main())
