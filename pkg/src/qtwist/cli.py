"""Command-line front end.

Subcommands: classify, minimal, twist, faltings, prob, family, verify,
density, empirical.  Output is JSON (default) with exact rationals as
"num/den" strings; --pretty prints key: value lines.  Exit codes:
0 success, 2 invalid input, 3 internal table miss / tie.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import families, graphs, localdata, oracle
from .exactnum import fmt_rat, is_squarefree, parse_rat
from .weierstrass import AInvariants, Signature, signature_of, twist_sig

SCHEMA_VERSION = 1


def _sig_from_args(args) -> Signature:
    if getattr(args, "ainvs", None):
        parts = [parse_rat(x) for x in args.ainvs.split(",")]
        if len(parts) != 5:
            raise ValueError("--ainvs needs a1,a2,a3,a4,a6")
        return signature_of(AInvariants(*parts))
    if getattr(args, "sig", None):
        parts = [parse_rat(x) for x in args.sig.split(",")]
        if len(parts) != 3:
            raise ValueError("--sig needs c4,c6,delta")
        return Signature(*parts)
    raise ValueError("one of --ainvs or --sig is required")


def _check_d(d: int) -> int:
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"d = {d} must be a nonzero square-free integer")
    return d


def _sig_json(s: Signature) -> dict:
    return {"c4": fmt_rat(s.c4), "c6": fmt_rat(s.c6), "delta": fmt_rat(s.delta)}


def _cmd_classify(args):
    s = _sig_from_args(args)
    c = localdata.classify(s, args.p)
    return {
        "p": args.p,
        "kodaira": str(c.kodaira),
        "u_p": fmt_rat(c.u_p),
        "minimal_p_signature": list(c.minimal_psig.as_tuple()),
        "conditions": sorted(c.conditions_fired),
    }


def _cmd_minimal(args):
    s = _sig_from_args(args)
    minimal, u = localdata.global_minimal(s)
    return {"input": _sig_json(s), "minimal": _sig_json(minimal), "u": fmt_rat(u)}


def _cmd_twist(args):
    s = _sig_from_args(args)
    d = _check_d(args.d)
    tw = twist_sig(s, d)
    minimal, u = localdata.global_minimal(tw)
    return {"d": d, "twist": _sig_json(tw),
            "twist_minimal": _sig_json(minimal), "u": fmt_rat(u)}


def _parse_t(args):
    return parse_rat(args.t) if args.t is not None else None


def _cmd_faltings(args):
    t = _parse_t(args)
    d = _check_d(args.d)
    res = graphs.faltings_by_theorem(args.type, t, d)
    cross = graphs.faltings_by_volumes(args.type, t, d)
    if cross != res.vertex:
        raise graphs.TieError(
            f"volume argmax {cross} disagrees with decision table {res.vertex}")
    return {"type": args.type, "t": fmt_rat(t) if t is not None else None,
            "d": d, "vertex": res.vertex, "d_condition": res.d_condition,
            "probability": fmt_rat(res.probability)}


def _cmd_prob(args):
    t = _parse_t(args)
    rows = graphs.prob_table(args.type, t)
    return {"type": args.type, "t": fmt_rat(t) if t is not None else None,
            "branches": [{"vertex": r.vertex, "d_condition": r.d_condition,
                          "probability": fmt_rat(r.probability)} for r in rows]}


def _cmd_family(args):
    if args.family == "l39":
        if args.t is None:
            raise ValueError("family l39 requires --t")
        t = parse_rat(args.t)
        sigs = families.l39_signatures(t)
        return {"family": "l39", "t": fmt_rat(t), "members": [
            {"index": i, **_sig_json(s), "j": fmt_rat(families.l39_j(i, t))}
            for i, s in zip(families.L39_INDICES, sigs)]}
    if args.family == "l211":
        cls = families.l211_class(args.variant)
        return {"family": "l211", "variant": cls.variant, "curves": [
            {"label": c.label,
             "ainvs": [fmt_rat(a) for a in (c.ainvs.a1, c.ainvs.a2, c.ainvs.a3,
                                            c.ainvs.a4, c.ainvs.a6)],
             **_sig_json(c.sig)} for c in cls.curves]}
    raise ValueError("family must be l39 or l211")


def _cmd_verify(args):
    t = _parse_t(args)
    d = _check_d(args.d)
    rep = oracle.verify_class(args.type, t, d, precision_bits=args.bits,
                              variant=args.variant)
    return {"type": args.type, "t": fmt_rat(t) if t is not None else None,
            "d": d,
            "vertices": [{"label": v.label,
                          "neron_volume": mp_str(v.neron_volume),
                          "faltings_height": mp_str(v.faltings_height)}
                         for v in rep.vertices],
            "argmin": rep.argmin_label, "theorem": rep.theorem_label,
            "match": rep.match}


def mp_str(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def _cmd_density(args):
    rep = oracle.squarefree_density(args.p, args.n)
    return {"p": rep.p, "bound": rep.bound,
            "divisible_fraction": rep.divisible_fraction,
            "squarefree_density": rep.squarefree_density}


def _cmd_empirical(args):
    t = _parse_t(args)
    freq = oracle.empirical_prob(args.type, t, args.n)
    return {"type": args.type, "t": fmt_rat(t) if t is not None else None,
            "bound": args.n, "frequencies": freq}


def _add_curve_flags(p):
    p.add_argument("--ainvs", help="a1,a2,a3,a4,a6 (rationals)")
    p.add_argument("--sig", help="c4,c6,delta (rationals)")


TYPE_CHOICES = graphs.ALL_TYPES


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qtwist",
        description="Faltings curves in twisted isogeny classes: local "
                    "tables, decision rules, and numeric verification.")
    ap.add_argument("--pretty", action="store_true",
                    help="human-readable output instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="local data of a curve at p")
    _add_curve_flags(p)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("minimal", help="global minimal signature")
    _add_curve_flags(p)
    p.set_defaults(fn=_cmd_minimal)

    p = sub.add_parser("twist", help="quadratic twist and its minimal model")
    _add_curve_flags(p)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=_cmd_twist)

    p = sub.add_parser("faltings", help="Faltings vertex of a twisted class")
    p.add_argument("--type", required=True, choices=TYPE_CHOICES)
    p.add_argument("--t", help="hauptmodul value (genus-0 types)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(fn=_cmd_faltings)

    p = sub.add_parser("prob", help="all d-branches for a (type, t)")
    p.add_argument("--type", required=True, choices=TYPE_CHOICES)
    p.add_argument("--t")
    p.set_defaults(fn=_cmd_prob)

    p = sub.add_parser("family", help="parametrized family data")
    p.add_argument("family", choices=["l39", "l211"])
    p.add_argument("--t")
    p.add_argument("--variant", default="a", choices=["a", "b"])
    p.set_defaults(fn=_cmd_family)

    p = sub.add_parser("verify", help="numeric height argmin cross-check")
    p.add_argument("--type", required=True, choices=["L3_9", "L2_11"])
    p.add_argument("--t")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bits", type=int,
                   default=int(os.environ.get("QTWIST_BITS", "128")))
    p.add_argument("--variant", default="a", choices=["a", "b"])
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("density", help="sieved square-free densities")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=10**6)
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("empirical", help="sieved vertex frequencies")
    p.add_argument("--type", required=True, choices=TYPE_CHOICES)
    p.add_argument("--t")
    p.add_argument("--n", type=int, default=10**5)
    p.set_defaults(fn=_cmd_empirical)
    return ap


def _emit(obj: dict, pretty: bool) -> None:
    if pretty:
        def flat(prefix, v):
            if isinstance(v, dict):
                for k, w in v.items():
                    flat(f"{prefix}{k}.", w)
            elif isinstance(v, list):
                for i, w in enumerate(v):
                    flat(f"{prefix}{i}.", w)
            else:
                print(f"{prefix[:-1]}: {v}")
        flat("", obj)
    else:
        print(json.dumps(obj))


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        result = args.fn(args)
    except (ValueError, ZeroDivisionError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    except (localdata.TableMissError, graphs.TieError, AssertionError) as e:
        print(json.dumps({"error": f"internal: {e}"}), file=sys.stderr)
        return 3
    out = {"schema_version": SCHEMA_VERSION, "command": args.command}
    out.update(result)
    _emit(out, args.pretty)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
