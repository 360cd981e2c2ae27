"""Command-line surface: compute, classify, verify, generate, report.

Exit codes: 0 on success, 1 when a requested verification fails, 2 on parse or
validation errors. Errors go to stderr as one JSON object per failure so
scripts can consume them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import balanced as bl
from . import complexes as cx
from . import posets as ps
from . import toric as tc
from .errors import DehnsomError, ParseError
from .generators import GeneratorSpec, generate, parse_spec
from .reports import VerificationReport, report_from_dict
from .suite import iter_suite

VERIFY_IDENTITIES = ("ds", "flag-ds", "simplicial-ds", "flag-poset", "stanley",
                     "swartz", "1sing", "generalized", "main", "euler-rel",
                     "lower-eulerian", "dual", "all")


def _threads() -> int | None:
    raw = os.environ.get("DEHNSOM_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ParseError(f"DEHNSOM_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ParseError("DEHNSOM_THREADS must be >= 0")
    return n if n > 1 else None  # 0 and 1 force the sequential path


def _load_target(args):
    """Resolve --gen SPEC or a file path into a complex/balanced/poset object."""
    if args.gen:
        spec = parse_spec(args.gen)
        if args.seed is not None:
            spec = GeneratorSpec(spec.name, spec.params, seed=args.seed)
        obj = generate(spec)
        return obj, args.gen
    if not args.target:
        raise ParseError("provide a file path or --gen SPEC")
    text = Path(args.target).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return ps.parse_poset_json(text), args.target
    if "colors:" in text:
        return bl.parse_balanced(text), args.target
    return cx.parse_facets(text), args.target


def _load_colors(path: str) -> dict:
    kappa = {}
    for token in Path(path).read_text().replace("colors:", " ").split():
        if "=" not in token:
            raise ParseError(f"bad color assignment {token!r}")
        label, color = token.split("=", 1)
        kappa[cx._parse_label(label)] = int(color)
    return kappa


def _as_balanced(obj, colors_file=None):
    if isinstance(obj, bl.BalancedComplex):
        return obj
    if isinstance(obj, ps.GradedPoset):
        return ps.order_complex(obj)
    if colors_file:
        return bl.validate_coloring(obj, _load_colors(colors_file))
    raise ParseError("a balanced complex is required: give a poset, a balanced "
                     "file, or --colors")


def _need_poset(obj) -> ps.GradedPoset:
    if not isinstance(obj, ps.GradedPoset):
        raise ParseError("this command needs a graded poset input")
    return obj


def _need_complex(obj) -> cx.SimplicialComplex:
    if isinstance(obj, bl.BalancedComplex):
        return obj.complex
    if isinstance(obj, cx.SimplicialComplex):
        return obj
    raise ParseError("this command needs a simplicial-complex input")


def _emit(args, payload, human: str):
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def cmd_compute(args) -> int:
    obj, name = _load_target(args)
    what = args.what
    if what == "f":
        f = cx.f_vector(_need_complex(obj))
        _emit(args, {"f": list(f.entries)}, f"f = {list(f.entries)}")
    elif what == "h":
        h = cx.h_vector(_need_complex(obj))
        human = f"h = {list(h.entries)}" + ("  (impure input)" if h.impure else "")
        _emit(args, {"h": list(h.entries), "impure": h.impure}, human)
    elif what == "euler":
        chi = cx.reduced_euler_characteristic(_need_complex(obj))
        _emit(args, {"euler": chi}, f"chi_tilde = {chi}")
    elif what == "flag":
        bal = _as_balanced(obj, args.colors)
        ff, fh = bl.flag_f_vector(bal), bl.flag_h_vector(bal)
        payload = {"d": bal.d,
                   "flag_f": {bl._mask_label(m): v for m, v in ff.items()},
                   "flag_h": {bl._mask_label(m): v for m, v in fh.items()}}
        lines = [f"S={s}  f_S={payload['flag_f'][s]}  h_S={payload['flag_h'][s]}"
                 for s in payload["flag_f"]]
        _emit(args, payload, "\n".join(lines))
    elif what == "toric":
        pair = tc.toric_pair(_need_poset(obj))
        payload = {"h_poly": pair.h_poly.serialize(), "g_poly": pair.g_poly.serialize(),
                   "h_indexed": {str(k): v for k, v in sorted(pair.h_indexed.items())}}
        _emit(args, payload,
              f"hhat = {pair.h_poly.serialize()}  (hhat_k: {dict(sorted(pair.h_indexed.items()))})\n"
              f"ghat = {pair.g_poly.serialize()}")
    elif what == "defect":
        seq = tc.defect_sequence(_need_poset(obj))
        _emit(args, {"j": seq.j, "A": list(seq.entries)},
              f"j = {seq.j}, A = {list(seq.entries)}")
    else:
        raise ParseError(f"unknown compute target {what!r}")
    return 0


def cmd_classify(args) -> int:
    obj, name = _load_target(args)
    if isinstance(obj, ps.GradedPoset):
        c = ps.classify_poset(obj, cross_check=args.check)
        payload = {"eulerian": c.eulerian, "semi_eulerian": c.semi_eulerian,
                   "lower_eulerian": c.lower_eulerian, "simplicial": c.simplicial,
                   "min_j_sing": c.min_j_sing,
                   "max_lower_simplicial_k": c.max_lower_simplicial_k}
        human = "\n".join(f"{k} = {v}" for k, v in payload.items())
    else:
        p = cx.singularity_profile(_need_complex(obj))
        payload = {"eulerian": p.eulerian, "semi_eulerian": p.semi_eulerian,
                   "min_singular_j": p.min_singular_j,
                   "error_set": [{"face": sorted(map(str, fe.face)), "epsilon": fe.epsilon}
                                 for fe in p.error_set]}
        human = (f"eulerian = {p.eulerian}\nsemi_eulerian = {p.semi_eulerian}\n"
                 f"min_singular_j = {p.min_singular_j}\n"
                 + "\n".join(f"  eps({sorted(map(str, fe.face))}) = {fe.epsilon}"
                             for fe in p.error_set))
    _emit(args, payload, human)
    return 0


def _verify_one(identity: str, obj, name: str, args) -> list[VerificationReport]:
    if identity == "ds":
        return [cx.verify_pure_ds(_need_complex(obj), name)]
    if identity == "flag-ds":
        return [bl.verify_flag_ds(_as_balanced(obj, args.colors), name)]
    if identity == "simplicial-ds":
        return [ps.verify_simplicial_ds(_need_poset(obj), name)]
    if identity == "flag-poset":
        return [ps.verify_flag_poset(_need_poset(obj), name)]
    if identity == "stanley":
        return [tc.verify_stanley(_need_poset(obj), name)]
    if identity == "swartz":
        return [tc.verify_swartz(_need_poset(obj), name)]
    if identity == "1sing":
        return [tc.verify_1sing(_need_poset(obj), name)]
    if identity == "generalized":
        return [tc.verify_generalized(_need_poset(obj), name)]
    if identity == "main":
        return [tc.verify_main(_need_poset(obj), name)]
    if identity == "euler-rel":
        return [tc.verify_euler_relation(_need_poset(obj), name=name)]
    if identity == "lower-eulerian":
        return [tc.verify_lower_eulerian(_need_poset(obj), name)]
    if identity == "dual":
        return [tc.dual_defect_report(_need_poset(obj), name)]
    if identity == "all":
        if isinstance(obj, ps.GradedPoset):
            cls = ps.classify_poset(obj)
            out = [ps.verify_flag_poset(obj, name), tc.verify_generalized(obj, name),
                   tc.verify_euler_relation(obj, name=name), tc.dual_defect_report(obj, name)]
            if obj.rho >= 1:
                out.append(bl.verify_flag_ds(ps.order_complex(obj), f"O({name})"))
            if cls.simplicial:
                out.append(ps.verify_simplicial_ds(obj, name))
            if cls.eulerian:
                out.append(tc.verify_stanley(obj, name))
            if cls.min_j_sing <= 0:
                out.append(tc.verify_swartz(obj, name))
            if cls.min_j_sing <= 1:
                out.append(tc.verify_1sing(obj, name))
            if obj.rho - 1 > 2 * cls.min_j_sing:
                out.append(tc.verify_main(obj, name))
            if cls.lower_eulerian:
                out.append(tc.verify_lower_eulerian(obj, name))
            return out
        if isinstance(obj, bl.BalancedComplex):
            return [cx.verify_pure_ds(obj.complex, name), bl.verify_flag_ds(obj, name)]
        return [cx.verify_pure_ds(_need_complex(obj), name)]
    raise ParseError(f"unknown identity {identity!r}")


def cmd_verify(args) -> int:
    cx.set_default_threads(_threads())
    if args.identity == "all" and not (args.gen or args.target):
        reports = []
        for desc, thunk in iter_suite():
            result = thunk()
            reports.extend(result if isinstance(result, list) else [result])
    else:
        obj, name = _load_target(args)
        reports = _verify_one(args.identity, obj, name, args)
    all_pass = all(r.passed for r in reports)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports]))
    else:
        for r in reports:
            print(r.format_table())
            print()
        print(f"{sum(r.passed for r in reports)}/{len(reports)} reports passed")
    if args.out:
        Path(args.out).write_text(json.dumps([r.to_dict() for r in reports], indent=1))
    return 0 if all_pass else 1


def cmd_generate(args) -> int:
    spec = parse_spec(args.spec)
    if args.seed is not None:
        spec = GeneratorSpec(spec.name, spec.params, seed=args.seed)
    obj = generate(spec)
    if isinstance(obj, ps.GradedPoset):
        text = ps.serialize_poset_json(obj) + "\n"
    else:
        text = cx.serialize_facets(obj)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    data = json.loads(Path(args.target).read_text())
    items = data if isinstance(data, list) else [data]
    ok = True
    for item in items:
        rep = report_from_dict(item)
        ok = ok and rep.passed
        print(rep.format_table())
        print()
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dehnsom",
        description="Exact Dehn-Sommerville computations and verifications "
                    "for complexes and graded posets.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, target=True):
        if target:
            p.add_argument("target", nargs="?", help="input file (facets, balanced, or poset JSON)")
            p.add_argument("--gen", help="generator spec, e.g. 'face_poset(torus_7,true)'")
            p.add_argument("--seed", type=int, help="seed for random generators")
            p.add_argument("--colors", help="color-map file for flag identities on plain complexes")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("compute", help="print f/h/flag/toric vectors")
    p.add_argument("what", choices=["f", "h", "euler", "flag", "toric", "defect"])
    add_common(p)
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("classify", help="singularity profile / poset classification")
    add_common(p)
    p.add_argument("--check", action="store_true",
                   help="cross-check min_j_sing by all three criteria")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="verify a named identity (or 'all')")
    p.add_argument("identity", choices=VERIFY_IDENTITIES)
    add_common(p)
    p.add_argument("-o", "--out", help="also save the JSON report here")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("generate", help="write a catalog object")
    p.add_argument("spec", help="generator spec, e.g. 'circle_join(4,torus_7)'")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("report", help="render a saved JSON report as a table")
    p.add_argument("target")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DehnsomError as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(diag), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "OSError", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
