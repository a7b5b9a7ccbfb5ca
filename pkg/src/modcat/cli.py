"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on malformed
input or usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import scalars
from .cohomology import AbelianGroup, cohomology_classes, commutator
from .e6 import run_all_checks
from .errors import InputError, ModcatError
from .extension import (candidate, e6_character_set, e6_closure_check, extend, local_sector,
                        monodromy_neutral, twist_admissible)
from .frobenius import full_ledger, function_algebra, load_presentation, twisted_group_algebra
from .fusion_ring import FusionRing, check_ring_axioms
from .modular_data import (InvalidDatum, ModularDatum, current_order, drinfeld_double_abelian, load_datum,
                           monodromy_charge, simple_currents, su2_level, verlinde_fusion)
from .nimrep import (boundary_dims, branching, dynkin_graph, from_su2_graph, load_nimrep, perron_dims,
                     physical_m0, physical_m0_candidates, reconstruct_algebra, verify)
from .report import ValidationReport, _jsonable

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

VERBS = ("datum", "validate", "fusion", "currents", "algebra", "cohomology", "nimrep-check",
         "nimrep-reconstruct", "extend", "characters", "e6")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _orders(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.replace("x", ",").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated cyclic orders, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty group")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None, help="global comparison tolerance")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--force", action="store_true", help="skip modular datum validation on load")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("datum", nargs="?", help="modular datum JSON file")
    source.add_argument("--level", type=int, help="use su(2) at this level")
    source.add_argument("--double", type=_orders, metavar="ORDERS", help="use the double of Z_n1 x Z_n2 ...")

    p = _Parser(prog="modcat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sub.add_parser("datum", parents=[common, source], help="emit a built-in modular datum as JSON")
    sub.add_parser("validate", parents=[common, source], help="validate modular data")
    sub.add_parser("fusion", parents=[common, source], help="Verlinde fusion ring and its axioms")
    sub.add_parser("currents", parents=[common, source], help="simple currents, orders, twists, charges")

    a = sub.add_parser("algebra", parents=[common], help="axiom ledger of an algebra presentation")
    a.add_argument("presentation", nargs="?", help="algebra presentation JSON file")
    a.add_argument("--function-algebra", type=int, metavar="SIZE")
    a.add_argument("--group", type=_orders, metavar="ORDERS", help="twisted group algebra of this group")
    a.add_argument("--cocycle-class", type=int, default=0, help="index into the H^2 representatives")
    a.add_argument("--datum", dest="grading_datum", help="modular datum for graded dimensions")

    c = sub.add_parser("cohomology", parents=[common], help="H^2(G, U(1)) representatives")
    c.add_argument("orders", type=_orders, help="cyclic orders, e.g. 2,2")

    nc = sub.add_parser("nimrep-check", parents=[common], help="verify a NIM-rep")
    nc.add_argument("files", nargs="*", help="[ring.json] nimrep.json")
    nc.add_argument("--graph", help="adjacency JSON file or Dynkin name (A5, D6, E6, ...)")
    nc.add_argument("--level", type=int)

    nr = sub.add_parser("nimrep-reconstruct", parents=[common], help="algebra, m0 and branching of a NIM-rep")
    nr.add_argument("files", nargs="*", help="[ring.json] nimrep.json")
    nr.add_argument("--graph", help="adjacency JSON file or Dynkin name")
    nr.add_argument("--level", type=int)

    e = sub.add_parser("extend", parents=[common, source], help="simple-current extension")
    e.add_argument("--subset", required=True, help="comma-separated labels of the current subgroup")

    ch = sub.add_parser("characters", parents=[common], help="E6 character vectors and closure")
    ch.add_argument("--level", type=int, default=10)

    sub.add_parser("e6", parents=[common], help="full E6 worked example")
    return p


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(_jsonable(payload), indent=2))
    else:
        print(text)


def _datum(args) -> ModularDatum:
    given = [x is not None for x in (args.datum, args.level, args.double)]
    if sum(given) != 1:
        raise InputError("give exactly one of a datum file, --level or --double")
    if args.level is not None:
        return su2_level(args.level)
    if args.double is not None:
        return drinfeld_double_abelian(args.double)
    return load_datum(args.datum, force=args.force)


def _report_exit(args, rep: ValidationReport, extra: dict | None = None) -> int:
    payload = rep.to_dict()
    if extra:
        payload.update(extra)
    _emit(args, payload, rep.format())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_datum(args) -> int:
    md = _datum(args)
    print(json.dumps(md.to_json(), indent=1))
    return EXIT_OK


def _cmd_validate(args) -> int:
    from .modular_data import validate

    return _report_exit(args, validate(_datum(args)))


def _cmd_fusion(args) -> int:
    md = _datum(args)
    fr = verlinde_fusion(md)
    rep = check_ring_axioms(fr)
    if args.json:
        return _report_exit(args, rep, {"ring": fr.to_json()})
    lines = [rep.format(), "  nonzero products:"]
    for i in range(fr.n):
        for j in range(i if np.array_equal(fr.N, fr.N.transpose(1, 0, 2)) else 0, fr.n):
            prod_ = fr.fuse(i, j)
            terms = " + ".join((f"{c}*" if c > 1 else "") + md.labels[k] for k, c in prod_.items())
            lines.append(f"    {md.labels[i]} x {md.labels[j]} = {terms}")
    print("\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_currents(args) -> int:
    md = _datum(args)
    cur = simple_currents(md)
    rows = []
    for j in cur:
        rows.append({
            "label": md.labels[j],
            "order": current_order(md, j),
            "theta": md.theta[j].to_json(),
            "charges": {md.labels[x]: monodromy_charge(md, x, j).to_json() for x in range(md.n)},
        })
    text = [f"simple currents: {', '.join(md.labels[j] for j in cur)}"]
    for r in rows:
        charges = " ".join(f"{k}:{v['num']}/{v['den']}" for k, v in r["charges"].items())
        text.append(f"  {r['label']}: order {r['order']}, theta {r['theta']['num']}/{r['theta']['den']}")
        text.append(f"    monodromy charges {charges}")
    _emit(args, {"currents": rows}, "\n".join(text))
    return EXIT_OK


def _cmd_algebra(args) -> int:
    chosen = [args.presentation is not None, args.function_algebra is not None, args.group is not None]
    if sum(chosen) != 1:
        raise InputError("give exactly one of a presentation file, --function-algebra or --group")
    md = load_datum(args.grading_datum, force=args.force) if args.grading_datum else None
    if args.presentation:
        ap = load_presentation(args.presentation)
    elif args.function_algebra is not None:
        ap = function_algebra(args.function_algebra)
    else:
        g = AbelianGroup(args.group)
        classes = cohomology_classes(g)
        if not 0 <= args.cocycle_class < len(classes):
            raise InputError(f"cocycle class must be in 0..{len(classes) - 1}")
        ap = twisted_group_algebra(g, classes[args.cocycle_class])
    rep = full_ledger(ap, md)
    _emit(args, rep.to_dict(), rep.format())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_cohomology(args) -> int:
    g = AbelianGroup(args.orders)
    classes = cohomology_classes(g)
    els = g.elements()
    rows = []
    for k, psi in enumerate(classes):
        comm = commutator(psi)
        gens = []
        for i in range(len(g.orders)):
            for j in range(i + 1, len(g.orders)):
                ei = tuple(int(t == i) for t in range(len(g.orders)))
                ej = tuple(int(t == j) for t in range(len(g.orders)))
                gens.append({"pair": [i, j], "commutator": comm[g.index(ei)][g.index(ej)].to_json()})
        rows.append({"class": k, "generator_commutators": gens, "cocycle": psi.to_json()["table"]})
    text = [f"H^2(Z_{' x Z_'.join(map(str, g.orders))}, U(1)): {len(classes)} classes"]
    for r in rows:
        desc = ", ".join(f"[e{p['pair'][0]},e{p['pair'][1]}] = {p['commutator']['num']}/{p['commutator']['den']}"
                         for p in r["generator_commutators"]) or "trivial"
        text.append(f"  class {r['class']}: {desc}")
    _emit(args, {"group": g.to_json(), "elements": els, "count": len(classes), "classes": rows},
          "\n".join(text))
    return EXIT_OK


def _load_graph(source: str) -> np.ndarray:
    path = Path(source)
    if path.exists():
        try:
            obj = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"cannot parse {path}: {exc}") from exc
        if isinstance(obj, dict):
            obj = obj.get("adjacency")
        return np.array(obj)
    return dynkin_graph(source)


def _nimrep(args):
    if args.graph:
        if args.files:
            raise InputError("--graph excludes NIM-rep files")
        if args.level is None:
            raise InputError("--graph needs --level")
        return from_su2_graph(_load_graph(args.graph), args.level)
    if len(args.files) == 1:
        return load_nimrep(args.files[0])
    if len(args.files) == 2:
        try:
            ring = FusionRing.from_json(json.loads(Path(args.files[0]).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read ring: {exc}") from exc
        return load_nimrep(args.files[1], ring)
    raise InputError("give [ring.json] nimrep.json, or --graph with --level")


def _cmd_nimrep_check(args) -> int:
    return _report_exit(args, verify(_nimrep(args)))


def _cmd_nimrep_reconstruct(args) -> int:
    nim = _nimrep(args)
    rep = verify(nim)
    if not rep.ok:
        return _report_exit(args, rep)
    alg = reconstruct_algebra(nim)
    m0 = physical_m0(nim)
    ring = nim.ring
    payload = {
        "algebra": {ring.name(k): v for k, v in alg.items()},
        "m0": None if m0 is None else nim.boundaries[m0],
        "m0_candidates": [nim.boundaries[c] for c in physical_m0_candidates(nim)],
    }
    text = ["algebra: " + " + ".join((f"{v}*" if v > 1 else "") + ring.name(k) for k, v in alg.items()),
            f"m0: {payload['m0'] if m0 is not None else 'none (NIM-rep is unphysical)'}"
            + (f"  (candidates {payload['m0_candidates']}, lowest chosen)" if len(payload['m0_candidates']) > 1 else "")]
    if m0 is not None:
        br = branching(nim, m0)
        payload["branching"] = {nim.boundaries[n]: {ring.name(k): c for k, c in mult.items()} for n, mult in br.items()}
        for n, mult in br.items():
            text.append(f"  G({nim.boundaries[n]}) = " + " + ".join(
                (f"{c}*" if c > 1 else "") + ring.name(k) for k, c in mult.items()))
        if args.graph:
            md = su2_level(args.level)
            dims = boundary_dims(nim, md, m0)
            perron = perron_dims(nim, 1, m0)
            payload["boundary_dims"] = {nim.boundaries[i]: float(d) for i, d in enumerate(dims)}
            payload["perron_dims"] = {nim.boundaries[i]: float(d) for i, d in enumerate(perron)}
            text.append("  Dim: " + ", ".join(f"{nim.boundaries[i]}={d:.12g}" for i, d in enumerate(dims)))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if m0 is not None else EXIT_FAIL


def _cmd_extend(args) -> int:
    md = _datum(args)
    subset = [s.strip() for s in args.subset.split(",") if s.strip()]
    try:
        c = candidate(md, subset)
    except ModcatError as exc:
        _emit(args, {"candidate": {"subset": subset}, "error": f"{type(exc).__name__}: {exc}"},
              f"candidate rejected: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    tw = twist_admissible(c)
    neutral = monodromy_neutral(c)
    local = local_sector(c)
    payload = {"candidate": {"subset": c.names()}, "twist": tw.to_dict(),
               "monodromy_neutral": neutral, "local": [md.labels[x] for x in local]}
    text = [f"candidate A = {' + '.join(c.names())}",
            "twist: " + ", ".join(f"{e.label}: theta={e.theta} N={e.order} theta^N={e.theta_pow_order}"
                                  f" {'ok' if e.passed else 'FAIL'}" for e in tw.entries),
            f"monodromy neutral: {neutral}",
            f"local sector: {', '.join(md.labels[x] for x in local)}"]
    try:
        ext = extend(c)
    except ModcatError as exc:
        payload["extension"] = {"error": f"{type(exc).__name__}: {exc}"}
        text.append(f"extension: {type(exc).__name__}: {exc}")
        _emit(args, payload, "\n".join(text))
        return EXIT_FAIL
    payload["extension"] = ext.to_dict()
    text.append(f"extension: {ext.datum.n} labels, orbits "
                + "; ".join("{" + ",".join(md.labels[x] for x in o) + "}" for o in ext.orbits))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if tw.ok else EXIT_FAIL


def _cmd_characters(args) -> int:
    md = su2_level(args.level)
    chars = e6_character_set(md)
    rep = e6_closure_check(md)
    if args.json:
        return _report_exit(args, rep, {"characters": {k: v.tolist() for k, v in chars.items()}})
    lines = ["character vectors over chi_0..chi_10:"]
    for k, v in chars.items():
        lines.append(f"  {k:10s} " + " ".join(f"{x: .6f}" for x in v))
    lines.append(rep.format())
    print("\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _cmd_e6(args) -> int:
    return _report_exit(args, run_all_checks())


_COMMANDS = {
    "datum": _cmd_datum,
    "validate": _cmd_validate,
    "fusion": _cmd_fusion,
    "currents": _cmd_currents,
    "algebra": _cmd_algebra,
    "cohomology": _cmd_cohomology,
    "nimrep-check": _cmd_nimrep_check,
    "nimrep-reconstruct": _cmd_nimrep_reconstruct,
    "extend": _cmd_extend,
    "characters": _cmd_characters,
    "e6": _cmd_e6,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    old = scalars.get_tolerance()
    try:
        if args.tolerance is not None:
            scalars.set_tolerance(args.tolerance)
        return _COMMANDS[args.verb](args)
    except InvalidDatum as exc:
        _emit(args, exc.report.to_dict(), exc.report.format() + "\n(use --force to load anyway)")
        return EXIT_FAIL
    except (InputError, ValueError, FileNotFoundError) as exc:
        print(f"modcat: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ModcatError as exc:
        print(f"modcat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        scalars.set_tolerance(old)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
