"""Command-line surface: inspection, JSON/CSV/SVG emission, verification."""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import coxplane, liealg, verify, wheel
from .lattice import (cartan_matrix, make_type, matrix_payload, seifert_matrix,
                      stabilized_pairing_matrix)
from .rootsys import (FreenessError, classical_folding, enumerate_roots, fold,
                      monodromy_matrix, orbit_decomposition, rootsystem_payload,
                      verify_sT_identity)


def _color_enabled() -> bool:
    if os.environ.get("GEOMLIE_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _paint(text: str, code: str) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if _color_enabled() else text


def _print_matrix(m) -> None:
    arr = np.asarray(m)
    width = max(len(str(int(x))) for x in arr.reshape(-1))
    for row in arr:
        print(" ".join(str(int(x)).rjust(width) for x in row))


def _cmd_info(args) -> int:
    t = make_type(args.type)
    print(f"type            {t.label}")
    print(f"family          {t.family}")
    print(f"rank            {t.rank}")
    print(f"coxeter number  {t.coxeter_number}")
    print(f"roots           {t.root_count}")
    print(f"lie dimension   {t.rank + t.root_count}")
    return 0


def _cmd_cartan(args) -> int:
    t = make_type(args.type)
    m = cartan_matrix(t)
    if args.json:
        print(json.dumps(matrix_payload(t, m)))
    else:
        _print_matrix(m)
    return 0


def _cmd_seifert(args) -> int:
    t = make_type(args.type)
    m = seifert_matrix(t)
    if args.json:
        print(json.dumps(matrix_payload(t, m)))
    else:
        _print_matrix(m)
    return 0


def _cmd_roots(args) -> int:
    t = make_type(args.type)
    rs = enumerate_roots(t)
    if args.count:
        print(len(rs))
    elif args.json:
        print(json.dumps(rootsystem_payload(rs)))
    else:
        for r in rs.roots:
            print(" ".join(str(x) for x in r))
    return 0


def _cmd_monodromy(args) -> int:
    t = make_type(args.type)
    m = monodromy_matrix(t, basis=args.basis)
    if args.json:
        print(json.dumps(matrix_payload(t, m)))
    else:
        _print_matrix(m)
    return 0


def _cmd_orbits(args) -> int:
    t = make_type(args.type)
    operator = {"monodromy": "monodromy", "rhobar": "coxeter_bar"}[args.operator]
    try:
        dec = orbit_decomposition(t, operator)
    except FreenessError as exc:
        print(f"note: {exc}", file=sys.stderr)
        dec = orbit_decomposition(t, operator, require_free=False)
    if args.json:
        print(json.dumps(dec.to_json()))
    else:
        print(f"operator {dec.operator}  order {dec.operator_order}  "
              f"orbits {len(dec.orbits)}  free {dec.is_free}")
        for orbit in dec.orbits:
            roots = [dec.root_system.roots[i] for i in orbit]
            print("  " + "  ".join("(" + ",".join(map(str, r)) + ")" for r in roots))
    return 0


def _cmd_lie(args) -> int:
    t = make_type(args.type)
    L = liealg.build(t)
    print(f"dimension {L.dimension}")
    failed = False
    checks = ("antisym", "jacobi", "killing", "sl2", "model") if args.check == "all" \
        else (args.check,)
    for check in checks:
        if check == "antisym":
            bad = liealg.check_antisymmetry(L)
            ok = not bad
            label = "antisymmetry"
        elif check == "jacobi":
            report = liealg.check_jacobi(L)
            ok = report.ok
            label = f"jacobi ({report.triples_checked} triples)"
        elif check == "killing":
            ok = liealg.is_nondegenerate(L)
            label = "killing form nondegenerate"
        elif check == "sl2":
            try:
                for r in L.root_system.roots:
                    liealg.sl2_triple(L, r)
                ok = True
            except RuntimeError:
                ok = False
            label = "sl2 triples"
        elif check == "model":
            ok = t.family != "A" or liealg.slk_model_check(t.rank)
            label = "matrix model" if t.family == "A" else "matrix model (n/a)"
        else:
            raise ValueError(check)
        failed |= not ok
        mark = _paint("ok", "32") if ok else _paint("FAIL", "31")
        print(f"  {label}: {mark}")
    return 1 if failed else 0


def _cmd_sl2(args) -> int:
    t = make_type(args.type)
    L = liealg.build(t)
    for r in L.root_system.roots:
        liealg.sl2_triple(L, r)
    print(f"verified {len(L.root_system)} sl2 triples for {t.label}")
    return 0


def _cmd_export(args) -> int:
    t = make_type(args.type)
    L = liealg.build(t)
    try:
        liealg.export_structure_constants(L, args.output, fmt=args.format)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


def _cmd_wheel(args) -> int:
    t = make_type(args.type)
    if args.classes or args.json:
        payload = wheel.classes_payload(t)
        if args.json:
            print(json.dumps(payload))
        else:
            for cls in payload["classes"]:
                segs = " ".join(str(tuple(s)) for s in cls["segments"])
                print(f"({','.join(map(str, cls['root']))})  {segs}")
        return 0
    model = wheel.build_wheel(t)
    if model.vertices:
        print(f"{t.label} wheel: {len(model.punctures)} punctures, "
              f"center={'yes' if model.has_center else 'no'}")
        for v in model.vertices:
            print(f"  v{v.label}: ({v.x:+.6f}, {v.y:+.6f})")
    else:
        print(f"{t.label} wheel: {model.orbit_count} orbits x {model.orbit_steps} steps"
              f"{' (signed)' if model.signed_orbits else ''}, "
              f"rotation {wheel.rotation_angle(t)} pi")
    return 0


def _cmd_coxplane(args) -> int:
    t = make_type(args.type)
    if args.svg:
        svg = coxplane.render_svg(t, show_edges=args.edges, size=args.size)
        try:
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(svg)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {args.svg}")
        return 0
    report = coxplane.multiplicity_report(t)
    sizes = sorted(report.values())
    print(f"{t.label}: {len(report)} projection clusters over {sum(sizes)} roots")
    print(f"cluster sizes: {sorted(set(sizes))}")
    return 0


def _cmd_fold(args) -> int:
    spec = classical_folding(args.spec)
    folded = fold(spec)
    if args.json:
        print(json.dumps({"type": spec.target_name,
                          "matrix": [[int(x) for x in row] for row in folded]}))
    else:
        print(f"{spec.source.label} -> {spec.target_name}")
        _print_matrix(folded)
    return 0


def _cmd_verify(args) -> int:
    labels = None if args.all or not args.types else args.types
    results = verify.run_verify(labels)
    failed = 0
    for r in sorted(results, key=lambda r: r.name):
        mark = _paint("PASS", "32") if r.passed else _paint("FAIL", "31")
        print(f"{r.name:28s} {mark}  ({r.millis} ms)")
        if not r.passed:
            failed += 1
            print(f"    expected: {r.expected}")
            print(f"    actual:   {r.actual}")
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomlie",
        description="Exact ADE root systems and Lie algebras from Seifert-form data")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        return p

    p = add("info", _cmd_info, help="print the derived constants of a type")
    p.add_argument("type")

    p = add("cartan", _cmd_cartan, help="print the Cartan matrix B + B^t")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")

    p = add("seifert", _cmd_seifert, help="print the Seifert matrix B")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")

    p = add("roots", _cmd_roots, help="enumerate the root system")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")
    p.add_argument("--count", action="store_true")

    p = add("monodromy", _cmd_monodromy, help="print the monodromy matrix")
    p.add_argument("type")
    p.add_argument("--basis", choices=("simple", "projective"), default="simple")
    p.add_argument("--json", action="store_true")

    p = add("orbits", _cmd_orbits, help="orbit decomposition of the root system")
    p.add_argument("type")
    p.add_argument("--operator", choices=("monodromy", "rhobar"), default="monodromy")
    p.add_argument("--json", action="store_true")

    p = add("lie", _cmd_lie, help="build the Lie algebra and run checks")
    p.add_argument("type")
    p.add_argument("--check", choices=("all", "antisym", "jacobi", "killing", "sl2", "model"),
                   default="all")

    p = add("sl2", _cmd_sl2, help="verify the sl2 triple of every root")
    p.add_argument("type")

    p = add("export", _cmd_export, help="export structure constants")
    p.add_argument("type")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("wheel", _cmd_wheel, help="wheel model and segment classes")
    p.add_argument("type")
    p.add_argument("--classes", action="store_true")
    p.add_argument("--json", action="store_true")

    p = add("coxplane", _cmd_coxplane, help="project roots to the rotation plane")
    p.add_argument("type")
    p.add_argument("--svg", metavar="FILE")
    p.add_argument("--edges", action="store_true")
    p.add_argument("--size", type=int, default=600)

    p = add("fold", _cmd_fold, help="fold a simply-laced type (e.g. E6:F4)")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")

    p = add("verify", _cmd_verify, help="run the acceptance suite")
    p.add_argument("types", nargs="*")
    p.add_argument("--all", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
