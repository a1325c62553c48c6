"""Command line interface: ``lenslab <command> FILE...``.

Exit status is 0 on success (or when a checked property holds), 1 when a
check fails or a counterexample is found, and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import constructions as C
from .errors import LensLabError
from .fincat import FinCat, Functor, find_isomorphism
from .io import export_dot, load_document, serialize
from .lens import Lens, compose_lens, is_epi_lens, is_iso_lens, is_mono_lens
from .oracle import (
    Bounds, OracleReport, all_lenses, brute_force_epi, brute_force_mono, check_universal_equaliser,
    check_universal_product, check_universal_pullback, cokernel_pair, enumerate_functors,
    kernel_pair_apexes,
)
from .seeds import load_seeds, sweep_family


class UsageError(LensLabError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _load(path: str, kind: str):
    doc = load_document(path)
    if doc.kind != kind:
        raise UsageError(f"{path}: expected a {kind} document, got a {doc.kind}")
    return doc.payload


def _doc(x) -> dict:
    return json.loads(serialize(x))


def _name(cat: FinCat) -> str:
    return cat.label or "{" + ",".join(cat.objects) + "}"


def _summary(x):
    if isinstance(x, FinCat):
        return {"label": x.label, "objects": list(x.objects), "morphisms": x.n_morphisms}
    if isinstance(x, Lens):
        return {"source": _name(x.source), "target": _name(x.target),
                "object_map": x.functor.object_map,
                "lift": [[a, u, w] for (a, u), w in x.lift.items()]}
    if isinstance(x, Functor):
        return {"source": _name(x.source), "target": _name(x.target), "object_map": x.object_map}
    if isinstance(x, (list, tuple)):
        return [_summary(y) for y in x]
    if isinstance(x, dict):
        return {k: _summary(v) for k, v in x.items()}
    return x


def _report(r: OracleReport) -> dict:
    return {"property": r.property, "verdict": r.verdict, "search_size": r.search_size,
            "witness": _summary(r.witness) if r.witness else None}


def _bounds(args) -> Bounds:
    return Bounds(objects=args.bound_objects, morphisms=args.bound_morphisms)


def _apexes(args) -> list[FinCat]:
    b = _bounds(args)
    return sweep_family(b.objects, b.morphisms, seeds=load_seeds(args.seed_dir))


def _lens_line(name: str, lens: Lens) -> str:
    return f"{name}: {_name(lens.source)} <=> {_name(lens.target)}"


def _emit(args, result: dict, text_lines: list[str]):
    if args.format == "json":
        print(json.dumps(result, indent=2, ensure_ascii=False, sort_keys=False))
    else:
        print("\n".join(text_lines))


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    doc = load_document(args.file)
    info = {"kind": doc.kind, "valid": True}
    x = doc.payload
    lines = [f"{args.file}: valid {doc.kind}"]
    if isinstance(x, FinCat):
        info.update(objects=x.n_objects, morphisms=x.n_morphisms)
        lines.append(f"objects: {x.n_objects}, morphisms: {x.n_morphisms}")
    elif isinstance(x, Lens):
        info.update(mono=bool(is_mono_lens(x)), epi=bool(is_epi_lens(x)), iso=bool(is_iso_lens(x)))
        lines.append(f"mono: {info['mono']}, epi: {info['epi']}, iso: {info['iso']}")
    _emit(args, info, lines)
    return 0


def cmd_compose(args):
    lenses = [_load(p, "lens") for p in args.files]
    out = lenses[0]
    for nxt in lenses[1:]:
        out = compose_lens(out, nxt)
    _emit(args, {"lens": _doc(out)}, [serialize(out).rstrip()])
    return 0


def cmd_equalise(args):
    f, g = _load(args.f, "lens"), _load(args.g, "lens")
    r = C.equaliser_lens(f, g)
    _emit(args, {"objects": list(r.object.objects), "candidates": list(r.candidates),
                 "inclusion": _doc(r.inclusion)},
          [f"equaliser objects: {', '.join(r.object.objects) or '(none)'}",
           f"locally agreeing: {', '.join(r.candidates) or '(none)'}"])
    return 0


def cmd_factorise(args):
    lens = _load(args.file, "lens")
    r = C.factorise_lens(lens)
    _emit(args, {"image": list(r.image.objects), "epi": _doc(r.epi), "mono": _doc(r.mono)},
          [f"image: {', '.join(r.image.objects) or '(empty)'}",
           _lens_line("epi", r.epi) + f"  object map {r.epi.functor.object_map}",
           _lens_line("mono", r.mono) + f"  object map {r.mono.functor.object_map}"])
    return 0


def cmd_fill(args):
    e, m, f, g = (_load(p, "lens") for p in (args.e, args.m, args.f, args.g))
    h = C.orthogonal_fill(e, m, f, g)
    _emit(args, {"diagonal": _doc(h)}, [serialize(h).rstrip()])
    return 0


def cmd_coproduct(args):
    f, g = _load(args.f, "lens"), _load(args.g, "lens")
    r = C.coproduct_lens(f, g)
    _emit(args, {"mediator": _doc(r.mediator), "inj0": _doc(r.inj0), "inj1": _doc(r.inj1)},
          [f"coproduct objects: {', '.join(r.cat.objects)}", _lens_line("mediator", r.mediator)])
    return 0


def _cone_out(args, cone: C.ImportedCone):
    _emit(args, {"apex": _doc(cone.apex), "legs": [_doc(l) for l in cone.legs]},
          [f"apex objects: {', '.join(cone.apex.objects) or '(none)'}",
           f"apex morphisms: {cone.apex.n_morphisms}"]
          + [_lens_line(f"leg {i}", l) for i, l in enumerate(cone.legs)])
    return 0


def cmd_product(args):
    return _cone_out(args, C.imported_product(_load(args.a, "category"), _load(args.b, "category")))


def cmd_pullback(args):
    return _cone_out(args, C.imported_pullback(_load(args.f, "lens"), _load(args.g, "lens")))


def cmd_mediator(args):
    if args.shape == "product":
        if len(args.files) != 2:
            raise UsageError("mediator product takes two lenses C<=>A and C<=>B0")
        f, g = (_load(p, "lens") for p in args.files)
        med = C.product_mediator_discrete(f, g)
    else:
        if len(args.files) != 4:
            raise UsageError("mediator pullback takes the cospan f g and the cone p q")
        f, g, p, q = (_load(x, "lens") for x in args.files)
        med = C.pullback_mediator_dof(f, g, p, q)
    _emit(args, {"mediator": _doc(med)}, [serialize(med).rstrip()])
    return 0


def cmd_split(args):
    r = C.split_idempotent(_load(args.file, "lens"))
    _emit(args, {"object": list(r.object.objects), "section": _doc(r.section), "retraction": _doc(r.retraction)},
          [f"splitting object: {', '.join(r.object.objects) or '(empty)'}",
           _lens_line("section", r.section), _lens_line("retraction", r.retraction)])
    return 0


def cmd_distributivity(args):
    A, B, Cc = (_load(p, "category") for p in (args.a, args.b, args.c))
    r = C.distributivity_iso(A, B, Cc)
    _emit(args, {"iso": r.iso.holds, "lens": _doc(r.lens)}, [f"canonical lens is iso: {r.iso.holds}"])
    return 0 if r.iso.holds else 1


def cmd_extensivity(args):
    z = _load(args.file, "lens")
    d = C.pullback_diagram(z)
    if args.perturb or args.drop is not None:
        d = C.drop_object(d, args.drop)
    v = C.extensivity_check(d, _apexes(args), _bounds(args))
    _emit(args, {"squares_are_pullbacks": v.squares_are_pullbacks, "top_is_coproduct": v.top_is_coproduct,
                 "biconditional": v.biconditional},
          [f"squares are pullbacks: {v.squares_are_pullbacks}",
           f"top row is a coproduct: {v.top_is_coproduct}",
           f"biconditional holds: {v.biconditional}"])
    return 0 if v.biconditional else 1


def cmd_enumerate(args):
    A, B = _load(args.a, "category"), _load(args.b, "category")
    bounds = Bounds(search_limit=args.search_limit)
    if args.functors:
        items = list(enumerate_functors(A, B, bounds))
        data = [_summary(F) for F in items]
    else:
        items = list(all_lenses(A, B, bounds))
        data = [_summary(l) for l in items]
    what = "functors" if args.functors else "lenses"
    lines = [f"{what}: {len(items)}"]
    if args.list:
        lines += [json.dumps(d, ensure_ascii=False) for d in data]
    _emit(args, {"count": len(items), what: data if args.list else None}, lines)
    return 0


def cmd_oracle(args):
    files = args.files
    prop = args.property
    need = {"product": 2, "pullback": 2, "equaliser": 2, "mono": 1, "epi": 1}[prop]
    if len(files) != need:
        raise UsageError(f"oracle {prop} takes {need} file(s)")
    apexes = _apexes(args)
    bounds = _bounds(args)
    if prop == "product":
        A, B = (_load(p, "category") for p in files)
        r = check_universal_product(C.imported_product(A, B), apexes, bounds)
    elif prop == "pullback":
        f, g = (_load(p, "lens") for p in files)
        r = check_universal_pullback(C.imported_pullback(f, g), (f, g), apexes, bounds)
    elif prop == "equaliser":
        f, g = (_load(p, "lens") for p in files)
        r = check_universal_equaliser(C.equaliser_lens(f, g), (f, g), apexes, bounds)
    elif prop == "mono":
        lens = _load(files[0], "lens")
        r = brute_force_mono(lens, kernel_pair_apexes(lens) + apexes, bounds)
        r = _agree(r, bool(is_mono_lens(lens)))
    else:
        lens = _load(files[0], "lens")
        extra = cokernel_pair(lens)
        r = brute_force_epi(lens, ([extra] if extra is not None else []) + apexes, bounds)
        r = _agree(r, bool(is_epi_lens(lens)))
    lines = [f"{r.property}: {r.verdict} ({r.search_size} candidates)"]
    if r.witness:
        lines.append(f"counterexample: {json.dumps(_summary(r.witness), ensure_ascii=False)}")
    _emit(args, _report(r), lines)
    return 0 if r.holds else 1


def _agree(r: OracleReport, predicate: bool) -> OracleReport:
    if r.holds != predicate:
        raise LensLabError(f"{r.property} brute force disagrees with the characterisation")
    return r


def cmd_export_dot(args):
    sys.stdout.write(export_dot(load_document(args.file)))
    return 0


def cmd_iso(args):
    A, B = _load(args.a, "category"), _load(args.b, "category")
    F = find_isomorphism(A, B)
    _emit(args, {"isomorphic": F is not None, "object_map": F.object_map if F else None},
          [f"isomorphic: {F is not None}"])
    return 0 if F is not None else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound-objects", type=int, default=3, metavar="N",
                        help="largest test apex, in objects (default 3)")
    common.add_argument("--bound-morphisms", type=int, default=8, metavar="N",
                        help="largest test apex, in morphisms (default 8)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed-dir", default=None, metavar="PATH",
                        help="directory of category documents used as test apexes "
                             "(default: $LENSLAB_SEED_DIR or the bundled family)")

    p = argparse.ArgumentParser(prog="lenslab", description="Finite categories and delta lenses.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        s = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        s.set_defaults(func=func)
        return s

    s = add("validate", cmd_validate, "parse and validate a document")
    s.add_argument("file")
    s = add("compose", cmd_compose, "compose lenses left to right")
    s.add_argument("files", nargs="+")
    s = add("equalise", cmd_equalise, "equaliser of a parallel pair of lenses")
    s.add_argument("f"); s.add_argument("g")
    s = add("factorise", cmd_factorise, "epi / mono factorisation of a lens")
    s.add_argument("file")
    s = add("fill", cmd_fill, "diagonal of a square e;g = f;m with e epi and m mono")
    for n in ("e", "m", "f", "g"):
        s.add_argument(n)
    s = add("coproduct", cmd_coproduct, "copairing of two lenses with a common codomain")
    s.add_argument("f"); s.add_argument("g")
    s = add("product", cmd_product, "imported product of two categories")
    s.add_argument("a"); s.add_argument("b")
    s = add("pullback", cmd_pullback, "imported pullback of a cospan of lenses")
    s.add_argument("f"); s.add_argument("g")
    s = add("mediator", cmd_mediator, "mediating lens into a product with a discrete factor, "
                                      "or into a pullback along a discrete opfibration")
    s.add_argument("shape", choices=("product", "pullback"))
    s.add_argument("files", nargs="+")
    s = add("split-idempotent", cmd_split, "split an idempotent lens")
    s.add_argument("file")
    s = add("distributivity", cmd_distributivity, "check (AxB)+(AxC) <=> Ax(B+C) is an iso")
    s.add_argument("a"); s.add_argument("b"); s.add_argument("c")
    s = add("extensivity", cmd_extensivity, "pull a lens into a coproduct back along both injections "
                                            "and check the extensivity biconditional")
    s.add_argument("file")
    s.add_argument("--perturb", action="store_true",
                   help="remove the first removable object from the left corner")
    s.add_argument("--drop", default=None, metavar="OBJ",
                   help="remove this object from the left corner")
    s = add("enumerate", cmd_enumerate, "enumerate all lenses (or functors) between two categories")
    s.add_argument("a"); s.add_argument("b")
    s.add_argument("--functors", action="store_true")
    s.add_argument("--list", action="store_true", help="print every item, not just the count")
    s.add_argument("--search-limit", type=int, default=Bounds().search_limit)
    s = add("oracle", cmd_oracle, "brute-force a universal property or cancellation law")
    s.add_argument("property", choices=("product", "pullback", "equaliser", "mono", "epi"))
    s.add_argument("files", nargs="+")
    s = add("export-dot", cmd_export_dot, "render a category or lens as DOT")
    s.add_argument("file")
    s = add("iso", cmd_iso, "search for an isomorphism between two categories")
    s.add_argument("a"); s.add_argument("b")
    return p


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (LensLabError, OSError) as exc:
        print(f"lenslab {args.command}: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
