"""Scripted CLI smoke suite: (argv, expected exit status) pairs."""

from pathlib import Path

from lenslab.constructions import terminal_lens
from lenslab.examples import FIXTURE_DIR
from lenslab.fincat import coproduct_cat, terminal_category, walking_arrow
from lenslab.io import save_document
from lenslab.lens import identity_lens, lens_from_dof
from lenslab.seeds import SEED_DIR


def write_inputs(tmp: Path) -> dict[str, str]:
    two, one = walking_arrow(), terminal_category()
    S, i0, _ = coproduct_cat(two, one)
    items = {
        "id2": identity_lens(two),
        "id1": identity_lens(one),
        "t2": terminal_lens(two),
        "inj": lens_from_dof(i0),
        "idS": identity_lens(S.relabel("2+1")),
    }
    out = {}
    for name, x in items.items():
        path = tmp / f"{name}.json"
        save_document(x, path)
        out[name] = str(path)
    (tmp / "broken.json").write_text('{"format_version": 1, "kind": "category", "objects": [')
    out["broken"] = str(tmp / "broken.json")
    out["missing"] = str(tmp / "does_not_exist.json")
    return out


def smoke_cases(tmp: Path) -> list[tuple[list[str], int]]:
    f = write_inputs(tmp)
    seed = lambda n: str(SEED_DIR / f"{n}.json")
    fix = lambda n: str(FIXTURE_DIR / f"{n}.json")
    return [
        (["validate", seed("2")], 0),
        (["validate", fix("state_lens")], 0),
        (["validate", f["broken"]], 2),
        (["validate", f["missing"]], 2),
        (["compose", f["id2"], f["t2"], f["id1"]], 0),
        (["compose", f["t2"], f["id2"]], 2),
        (["equalise", fix("codesign"), fix("codesign_alternative")], 0),
        (["factorise", fix("bios_os")], 0),
        (["fill", f["t2"], f["id1"], f["t2"], f["id1"]], 0),
        (["fill", f["inj"], f["id1"], f["t2"], f["id1"]], 2),
        (["coproduct", f["t2"], f["t2"]], 0),
        (["product", seed("2"), seed("2")], 0),
        (["pullback", f["t2"], f["t2"]], 0),
        (["mediator", "product", f["id2"], f["t2"]], 0),
        (["mediator", "pullback", f["inj"], f["idS"], f["id2"], f["inj"]], 0),
        (["mediator", "pullback", f["inj"]], 2),
        (["split-idempotent", f["id2"]], 0),
        (["distributivity", seed("2"), seed("2"), seed("1")], 0),
        (["extensivity", fix("arrow_plus_point_identity")], 0),
        (["extensivity", "--perturb", fix("arrow_plus_point_identity")], 0),
        (["extensivity", "--drop", "(0:y,y)", fix("arrow_plus_point_identity")], 2),
        (["enumerate", seed("2"), seed("2")], 0),
        (["enumerate", "--functors", "--list", seed("2"), seed("2")], 0),
        (["oracle", "product", seed("2"), seed("2")], 1),
        (["oracle", "product", seed("2"), seed("D2")], 0),
        (["oracle", "pullback", f["t2"], f["t2"]], 1),
        (["oracle", "pullback", f["inj"], f["idS"]], 0),
        (["oracle", "equaliser", fix("codesign"), fix("codesign_alternative")], 0),
        (["oracle", "mono", fix("arrow_to_point")], 1),
        (["oracle", "epi", fix("arrow_to_point")], 0),
        (["oracle", "mono", f["t2"], f["t2"]], 2),
        (["export-dot", fix("codesign")], 0),
        (["export-dot", fix("codesign_experts")], 2),
        (["iso", seed("2"), seed("2")], 0),
        (["iso", seed("2"), seed("D2")], 1),
        (["frobnicate"], 2),
        ([], 2),
        (["validate", "--format", "yaml", seed("2")], 2),
    ]
