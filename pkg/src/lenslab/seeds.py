"""The seed family of small categories used by sweeps and oracles.

The bundled documents under ``data/seeds/v1`` are regenerated from
:func:`builtin_seeds` by ``scripts/generate_data.py``; set
``LENSLAB_SEED_DIR`` (or pass ``seed_dir``) to sweep a different family.
"""

from __future__ import annotations

import os
from pathlib import Path

from .fincat import (
    FinCat, chain, coproduct_cat, discrete, empty_category, monoid, opposite, poset, product_cat,
    terminal_category, walking_arrow,
)

SEED_DIR = Path(__file__).parent / "data" / "seeds" / "v1"


def parallel_pair() -> FinCat:
    """x ==s,t==> y: the smallest category that is not a preorder."""
    return FinCat(
        ["x", "y"],
        [("1x", "x", "x"), ("1y", "y", "y"), ("s", "x", "y"), ("t", "x", "y")],
        {"x": "1x", "y": "1y"},
        {("1x", "1x"): "1x", ("1y", "1y"): "1y", ("s", "1x"): "s", ("t", "1x"): "t",
         ("1y", "s"): "s", ("1y", "t"): "t"},
        label="parallel",
    )


def idempotent_monoid() -> FinCat:
    return monoid(["1", "e"], "1", {("1", "1"): "1", ("e", "1"): "e", ("1", "e"): "e", ("e", "e"): "e"},
                  label="idem")


def cyclic_group() -> FinCat:
    return monoid(["1", "s"], "1", {("1", "1"): "1", ("s", "1"): "s", ("1", "s"): "s", ("s", "s"): "1"},
                  label="Z2")


def span() -> FinCat:
    return poset(["a", "b", "c"], [("a", "b"), ("a", "c")], label="span")


def cospan() -> FinCat:
    return poset(["a", "b", "c"], [("b", "a"), ("c", "a")], label="cospan")


def retract() -> FinCat:
    """x --s--> y --r--> x with r.s = 1x, so e = s.r is idempotent on y."""
    names = ["1x", "1y", "s", "r", "e"]
    ends = {"1x": ("x", "x"), "1y": ("y", "y"), "s": ("x", "y"), "r": ("y", "x"), "e": ("y", "y")}
    table = {("r", "s"): "1x", ("s", "r"): "e", ("e", "e"): "e", ("e", "s"): "s", ("r", "e"): "r"}
    compose = {}
    for g in names:
        for f in names:
            if ends[f][1] != ends[g][0]:
                continue
            if g in ("1x", "1y"):
                compose[(g, f)] = f
            elif f in ("1x", "1y"):
                compose[(g, f)] = g
            else:
                compose[(g, f)] = table[(g, f)]
    return FinCat(["x", "y"], [(n, *ends[n]) for n in names], {"x": "1x", "y": "1y"}, compose,
                  label="retract")


def arrow_plus_point() -> FinCat:
    return coproduct_cat(walking_arrow(), terminal_category()).cat.relabel("2+1")


def commutative_square() -> FinCat:
    return poset(["00", "01", "10", "11"], [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")],
                 label="square")


def functionality_poset() -> FinCat:
    return chain(["slow", "average", "fast"], label="F")


def resource_poset() -> FinCat:
    return chain(["cheap", "expensive"], label="R")


def bool_poset() -> FinCat:
    return chain(["false", "true"], label="Bool")


def design_space() -> FinCat:
    """F^op x R, the domain of a boolean profunctor."""
    return product_cat(opposite(functionality_poset()), resource_poset()).cat.relabel("FopxR")


def builtin_seeds() -> dict[str, FinCat]:
    seeds = [
        empty_category(),
        terminal_category(),
        discrete(["a", "b"], label="D2"),
        walking_arrow(),
        idempotent_monoid(),
        cyclic_group(),
        parallel_pair(),
        retract(),
        arrow_plus_point(),
        span(),
        cospan(),
        chain(["a", "b", "c"], label="chain3"),
        commutative_square(),
        functionality_poset(),
        resource_poset(),
        bool_poset(),
        design_space(),
    ]
    return {c.label: c for c in seeds}


# categories whose shape already appears earlier in the family
SHAPE_DUPLICATES = {"F", "R", "Bool"}


def load_seeds(seed_dir: str | os.PathLike | None = None) -> dict[str, FinCat]:
    """Seed categories by name, read from documents in ``seed_dir``."""
    from .io import load_document

    directory = Path(seed_dir or os.environ.get("LENSLAB_SEED_DIR") or SEED_DIR)
    if not directory.is_dir():
        return builtin_seeds()
    out = {}
    for path in sorted(directory.glob("*.json")):
        doc = load_document(path)
        if doc.kind != "category":
            continue
        cat = doc.payload
        name = cat.label or path.stem
        out[name] = cat.relabel(name)
    return out


def sweep_family(max_objects: int = 3, max_morphisms: int = 8, seeds: dict[str, FinCat] | None = None,
                 skip_duplicates: bool = True) -> list[FinCat]:
    """Seeds within the size bounds, in a fixed order."""
    seeds = builtin_seeds() if seeds is None else seeds
    return [c for name, c in seeds.items()
            if c.n_objects <= max_objects and c.n_morphisms <= max_morphisms
            and not (skip_duplicates and name in SHAPE_DUPLICATES)]
