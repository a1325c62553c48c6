"""Exhaustive enumeration and brute-force universal-property checks.

Everything here quantifies over finite families: every functor, every lens,
every cone from a list of test apexes.  Verdicts are deterministic because
enumeration order is lexicographic in (object map, morphism map, lift table).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from . import kernels
from .constructions import EqualiserResult, ImportedCone, imported_pullback
from .errors import BoundExceeded
from .fincat import FinCat, Functor, Morphism, full_subcategory, functor_violations
from .lens import Lens, compose_lens, is_discrete_opfibration, lens_violations
from .seeds import sweep_family


@dataclass(frozen=True)
class Bounds:
    """Size limits for sweeps and searches.

    ``objects``/``morphisms`` pick the default test apexes from the seed
    family.  ``search_limit`` caps ``|Ob A| * |Mor A|`` for an enumeration
    source and ``object_maps`` caps ``|Ob B| ** |Ob A|``.
    """

    objects: int = 3
    morphisms: int = 8
    targeted_objects: int = 4
    search_limit: int = 4096
    object_maps: int = 1_000_000


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class OracleReport:
    property: str
    holds: bool
    witness: dict | None = None
    search_size: int = 0
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def __bool__(self):
        return self.holds


# ---------------------------------------------------------------------------
# enumeration


def _check_bounds(A: FinCat, B: FinCat, bounds: Bounds):
    if A.n_objects * A.n_morphisms > bounds.search_limit:
        raise BoundExceeded(f"source too large: {A.n_objects} objects x {A.n_morphisms} morphisms")
    if B.n_objects ** A.n_objects > bounds.object_maps:
        raise BoundExceeded(f"{B.n_objects}^{A.n_objects} object maps exceed the limit")


@lru_cache(maxsize=4096)
def _functor_tables(A: FinCat, B: FinCat):
    return tuple(kernels.enumerate_functors(A.tables, B.tables))


@lru_cache(maxsize=4096)
def _lens_tables(A: FinCat, B: FinCat):
    out = []
    for omap, mmap in _functor_tables(A, B):
        for table in kernels.enumerate_lifts(A.tables, B.tables, omap, mmap):
            out.append((omap, mmap, table))
    return tuple(out)


def enumerate_functors(A: FinCat, B: FinCat, bounds: Bounds = DEFAULT_BOUNDS) -> Iterator[Functor]:
    """Every functor ``A -> B`` exactly once."""
    _check_bounds(A, B, bounds)
    for omap, mmap in _functor_tables(A, B):
        yield Functor._raw(A, B, omap, mmap)


def enumerate_lenses(A: FinCat, B: FinCat, bounds: Bounds = DEFAULT_BOUNDS) -> Iterator[Lens]:
    """Every lens ``A <=> B`` exactly once."""
    yield from all_lenses(A, B, bounds)


def all_lenses(A: FinCat, B: FinCat, bounds: Bounds = DEFAULT_BOUNDS) -> tuple[Lens, ...]:
    _check_bounds(A, B, bounds)
    return _lens_objects(A, B)


@lru_cache(maxsize=4096)
def _lens_objects(A: FinCat, B: FinCat) -> tuple[Lens, ...]:
    functors = {}
    out = []
    for omap, mmap, table in _lens_tables(A, B):
        F = functors.get((omap, mmap))
        if F is None:
            F = functors[(omap, mmap)] = Functor._raw(A, B, omap, mmap)
        out.append(Lens._raw(F, table))
    return tuple(out)


def naive_lenses(A: FinCat, B: FinCat, limit: int = 2_000_000) -> list[Lens]:
    """All lenses by generate-and-test over raw maps; an independent check on
    :func:`enumerate_lenses` for very small categories."""
    om_space = B.n_objects ** A.n_objects
    mm_space = B.n_morphisms ** A.n_morphisms
    if om_space * mm_space > limit:
        raise BoundExceeded("naive search space too large")
    out = []
    for omap in product(range(B.n_objects), repeat=A.n_objects):
        for mmap in product(range(B.n_morphisms), repeat=A.n_morphisms):
            F = Functor._raw(A, B, omap, mmap)
            if functor_violations(F):
                continue
            keys = [(a, u) for a in range(A.n_objects) for u in range(B.n_morphisms) if B.src[u] == omap[a]]
            options = [[w for w in range(A.n_morphisms) if A.src[w] == a and mmap[w] == u] for a, u in keys]
            for choice in product(*options):
                table = [-1] * (A.n_objects * B.n_morphisms)
                for (a, u), w in zip(keys, choice):
                    table[a * B.n_morphisms + u] = w
                lens = Lens._raw(F, table)
                if not lens_violations(lens):
                    out.append(lens)
    return out


def default_test_apexes(bounds: Bounds = DEFAULT_BOUNDS) -> list[FinCat]:
    return sweep_family(bounds.objects, bounds.morphisms)


def cosieves(A: FinCat) -> list[frozenset[int]]:
    """Every object subset closed under outgoing morphisms."""
    out = []
    n = A.n_objects
    for r in range(n + 1):
        for S in combinations(range(n), r):
            s = set(S)
            if all(A.tgt[w] in s for a in S for w in A.out_indices(a)):
                out.append(frozenset(S))
    return out


# ---------------------------------------------------------------------------
# universal properties


def _group(lenses: Iterable[Lens], key) -> dict:
    groups = defaultdict(list)
    for lens in lenses:
        groups[key(lens)].append(lens)
    return groups


def cone_mediator_counts(legs: Sequence[Lens], cospan: Sequence[Lens] | None, apexes: Iterable[FinCat],
                         bounds: Bounds | None = None, prop: str = "pullback-UP") -> OracleReport:
    """For each test apex Z and each cone ``(p, q)`` from Z, count lenses
    ``m: Z <=> apex`` with ``m ; legs[0] == p`` and ``m ; legs[1] == q``.

    With ``cospan = (f, g)`` only cones with ``p ; f == q ; g`` count; with
    ``None`` every pair does (products).
    """
    bounds = bounds or DEFAULT_BOUNDS
    l0, l1 = legs
    P, A, C = l0.source, l0.target, l1.target
    size = 0
    for Z in apexes:
        ps = all_lenses(Z, A, bounds)
        qs = all_lenses(Z, C, bounds)
        ms = all_lenses(Z, P, bounds)
        size += len(ps) * len(qs) + len(ms)
        counts = _group(ms, lambda m: (compose_lens(m, l0).key, compose_lens(m, l1).key))
        if cospan is not None:
            f, g = cospan
            by_base = _group(qs, lambda q: compose_lens(q, g).key)
            pairs = ((p, q) for p in ps for q in by_base.get(compose_lens(p, f).key, ()))
        else:
            pairs = ((p, q) for p in ps for q in qs)
        for p, q in pairs:
            found = counts.get((p.key, q.key), [])
            if len(found) != 1:
                return OracleReport(prop, False, {
                    "apex": Z, "p": p, "q": q, "mediators": len(found), "candidates": found[:2],
                }, size)
    return OracleReport(prop, True, None, size)


def check_universal_product(cone: ImportedCone, test_apexes: Iterable[FinCat] | None = None,
                            bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    """Unique mediator for every pair of lenses out of every test apex."""
    apexes = default_test_apexes(bounds) if test_apexes is None else test_apexes
    return cone_mediator_counts(cone.legs, None, apexes, bounds, prop="product-UP")


def check_universal_pullback(cone: ImportedCone, cospan: Sequence[Lens],
                             test_apexes: Iterable[FinCat] | None = None,
                             bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    apexes = default_test_apexes(bounds) if test_apexes is None else test_apexes
    return cone_mediator_counts(cone.legs, cospan, apexes, bounds, prop="pullback-UP")


def check_universal_equaliser(result: EqualiserResult, pair: Sequence[Lens],
                              test_apexes: Iterable[FinCat] | None = None,
                              bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    """Every lens equalising the pair factors exactly once through the inclusion.

    The domain of the pair and the equaliser object are always tested too.
    """
    f, g = pair
    incl = result.inclusion
    A, M = f.source, result.object
    apexes = list(default_test_apexes(bounds) if test_apexes is None else test_apexes)
    apexes += [M, A]
    if compose_lens(incl, f) != compose_lens(incl, g):
        return OracleReport("equaliser-UP", False, {"reason": "inclusion is not a cone"}, 0)
    size = 0
    for Z in apexes:
        hs = [h for h in all_lenses(Z, A, bounds) if compose_lens(h, f) == compose_lens(h, g)]
        ks = all_lenses(Z, M, bounds)
        size += len(all_lenses(Z, A, bounds)) + len(ks)
        counts = _group(ks, lambda k: compose_lens(k, incl).key)
        for h in hs:
            found = counts.get(h.key, [])
            if len(found) != 1:
                return OracleReport("equaliser-UP", False, {"apex": Z, "cone": h, "mediators": len(found)}, size)
    return OracleReport("equaliser-UP", True, None, size)


def maximal_cone_cosieve(f: Lens, g: Lens) -> frozenset[int]:
    """Union of all cosieves of A whose inclusion equalises f and g, by
    exhaustive subset search (independent of the fixpoint construction)."""
    from .lens import lens_from_dof
    A = f.source
    best: set[int] = set()
    for S in cosieves(A):
        sub, incl = full_subcategory(A, [A.objects[a] for a in sorted(S)])
        k = lens_from_dof(incl)
        if compose_lens(k, f) == compose_lens(k, g):
            best |= S
    return frozenset(best)


def equalising_cosieves(f: Lens, g: Lens) -> list[frozenset[int]]:
    from .lens import lens_from_dof
    A = f.source
    out = []
    for S in cosieves(A):
        _, incl = full_subcategory(A, [A.objects[a] for a in sorted(S)])
        k = lens_from_dof(incl)
        if compose_lens(k, f) == compose_lens(k, g):
            out.append(S)
    return out


def count_lenses_where(A: FinCat, B: FinCat, predicate, bounds: Bounds = DEFAULT_BOUNDS) -> list[Lens]:
    """All lenses ``A <=> B`` satisfying ``predicate``; used for uniqueness claims."""
    return [l for l in all_lenses(A, B, bounds) if predicate(l)]


# ---------------------------------------------------------------------------
# cancellation


def kernel_pair_apexes(lens: Lens) -> list[FinCat]:
    """Cosieves of the imported kernel pair generated by one object, where
    the two projections differ.  Each yields two distinct lenses into the
    domain with the same composite, whenever the functor is not injective."""
    cone = imported_pullback(lens, lens)
    P = cone.apex
    p0, p1 = cone.underlying
    seen = set()
    out = []
    for x in range(P.n_objects):
        reach = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for w in P.out_indices(y):
                if P.tgt[w] not in reach:
                    reach.add(P.tgt[w])
                    frontier.append(P.tgt[w])
        key = frozenset(reach)
        if key in seen:
            continue
        seen.add(key)
        sub, incl = full_subcategory(P, [P.objects[y] for y in sorted(reach)])
        if incl.then(p0) != incl.then(p1):
            out.append(sub)
    out.sort(key=lambda c: (c.n_objects, c.n_morphisms))
    return out


def cokernel_pair(lens: Lens) -> FinCat | None:
    """Two copies of the codomain glued along the image cosieve, or ``None``
    when the lens is surjective on objects."""
    F = lens.functor
    B = F.target
    image = set(F.omap)
    if len(image) == B.n_objects:
        return None
    def oname(b, c):
        return B.objects[b] if b in image else f"{B.objects[b]}#{c}"
    cells = []   # (morphism index in B, copy or None)
    for w in range(B.n_morphisms):
        if B.src[w] in image:
            cells.append((w, None))
    for c in (0, 1):
        for w in range(B.n_morphisms):
            if B.src[w] not in image:
                cells.append((w, c))
    cix = {cell: i for i, cell in enumerate(cells)}
    mors = []
    for w, c in cells:
        name = B.morphisms[w].name if c is None else f"{B.morphisms[w].name}#{c}"
        mors.append(Morphism(name, oname(B.src[w], c), oname(B.tgt[w], c)))
    objs = [B.objects[b] for b in range(B.n_objects) if b in image]
    objs += [f"{B.objects[b]}#{c}" for c in (0, 1) for b in range(B.n_objects) if b not in image]
    n = len(cells)
    comp = [-1] * (n * n)
    for gi, (g, cg) in enumerate(cells):
        for fi, (f, cf) in enumerate(cells):
            gf = B.cmp(g, f)
            if gf < 0:
                continue
            if cf is None:
                if cg is None:
                    comp[gi * n + fi] = cix[(gf, None)]
            elif cg is None or cg == cf:
                # g's copy only matters when g starts outside the image
                if cg is None and B.src[g] not in image:
                    continue
                comp[gi * n + fi] = cix[(gf, cf)]
    ident = []
    for o in objs:
        if "#" in o and o.rsplit("#", 1)[0] in B.objects and B.oindex(o.rsplit("#", 1)[0]) not in image:
            base, c = o.rsplit("#", 1)
            ident.append(cix[(B.ident[B.oindex(base)], int(c))])
        else:
            ident.append(cix[(B.ident[B.oindex(o)], None)])
    return FinCat._from_tables(objs, mors, ident, comp)


def brute_force_mono(lens: Lens, test_apexes: Iterable[FinCat] | None = None,
                     bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    """Left cancellation over every pair of lenses ``Z <=> A``.

    Default apexes: the seed family plus the kernel-pair cosieves of the lens.
    """
    if test_apexes is None:
        apexes = kernel_pair_apexes(lens) + default_test_apexes(bounds)
    else:
        apexes = list(test_apexes)
    A = lens.source
    size = 0
    for Z in apexes:
        hs = all_lenses(Z, A, bounds)
        size += len(hs)
        for group in _group(hs, lambda h: compose_lens(h, lens).key).values():
            if len(group) > 1:
                return OracleReport("mono-cancel", False, {"apex": Z, "h": group[0], "h'": group[1]}, size)
    return OracleReport("mono-cancel", True, None, size)


def brute_force_epi(lens: Lens, test_apexes: Iterable[FinCat] | None = None,
                    bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    """Right cancellation over every pair of lenses ``B <=> C``.

    Default apexes: the seed family plus the cokernel pair of the lens.
    """
    if test_apexes is None:
        extra = cokernel_pair(lens)
        apexes = ([extra] if extra is not None else []) + default_test_apexes(bounds)
    else:
        apexes = list(test_apexes)
    B = lens.target
    size = 0
    for C in apexes:
        ks = all_lenses(B, C, bounds)
        size += len(ks)
        for group in _group(ks, lambda k: compose_lens(lens, k).key).values():
            if len(group) > 1:
                return OracleReport("epi-cancel", False, {"apex": C, "k": group[0], "k'": group[1]}, size)
    return OracleReport("epi-cancel", True, None, size)


def unique_lens(A: FinCat, B: FinCat, predicate, bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    """Whether exactly one lens ``A <=> B`` satisfies ``predicate``."""
    found = count_lenses_where(A, B, predicate, bounds)
    return OracleReport("uniqueness", len(found) == 1, {"count": len(found), "lenses": found[:2]},
                        len(all_lenses(A, B, bounds)))


def exists_lens(A: FinCat, B: FinCat, predicate, bounds: Bounds = DEFAULT_BOUNDS) -> OracleReport:
    found = count_lenses_where(A, B, predicate, bounds)
    return OracleReport("existence", bool(found), {"count": len(found), "lenses": found[:1]},
                        len(all_lenses(A, B, bounds)))


def dof_leg(cospan: Sequence[Lens]) -> bool:
    return any(bool(is_discrete_opfibration(l.functor)) for l in cospan)
