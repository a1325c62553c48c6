"""Explicit finite categories and functors.

A :class:`FinCat` carries its whole composition table.  Names are the
public face; every structure also keeps integer index tables, which is
what the search kernels and the lens code work on.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import kernels
from .errors import MalformedError, ValidationError, Violation


@dataclass(frozen=True)
class Morphism:
    name: str
    src: str
    tgt: str


class FinCat:
    """A finite category given by objects, morphisms, identities and a total
    composition table.

    ``compose`` maps ``(g, f)`` to the name of ``g . f`` (``f`` first).  The
    constructor only checks that the data is well formed; the category laws
    are checked by :func:`validate_category`.
    """

    __slots__ = (
        "objects", "morphisms", "identities", "compose", "label",
        "_oix", "_mix", "src", "tgt", "ident", "comp", "_hash", "_out",
    )

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Morphism | Sequence[str]],
        identities: Mapping[str, str],
        compose: Mapping[tuple[str, str], str] | Iterable[Sequence[str]],
        label: str | None = None,
    ):
        objs = tuple(objects)
        mors = tuple(m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms)
        oix = {o: i for i, o in enumerate(objs)}
        if len(oix) != len(objs):
            raise MalformedError(f"duplicate object names in {list(objs)!r}")
        mix = {m.name: i for i, m in enumerate(mors)}
        if len(mix) != len(mors):
            raise MalformedError("duplicate morphism names")
        for m in mors:
            if m.src not in oix or m.tgt not in oix:
                raise MalformedError(f"morphism {m.name!r} has an unknown endpoint")
        idents = dict(identities)
        for o, i in idents.items():
            if o not in oix or i not in mix:
                raise MalformedError(f"identity entry {o!r} -> {i!r} names something unknown")
        if isinstance(compose, Mapping):
            table = dict(compose)
        else:
            table = {}
            for entry in compose:
                g, f, gf = entry
                if (g, f) in table and table[(g, f)] != gf:
                    raise MalformedError(f"conflicting composites for ({g!r}, {f!r})")
                table[(g, f)] = gf
        for (g, f), gf in table.items():
            if g not in mix or f not in mix or gf not in mix:
                raise MalformedError(f"composition entry ({g!r}, {f!r}) -> {gf!r} names something unknown")
        self.objects = objs
        self.morphisms = mors
        self.identities = {o: idents[o] for o in objs if o in idents}
        m = len(mors)
        self._oix = oix
        self._mix = mix
        self.src = tuple(oix[x.src] for x in mors)
        self.tgt = tuple(oix[x.tgt] for x in mors)
        self.ident = tuple(mix[self.identities[o]] if o in self.identities else -1 for o in objs)
        comp = [-1] * (m * m)
        for (g, f), gf in table.items():
            comp[mix[g] * m + mix[f]] = mix[gf]
        self.comp = tuple(comp)
        # canonical order: by (f, g) index, which is what serialisation writes
        self.compose = {
            (mors[g].name, mors[f].name): mors[comp[g * m + f]].name
            for f in range(m) for g in range(m) if comp[g * m + f] >= 0
        }
        self.label = label
        self._hash = None
        self._out = None

    # -- integer view ---------------------------------------------------
    @classmethod
    def _from_tables(cls, objects, morphisms, ident, comp, label=None):
        """Build from names plus integer identity/composition tables."""
        m = len(morphisms)
        names = [x.name for x in morphisms]
        idents = {objects[o]: names[i] for o, i in enumerate(ident)}
        table = {
            (names[g], names[f]): names[comp[g * m + f]]
            for g in range(m) for f in range(m) if comp[g * m + f] >= 0
        }
        return cls(objects, morphisms, idents, table, label=label)

    @property
    def tables(self):
        return (len(self.objects), len(self.morphisms), self.src, self.tgt, self.ident, self.comp)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def oindex(self, name: str) -> int:
        return self._oix[name]

    def mindex(self, name: str) -> int:
        return self._mix[name]

    def cmp(self, g: int, f: int) -> int:
        return self.comp[g * len(self.morphisms) + f]

    def out_indices(self, a: int) -> tuple[int, ...]:
        if self._out is None:
            out = [[] for _ in self.objects]
            for i, s in enumerate(self.src):
                out[s].append(i)
            self._out = tuple(tuple(x) for x in out)
        return self._out[a]

    # -- name-level helpers ---------------------------------------------
    def morphism(self, name: str) -> Morphism:
        return self.morphisms[self._mix[name]]

    def then(self, f: str, g: str) -> str:
        """Name of ``g . f``."""
        return self.compose[(g, f)]

    def hom(self, a: str, b: str) -> list[str]:
        return [m.name for m in self.morphisms if m.src == a and m.tgt == b]

    def out(self, a: str) -> list[str]:
        return [m.name for m in self.morphisms if m.src == a]

    def identity(self, a: str) -> str:
        return self.identities[a]

    def is_identity(self, name: str) -> bool:
        i = self._mix[name]
        return self.ident[self.src[i]] == i

    def non_identities(self) -> list[str]:
        return [m.name for i, m in enumerate(self.morphisms) if self.ident[self.src[i]] != i]

    def is_discrete(self) -> bool:
        return len(self.morphisms) == len(self.objects)

    def is_poset(self) -> bool:
        seen = set()
        for s, t in zip(self.src, self.tgt):
            if (s, t) in seen or (s != t and (t, s) in seen):
                return False
            seen.add((s, t))
        return True

    def relabel(self, label: str | None) -> "FinCat":
        return FinCat(self.objects, self.morphisms, self.identities, self.compose, label=label)

    # -- equality ---------------------------------------------------------
    def _key(self):
        return (self.objects, self.morphisms, self.ident, self.comp)

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        tag = f"{self.label}: " if self.label else ""
        return f"<FinCat {tag}{len(self.objects)} objects, {len(self.morphisms)} morphisms>"


class Functor:
    """A map of finite categories; functoriality is checked by
    :func:`validate_functor`."""

    __slots__ = ("source", "target", "omap", "mmap", "_hash")

    def __init__(self, source: FinCat, target: FinCat,
                 object_map: Mapping[str, str], morphism_map: Mapping[str, str]):
        try:
            omap = tuple(target.oindex(object_map[o]) for o in source.objects)
            mmap = tuple(target.mindex(morphism_map[m.name]) for m in source.morphisms)
        except KeyError as exc:
            raise MalformedError(f"functor map is not total or names an unknown cell: {exc}") from None
        extra = set(object_map) - set(source.objects) or set(morphism_map) - {m.name for m in source.morphisms}
        if extra:
            raise MalformedError(f"functor map mentions unknown cells {sorted(extra)!r}")
        self.source, self.target, self.omap, self.mmap = source, target, omap, mmap
        self._hash = None

    @classmethod
    def _raw(cls, source: FinCat, target: FinCat, omap, mmap) -> "Functor":
        self = cls.__new__(cls)
        self.source, self.target = source, target
        self.omap, self.mmap = tuple(omap), tuple(mmap)
        self._hash = None
        return self

    @property
    def object_map(self) -> dict[str, str]:
        return {o: self.target.objects[j] for o, j in zip(self.source.objects, self.omap)}

    @property
    def morphism_map(self) -> dict[str, str]:
        return {m.name: self.target.morphisms[j].name for m, j in zip(self.source.morphisms, self.mmap)}

    def on_object(self, a: str) -> str:
        return self.target.objects[self.omap[self.source.oindex(a)]]

    def on_morphism(self, u: str) -> str:
        return self.target.morphisms[self.mmap[self.source.mindex(u)]].name

    def then(self, g: "Functor") -> "Functor":
        """The composite ``g . self``."""
        if self.target != g.source:
            raise MalformedError("functors are not composable")
        return Functor._raw(self.source, g.target,
                            tuple(g.omap[i] for i in self.omap),
                            tuple(g.mmap[i] for i in self.mmap))

    def is_injective_on_objects(self) -> bool:
        return len(set(self.omap)) == len(self.omap)

    def is_injective_on_morphisms(self) -> bool:
        return len(set(self.mmap)) == len(self.mmap)

    def is_surjective_on_objects(self) -> bool:
        return len(set(self.omap)) == self.target.n_objects

    def is_surjective_on_morphisms(self) -> bool:
        return len(set(self.mmap)) == self.target.n_morphisms

    def is_faithful(self) -> bool:
        seen = {}
        for i, j in enumerate(self.mmap):
            key = (self.source.src[i], self.source.tgt[i], j)
            if key in seen:
                return False
            seen[key] = i
        return True

    def is_full(self) -> bool:
        A, B = self.source, self.target
        images = {(A.src[i], A.tgt[i], j) for i, j in enumerate(self.mmap)}
        for a in range(A.n_objects):
            for b in range(A.n_objects):
                for j in range(B.n_morphisms):
                    if B.src[j] == self.omap[a] and B.tgt[j] == self.omap[b] and (a, b, j) not in images:
                        return False
        return True

    def _key(self):
        return (self.source, self.target, self.omap, self.mmap)

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"<Functor {self.source!r} -> {self.target!r}>"


# ---------------------------------------------------------------------------
# validation


def category_violations(cat: FinCat) -> list[Violation]:
    """Every violated category law, exhaustively."""
    out: list[Violation] = []
    names = [m.name for m in cat.morphisms]
    m = cat.n_morphisms
    for o, i in zip(cat.objects, cat.ident):
        if i < 0:
            out.append(Violation("MissingIdentity", (o,), "object has no identity"))
        elif cat.src[i] != cat.oindex(o) or cat.tgt[i] != cat.oindex(o):
            out.append(Violation("MissingIdentity", (o,), f"{names[i]} is not an endomorphism of {o}"))
    for g in range(m):
        for f in range(m):
            gf = cat.comp[g * m + f]
            composable = cat.tgt[f] == cat.src[g]
            if composable and gf < 0:
                out.append(Violation("PartialCompose", (names[g], names[f]), "composable pair has no composite"))
            elif not composable and gf >= 0:
                out.append(Violation("BadEndpoints", (names[g], names[f]), "composite defined for a non-composable pair"))
            elif gf >= 0 and (cat.src[gf] != cat.src[f] or cat.tgt[gf] != cat.tgt[g]):
                out.append(Violation("BadEndpoints", (names[g], names[f]), f"composite {names[gf]} has wrong endpoints"))
    if out:
        return out
    for f in range(m):
        s, t = cat.src[f], cat.tgt[f]
        if cat.comp[cat.ident[t] * m + f] != f or cat.comp[f * m + cat.ident[s]] != f:
            out.append(Violation("IdentityLaw", (names[f],), "identity does not act trivially"))
    for h, g, f in kernels.associativity_violations(m, cat.src, cat.tgt, cat.comp):
        out.append(Violation("NonAssociative", (names[h], names[g], names[f])))
    return out


def validate_category(cat: FinCat) -> FinCat:
    """Return ``cat`` if every law holds, else raise :class:`ValidationError`."""
    problems = category_violations(cat)
    if problems:
        raise ValidationError("category", problems)
    return cat


def functor_violations(F: Functor) -> list[Violation]:
    A, B = F.source, F.target
    out: list[Violation] = []
    an = [m.name for m in A.morphisms]
    for i in range(A.n_morphisms):
        j = F.mmap[i]
        if B.src[j] != F.omap[A.src[i]] or B.tgt[j] != F.omap[A.tgt[i]]:
            out.append(Violation("EndpointMismatch", (an[i],), f"image {B.morphisms[j].name} has the wrong endpoints"))
    for o in range(A.n_objects):
        if F.mmap[A.ident[o]] != B.ident[F.omap[o]]:
            out.append(Violation("IdentityNotPreserved", (A.objects[o],)))
    if out:
        return out
    m = A.n_morphisms
    for g in range(m):
        for f in range(m):
            gf = A.comp[g * m + f]
            if gf >= 0 and B.cmp(F.mmap[g], F.mmap[f]) != F.mmap[gf]:
                out.append(Violation("CompositionNotPreserved", (an[g], an[f])))
    return out


def validate_functor(F: Functor) -> Functor:
    problems = functor_violations(F)
    if problems:
        raise ValidationError("functor", problems)
    return F


# ---------------------------------------------------------------------------
# small builders


def identity_functor(A: FinCat) -> Functor:
    return Functor._raw(A, A, range(A.n_objects), range(A.n_morphisms))


def discrete(names: Iterable[str], label: str | None = None) -> FinCat:
    objs = list(names)
    ids = {o: f"1_{o}" for o in objs}
    return FinCat(objs, [(ids[o], o, o) for o in objs], ids,
                  {(ids[o], ids[o]): ids[o] for o in objs}, label=label)


def empty_category() -> FinCat:
    return discrete([], label="0")


def terminal_category() -> FinCat:
    return discrete(["*"], label="1")


def poset(elements: Sequence[str], leq: Iterable[tuple[str, str]], label: str | None = None) -> FinCat:
    """The poset on ``elements`` generated by the pairs in ``leq``.

    Morphisms are named ``"x<=y"``; identities ``"1_x"``.
    """
    elems = list(elements)
    rel = {(x, x) for x in elems} | set(leq)
    changed = True
    while changed:
        changed = False
        for (x, y) in list(rel):
            for (y2, z) in list(rel):
                if y == y2 and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    for (x, y) in rel:
        if x != y and (y, x) in rel:
            raise MalformedError(f"order relation is not antisymmetric at {x!r}, {y!r}")

    def name(x, y):
        return f"1_{x}" if x == y else f"{x}<={y}"

    mors = [(name(x, y), x, y) for x in elems for y in elems if (x, y) in rel]
    comp = {
        (name(y, z), name(x, y)): name(x, z)
        for (x, y) in rel for (y2, z) in rel if y == y2
    }
    return FinCat(elems, mors, {x: name(x, x) for x in elems}, comp, label=label)


def chain(names: Sequence[str], label: str | None = None) -> FinCat:
    return poset(names, list(zip(names, names[1:])), label=label)


def walking_arrow() -> FinCat:
    """The category 2: x --u--> y."""
    return FinCat(["x", "y"], [("1x", "x", "x"), ("1y", "y", "y"), ("u", "x", "y")],
                  {"x": "1x", "y": "1y"},
                  {("1x", "1x"): "1x", ("1y", "1y"): "1y", ("u", "1x"): "u", ("1y", "u"): "u"},
                  label="2")


def monoid(elements: Sequence[str], unit: str, mul: Mapping[tuple[str, str], str],
           obj: str = "*", label: str | None = None) -> FinCat:
    """One-object category; ``mul[(g, f)]`` is ``g . f``."""
    return FinCat([obj], [(e, obj, obj) for e in elements], {obj: unit}, dict(mul), label=label)


def opposite(A: FinCat, label: str | None = None) -> FinCat:
    """Reversed arrows, same names."""
    return FinCat(A.objects, [Morphism(m.name, m.tgt, m.src) for m in A.morphisms], A.identities,
                  {(f, g): gf for (g, f), gf in A.compose.items()}, label=label)


def _pair(x: str, y: str) -> str:
    return f"({x},{y})"


class CatProduct(NamedTuple):
    cat: FinCat
    proj0: Functor
    proj1: Functor


class CatCoproduct(NamedTuple):
    cat: FinCat
    inj0: Functor
    inj1: Functor


class CatPullback(NamedTuple):
    cat: FinCat
    proj0: Functor
    proj1: Functor


class Inclusion(NamedTuple):
    cat: FinCat
    inclusion: Functor


def _restricted_product(A: FinCat, B: FinCat, obj_ok, mor_ok, label=None):
    """Sub-product of A x B on the admitted cells, with both projections."""
    pairs_o = [(a, b) for a in range(A.n_objects) for b in range(B.n_objects) if obj_ok(a, b)]
    pairs_m = [(u, v) for u in range(A.n_morphisms) for v in range(B.n_morphisms) if mor_ok(u, v)]
    oix = {p: i for i, p in enumerate(pairs_o)}
    mix = {p: i for i, p in enumerate(pairs_m)}
    objs = [_pair(A.objects[a], B.objects[b]) for a, b in pairs_o]
    mors = [Morphism(_pair(A.morphisms[u].name, B.morphisms[v].name),
                     objs[oix[(A.src[u], B.src[v])]], objs[oix[(A.tgt[u], B.tgt[v])]])
            for u, v in pairs_m]
    ident = [mix[(A.ident[a], B.ident[b])] for a, b in pairs_o]
    n = len(pairs_m)
    comp = [-1] * (n * n)
    for gi, (g1, g2) in enumerate(pairs_m):
        for fi, (f1, f2) in enumerate(pairs_m):
            c1, c2 = A.cmp(g1, f1), B.cmp(g2, f2)
            if c1 >= 0 and c2 >= 0:
                comp[gi * n + fi] = mix[(c1, c2)]
    P = FinCat._from_tables(objs, mors, ident, comp, label=label)
    p0 = Functor._raw(P, A, [a for a, _ in pairs_o], [u for u, _ in pairs_m])
    p1 = Functor._raw(P, B, [b for _, b in pairs_o], [v for _, v in pairs_m])
    return P, p0, p1


def product_cat(A: FinCat, B: FinCat) -> CatProduct:
    """Cartesian product with its projections; cells named ``"(a,b)"``."""
    label = f"{A.label}x{B.label}" if A.label and B.label else None
    return CatProduct(*_restricted_product(A, B, lambda a, b: True, lambda u, v: True, label))


def pullback_cat(f: Functor, g: Functor) -> CatPullback:
    """``A x_B C`` for ``f: A -> B`` and ``g: C -> B``."""
    if f.target != g.target:
        raise MalformedError("pullback needs a common codomain")
    return CatPullback(*_restricted_product(
        f.source, g.source,
        lambda a, c: f.omap[a] == g.omap[c],
        lambda u, w: f.mmap[u] == g.mmap[w]))


def coproduct_cat(A: FinCat, B: FinCat) -> CatCoproduct:
    """Disjoint union; cells of A are prefixed ``"0:"`` and of B ``"1:"``."""
    objs = [f"0:{o}" for o in A.objects] + [f"1:{o}" for o in B.objects]
    na, ma = A.n_objects, A.n_morphisms
    mors = [Morphism(f"0:{m.name}", f"0:{m.src}", f"0:{m.tgt}") for m in A.morphisms]
    mors += [Morphism(f"1:{m.name}", f"1:{m.src}", f"1:{m.tgt}") for m in B.morphisms]
    ident = list(A.ident) + [ma + i for i in B.ident]
    n = len(mors)
    comp = [-1] * (n * n)
    for g in range(ma):
        for f in range(ma):
            c = A.cmp(g, f)
            if c >= 0:
                comp[g * n + f] = c
    for g in range(B.n_morphisms):
        for f in range(B.n_morphisms):
            c = B.cmp(g, f)
            if c >= 0:
                comp[(ma + g) * n + ma + f] = ma + c
    label = f"{A.label}+{B.label}" if A.label and B.label else None
    S = FinCat._from_tables(objs, mors, ident, comp, label=label)
    i0 = Functor._raw(A, S, range(na), range(ma))
    i1 = Functor._raw(B, S, range(na, na + B.n_objects), range(ma, ma + B.n_morphisms))
    return CatCoproduct(S, i0, i1)


def _subcategory(A: FinCat, objs: Sequence[int], mors: Sequence[int], label=None) -> Inclusion:
    oset = sorted(objs)
    mset = sorted(mors)
    mix = {m: i for i, m in enumerate(mset)}
    n = len(mset)
    comp = [-1] * (n * n)
    for g in mset:
        for f in mset:
            c = A.cmp(g, f)
            if c >= 0:
                comp[mix[g] * n + mix[f]] = mix[c]
    sub = FinCat._from_tables([A.objects[o] for o in oset], [A.morphisms[m] for m in mset],
                              [mix[A.ident[o]] for o in oset], comp, label=label)
    return Inclusion(sub, Functor._raw(sub, A, oset, mset))


def equaliser_cat(f: Functor, g: Functor) -> Inclusion:
    """The subcategory where ``f`` and ``g`` agree, with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise MalformedError("equaliser needs a parallel pair")
    A = f.source
    objs = [a for a in range(A.n_objects) if f.omap[a] == g.omap[a]]
    mors = [w for w in range(A.n_morphisms) if f.mmap[w] == g.mmap[w]]
    return _subcategory(A, objs, mors)


def full_subcategory(A: FinCat, S: Iterable[str]) -> Inclusion:
    """Full subcategory on the objects ``S`` (kept in A's order)."""
    keep = {A.oindex(s) for s in S}
    mors = [w for w in range(A.n_morphisms) if A.src[w] in keep and A.tgt[w] in keep]
    return _subcategory(A, sorted(keep), mors)


def discrete_objects(A: FinCat) -> Inclusion:
    """The discrete category of objects of A, identity names kept."""
    label = f"{A.label}_0" if A.label else None
    return _subcategory(A, range(A.n_objects), [A.ident[o] for o in range(A.n_objects)], label=label)


# ---------------------------------------------------------------------------
# isomorphism search


def find_isomorphism(A: FinCat, B: FinCat) -> Functor | None:
    """An isomorphism ``A -> B`` by backtracking, or ``None``."""
    if A.n_objects != B.n_objects or A.n_morphisms != B.n_morphisms:
        return None
    n, m = A.n_objects, A.n_morphisms

    def homsizes(C):
        table = [[0] * n for _ in range(n)]
        for s, t in zip(C.src, C.tgt):
            table[s][t] += 1
        return table

    ha, hb = homsizes(A), homsizes(B)
    profile = lambda h, i: (sorted(h[i]), sorted(r[i] for r in h), h[i][i])
    for perm in permutations(range(n)):
        if any(profile(ha, i) != profile(hb, perm[i]) for i in range(n)):
            continue
        if any(ha[i][j] != hb[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            continue
        mmap = [-1] * m
        used = [False] * m
        order = list(range(m))

        def ok(i):
            for j in range(m):
                if mmap[j] < 0:
                    continue
                for g, f in ((i, j), (j, i)):
                    gf = A.comp[g * m + f]
                    if gf >= 0 and mmap[gf] >= 0 and B.cmp(mmap[g], mmap[f]) != mmap[gf]:
                        return False
            gf = A.comp[i * m + i]
            if gf >= 0 and mmap[gf] >= 0 and B.cmp(mmap[i], mmap[i]) != mmap[gf]:
                return False
            return True

        def rec(k):
            if k == m:
                return True
            i = order[k]
            for j in range(m):
                if used[j] or B.src[j] != perm[A.src[i]] or B.tgt[j] != perm[A.tgt[i]]:
                    continue
                mmap[i] = j
                used[j] = True
                if ok(i) and rec(k + 1):
                    return True
                mmap[i] = -1
                used[j] = False
            return False

        if rec(0):
            F = Functor._raw(A, B, perm, mmap)
            if not functor_violations(F):
                return F
    return None


def is_isomorphic(A: FinCat, B: FinCat) -> bool:
    return find_isomorphism(A, B) is not None
