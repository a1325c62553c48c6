"""Delta lenses: a functor with a chosen lift for every codomain morphism.

The lift table is stored flat, indexed ``a * nmor(B) + u``, holding the
index of the chosen morphism of A (``-1`` where ``src u != f a``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import (
    CharacterisationMismatch, CompositeMismatch, DomainMismatch, InvalidTriangle,
    MalformedError, NotDOF, ValidationError, Violation,
)
from .fincat import FinCat, Functor, Morphism, functor_violations, identity_functor


class Lens:
    """A functor ``A -> B`` together with a lifting operation.

    ``lift`` maps ``(a, u)`` (object of A, morphism of B out of ``f a``) to a
    morphism of A.  Construct, then call :func:`validate_lens`.
    """

    __slots__ = ("functor", "table", "_hash")

    def __init__(self, functor: Functor, lift: Mapping[tuple[str, str], str]):
        A, B = functor.source, functor.target
        mb = B.n_morphisms
        table = [-1] * (A.n_objects * mb)
        for (a, u), w in lift.items():
            try:
                ai, ui, wi = A.oindex(a), B.mindex(u), A.mindex(w)
            except KeyError as exc:
                raise MalformedError(f"lift entry names an unknown cell: {exc}") from None
            if B.src[ui] != functor.omap[ai]:
                raise MalformedError(f"lift entry ({a!r}, {u!r}): {u!r} does not start at f({a})")
            table[ai * mb + ui] = wi
        self.functor = functor
        self.table = tuple(table)
        self._hash = None

    @classmethod
    def _raw(cls, functor: Functor, table) -> "Lens":
        self = cls.__new__(cls)
        self.functor = functor
        self.table = tuple(table)
        self._hash = None
        return self

    @property
    def source(self) -> FinCat:
        return self.functor.source

    @property
    def target(self) -> FinCat:
        return self.functor.target

    @property
    def key(self):
        """Hashable tables; equal keys mean equal lenses between the same categories."""
        return (self.functor.omap, self.functor.mmap, self.table)

    def lift_index(self, a: int, u: int) -> int:
        return self.table[a * self.target.n_morphisms + u]

    def lift_of(self, a: str, u: str) -> str:
        w = self.lift_index(self.source.oindex(a), self.target.mindex(u))
        if w < 0:
            raise KeyError((a, u))
        return self.source.morphisms[w].name

    @property
    def lift(self) -> dict[tuple[str, str], str]:
        A, B = self.source, self.target
        mb = B.n_morphisms
        return {
            (A.objects[a], B.morphisms[u].name): A.morphisms[self.table[a * mb + u]].name
            for a in range(A.n_objects) for u in range(mb)
            if B.src[u] == self.functor.omap[a] and self.table[a * mb + u] >= 0
        }

    def then(self, other: "Lens") -> "Lens":
        return compose_lens(self, other)

    def __eq__(self, other):
        if not isinstance(other, Lens):
            return NotImplemented
        return self.functor == other.functor and self.table == other.table

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.functor, self.table))
        return self._hash

    def __repr__(self):
        return f"<Lens {self.source!r} <=> {self.target!r}>"


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class TrianglePresentation:
    """A lens as a span ``A <-left- X -right-> B`` over its functor ``base``."""

    apex: FinCat
    left: Functor
    right: Functor
    base: Functor


# ---------------------------------------------------------------------------
# laws


def lens_violations(lens: Lens) -> list[Violation]:
    """Every failed lens axiom, each instance listed."""
    F = lens.functor
    problems = functor_violations(F)
    if problems:
        return problems
    A, B = F.source, F.target
    mb = B.n_morphisms
    an = [m.name for m in A.morphisms]
    bn = [m.name for m in B.morphisms]
    L = lens.table
    out: list[Violation] = []
    for a in range(A.n_objects):
        for u in range(mb):
            if B.src[u] != F.omap[a]:
                continue
            w = L[a * mb + u]
            if w < 0:
                out.append(Violation("MissingLift", (A.objects[a], bn[u])))
            elif A.src[w] != a or F.mmap[w] != u:
                out.append(Violation("Axiom1", (A.objects[a], bn[u]), f"lift {an[w]} does not sit over {bn[u]} at {A.objects[a]}"))
        if L[a * mb + B.ident[F.omap[a]]] != A.ident[a]:
            out.append(Violation("Axiom2", (A.objects[a],), "identity does not lift to identity"))
    if out:
        return out
    for a in range(A.n_objects):
        for u in range(mb):
            if B.src[u] != F.omap[a]:
                continue
            w = L[a * mb + u]
            a2 = A.tgt[w]
            for v in range(mb):
                if B.src[v] != B.tgt[u]:
                    continue
                lhs = L[a * mb + B.cmp(v, u)]
                rhs = A.cmp(L[a2 * mb + v], w)
                if lhs != rhs:
                    out.append(Violation("Axiom3", (A.objects[a], bn[u], bn[v])))
    return out


def validate_lens(lens: Lens) -> Lens:
    problems = lens_violations(lens)
    if problems:
        raise ValidationError("lens", problems)
    return lens


def compose_lens(f: Lens, g: Lens) -> Lens:
    """``f: A <=> B`` followed by ``g: B <=> C``.

    The lift at ``(a, u)`` is ``f.lift(a, g.lift(f a, u))``.
    """
    if f.target != g.source:
        raise DomainMismatch("codomain of the first lens is not the domain of the second")
    A, B, C = f.source, f.target, g.target
    mb, mc = B.n_morphisms, C.n_morphisms
    F = f.functor
    table = [-1] * (A.n_objects * mc)
    for a in range(A.n_objects):
        fa = F.omap[a]
        for u in range(mc):
            v = g.table[fa * mc + u]
            if v >= 0:
                table[a * mc + u] = f.table[a * mb + v]
    return Lens._raw(F.then(g.functor), table)


def identity_lens(A: FinCat) -> Lens:
    m = A.n_morphisms
    table = [-1] * (A.n_objects * m)
    for w in range(m):
        table[A.src[w] * m + w] = w
    return Lens._raw(identity_functor(A), table)


# ---------------------------------------------------------------------------
# discrete opfibrations and cosieves


def _dof_lifts(F: Functor):
    """For each (a, u) with ``src u = F a``, the morphisms out of ``a`` over ``u``."""
    A, B = F.source, F.target
    lifts = {}
    for a in range(A.n_objects):
        for u in A.out_indices(a):
            lifts.setdefault((a, F.mmap[u]), []).append(u)
    for a in range(A.n_objects):
        for u in B.out_indices(F.omap[a]):
            yield a, u, lifts.get((a, u), [])


def is_discrete_opfibration(F: Functor) -> Verdict:
    """Exactly one lift of each ``u: F a -> b`` starting at ``a``.

    On failure the witness is ``(a, u, count)``.
    """
    A, B = F.source, F.target
    for a, u, ws in _dof_lifts(F):
        if len(ws) != 1:
            return Verdict(False, (A.objects[a], B.morphisms[u].name, len(ws)))
    return Verdict(True)


def is_cosieve(F: Functor) -> Verdict:
    """Injective-on-objects DOF, cross-checked against fully faithful DOF."""
    dof = is_discrete_opfibration(F)
    by_injective = bool(dof) and F.is_injective_on_objects()
    by_full = bool(dof) and F.is_full() and F.is_faithful()
    if by_injective != by_full:
        raise CharacterisationMismatch(f"cosieve characterisations disagree on {F!r}")
    if not dof:
        return dof
    if not by_injective:
        seen = {}
        for i, j in enumerate(F.omap):
            if j in seen:
                return Verdict(False, ("not injective on objects", F.source.objects[seen[j]], F.source.objects[i]))
            seen[j] = i
    return Verdict(by_injective)


def lens_from_dof(F: Functor) -> Lens:
    """The unique lens on a discrete opfibration."""
    v = is_discrete_opfibration(F)
    if not v:
        raise NotDOF(f"not a discrete opfibration at {v.witness}")
    mb = F.target.n_morphisms
    table = [-1] * (F.source.n_objects * mb)
    for a, u, ws in _dof_lifts(F):
        table[a * mb + u] = ws[0]
    return Lens._raw(F, table)


def is_opcartesian(F: Functor, w: str) -> bool:
    """Whether the morphism ``w`` of ``F.source`` is opcartesian for ``F``."""
    A, B = F.source, F.target
    wi = A.mindex(w)
    a, a1 = A.src[wi], A.tgt[wi]
    for w2 in A.out_indices(a):
        a2 = A.tgt[w2]
        for v in range(B.n_morphisms):
            if B.src[v] != F.omap[a1] or B.tgt[v] != F.omap[a2]:
                continue
            if B.cmp(v, F.mmap[wi]) != F.mmap[w2]:
                continue
            fills = [t for t in A.out_indices(a1)
                     if A.tgt[t] == a2 and F.mmap[t] == v and A.cmp(t, wi) == w2]
            if len(fills) != 1:
                return False
    return True


def is_split_opfibration(lens: Lens) -> bool:
    """Whether every chosen lift is opcartesian."""
    A = lens.source
    return all(is_opcartesian(lens.functor, A.morphisms[w].name) for w in lens.table if w >= 0)


# ---------------------------------------------------------------------------
# triangle presentation


def triangle_representation(lens: Lens) -> TrianglePresentation:
    """The span ``A <- X -> B``.

    X has the objects of A; its morphisms out of ``a`` are the pairs
    ``(a, u)`` named ``"(a,u)"``, with target the target of the chosen lift.
    """
    A, B = lens.source, lens.target
    F = lens.functor
    mb = B.n_morphisms
    keys = [(a, u) for a in range(A.n_objects) for u in range(mb) if B.src[u] == F.omap[a]]
    kix = {k: i for i, k in enumerate(keys)}
    mors = [Morphism(f"({A.objects[a]},{B.morphisms[u].name})", A.objects[a],
                     A.objects[A.tgt[lens.table[a * mb + u]]]) for a, u in keys]
    n = len(keys)
    comp = [-1] * (n * n)
    for fi, (a, u) in enumerate(keys):
        a2 = A.tgt[lens.table[a * mb + u]]
        for v in B.out_indices(B.tgt[u]):
            comp[kix[(a2, v)] * n + fi] = kix[(a, B.cmp(v, u))]
    ident = [kix[(a, B.ident[F.omap[a]])] for a in range(A.n_objects)]
    X = FinCat._from_tables(list(A.objects), mors, ident, comp)
    left = Functor._raw(X, A, range(A.n_objects), [lens.table[a * mb + u] for a, u in keys])
    right = Functor._raw(X, B, F.omap, [u for _, u in keys])
    return TrianglePresentation(X, left, right, F)


def triangle_violations(t: TrianglePresentation) -> list[str]:
    problems = []
    if t.left.target != t.base.source or t.right.target != t.base.target or t.left.source != t.right.source:
        return ["legs do not form a span over the base functor"]
    if t.left.source != t.apex:
        problems.append("apex is not the source of the legs")
    if sorted(t.left.omap) != list(range(t.base.source.n_objects)):
        problems.append("left leg is not bijective on objects")
    if not t.left.is_faithful():
        problems.append("left leg is not faithful")
    if not is_discrete_opfibration(t.right):
        problems.append("right leg is not a discrete opfibration")
    if t.left.then(t.base) != t.right:
        problems.append("triangle does not commute")
    return problems


def lens_from_triangle(t: TrianglePresentation) -> Lens:
    """Read the lift off a span: lift the codomain morphism along the right
    leg at the preimage of ``a``, then push it down the left leg."""
    problems = triangle_violations(t)
    if problems:
        raise InvalidTriangle("; ".join(problems))
    F = t.base
    A, B = F.source, F.target
    mb = B.n_morphisms
    preimage = {a: x for x, a in enumerate(t.left.omap)}
    X = t.apex
    lifts = {}
    for x in range(X.n_objects):
        for w in X.out_indices(x):
            lifts[(x, t.right.mmap[w])] = w
    table = [-1] * (A.n_objects * mb)
    for a in range(A.n_objects):
        x = preimage[a]
        for u in B.out_indices(F.omap[a]):
            table[a * mb + u] = t.left.mmap[lifts[(x, u)]]
    return Lens._raw(F, table)


# ---------------------------------------------------------------------------
# division by a discrete opfibration


def divide_lens(f: Functor, g_dof: Functor, gf_lens: Lens) -> Lens:
    """The unique lens on ``f`` whose composite with the lens on ``g_dof``
    is ``gf_lens``: lift ``u`` at ``a`` by lifting ``g u`` along ``gf_lens``."""
    if f.target != g_dof.source:
        raise DomainMismatch("f and g are not composable")
    if not is_discrete_opfibration(g_dof):
        raise NotDOF("the divisor is not a discrete opfibration")
    if gf_lens.functor != f.then(g_dof):
        raise CompositeMismatch("the given lens does not sit on g . f")
    A, B, C = f.source, f.target, g_dof.target
    mb, mc = B.n_morphisms, C.n_morphisms
    table = [-1] * (A.n_objects * mb)
    for a in range(A.n_objects):
        for u in B.out_indices(f.omap[a]):
            table[a * mb + u] = gf_lens.table[a * mc + g_dof.mmap[u]]
    return Lens._raw(f, table)


# ---------------------------------------------------------------------------
# mono / epi / iso


def is_mono_lens(lens: Lens) -> Verdict:
    """Cosieve, fully faithful DOF, and injective functor must all agree."""
    F = lens.functor
    cos = is_cosieve(F)
    injective = F.is_injective_on_objects() and F.is_injective_on_morphisms()
    if bool(cos) != injective:
        raise CharacterisationMismatch(f"mono characterisations disagree on {lens!r}")
    return cos


def is_epi_lens(lens: Lens) -> Verdict:
    F = lens.functor
    on_obj = F.is_surjective_on_objects()
    on_mor = F.is_surjective_on_morphisms()
    if on_obj != on_mor:
        raise CharacterisationMismatch(f"epi characterisations disagree on {lens!r}")
    if on_obj:
        return Verdict(True)
    missing = [B for B in F.target.objects if F.target.oindex(B) not in set(F.omap)]
    return Verdict(False, ("objects missed", missing))


def is_iso_lens(lens: Lens) -> Verdict:
    F = lens.functor
    bij = (F.is_injective_on_objects() and F.is_surjective_on_objects()
           and F.is_injective_on_morphisms() and F.is_surjective_on_morphisms())
    both = bool(is_mono_lens(lens)) and bool(is_epi_lens(lens))
    if bij != both:
        raise CharacterisationMismatch(f"iso characterisations disagree on {lens!r}")
    return Verdict(bij)


def inverse_lens(lens: Lens) -> Lens:
    """Inverse of an iso lens (its functor's inverse is a DOF)."""
    if not is_iso_lens(lens):
        raise ValueError("lens is not an isomorphism")
    F = lens.functor
    omap = [0] * F.target.n_objects
    mmap = [0] * F.target.n_morphisms
    for i, j in enumerate(F.omap):
        omap[j] = i
    for i, j in enumerate(F.mmap):
        mmap[j] = i
    return lens_from_dof(Functor._raw(F.target, F.source, omap, mmap))
