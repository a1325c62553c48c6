"""Limits, colimits, imported limits and the image factorisation of lenses."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ConeDoesNotCommute, DomainMismatch, MalformedDiagram, NotDOF, NotDiscrete, NotEpi,
    NotIdempotent, NotMono, SquareDoesNotCommute,
)
from .fincat import (
    FinCat, Functor, coproduct_cat, empty_category, equaliser_cat,
    full_subcategory, product_cat, pullback_cat, terminal_category,
)
from .lens import (
    Lens, Verdict, compose_lens, divide_lens, identity_lens, is_discrete_opfibration,
    is_epi_lens, is_iso_lens, is_mono_lens, lens_from_dof,
)


@dataclass(frozen=True, eq=False)
class FactorisationResult:
    epi: Lens
    mono: Lens
    image: FinCat


@dataclass(frozen=True, eq=False)
class EqualiserResult:
    object: FinCat
    inclusion: Lens
    cat_equaliser: FinCat
    cat_inclusion: Functor
    candidates: tuple[str, ...] = ()   # objects passing the local test, before closure


@dataclass(frozen=True, eq=False)
class ImportedCone:
    apex: FinCat
    legs: tuple[Lens, ...]
    underlying: tuple[Functor, ...]


@dataclass(frozen=True, eq=False)
class CoproductResult:
    cat: FinCat
    inj0: Lens
    inj1: Lens
    mediator: Lens


@dataclass(frozen=True, eq=False)
class SplitIdempotent:
    object: FinCat
    section: Lens      # M <=> A
    retraction: Lens   # A <=> M


# ---------------------------------------------------------------------------
# terminal, initial, coproducts


def terminal_lens(A: FinCat, terminal: FinCat | None = None) -> Lens:
    """The unique lens ``A <=> 1``; every lift is an identity."""
    T = terminal or terminal_category()
    F = Functor._raw(A, T, [0] * A.n_objects, [0] * A.n_morphisms)
    return Lens._raw(F, list(A.ident))


def initial_lens(A: FinCat, initial: FinCat | None = None) -> Lens:
    Z = initial or empty_category()
    return Lens._raw(Functor._raw(Z, A, (), ()), ())


def copair_functor(S: FinCat, f: Functor, g: Functor) -> Functor:
    """``[f, g]: A + C -> B`` on the coproduct ``S`` built by coproduct_cat."""
    return Functor._raw(S, f.target, f.omap + g.omap, f.mmap + g.mmap)


def coproduct_lens(f: Lens, g: Lens) -> CoproductResult:
    """Injections into ``A + C`` and the mediator ``[f, g]: A + C <=> B``."""
    if f.target != g.target:
        raise DomainMismatch("coproduct needs a common codomain")
    A, C, B = f.source, g.source, f.target
    S, i0, i1 = coproduct_cat(A, C)
    ma, mb = A.n_morphisms, B.n_morphisms
    table = list(f.table)
    table += [w + ma if w >= 0 else -1 for w in g.table]
    assert len(table) == S.n_objects * mb
    med = Lens._raw(copair_functor(S, f.functor, g.functor), table)
    return CoproductResult(S, lens_from_dof(i0), lens_from_dof(i1), med)


# ---------------------------------------------------------------------------
# equalisers and idempotents


def _cosieve_closure(A: FinCat, S: set[int]) -> set[int]:
    """Largest subset of ``S`` closed under targets of outgoing morphisms."""
    S = set(S)
    changed = True
    while changed:
        changed = False
        for a in sorted(S):
            if any(A.tgt[w] not in S for w in A.out_indices(a)):
                S.discard(a)
                changed = True
    return S


def equaliser_lens(f: Lens, g: Lens) -> EqualiserResult:
    """Equaliser of a parallel pair of lenses.

    Keep the objects where the functors, the functors on every outgoing
    morphism, and the chosen lifts all agree; then repeatedly drop objects
    with a morphism leaving the kept set.  What survives spans a cosieve.
    """
    if f.source != g.source or f.target != g.target:
        raise DomainMismatch("equaliser needs a parallel pair")
    A, B = f.source, f.target
    mb = B.n_morphisms
    F, G = f.functor, g.functor
    local = set()
    for a in range(A.n_objects):
        if F.omap[a] != G.omap[a]:
            continue
        if any(F.mmap[w] != G.mmap[w] for w in A.out_indices(a)):
            continue
        if any(f.table[a * mb + u] != g.table[a * mb + u] for u in B.out_indices(F.omap[a])):
            continue
        local.add(a)
    keep = _cosieve_closure(A, local)
    M, incl = full_subcategory(A, [A.objects[a] for a in sorted(keep)])
    E, j = equaliser_cat(F, G)
    return EqualiserResult(M, lens_from_dof(incl), E, j,
                           tuple(A.objects[a] for a in sorted(local)))


def corestrict(F: Functor, incl: Functor) -> Functor:
    """``F`` viewed as landing in the source of the injective ``incl``."""
    oinv = {j: i for i, j in enumerate(incl.omap)}
    minv = {j: i for i, j in enumerate(incl.mmap)}
    try:
        return Functor._raw(F.source, incl.source, [oinv[j] for j in F.omap], [minv[j] for j in F.mmap])
    except KeyError:
        raise ConeDoesNotCommute("functor does not factor through the inclusion") from None


def factor_through_mono(h: Lens, mono: Lens) -> Lens:
    """The unique ``k`` with ``compose_lens(k, mono) == h``."""
    k = corestrict(h.functor, mono.functor)
    return divide_lens(k, mono.functor, h)


def split_idempotent(e: Lens) -> SplitIdempotent:
    """Split ``e`` through its equaliser with the identity."""
    if e.source != e.target or compose_lens(e, e) != e:
        raise NotIdempotent("lens is not an idempotent endo-lens")
    A = e.source
    eq = equaliser_lens(e, identity_lens(A))
    s = eq.inclusion
    r = factor_through_mono(e, s)
    return SplitIdempotent(eq.object, s, r)


# ---------------------------------------------------------------------------
# factorisation


def factorise_lens(lens: Lens) -> FactorisationResult:
    """Epi (surjective on objects) followed by a cosieve onto the image."""
    F = lens.functor
    A, B = F.source, F.target
    image = sorted(set(F.omap))
    I, k = full_subcategory(B, [B.objects[b] for b in image])
    mono = lens_from_dof(k)
    epi_f = corestrict(F, k)
    mb, mi = B.n_morphisms, I.n_morphisms
    table = [-1] * (A.n_objects * mi)
    for a in range(A.n_objects):
        for u in I.out_indices(epi_f.omap[a]):
            table[a * mi + u] = lens.table[a * mb + k.mmap[u]]
    return FactorisationResult(Lens._raw(epi_f, table), mono, I)


def orthogonal_fill(e: Lens, m: Lens, f: Lens, g: Lens) -> Lens:
    """Diagonal ``h: B <=> C`` of the square ``f ; m == e ; g``."""
    if not is_epi_lens(e):
        raise NotEpi("left leg is not an epimorphism")
    if not is_mono_lens(m):
        raise NotMono("right leg is not a monomorphism")
    if f.source != e.source or f.target != m.source or g.source != e.target or g.target != m.target:
        raise SquareDoesNotCommute("the four lenses do not form a square")
    if compose_lens(f, m) != compose_lens(e, g):
        raise SquareDoesNotCommute("f ; m != e ; g")
    h = factor_through_mono(g, m)
    if compose_lens(e, h) != f:
        raise SquareDoesNotCommute("filled diagonal does not restore the top edge")
    return h


# ---------------------------------------------------------------------------
# imported products


def imported_product(A: FinCat, B: FinCat) -> ImportedCone:
    """Projections of ``A x B`` with lifts ``u |-> (u, 1_b)`` and ``v |-> (1_a, v)``."""
    P, p0, p1 = product_cat(A, B)
    ma, mb = A.n_morphisms, B.n_morphisms
    pm = {(p0.mmap[i], p1.mmap[i]): i for i in range(P.n_morphisms)}
    t0 = [-1] * (P.n_objects * ma)
    t1 = [-1] * (P.n_objects * mb)
    for x in range(P.n_objects):
        a, b = p0.omap[x], p1.omap[x]
        for u in A.out_indices(a):
            t0[x * ma + u] = pm[(u, B.ident[b])]
        for v in B.out_indices(b):
            t1[x * mb + v] = pm[(A.ident[a], v)]
    return ImportedCone(P, (Lens._raw(p0, t0), Lens._raw(p1, t1)), (p0, p1))


def pair_functor(C: FinCat, f: Functor, g: Functor, P: FinCat, p0: Functor, p1: Functor) -> Functor:
    """``<f, g>: C -> P`` for a (sub)product ``P`` with projections p0, p1."""
    om = {(p0.omap[x], p1.omap[x]): x for x in range(P.n_objects)}
    mm = {(p0.mmap[w], p1.mmap[w]): w for w in range(P.n_morphisms)}
    try:
        return Functor._raw(C, P, [om[(f.omap[c], g.omap[c])] for c in range(C.n_objects)],
                            [mm[(f.mmap[w], g.mmap[w])] for w in range(C.n_morphisms)])
    except KeyError:
        raise ConeDoesNotCommute("pair does not land in the limit") from None


def product_lens(f: Lens, g: Lens) -> Lens:
    """``f x g: A x C <=> B x D`` with componentwise lifts."""
    P, p0, p1 = product_cat(f.source, g.source)
    Q, q0, q1 = product_cat(f.target, g.target)
    F = pair_functor(P, p0.then(f.functor), p1.then(g.functor), Q, q0, q1)
    pm = {(p0.mmap[i], p1.mmap[i]): i for i in range(P.n_morphisms)}
    mq, mb, md = Q.n_morphisms, f.target.n_morphisms, g.target.n_morphisms
    table = [-1] * (P.n_objects * mq)
    for y in range(P.n_objects):
        a, c = p0.omap[y], p1.omap[y]
        for w in Q.out_indices(F.omap[y]):
            u, v = q0.mmap[w], q1.mmap[w]
            table[y * mq + w] = pm[(f.table[a * mb + u], g.table[c * md + v])]
    return Lens._raw(F, table)


def product_mediator_discrete(f: Lens, g: Lens, cone: ImportedCone | None = None) -> Lens:
    """``<f, g>: C <=> A x B0`` for discrete ``B0``, divided along the projection."""
    if f.source != g.source:
        raise DomainMismatch("the two lenses need a common domain")
    A, B0 = f.target, g.target
    if not B0.is_discrete():
        raise NotDiscrete("second factor is not discrete")
    cone = cone or imported_product(A, B0)
    p0, p1 = cone.underlying
    h = pair_functor(f.source, f.functor, g.functor, cone.apex, p0, p1)
    med = divide_lens(h, p0, f)
    if compose_lens(med, cone.legs[1]) != g:
        raise ConeDoesNotCommute("mediator does not commute with the discrete projection")
    return med


# ---------------------------------------------------------------------------
# imported pullbacks


def imported_pullback(f: Lens, g: Lens) -> ImportedCone:
    """Projections of ``A x_B C``; ``u`` at ``(a, c)`` lifts to ``(u, g.lift(c, f u))``."""
    if f.target != g.target:
        raise DomainMismatch("pullback needs a common codomain")
    A, C, B = f.source, g.source, f.target
    P, p0, p1 = pullback_cat(f.functor, g.functor)
    ma, mc, mb = A.n_morphisms, C.n_morphisms, B.n_morphisms
    pm = {(p0.mmap[i], p1.mmap[i]): i for i in range(P.n_morphisms)}
    t0 = [-1] * (P.n_objects * ma)
    t1 = [-1] * (P.n_objects * mc)
    for x in range(P.n_objects):
        a, c = p0.omap[x], p1.omap[x]
        for u in A.out_indices(a):
            t0[x * ma + u] = pm[(u, g.table[c * mb + f.functor.mmap[u]])]
        for w in C.out_indices(c):
            t1[x * mc + w] = pm[(f.table[a * mb + g.functor.mmap[w]], w)]
    return ImportedCone(P, (Lens._raw(p0, t0), Lens._raw(p1, t1)), (p0, p1))


def pullback_mediator_dof(f: Lens, g: Lens, p: Lens, q: Lens, cone: ImportedCone | None = None) -> Lens:
    """Mediator ``Z <=> A x_B C`` for a commuting cone when ``f`` or ``g`` is a DOF."""
    if p.target != f.source or q.target != g.source or p.source != q.source:
        raise DomainMismatch("cone legs do not match the cospan")
    if compose_lens(p, f) != compose_lens(q, g):
        raise ConeDoesNotCommute("p ; f != q ; g")
    cone = cone or imported_pullback(f, g)
    p0, p1 = cone.underlying
    h = pair_functor(p.source, p.functor, q.functor, cone.apex, p0, p1)
    if is_discrete_opfibration(g.functor):
        med = divide_lens(h, p0, p)
    elif is_discrete_opfibration(f.functor):
        med = divide_lens(h, p1, q)
    else:
        raise NotDOF("neither leg of the cospan is a discrete opfibration")
    if compose_lens(med, cone.legs[0]) != p or compose_lens(med, cone.legs[1]) != q:
        raise ConeDoesNotCommute("mediator does not commute with both projections")
    return med


# ---------------------------------------------------------------------------
# distributivity and extensivity


@dataclass(frozen=True, eq=False)
class DistributivityResult:
    lens: Lens
    iso: Verdict


def distributivity_iso(A: FinCat, B: FinCat, C: FinCat) -> DistributivityResult:
    """``[1 x i_B, 1 x i_C]: (A x B) + (A x C) <=> A x (B + C)``."""
    S, jb, jc = coproduct_cat(B, C)
    ib, ic = lens_from_dof(jb), lens_from_dof(jc)
    one = identity_lens(A)
    left = product_lens(one, ib)
    right = product_lens(one, ic)
    med = coproduct_lens(left, right).mediator
    return DistributivityResult(med, is_iso_lens(med))


@dataclass(frozen=True, eq=False)
class ExtensiveDiagram:
    """Two squares over a coproduct row::

        X --x_in--> Z <--y_in-- Y
        |x_down     |z_down     |y_down
        A --inj_a-> A+B <-inj_b-- B
    """

    x_in: Lens
    y_in: Lens
    x_down: Lens
    z_down: Lens
    y_down: Lens
    inj_a: Lens
    inj_b: Lens


@dataclass(frozen=True)
class ExtensivityVerdict:
    squares_are_pullbacks: bool
    top_is_coproduct: bool
    left_square: object = None
    right_square: object = None

    @property
    def biconditional(self) -> bool:
        return self.squares_are_pullbacks == self.top_is_coproduct


def bottom_row(A: FinCat, B: FinCat) -> tuple[Lens, Lens]:
    _, i0, i1 = coproduct_cat(A, B)
    return lens_from_dof(i0), lens_from_dof(i1)


def _check_diagram(d: ExtensiveDiagram):
    A, B = d.inj_a.source, d.inj_b.source
    expect_a, expect_b = bottom_row(A, B)
    if d.inj_a != expect_a or d.inj_b != expect_b:
        raise MalformedDiagram("bottom row is not a coproduct diagram")
    S = d.inj_a.target
    Z = d.z_down.source
    if d.z_down.target != S or d.x_in.target != Z or d.y_in.target != Z:
        raise MalformedDiagram("top row does not land in the middle vertex")
    if d.x_down.source != d.x_in.source or d.y_down.source != d.y_in.source:
        raise MalformedDiagram("vertical lenses do not start at the top row")
    if d.x_down.target != A or d.y_down.target != B:
        raise MalformedDiagram("vertical lenses do not end at the bottom row")
    if compose_lens(d.x_in, d.z_down) != compose_lens(d.x_down, d.inj_a):
        raise MalformedDiagram("left square does not commute")
    if compose_lens(d.y_in, d.z_down) != compose_lens(d.y_down, d.inj_b):
        raise MalformedDiagram("right square does not commute")


def pullback_diagram(z_down: Lens) -> ExtensiveDiagram:
    """Pull ``Z <=> A + B`` back along both injections.

    ``z_down.target`` must be a coproduct built by ``coproduct_cat``; the
    summands are recovered from its ``0:``/``1:`` prefixes.
    """
    S = z_down.target
    A, B = split_coproduct(S)
    ia, ib = bottom_row(A, B)
    left = imported_pullback(z_down, ia)
    right = imported_pullback(z_down, ib)
    return ExtensiveDiagram(left.legs[0], right.legs[0], left.legs[1], z_down, right.legs[1], ia, ib)


def split_coproduct(S: FinCat) -> tuple[FinCat, FinCat]:
    """Recover the two summands of a category built by ``coproduct_cat``."""
    parts = []
    for tag in ("0:", "1:"):
        objs = [o for o in S.objects if o.startswith(tag)]
        if any(not (o.startswith("0:") or o.startswith("1:")) for o in S.objects):
            raise MalformedDiagram("category is not a tagged coproduct")
        sub, _ = full_subcategory(S, objs)
        strip = lambda s: s[len(tag):]
        parts.append(FinCat([strip(o) for o in sub.objects],
                            [(strip(m.name), strip(m.src), strip(m.tgt)) for m in sub.morphisms],
                            {strip(o): strip(i) for o, i in sub.identities.items()},
                            {(strip(g), strip(f)): strip(gf) for (g, f), gf in sub.compose.items()}))
    return parts[0], parts[1]


def is_pullback_square(top: Lens, left: Lens, right: Lens, bottom: Lens, test_apexes=(), bounds=None):
    """Whether ``X`` (with ``top: X <=> Z`` and ``left: X <=> A``) is a pullback
    of ``right: Z <=> S`` against ``bottom: A <=> S``.

    Counts mediators for every commuting cone from each test apex, always
    including the constructed pullback and ``X`` itself (together they make
    the count exact).
    """
    from .oracle import cone_mediator_counts
    P = imported_pullback(right, bottom)
    apexes = list(test_apexes) + [P.apex, top.source]
    return cone_mediator_counts((top, left), (right, bottom), apexes, bounds=bounds)


def extensivity_check(d: ExtensiveDiagram, test_apexes=(), bounds=None) -> ExtensivityVerdict:
    """Evaluate both sides of the extensivity biconditional on one diagram."""
    _check_diagram(d)
    left = is_pullback_square(d.x_in, d.x_down, d.z_down, d.inj_a, test_apexes, bounds)
    right = is_pullback_square(d.y_in, d.y_down, d.z_down, d.inj_b, test_apexes, bounds)
    top = coproduct_lens(d.x_in, d.y_in).mediator
    return ExtensivityVerdict(left.holds and right.holds, bool(is_iso_lens(top)), left, right)


def drop_object(d: ExtensiveDiagram, obj: str | None = None) -> ExtensiveDiagram:
    """Perturb the top-left corner by removing one object that nothing else
    points into, so the inclusion stays a cosieve."""
    X = d.x_in.source
    candidates = [o for o in X.objects
                  if not any(m.tgt == o and m.src != o for m in X.morphisms)]
    if obj is None:
        if not candidates:
            raise MalformedDiagram("no removable object in the top-left corner")
        obj = candidates[0]
    elif obj not in candidates:
        raise MalformedDiagram(f"removing {obj!r} would not leave a cosieve")
    sub, incl = full_subcategory(X, [o for o in X.objects if o != obj])
    k = lens_from_dof(incl)
    return ExtensiveDiagram(compose_lens(k, d.x_in), d.y_in, compose_lens(k, d.x_down),
                            d.z_down, d.y_down, d.inj_a, d.inj_b)
