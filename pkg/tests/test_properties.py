"""Randomised checks of the structural invariants over small generated categories."""

from hypothesis import given, strategies as st

from lenslab.constructions import (
    coproduct_lens, equaliser_lens, factorise_lens, imported_product, imported_pullback,
    terminal_lens,
)
from lenslab.fincat import (
    category_violations, coproduct_cat, equaliser_cat, is_isomorphic, product_cat, pullback_cat,
)
from lenslab.lens import (
    compose_lens, is_cosieve, is_discrete_opfibration, is_epi_lens, is_iso_lens, is_mono_lens,
    lens_violations,
)
from lenslab.oracle import all_lenses, maximal_cone_cosieve
from strategies import categories, composable_lenses, lenses


@st.composite
def parallel_pairs(draw):
    A, B = draw(categories()), draw(categories())
    ls = all_lenses(A, B)
    if not ls:
        A = B
        ls = all_lenses(A, B)
    return draw(st.sampled_from(ls)), draw(st.sampled_from(ls))


@st.composite
def cospans(draw):
    B = draw(categories())
    f = draw(lenses(target=B))
    g = draw(lenses(target=B))
    return f, g


@given(categories(), categories())
def test_cat_constructions_validate(A, B):
    assert category_violations(product_cat(A, B).cat) == []
    assert category_violations(coproduct_cat(A, B).cat) == []


@given(parallel_pairs())
def test_cat_equaliser_validates(pair):
    f, g = pair
    assert category_violations(equaliser_cat(f.functor, g.functor).cat) == []


@given(lenses())
def test_factorisation(l):
    res = factorise_lens(l)
    assert compose_lens(res.epi, res.mono) == l
    assert is_epi_lens(res.epi) and is_cosieve(res.mono.functor)


@given(parallel_pairs())
def test_equaliser(pair):
    f, g = pair
    res = equaliser_lens(f, g)
    assert is_mono_lens(res.inclusion)
    assert compose_lens(res.inclusion, f) == compose_lens(res.inclusion, g)
    kept = {f.source.oindex(o) for o in res.object.objects}
    assert kept == maximal_cone_cosieve(f, g)


@given(cospans())
def test_imported_pullback_cone(fg):
    f, g = fg
    cone = imported_pullback(f, g)
    P, p0, p1 = pullback_cat(f.functor, g.functor)
    assert cone.apex == P and cone.underlying == (p0, p1)
    assert tuple(l.functor for l in cone.legs) == (p0, p1)
    p, q = cone.legs
    assert lens_violations(p) == [] and lens_violations(q) == []
    assert compose_lens(p, f) == compose_lens(q, g)


@given(categories(), categories())
def test_imported_product_cone(A, B):
    cone = imported_product(A, B)
    P, p0, p1 = product_cat(A, B)
    assert cone.apex == P and tuple(l.functor for l in cone.legs) == (p0, p1)
    assert all(lens_violations(l) == [] for l in cone.legs)
    pb = pullback_cat(terminal_lens(A).functor, terminal_lens(B).functor)
    assert is_isomorphic(pb.cat, P)


@given(cospans())
def test_coproduct_mediator(fg):
    f, g = fg
    res = coproduct_lens(f, g)
    assert lens_violations(res.mediator) == []
    assert compose_lens(res.inj0, res.mediator) == f and compose_lens(res.inj1, res.mediator) == g


@given(lenses())
def test_balanced(l):
    assert bool(is_iso_lens(l)) == (bool(is_mono_lens(l)) and bool(is_epi_lens(l)))


@given(composable_lenses(2))
def test_dof_closed_under_composition(fg):
    f, g = fg
    if is_discrete_opfibration(f.functor) and is_discrete_opfibration(g.functor):
        assert is_discrete_opfibration(compose_lens(f, g).functor)
