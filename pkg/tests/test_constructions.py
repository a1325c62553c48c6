import pytest

from lenslab.constructions import (
    ExtensiveDiagram, bottom_row, coproduct_lens, distributivity_iso, drop_object, equaliser_lens,
    extensivity_check, factor_through_mono, factorise_lens, imported_product, imported_pullback,
    initial_lens, orthogonal_fill, product_lens, product_mediator_discrete, pullback_diagram,
    pullback_mediator_dof, split_coproduct, split_idempotent, terminal_lens,
)
from lenslab.errors import (
    ConeDoesNotCommute, DomainMismatch, MalformedDiagram, NotDOF, NotDiscrete, NotEpi,
    NotIdempotent, NotMono, SquareDoesNotCommute,
)
from lenslab.examples import bios_os_factorisation, build_bios_os_example
from lenslab.fincat import (
    coproduct_cat, discrete, empty_category, is_isomorphic, product_cat, terminal_category,
    walking_arrow,
)
from lenslab.lens import (
    compose_lens, identity_lens, is_cosieve, is_epi_lens, is_iso_lens, is_mono_lens, lens_from_dof,
    lens_violations,
)
from lenslab.oracle import all_lenses, maximal_cone_cosieve

TWO = walking_arrow()
ONE = terminal_category()
ZERO = empty_category()


def lenses_into(family, sweep, B):
    return [l for A in family for l in sweep[A.label, B.label]]


class TestTerminalInitial:
    def test_terminal_unique(self, family):
        for A in family:
            assert all_lenses(A, ONE) == (terminal_lens(A),)

    def test_initial_unique(self, family):
        for A in family:
            assert all_lenses(ZERO, A) == (initial_lens(A),)

    def test_into_empty(self, family):
        for A in family:
            assert len(all_lenses(A, ZERO)) == (1 if A.n_objects == 0 else 0)


class TestCoproduct:
    def test_injections_and_mediator(self, family, sweep):
        B = TWO
        into = lenses_into(family, sweep, B)
        for f in into[:12]:
            for g in into[:12]:
                res = coproduct_lens(f, g)
                assert lens_violations(res.mediator) == []
                assert compose_lens(res.inj0, res.mediator) == f
                assert compose_lens(res.inj1, res.mediator) == g
                # unique among all lenses out of the coproduct
                same = [m for m in all_lenses(res.cat, B)
                        if compose_lens(res.inj0, m) == f and compose_lens(res.inj1, m) == g]
                assert same == [res.mediator]

    def test_injections_are_cosieves(self):
        res = coproduct_lens(identity_lens(TWO), identity_lens(TWO))
        assert is_cosieve(res.inj0.functor) and is_cosieve(res.inj1.functor)

    def test_mismatch(self):
        with pytest.raises(DomainMismatch):
            coproduct_lens(identity_lens(TWO), identity_lens(ONE))


class TestEqualiser:
    def test_self_pair_is_everything(self, all_swept):
        for l in all_swept[:40]:
            res = equaliser_lens(l, l)
            assert res.object.n_objects == l.source.n_objects
            assert is_iso_lens(res.inclusion)

    def test_matches_exhaustive_maximal_cosieve(self, family, sweep):
        pairs = 0
        for A in family:
            for B in family:
                ls = sweep[A.label, B.label]
                for i, f in enumerate(ls):
                    for g in ls[i + 1:]:
                        res = equaliser_lens(f, g)
                        kept = frozenset(A.oindex(o) for o in res.object.objects)
                        assert kept == maximal_cone_cosieve(f, g)
                        assert compose_lens(res.inclusion, f) == compose_lens(res.inclusion, g)
                        pairs += 1
        assert pairs >= 30

    def test_local_candidates_superset(self, family, sweep):
        for A in family:
            for B in family:
                ls = sweep[A.label, B.label]
                for f in ls:
                    for g in ls:
                        res = equaliser_lens(f, g)
                        assert set(res.object.objects) <= set(res.candidates)

    def test_distinct_lifts_shrink(self):
        P = product_cat(TWO, TWO).cat
        ls = all_lenses(P, TWO)
        f, g = ls[0], ls[-1]
        res = equaliser_lens(f, g)
        assert res.object.n_objects < P.n_objects

    def test_mismatch(self):
        with pytest.raises(DomainMismatch):
            equaliser_lens(identity_lens(TWO), terminal_lens(TWO))


class TestSplitIdempotent:
    def test_all_idempotents(self, family, sweep):
        found = 0
        for A in family:
            for e in sweep[A.label, A.label]:
                if compose_lens(e, e) != e:
                    continue
                s = split_idempotent(e)
                assert compose_lens(s.section, s.retraction) == identity_lens(s.object)
                assert compose_lens(s.retraction, s.section) == e
                found += 1
        assert found >= len(family)

    def test_not_idempotent(self):
        D2 = discrete(["a", "b"])
        swap = [l for l in all_lenses(D2, D2) if l.functor.omap == (1, 0)]
        assert len(swap) == 1
        with pytest.raises(NotIdempotent):
            split_idempotent(swap[0])


class TestFactorise:
    def test_every_lens(self, all_swept):
        for l in all_swept:
            res = factorise_lens(l)
            assert compose_lens(res.epi, res.mono) == l
            assert is_epi_lens(res.epi) and is_mono_lens(res.mono)

    def test_bios_os(self):
        res = bios_os_factorisation()
        assert res.image.objects == ("OS",)
        assert res.epi.lift_of("everyday", "op") == "s"
        assert not is_iso_lens(res.mono)

    def test_bios_lens_not_epi(self):
        l = build_bios_os_example()
        assert not is_epi_lens(l) and not is_mono_lens(l)


class TestOrthogonalFill:
    def test_square_from_factorisation(self, all_swept):
        n = 0
        for l in all_swept:
            res = factorise_lens(l)
            e, m = res.epi, res.mono
            # the factorisation square e ; m == e ; m with f = e, g = m fills with the identity
            h = orthogonal_fill(e, m, e, m)
            assert h == identity_lens(res.image)
            n += 1
        assert n > 50

    def test_rejects(self):
        t = terminal_lens(TWO)
        _, i0, _ = coproduct_cat(TWO, ONE)
        inj = lens_from_dof(i0)
        with pytest.raises(NotEpi):
            orthogonal_fill(inj, inj, inj, inj)
        with pytest.raises(NotMono):
            orthogonal_fill(t, t, t, t)
        with pytest.raises(SquareDoesNotCommute):
            orthogonal_fill(identity_lens(TWO), identity_lens(TWO), identity_lens(TWO), identity_lens(ONE))

    def test_factor_through_mono_rejects(self):
        _, incl, _ = coproduct_cat(ONE, ONE)
        with pytest.raises(ConeDoesNotCommute):
            factor_through_mono(identity_lens(coproduct_cat(ONE, ONE).cat), lens_from_dof(incl))


class TestProducts:
    def test_projection_lifts(self):
        cone = imported_product(TWO, TWO)
        p0, p1 = cone.legs
        assert p0.lift_of("(x,x)", "u") == "(u,1x)"
        assert p1.lift_of("(x,x)", "u") == "(1x,u)"
        assert lens_violations(p0) == [] and lens_violations(p1) == []

    def test_no_mediator_for_two(self):
        cone = imported_product(TWO, TWO)
        one = identity_lens(TWO)
        meds = [m for m in all_lenses(TWO, cone.apex)
                if compose_lens(m, cone.legs[0]) == one and compose_lens(m, cone.legs[1]) == one]
        assert meds == []

    def test_discrete_mediator(self, family, sweep):
        D2 = discrete(["a", "b"], label="D2")
        for C in family:
            for A in family:
                for f in sweep[C.label, A.label][:6]:
                    for g in sweep[C.label, "D2"]:
                        med = product_mediator_discrete(f, g)
                        cone = imported_product(A, D2)
                        assert compose_lens(med, cone.legs[0]) == f
                        assert compose_lens(med, cone.legs[1]) == g

    def test_discrete_required(self):
        with pytest.raises(NotDiscrete):
            product_mediator_discrete(identity_lens(TWO), identity_lens(TWO))

    def test_product_lens_of_identities(self):
        l = product_lens(identity_lens(TWO), identity_lens(ONE))
        assert is_iso_lens(l) and lens_violations(l) == []


class TestPullbacks:
    def test_legs_and_square(self, family, sweep):
        for B in family[:5]:
            into = lenses_into(family, sweep, B)
            for f in into:
                for g in into:
                    cone = imported_pullback(f, g)
                    p, q = cone.legs
                    assert lens_violations(p) == [] and lens_violations(q) == []
                    assert compose_lens(p, f) == compose_lens(q, g)

    def test_pullback_over_terminal_is_product(self, family):
        for A in family:
            for C in family:
                pb = imported_pullback(terminal_lens(A), terminal_lens(C))
                pr = imported_product(A, C)
                assert pb.apex == pr.apex
                assert pb.legs == pr.legs

    def test_mediator_dof(self, family, sweep):
        _, i0, _ = coproduct_cat(TWO, ONE)
        g = lens_from_dof(i0)
        B = g.target
        checked = 0
        for A in family:
            for f in all_lenses(A, B):
                cone = imported_pullback(f, g)
                for Z in family[:6]:
                    for p in all_lenses(Z, A):
                        for q in all_lenses(Z, TWO):
                            if compose_lens(p, f) != compose_lens(q, g):
                                continue
                            m = pullback_mediator_dof(f, g, p, q, cone)
                            assert compose_lens(m, cone.legs[0]) == p
                            checked += 1
        assert checked > 10

    def test_mediator_needs_dof(self):
        t = terminal_lens(TWO)
        with pytest.raises(NotDOF):
            pullback_mediator_dof(t, t, identity_lens(TWO), identity_lens(TWO))
        one = identity_lens(TWO)
        const = next(l for l in all_lenses(TWO, TWO) if l != one)
        with pytest.raises(ConeDoesNotCommute):
            pullback_mediator_dof(one, one, one, const)

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            imported_pullback(identity_lens(TWO), identity_lens(ONE))


class TestDistributivity:
    def test_small_triples(self, family):
        for A in family[:6]:
            for B in family[:6]:
                for C in family[:6]:
                    res = distributivity_iso(A, B, C)
                    assert res.iso, (A.label, B.label, C.label)
                    assert lens_violations(res.lens) == []


class TestExtensivity:
    def test_pullback_diagrams(self, family, sweep):
        S = coproduct_cat(TWO, ONE).cat
        for Z in family:
            for z in all_lenses(Z, S):
                d = pullback_diagram(z)
                v = extensivity_check(d)
                assert v.squares_are_pullbacks and v.top_is_coproduct and v.biconditional

    def test_perturbed(self):
        S = coproduct_cat(TWO, ONE).cat
        z = identity_lens(S)
        d = drop_object(pullback_diagram(z))
        assert d.x_in.source.objects == ("(0:y,y)",)
        v = extensivity_check(d)
        assert not v.squares_are_pullbacks and not v.top_is_coproduct and v.biconditional

    def test_split_coproduct(self):
        S = coproduct_cat(TWO, ONE).cat
        A, B = split_coproduct(S)
        assert is_isomorphic(A, TWO) and is_isomorphic(B, ONE)
        with pytest.raises(MalformedDiagram):
            split_coproduct(TWO)

    def test_malformed(self):
        ia, ib = bottom_row(TWO, ONE)
        one = identity_lens(TWO)
        with pytest.raises(MalformedDiagram):
            extensivity_check(ExtensiveDiagram(one, one, one, one, one, ia, ib))

    def test_drop_requires_cosieve(self):
        d = pullback_diagram(identity_lens(coproduct_cat(TWO, ONE).cat))
        with pytest.raises(MalformedDiagram):
            drop_object(d, "(0:y,y)")
