"""Acceptance criteria 1-10.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints one
PASS/FAIL line per criterion.  Sweeps cover the bundled seed family within
the default bounds (at most 3 objects and 8 morphisms).
"""

from collections import defaultdict

import pytest

from lenslab.constructions import (
    distributivity_iso, drop_object, equaliser_lens, extensivity_check, factorise_lens,
    imported_product, imported_pullback, orthogonal_fill, pullback_diagram, terminal_lens,
)
from lenslab.examples import (
    CODESIGN_FEASIBLE, FIXTURE_DIR, bios_os_category, build_codesign_example,
    build_state_machine_example, disagreeing_experts, equalise_experts, load_fixture,
)
from lenslab.fincat import coproduct_cat, walking_arrow
from lenslab.io import load_document, parse_document, serialize
from lenslab.lens import (
    compose_lens, identity_lens, is_cosieve, is_discrete_opfibration, is_epi_lens, is_iso_lens,
    is_mono_lens, lens_from_triangle, lens_violations, triangle_representation,
)
from lenslab.oracle import (
    all_lenses, brute_force_epi, brute_force_mono, check_universal_equaliser,
    check_universal_product, check_universal_pullback, dof_leg, enumerate_lenses,
    maximal_cone_cosieve,
)
from lenslab.cli import run_command
from lenslab.errors import MalformedDiagram
from lenslab.seeds import SEED_DIR, builtin_seeds
from cli_smoke import smoke_cases

pytestmark = pytest.mark.slow


def report(n, text):
    print(f"[criterion {n}] {text}")


def test_criterion_1_lens_laws(family):
    lenses = {}
    for A in family:
        for B in family:
            ls = list(enumerate_lenses(A, B))
            for l in ls:
                assert lens_violations(l) == []
            lenses[A.label, B.label] = ls
    total = sum(map(len, lenses.values()))
    units = triples = 0
    for A in family:
        for B in family:
            for f in lenses[A.label, B.label]:
                assert compose_lens(identity_lens(A), f) == f
                assert compose_lens(f, identity_lens(B)) == f
                units += 1
                for C in family:
                    fgs = [(g, compose_lens(f, g)) for g in lenses[B.label, C.label]]
                    for D in family:
                        for h in lenses[C.label, D.label]:
                            for g, fg in fgs:
                                assert compose_lens(fg, h) == compose_lens(f, compose_lens(g, h))
                                triples += 1
    report(1, f"{total} lenses validated, {units} unit checks, {triples} composable triples")
    assert triples > 10_000


def test_criterion_2_triangle_round_trip(all_swept):
    for l in all_swept:
        t = triangle_representation(l)
        L, R = t.left, t.right
        assert sorted(L.omap) == list(range(l.source.n_objects))
        assert L.is_injective_on_objects() and L.is_faithful()
        assert is_discrete_opfibration(R)
        assert L.then(l.functor) == R
        assert lens_from_triangle(t) == l
    report(2, f"{len(all_swept)} lenses round-tripped exactly")


def test_criterion_3_mono_epi(all_swept):
    monos = epis = isos = 0
    for l in all_swept:
        mono, epi, iso = bool(is_mono_lens(l)), bool(is_epi_lens(l)), bool(is_iso_lens(l))
        assert brute_force_mono(l).holds == mono, l
        assert brute_force_epi(l).holds == epi, l
        assert iso == (mono and epi)
        monos += mono
        epis += epi
        isos += iso
    report(3, f"{len(all_swept)} lenses: {monos} mono, {epis} epi, {isos} iso; brute force agrees")
    assert monos and epis and isos and monos + epis > isos * 2


def test_criterion_4_factorisation(family, sweep, all_swept):
    for l in all_swept:
        res = factorise_lens(l)
        assert compose_lens(res.epi, res.mono) == l
        assert is_epi_lens(res.epi) and is_mono_lens(res.mono) and is_cosieve(res.mono.functor)
    epis = [l for l in all_swept if is_epi_lens(l)]
    monos = [l for l in all_swept if is_mono_lens(l)]
    squares = nontrivial = 0
    for e in epis:
        for m in monos:
            fs = sweep[e.source.label, m.source.label]
            by_base = defaultdict(list)
            for g in sweep[e.target.label, m.target.label]:
                by_base[compose_lens(e, g).key].append(g)
            for f in fs:
                for g in by_base.get(compose_lens(f, m).key, ()):
                    h = orthogonal_fill(e, m, f, g)
                    diagonals = [k for k in sweep[e.target.label, m.source.label]
                                 if compose_lens(e, k) == f and compose_lens(k, m) == g]
                    assert diagonals == [h]
                    squares += 1
                    nontrivial += not (is_iso_lens(e) and is_iso_lens(m))
    report(4, f"{len(all_swept)} factorisations; {squares} commuting squares ({nontrivial} with a non-iso leg) "
              "with a unique enumerated diagonal")
    assert squares >= 50 and nontrivial >= 50


def test_criterion_5_equalisers(family, sweep):
    pairs = 0
    for A in family:
        for B in family:
            ls = sweep[A.label, B.label]
            for f in ls:
                for g in ls:
                    res = equaliser_lens(f, g)
                    assert check_universal_equaliser(res, (f, g)).holds
                    kept = frozenset(A.oindex(o) for o in res.object.objects)
                    assert kept == maximal_cone_cosieve(f, g)
                    pairs += f != g
    p, q = disagreeing_experts()
    M = equalise_experts(p, q)
    assert M.object.n_objects == 0 and M.object.n_morphisms == 0
    assert check_universal_equaliser(M, (p.opinion, q.opinion)).holds
    report(5, f"{pairs} ordered pairs of distinct parallel lenses; total disagreement gives the empty equaliser")
    assert pairs >= 30


def test_criterion_6_imported_products(family):
    A = walking_arrow()
    cone = imported_product(A, A)
    one = identity_lens(A)
    mediators = [m for m in all_lenses(A, cone.apex)
                 if compose_lens(m, cone.legs[0]) == one and compose_lens(m, cone.legs[1]) == one]
    assert mediators == []
    assert not check_universal_product(cone).holds
    discretes = [B for B in family if B.is_discrete()]
    assert {B.label for B in discretes} >= {"0", "1", "D2"}
    for X in family:
        for B0 in discretes:
            assert check_universal_product(imported_product(X, B0)).holds, (X.label, B0.label)
    report(6, f"no mediator 2 <=> 2x2; {len(family) * len(discretes)} products with a discrete factor are universal")


def test_criterion_7_imported_pullbacks(family, sweep):
    cospans = with_dof = 0
    for B in family:
        into = [l for A in family for l in sweep[A.label, B.label]]
        for f in into:
            for g in into:
                cone = imported_pullback(f, g)
                p, q = cone.legs
                assert lens_violations(p) == [] and lens_violations(q) == []
                assert compose_lens(p, f) == compose_lens(q, g)
                cospans += 1
                if dof_leg((f, g)):
                    assert check_universal_pullback(cone, (f, g)).holds
                    with_dof += 1
    assert with_dof > 1000
    for A in family:
        for C in family:
            pb = imported_pullback(terminal_lens(A), terminal_lens(C))
            pr = imported_product(A, C)
            assert pb.apex == pr.apex and pb.legs == pr.legs
    report(7, f"{cospans} seed cospans commute; {with_dof} with a DOF leg are universal")


def test_criterion_8_distributivity_extensivity(family):
    seeds = list(builtin_seeds().values())
    triples = 0
    for A in seeds:
        for B in seeds:
            for C in seeds:
                res = distributivity_iso(A, B, C)
                assert res.iso.holds, (A.label, B.label, C.label)
                triples += 1
    diagrams = perturbed = 0
    for X in family:
        for Y in family:
            S = coproduct_cat(X, Y).cat
            if S.n_objects > 4:
                continue
            for Z in family:
                for z in all_lenses(Z, S):
                    d = pullback_diagram(z)
                    v = extensivity_check(d, family)
                    assert v.squares_are_pullbacks and v.top_is_coproduct
                    diagrams += 1
                    try:
                        smaller = drop_object(d)
                    except MalformedDiagram:   # no object can go without breaking the cosieve
                        continue
                    w = extensivity_check(smaller, family)
                    assert not w.squares_are_pullbacks and not w.top_is_coproduct
                    perturbed += 1
    report(8, f"{triples} seed triples distribute; {diagrams} diagrams and {perturbed} perturbations "
              "satisfy the biconditional")
    assert perturbed >= 1


def test_criterion_9_fixtures():
    p = build_codesign_example()
    assert len(p.feasible()) == 4 and len(p.infeasible()) == 2
    assert sorted(p.feasible()) == sorted(CODESIGN_FEASIBLE)
    assert load_fixture("codesign") == p.opinion
    machine = build_state_machine_example()
    state_lens = load_fixture("state_lens")
    assert state_lens == machine.state_lens
    assert is_discrete_opfibration(state_lens.functor)
    bios = load_fixture("bios_os")
    res = factorise_lens(bios)
    assert res.image.objects == ("OS",)
    assert is_epi_lens(res.epi) and is_mono_lens(res.mono)
    assert res.epi.source == bios.source and res.mono.target == bios_os_category()
    assert compose_lens(res.epi, res.mono) == bios
    report(9, "co-design 4/2, state lens is a DOF, BIOS/OS factors through {OS}")


def test_criterion_10_serialization_and_cli(all_swept, tmp_path, capsys):
    corpus = sorted(SEED_DIR.glob("*.json")) + sorted(FIXTURE_DIR.glob("*.json"))
    for path in corpus:
        text = path.read_text(encoding="utf-8")
        doc = load_document(path)
        assert serialize(doc) == text
        assert parse_document(serialize(doc.payload), base_dir=path.parent).payload == doc.payload
    for l in all_swept:
        assert parse_document(serialize(l)).payload == l
    cases = smoke_cases(tmp_path)
    results = [(argv, run_command(argv), expected) for argv, expected in cases]
    capsys.readouterr()
    wrong = [(argv, got, exp) for argv, got, exp in results if got != exp]
    assert wrong == []
    assert {exp for _, _, exp in results} == {0, 1, 2}
    with capsys.disabled():
        report(10, f"{len(corpus)} documents and {len(all_swept)} lenses round-trip; "
                   f"{len(cases)} CLI calls exit as expected")
