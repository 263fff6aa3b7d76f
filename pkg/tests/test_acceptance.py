"""End-to-end acceptance suite.

One test per published guarantee, each asserting exact rational equality
(never approximate) and, where a budget is stated, wall-clock time.  Run with
``pytest -v tests/test_acceptance.py`` to get one pass/fail line per
criterion.
"""

import time
from fractions import Fraction

import pytest

from eqlink import (
    HypothesisError,
    builtin_space,
    check_surjectivity,
    discriminant_degree,
    divisor_transfer_check,
    even_quadric,
    grassmannian,
    jet_euler,
    jet_euler_grassmannian_roots,
    jet_euler_projective_roots,
    jet_euler_quadric_quotient,
    jet_total_chern,
    load_presentation,
    m_coefficient,
    odd_quadric,
    orbit_class,
    projective_space,
    restricted_cycle,
)
from eqlink.charclass import ChernRootBundle, RootBlock, chern_number


def _single_term(value):
    ((sym, coeff),) = value.sorted_terms()
    return sym.source, coeff


def _all_orbit_cases():
    """Every (space, d, cycle) pair exercised by the golden suites."""
    for n in range(1, 6):
        space = projective_space(n)
        for d in range(2, 7):
            for k in range(n):
                yield space, d, f"P_{k}"
    for n in range(1, 4):
        space = odd_quadric(n)
        for d in range(3, 6):
            for cycle in space.homology_basis:
                yield space, d, cycle.name
    for n in (2, 3):
        space = even_quadric(n)
        for d in range(3, 6):
            for cycle in space.homology_basis:
                yield space, d, cycle.name


def test_criterion_1_projective_golden_suite():
    start = time.perf_counter()
    for n in range(1, 6):
        space = projective_space(n)
        bundle = space.bundle("O")
        for d in range(2, 7):
            for k in range(n):
                res = orbit_class(space, bundle, {"d": d}, f"P_{k}")
                i = n - k + 1
                m = m_coefficient(d, n, i)
                if m == 0:
                    assert not res.value, f"P^{n} d={d} k={k}"
                else:
                    assert _single_term(res.value) == (f"c{i}", -m), f"P^{n} d={d} k={k}"
                    assert res.degree == 2 * (n - k) + 1
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(f"ACCEPTANCE 1 (projective golden suite): PASS in {elapsed:.2f}s")


def test_criterion_2_odd_quadric_golden_suite():
    start = time.perf_counter()
    for n in range(1, 4):
        space = odd_quadric(n)
        bundle = space.bundle("O")
        big_n = 2 * n + 2
        for d in range(3, 6):
            for k in range(0, 2 * n + 2):
                res = orbit_class(space, bundle, {"d": d}, f"Z_{k}")
                if k % 2 == 1:
                    assert not res.value, f"Q^{2*n+1} d={d} Z_{k}"
                    continue
                expected = Fraction(-m_coefficient(d, big_n, 2 * (n + 1) - k), d - 2)
                if k >= n + 1:
                    expected *= 2
                assert _single_term(res.value) == (f"p{n + 1 - k // 2}", expected)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(f"ACCEPTANCE 2 (odd-quadric golden suite): PASS in {elapsed:.2f}s")


def test_criterion_3_even_quadric_golden_suite():
    start = time.perf_counter()
    for n in (2, 3):
        space = even_quadric(n)
        bundle = space.bundle("O")
        big_n = 2 * n + 1
        for d in range(3, 6):
            for k in list(range(0, n)) + list(range(n + 1, 2 * n)):
                res = orbit_class(space, bundle, {"d": d}, f"Z_{k}")
                if k % 2 == 0:
                    assert not res.value, f"Q^{2*n} d={d} Z_{k}"
                    continue
                expected = Fraction(-m_coefficient(d, big_n, 2 * n + 1 - k), d - 2)
                if k >= n + 1:
                    expected *= 2
                assert _single_term(res.value) == (f"p{n - (k - 1) // 2}", expected)
            chi_coeff = Fraction(m_coefficient(d, big_n, 2 * n + 2), d - 2)
            res1 = orbit_class(space, bundle, {"d": d}, "W_1")
            res2 = orbit_class(space, bundle, {"d": d}, "W_2")
            chi = space.group.primitive("chi")
            assert res1.value.coefficient(chi) == chi_coeff  # sign flips below
            assert res2.value.coefficient(chi) == -chi_coeff
            if n % 2 == 0:
                assert len(res1.value.terms) == 1 and len(res2.value.terms) == 1
            else:
                p_half = space.group.primitive(f"p{(n + 1) // 2}")
                shared = Fraction(-m_coefficient(d, big_n, n + 1), d - 2)
                assert res1.value.coefficient(p_half) == shared
                assert res2.value.coefficient(p_half) == shared
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    print(f"ACCEPTANCE 3 (even-quadric golden suite): PASS in {elapsed:.2f}s")


def test_criterion_4_division_verdicts():
    start = time.perf_counter()
    for n in range(1, 6):
        space = projective_space(n)
        bundle = space.bundle("O")
        for d in range(3, 7):
            assert check_surjectivity(space, bundle, {"d": d}).surjective, f"n={n} d={d}"
        verdict = check_surjectivity(space, bundle, {"d": 2})
        assert not verdict.surjective, f"n={n} d=2"
        assert verdict.failures
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    print(f"ACCEPTANCE 4 (division verdicts on projective spaces): PASS in {elapsed:.2f}s")


def test_criterion_5_cross_route_equality():
    start = time.perf_counter()
    cases = 0
    for n in range(1, 6):
        space = projective_space(n)
        bundle = space.bundle("O")
        for d in (2, 3, 4):
            direct = jet_euler(space, bundle, {"d": d}).value
            roots = jet_euler_projective_roots(space, bundle, {"d": d})
            assert space.borel_ring.is_zero(direct - roots), f"P^{n} d={d}"
            cases += 1
    for make, sizes in ((odd_quadric, (1, 2, 3)), (even_quadric, (1, 2, 3))):
        for n in sizes:
            space = make(n)
            bundle = space.bundle("O")
            for d in (3, 4, 5):
                direct = jet_euler(space, bundle, {"d": d}).value
                quotient = jet_euler_quadric_quotient(space, bundle, {"d": d})
                assert space.borel_ring.is_zero(direct - quotient), f"{space.name} d={d}"
                cases += 1
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE 5 (cross-route jet Euler equality, {cases} cases): PASS in {elapsed:.2f}s")


def test_criterion_6_discriminant_degrees():
    start = time.perf_counter()
    for n in range(1, 5):
        space = projective_space(n)
        bundle = space.bundle("O")
        (top,) = space.cycles_of_dim(n)
        for d in range(1, 7):
            expected = (n + 1) * (d - 1) ** n
            assert discriminant_degree(space, bundle, {"d": d}, top) == expected
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE 6 (discriminant degrees): PASS in {elapsed:.2f}s")


def _orbit_or_skip(space, d, cycle):
    try:
        res = orbit_class(space, space.bundle("O"), {"d": d}, cycle)
        return ("value", res.value, res.hypothesis_chern_number)
    except HypothesisError as exc:
        return ("skipped", str(exc))


def test_criterion_7_order_independence():
    start = time.perf_counter()
    cases = 0
    for space, d, cycle in _all_orbit_cases():
        lex = space.with_order("lex")
        assert _orbit_or_skip(space, d, cycle) == _orbit_or_skip(lex, d, cycle)
        cases += 1
    for k_n in ((2, 4), (2, 5)):
        space = grassmannian(*k_n)
        lex = space.with_order("lex")
        for d in (2, 3):
            for cycle in space.homology_basis:
                assert _orbit_or_skip(space, d, cycle.name) == _orbit_or_skip(
                    lex, d, cycle.name
                )
                cases += 1
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE 7 (order independence, {cases} cases): PASS in {elapsed:.2f}s")


def test_criterion_8_grassmannian_evidence():
    start = time.perf_counter()
    space = grassmannian(2, 5)
    bundle = space.bundle("O")

    # termination with a verdict inside the budget
    verdicts = {d: check_surjectivity(space, bundle, {"d": d}) for d in (2, 3)}
    for d, verdict in verdicts.items():
        assert verdict.surjective in (True, False)
        assert not verdict.indeterminate, f"d={d} returned no verdict"

    # criterion-5 invariant here: splitting-principle route agrees exactly
    for d in (2, 3):
        direct = jet_euler(space, bundle, {"d": d}).value
        split = jet_euler_grassmannian_roots(space, bundle, {"d": d})
        assert direct == split

    # criterion-6 invariant here: jet Chern numbers agree with a second,
    # root-by-root construction of the jet bundle's total class
    k, n = space.family_params["k"], space.family_params["n"]
    borel = space.borel_ring.ring
    sub = RootBlock(
        tuple(f"u{a}" for a in range(1, k + 1)),
        tuple([-borel.gen("y1")] + [borel.gen(f"x{i}") for i in range(2, k + 1)]),
    )
    quot = RootBlock(
        tuple(f"v{b}" for b in range(1, n - k + 1)),
        tuple(borel.gen(f"y{j}") for j in range(1, n - k + 1)),
    )
    frame = ChernRootBundle(borel, [sub, quot])
    hom_roots = [ua - vb for ua in frame.roots[:k] for vb in frame.roots[k:]]
    for d in (2, 3):
        x = bundle.c1(borel, d=d)
        jet_roots = frame.replaced([rho + frame.embed(x) for rho in hom_roots] + [frame.embed(x)])
        independent = jet_roots.total()
        direct = jet_total_chern(space, bundle, {"d": d})
        for cycle in space.homology_basis:
            assert chern_number(space, independent, cycle) == chern_number(
                space, direct, cycle
            )

    # criterion-7 invariant here: lex recomputation, value for value
    lex = space.with_order("lex")
    for d in (2, 3):
        for cycle in space.homology_basis:
            assert _orbit_or_skip(space, d, cycle.name) == _orbit_or_skip(lex, d, cycle.name)

    elapsed = time.perf_counter() - start
    assert elapsed < 600.0
    print(
        "ACCEPTANCE 8 (Gr(2,5) evidence): PASS in "
        f"{elapsed:.2f}s; verdicts d=2:{verdicts[2].surjective} d=3:{verdicts[3].surjective}"
    )


def test_criterion_9_divisor_transfer():
    from importlib import resources

    start = time.perf_counter()
    cases = []
    for config, quadric in (
        ("so_proj3.toml", even_quadric(1)),
        ("so_proj4.toml", odd_quadric(1)),
    ):
        with resources.as_file(resources.files("eqlink") / "data" / config) as path:
            ambient = load_presentation(path)
        for d in (3, 4):
            for cycle in ambient.homology_basis:
                if cycle.complex_dim == 0:
                    continue  # a point does not restrict to a cycle on the divisor
                check = divisor_transfer_check(
                    ambient,
                    quadric,
                    "O",
                    {"d": d},
                    cycle,
                    restricted_cycle(ambient, quadric, cycle),
                    Fraction(2, d),
                )
                assert check.equal, f"{ambient.name} d={d} {cycle.name}"
                cases.append((ambient.name, d, cycle.name, bool(check.lhs)))
    assert any(nonzero for *_rest, nonzero in cases)  # the identity is not vacuous
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE 9 (divisor transfer, {len(cases)} cases): PASS in {elapsed:.2f}s")
