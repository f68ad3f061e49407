"""End-to-end acceptance checks, one per release criterion.

Each test prints a single summary line (with its measured runtime) through the
capture-disabled channel, so a full run shows nine lines.  Runtimes are
reported for visibility but not asserted; the assertions are all exact.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter

import pytest

from vsi import (
    Quiver,
    apply_action,
    build_complex,
    canonical_decomp,
    canonical_proj_decomp,
    chi_value,
    conjugate_rep,
    cv_value,
    d_beta_halfspaces,
    d_membership,
    derive_rng,
    euler_data,
    euler_form,
    example_quiver,
    generic_decomposition,
    is_schur_root,
    linear_type_a_facet_count,
    minimal_decomp,
    mix_seed,
    parse_field,
    positive_roots,
    random_aut,
    random_glpoint,
    random_presentation,
    random_rep,
    ridge_cone_contains,
    stabilize,
    supp_test_randomized,
    verify_sphere,
    wall_labels,
    zeta,
)
from vsi.decomposition import cached_generic_ext
from vsi.quiver import apply_int_matrix

FIELD = parse_field("fp:32003")

A3 = Quiver(["1", "2", "3"], [("1", "2"), ("2", "3")])
A3_ALT = Quiver(["1", "2", "3"], [("2", "1"), ("2", "3")])
A4 = Quiver(["1", "2", "3", "4"], [("1", "2"), ("2", "3"), ("3", "4")])
A4_ALT = Quiver(["1", "2", "3", "4"], [("2", "1"), ("2", "3"), ("4", "3")])
A5 = Quiver(
    ["1", "2", "3", "4", "5"],
    [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5")],
)
D4 = Quiver(["1", "2", "3", "4"], [("1", "4"), ("2", "4"), ("3", "4")])
D4_OUT = Quiver(["1", "2", "3", "4"], [("4", "1"), ("4", "2"), ("4", "3")])


def _announce(capsys, number: int, text: str, elapsed: float) -> None:
    with capsys.disabled():
        print(f"criterion {number}: {text} [{elapsed * 1000:.1f} ms]")


def test_criterion_1_golden_euler_matrices(capsys):
    q = example_quiver()
    t0 = time.perf_counter()
    d = euler_data(q)
    elapsed = time.perf_counter() - t0
    assert d.e == ((1, -1, 0), (0, 1, -2), (0, 0, 1))
    assert d.e_inv == ((1, 1, 2), (0, 1, 2), (0, 0, 1))
    assert d.et_inv == ((1, 0, 0), (1, 1, 0), (2, 2, 1))
    _announce(capsys, 1, "E, E^-1, (E^t)^-1 reproduced exactly", elapsed)


def test_criterion_2_golden_decompositions(capsys):
    q = example_quiver()
    alpha = (1, 2, -3)
    t0 = time.perf_counter()
    mu, gamma = canonical_decomp(q, alpha)
    can = canonical_proj_decomp(q, alpha)
    mind = minimal_decomp(q, alpha)
    elapsed = time.perf_counter() - t0
    assert (mu, gamma) == ((1, 2, 0), (0, 0, 3))
    assert (can.gamma0, can.gamma1) == ((1, 2, 0), (0, 1, 7))
    assert (mind.gamma0, mind.gamma1) == ((1, 1, 0), (0, 0, 7))
    _announce(
        capsys,
        2,
        "canonical and minimal decompositions of (1,2,-3) reproduced",
        elapsed,
    )


def test_criterion_3_golden_support_halfspaces(capsys):
    q = example_quiver()
    t0 = time.perf_counter()
    system = d_beta_halfspaces(q, (0, 1, 2), FIELD)
    checked = 0
    for a in itertools.product(range(-5, 6), repeat=3):
        expected = 2 * a[2] == 3 * a[1] + a[0] and a[1] >= a[0]
        assert system.contains(a) == expected, a
        checked += 1
    # spot memberships: both lie on the equality plane and satisfy the
    # subrepresentation inequality; the components-reversed (-1,0,-2) does not
    assert system.contains((-1, -1, -2))
    assert system.contains((-2, 0, -1))
    assert not system.contains((-1, 0, -2))
    elapsed = time.perf_counter() - t0
    _announce(
        capsys,
        3,
        f"D((0,1,2)) halfspaces match the closed form on {checked} grid points",
        elapsed,
    )


def test_criterion_4_saturation_cross_check(capsys):
    q = example_quiver()
    betas = ((0, 1, 2), (1, 1, 1), (0, 0, 1))
    t0 = time.perf_counter()
    disagreements = 0
    points = 0
    for beta in betas:
        for a in itertools.product(range(-3, 4), repeat=3):
            points += 1
            want = d_membership(q, a, beta, FIELD)
            got = supp_test_randomized(q, a, beta, FIELD, trials=5)
            if got != want:
                got = any(
                    supp_test_randomized(q, a, beta, FIELD, seed=s, trials=5)
                    == want
                    for s in (1, 2, 3)
                )
                if not got:
                    disagreements += 1
    elapsed = time.perf_counter() - t0
    assert disagreements == 0
    _announce(
        capsys,
        4,
        f"randomized support test agrees with membership on {points} points "
        f"x 3 weights",
        elapsed,
    )


def test_criterion_5_semi_invariance_suite(capsys):
    q = example_quiver()
    alpha, beta = (-1, -1, -2), (0, 1, 2)
    assert euler_form(q, alpha, beta) == 0
    dec = minimal_decomp(q, alpha)
    t0 = time.perf_counter()
    for i in range(50):
        seed = mix_seed(41, "equivariance", i)
        phi = random_presentation(dec, FIELD, mix_seed(seed, "phi"))
        v = random_rep(q, beta, FIELD, mix_seed(seed, "V"))
        g0 = random_aut(q, dec.gamma0, FIELD, mix_seed(seed, "g0"), slots=phi.slots0)
        g1 = random_aut(q, dec.gamma1, FIELD, mix_seed(seed, "g1"), slots=phi.slots1)
        lhs = cv_value(apply_action(g0, phi, g1), v)
        scale = FIELD.s_mul(chi_value(g0, beta), chi_value(g1, beta))
        assert lhs == FIELD.s_mul(scale, cv_value(phi, v))

    rng = derive_rng(41, "padding")
    for i in range(50):
        seed = mix_seed(41, "stabilize", i)
        phi = random_presentation(dec, FIELD, mix_seed(seed, "phi"))
        v = random_rep(q, beta, FIELD, mix_seed(seed, "V"))
        gamma = tuple(int(x) for x in rng.integers(0, 4, size=q.n))
        assert cv_value(stabilize(phi, gamma), v) == cv_value(phi, v)

    delta = (1, 1, 2)
    assert euler_form(q, delta, beta) == 0
    sigma = apply_int_matrix(euler_data(q).e, beta)
    for i in range(50):
        seed = mix_seed(41, "transport", i)
        m = random_rep(q, delta, FIELD, mix_seed(seed, "M"))
        v = random_rep(q, beta, FIELD, mix_seed(seed, "V"))
        g = random_glpoint(q, delta, FIELD, mix_seed(seed, "g"))
        scale = FIELD.one
        for vtx in range(q.n):
            scale = FIELD.s_mul(scale, FIELD.s_pow(FIELD.det(g[vtx]), sigma[vtx]))
        lhs = cv_value(zeta(conjugate_rep(m, g)), v)
        assert lhs == FIELD.s_mul(scale, cv_value(zeta(m), v))
    elapsed = time.perf_counter() - t0
    _announce(
        capsys,
        5,
        "group action, stabilization, and zeta pullback each exact on 50 "
        "instances",
        elapsed,
    )


def test_criterion_6_generic_decomposition_invariants(capsys):
    quivers = ((A3, 34), (D4, 33), (example_quiver(), 33))
    t0 = time.perf_counter()
    total = 0
    for q, count in quivers:
        rng = derive_rng(42, "alphas", q.names, q.arrows)
        for i in range(count):
            alpha = tuple(int(x) for x in rng.integers(-6, 7, size=q.n))
            dec = generic_decomposition(q, alpha, FIELD, seed=0)
            assert dec.reconstruct(q) == alpha
            for part in dec.schur_parts:
                assert is_schur_root(q, part, FIELD)
                assert all(p == 0 or g == 0 for p, g in zip(part, dec.gamma))
            parts = sorted(set(dec.schur_parts))
            for x, y in itertools.combinations(parts, 2):
                assert cached_generic_ext(q, x, y, FIELD) == 0
                assert cached_generic_ext(q, y, x, FIELD) == 0
            reference = Counter(dec.schur_parts)
            for seed in range(1, 10):
                again = generic_decomposition(q, alpha, FIELD, seed=seed)
                assert Counter(again.schur_parts) == reference, (alpha, seed)
            total += 1
    elapsed = time.perf_counter() - t0
    assert total == 100
    _announce(
        capsys,
        6,
        "generic decomposition invariants and 10-seed stability on 100 "
        "dimension vectors",
        elapsed,
    )


def test_criterion_7_cluster_complexes(capsys):
    t0 = time.perf_counter()
    a2 = Quiver(["1", "2"], [("1", "2")])
    c2 = build_complex(a2, FIELD)
    assert (len(c2.vertices), len(c2.facets)) == (5, 5)
    c3 = build_complex(A3, FIELD)
    assert (len(c3.vertices), len(c3.ridges()), len(c3.facets)) == (9, 21, 14)
    for n, q in ((2, a2), (3, A3), (4, A4), (5, A5)):
        assert len(build_complex(q, FIELD).facets) == linear_type_a_facet_count(n)
    verified = 0
    for q in (
        a2,
        Quiver(["1", "2"], [("2", "1")]),
        A3,
        A3_ALT,
        A4,
        A4_ALT,
        D4,
        D4_OUT,
    ):
        report = verify_sphere(build_complex(q, FIELD))
        assert report.ok, (q.names, q.arrows, report.failures)
        n = q.n
        assert report.euler_characteristic == 1 + (-1) ** (n - 1)
        verified += 1
    elapsed = time.perf_counter() - t0
    _announce(
        capsys,
        7,
        f"golden counts, the triangulation oracle, and sphere verification "
        f"on {verified} orientations",
        elapsed,
    )


def test_criterion_8_wall_labels_cover_supports(capsys):
    t0 = time.perf_counter()
    points = 0
    for q in (A3, D4):
        c = build_complex(q, FIELD)
        labels = wall_labels(c)
        assert all(labels[r] for r in c.ridges())
        for beta in positive_roots(q):
            ridges = [r for r, roots in labels.items() if beta in roots]
            assert ridges, beta
            for a in itertools.product(range(-4, 5), repeat=q.n):
                if not d_membership(q, a, beta, FIELD):
                    continue
                points += 1
                assert any(
                    ridge_cone_contains(c, r, a) for r in ridges
                ), (q.names, beta, a)
    elapsed = time.perf_counter() - t0
    _announce(
        capsys,
        8,
        f"every ridge labeled; labeled cones cover {points} support grid "
        f"points",
        elapsed,
    )


def test_criterion_9_dynkin_perpendicularity(capsys):
    t0 = time.perf_counter()
    pairs = 0
    for q in (A3, D4):
        roots = positive_roots(q)
        for a in roots:
            for b in roots:
                pairs += 1
                assert d_membership(q, a, b, FIELD) == (
                    euler_form(q, a, b) == 0
                ), (a, b)
    elapsed = time.perf_counter() - t0
    _announce(
        capsys,
        9,
        f"membership in D(beta) equals Euler-perpendicularity on {pairs} "
        f"root pairs",
        elapsed,
    )
