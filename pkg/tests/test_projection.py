import random
from fractions import Fraction

import pytest

from rootproj.catalog import build_from_name, simple_root_expansion
from rootproj.linalg import add, dot, is_zero, neg, norm2, scale, sub, vector
from rootproj.projection import (ExpansionConsistencyError, ThetaProjector,
                                 expansion_over_delta_theta, project,
                                 project_all)


def gram_schmidt_project(t, alphas):
    """Independent projector: orthogonalize theta, then peel components."""
    basis = []
    for a in alphas:
        w = a
        for b in basis:
            w = sub(w, scale(dot(w, b) / dot(b, b), b))
        if not is_zero(w):
            basis.append(w)
    out = t
    for b in basis:
        out = sub(out, scale(dot(out, b) / dot(b, b), b))
    return out


A3 = build_from_name("A3")
HALF = Fraction(1, 2)


def test_project_a3_basis_vector():
    # e_2 projected orthogonally to alpha_2 averages the glued pair
    got = project(vector([0, 1, 0, 0]), A3, (2,))
    assert got == vector([0, HALF, HALF, 0])


def test_project_kills_span_theta():
    assert is_zero(project(A3.simple_root(2), A3, (2,)))


def test_project_a3_root():
    got = project(vector([1, -1, 0, 0]), A3, (2,))
    assert got == vector([1, -HALF, -HALF, 0])


def test_project_matches_gram_schmidt_everywhere():
    rng = random.Random(4)
    cases = [("A4", (2, 3)), ("B4", (1, 3)), ("B4", (3, 4)), ("C4", (2, 3)),
             ("C5", (1, 4, 5)), ("D5", (2, 5)), ("F4", (2, 3)), ("G2", (1,)),
             ("E6", (1, 3)), ("E7", (2, 5, 7)), ("E8", (2, 3, 4, 5))]
    for name, theta in cases:
        sys = build_from_name(name)
        alphas = [sys.simple_root(i) for i in theta]
        proj = ThetaProjector.create(sys, theta)
        for r in rng.sample(sys.roots, min(25, len(sys.roots))):
            assert proj.project(r) == gram_schmidt_project(r, alphas)


def test_project_all_a3():
    pr = project_all(A3, (2,))
    assert len(pr.sigma_theta) == 6
    assert pr.census == {Fraction(2): 2, Fraction(3, 2): 4}
    assert pr.d == 2
    assert len(pr.delta_theta) == 2
    assert not pr.delta_theta_collision


def test_project_all_e8_singleton_census():
    pr = project_all(build_from_name("E8"), (8,))
    assert pr.census == {Fraction(2): 126, Fraction(3, 2): 56}


def test_project_all_e7_singleton_census_derived():
    # derived by counting: 60 roots orthogonal to the chosen simple root
    # keep their length, the remaining 64 non-proportional roots pair up
    # into 32 distinct projections of squared length 3/2
    e7 = build_from_name("E7")
    pr = project_all(e7, (1,))
    alpha = e7.simple_root(1)
    orthogonal = [r for r in e7.roots if dot(r, alpha) == 0]
    assert len(orthogonal) == 60
    assert pr.census == {Fraction(2): 60, Fraction(3, 2): 32}


def test_improper_theta_rejected():
    with pytest.raises(ValueError):
        project_all(A3, ())
    with pytest.raises(ValueError):
        project_all(A3, (1, 2, 3))
    pr = project_all(A3, (1, 2, 3), allow_improper=True)
    assert pr.sigma_theta == ()
    pr = project_all(A3, (), allow_improper=True)
    assert len(pr.sigma_theta) == 12


def test_expansion_of_delta_theta_entry():
    pr = project_all(A3, (2,))
    coeff = expansion_over_delta_theta(pr.delta_theta[0], pr)
    assert coeff == (1, 0)


def test_expansion_a3_long_root():
    pr = project_all(A3, (2,))
    v = vector([1, 0, 0, -1])  # e_1 - e_4 projects to itself
    assert expansion_over_delta_theta(v, pr) == (1, 1)
    assert expansion_over_delta_theta(neg(v), pr) == (-1, -1)


def test_expansion_rejects_outside_span():
    pr = project_all(A3, (2,))
    with pytest.raises(ExpansionConsistencyError):
        expansion_over_delta_theta(vector([1, 0, 0, 0]), pr)


SAMPLE_SYSTEMS = ["A3", "A5", "B3", "B5", "C4", "C6", "D4", "D6",
                  "E6", "E7", "F4", "G2"]


def _random_theta(rng, rank):
    size = rng.randint(1, rank - 1)
    return tuple(sorted(rng.sample(range(1, rank + 1), size)))


def test_projection_invariants_randomized():
    rng = random.Random(20240801)
    for name in SAMPLE_SYSTEMS:
        sys = build_from_name(name)
        for _ in range(3):
            theta = _random_theta(rng, sys.rank)
            proj = ThetaProjector.create(sys, theta)
            alphas = [sys.simple_root(i) for i in theta]
            pr = project_all(sys, theta)
            # negation closure
            sources = set(pr.sigma_theta)
            assert all(neg(v) in sources for v in sources)
            for r in rng.sample(sys.roots, min(12, len(sys.roots))):
                p = proj.project(r)
                # idempotence and exact orthogonality
                assert proj.project(p) == p
                assert all(dot(p, a) == 0 for a in alphas)
                # kernel characterization via the simple-root expansion
                coeff = simple_root_expansion(sys, r)
                outside = [c for i, c in enumerate(coeff, start=1)
                           if i not in theta]
                assert is_zero(p) == all(c == 0 for c in outside)
            # linearity on random rational combinations
            u, w = rng.sample(sys.roots, 2)
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            b = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            combo = add(scale(a, u), scale(b, w))
            assert proj.project(combo) == add(scale(a, proj.project(u)),
                                              scale(b, proj.project(w)))


def test_delta_theta_never_collides_and_lies_in_sigma_theta():
    rng = random.Random(7)
    for name in SAMPLE_SYSTEMS:
        sys = build_from_name(name)
        for _ in range(4):
            theta = _random_theta(rng, sys.rank)
            pr = project_all(sys, theta)
            assert not pr.delta_theta_collision
            assert len(pr.delta_theta) == pr.d
            assert set(pr.delta_theta) <= set(pr.sigma_theta)


def test_pool_is_one_rep_per_pair():
    pr = project_all(A3, (2,))
    pool = pr.pool()
    assert len(pool) == 3
    assert all(v > neg(v) for v in pool)
    norms = [norm2(v) for v in pool]
    assert norms == sorted(norms)
