"""Comonotonicity detection and positive dependence."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from capax import (GroundSpace, check_positive_dependence, is_comonotone,
                   lukasiewicz_op, make_additive, make_sup_capacity,
                   make_uniform_example, min_op, sample_function)
from capax.dependence import INCREASING_BIJECTIONS
from capax.xreal import DomainError


def _fn(vals):
    return sample_function(GroundSpace(len(vals)), vals)


def test_comonotone_basic_verdicts():
    assert is_comonotone(_fn([0.1, 0.5, 0.9]), _fn([0.2, 0.2, 0.7])).holds
    rep = is_comonotone(_fn([0.1, 0.9]), _fn([0.8, 0.2]))
    assert not rep.holds
    x, y = rep.witness
    assert {x, y} == {0, 1}


def test_constant_function_comonotone_with_anything():
    assert is_comonotone(_fn([0.4, 0.4, 0.4]), _fn([0.9, 0.1, 0.5])).holds


def test_comonotone_methods_agree():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(2, 9))
        f = _fn(rng.uniform(size=n))
        g = _fn(rng.uniform(size=n))
        assert (is_comonotone(f, g, method="pairwise").holds
                == is_comonotone(f, g, method="sorted").holds)


def test_comonotone_rejects_mismatched_spaces():
    with pytest.raises(DomainError):
        is_comonotone(_fn([0.1, 0.2]), _fn([0.1, 0.2, 0.3]))


@given(st.lists(st.floats(min_value=0, max_value=1, allow_nan=False),
                min_size=2, max_size=8),
       st.integers(min_value=0, max_value=10**6))
def test_same_order_functions_are_comonotone(vals, seed):
    rng = np.random.default_rng(seed)
    order = np.argsort(vals, kind="stable")
    g = np.empty(len(vals))
    g[order] = np.sort(rng.uniform(size=len(vals)))
    assert is_comonotone(_fn(vals), _fn(g)).holds


def test_comonotone_pair_positively_dependent_for_min():
    # comonotone pairs always satisfy the min-form of positive dependence
    c = make_additive([0.25, 0.25, 0.5])
    f = _fn([0.2, 0.5, 0.9])
    g = _fn([0.1, 0.6, 0.6])
    A = c.space.full_mask
    rep = check_positive_dependence(f, A, g, A, c, min_op())
    assert rep.holds
    assert rep.slack >= -1e-12


def test_countermonotone_pair_fails_min_dependence():
    c = make_additive([0.5, 0.5])
    f = _fn([0.1, 0.9])
    g = _fn([0.9, 0.1])
    A = c.space.full_mask
    rep = check_positive_dependence(f, A, g, A, c, min_op())
    assert not rep.holds
    a_level, b_level, joint, marg = rep.witness
    assert joint < marg


def test_positive_dependence_explicit_capacity_slow_path():
    # forces the generic per-cell evaluation (no additive shortcut)
    from capax import make_random_monotone
    rng = np.random.default_rng(7)
    c = make_random_monotone(4, rng)
    f = _fn(np.sort(rng.uniform(size=4)))
    g = _fn(np.sort(rng.uniform(size=4)))
    rep = check_positive_dependence(f, c.space.full_mask, g,
                                    c.space.full_mask, c, min_op())
    assert rep.holds


def test_uniform_example_lukasiewicz_dependence_is_exact():
    # f = phi(U), h = 1 - psi(U): countermonotone, yet the joint measure
    # matches the Lukasiewicz combination of the marginals on the grid
    for phi, psi in (("identity", "identity"), ("square", "sqrt")):
        f, h, P = make_uniform_example(phi, psi, 64)
        assert not is_comonotone(f, h).holds
        X = f.space.full_mask
        rep = check_positive_dependence(f, X, h, X, P, lukasiewicz_op())
        assert rep.holds
        assert abs(rep.slack) <= 1e-12  # equality, not just dominance


def test_uniform_example_unknown_bijection():
    with pytest.raises(DomainError):
        make_uniform_example("cube", "identity", 16)
    assert set(INCREASING_BIJECTIONS) == {"identity", "square", "sqrt"}


def test_sup_capacity_dependence_for_comonotone_pair():
    # comonotone upper level sets are nested, so the joint sup-measure
    # equals the min of the marginals; a rank reversal breaks this
    c = make_sup_capacity(GroundSpace(3))
    f = _fn([0.9, 0.1, 0.5])
    assert check_positive_dependence(f, 0b111, _fn([0.7, 0.1, 0.3]),
                                     0b111, c, min_op()).holds
    assert not check_positive_dependence(f, 0b111, _fn([0.2, 0.8, 0.4]),
                                         0b111, c, min_op()).holds
