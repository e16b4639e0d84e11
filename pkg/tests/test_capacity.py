"""Capacity builders, bitmask helpers and structural property checks."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from capax import (GroundSpace, InvalidCapacityError, check_modular,
                   check_monotone, check_subadditive, check_submodular,
                   indices_mask, make_additive, make_distorted, make_explicit,
                   make_grid_lebesgue, make_random_monotone, make_sup_capacity,
                   mask_indices, normalize)
from capax.xreal import DegenerateInputError


def test_mask_helpers_roundtrip():
    assert mask_indices(0b1011) == [0, 1, 3]
    assert indices_mask([0, 1, 3]) == 0b1011
    assert mask_indices(0) == []
    assert indices_mask([]) == 0


def test_additive_measures_sum_of_weights():
    c = make_additive([0.1, 0.2, 0.3])
    assert c(0) == 0.0
    assert c(0b111) == pytest.approx(0.6)
    assert c(0b101) == pytest.approx(0.4)


def test_additive_rejects_empty_and_zero_total():
    with pytest.raises(InvalidCapacityError):
        make_additive([])
    with pytest.raises(InvalidCapacityError):
        make_additive([0.0, 0.0])


def test_sup_capacity_is_one_on_every_nonempty_set():
    c = make_sup_capacity(GroundSpace(4))
    assert c(0) == 0.0
    for mask in range(1, 16):
        assert c(mask) == 1.0


def test_grid_lebesgue_total_mass_and_cell_measure():
    space, c = make_grid_lebesgue(0.0, 2.0, 4)
    assert space.n == 4
    # midpoints of [0, 0.5), [0.5, 1.0), ...
    assert np.allclose(space.coord_array(), [0.25, 0.75, 1.25, 1.75])
    assert c(space.full_mask) == pytest.approx(2.0)
    assert c(0b0011) == pytest.approx(1.0)


def test_distorted_applies_power_to_additive_mass():
    c = make_distorted([0.25, 0.25, 0.5], gamma=0.5)
    assert c(0b011) == pytest.approx(math.sqrt(0.5))
    assert c(0b111) == pytest.approx(1.0)


def test_explicit_table_requires_power_of_two_and_zero_empty():
    with pytest.raises(InvalidCapacityError):
        make_explicit([0.0, 0.5, 1.0])
    with pytest.raises(InvalidCapacityError):
        make_explicit([0.1, 0.5, 0.5, 1.0])  # mu(empty) != 0
    c = make_explicit([0.0, 0.5, 0.5, 1.0])
    assert c(0b01) == 0.5


def test_normalize_sets_unit_mass_on_conditioning_set():
    c = make_additive([1.0, 2.0, 3.0])
    m = normalize(c, 0b011)
    assert m(0b011) == pytest.approx(1.0)
    assert m(0b001) == pytest.approx(1.0 / 3.0)
    # intersection with the conditioning set is implicit
    assert m(0b111) == pytest.approx(1.0)


def test_normalize_rejects_null_set():
    c = make_additive([1.0, 1.0])
    with pytest.raises(DegenerateInputError):
        normalize(c, 0)


def test_chain_measures_match_direct_evaluation():
    rng = np.random.default_rng(3)
    c = make_random_monotone(5, rng)
    order = np.array([3, 0, 4, 1, 2])
    chain = c.chain_measures(order)
    mask = 0
    for k, i in enumerate(order):
        mask |= 1 << int(i)
        assert chain[k + 1] == pytest.approx(c(mask))
    assert chain[0] == 0.0


# --- structural property checks -------------------------------------------


def test_additive_is_modular_submodular_subadditive():
    c = make_additive([0.3, 0.2, 0.5])
    for check in (check_monotone, check_modular, check_submodular,
                  check_subadditive):
        rep = check(c, mode="exhaustive")
        assert rep.holds, rep


def test_concave_distortion_is_submodular_not_modular():
    c = make_distorted([0.2, 0.3, 0.5, 0.1], gamma=0.5)
    assert check_submodular(c, mode="exhaustive").holds
    assert check_subadditive(c, mode="exhaustive").holds
    assert not check_modular(c, mode="exhaustive").holds


def test_square_distortion_yields_submodularity_witness():
    c = make_distorted([0.5, 0.5], gamma=2.0)
    rep = check_submodular(c, mode="exhaustive")
    assert not rep.holds
    a, b = rep.witness
    assert c(a) + c(b) < c(a & b) + c(a | b) - 1e-12


def test_sup_capacity_submodular_exhaustive():
    c = make_sup_capacity(GroundSpace(4))
    assert check_submodular(c, mode="exhaustive").holds


def test_structural_mode_shortcuts():
    c = make_additive([0.5, 0.5])
    rep = check_submodular(c, mode="structural")
    assert rep.holds and rep.mode == "structural"


def test_broken_monotone_table_caught_with_witness():
    c = make_explicit([0.0, 0.8, 0.3, 0.5])  # {0} heavier than {0,1}
    rep = check_monotone(c, mode="exhaustive")
    assert not rep.holds
    small, big = rep.witness
    assert small & big == small
    assert c(small) > c(big)


def test_sampled_mode_is_seed_deterministic():
    rng = np.random.default_rng(11)
    c = make_random_monotone(6, rng)
    r1 = check_submodular(c, mode="sampled", seed=5, trials=2000)
    r2 = check_submodular(c, mode="sampled", seed=5, trials=2000)
    assert r1.slack == r2.slack


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=10**6))
def test_random_monotone_is_monotone(n, seed):
    c = make_random_monotone(n, np.random.default_rng(seed))
    assert check_monotone(c, mode="exhaustive").holds
    assert c(c.space.full_mask) == pytest.approx(1.0)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=10**6))
def test_modular_implies_submodular_implies_subadditive(n, seed):
    c = make_random_monotone(n, np.random.default_rng(seed))
    modular = check_modular(c, mode="exhaustive").holds
    submod = check_submodular(c, mode="exhaustive").holds
    subadd = check_subadditive(c, mode="exhaustive").holds
    if modular:
        assert submod
    if submod:
        assert subadd
