"""Family generators: frozen instances, side-condition rejections, registry."""

import pytest

from modsum.constructions import (
    ConstructionSpec,
    construct_large_min_sum,
    construct_near_third,
    construct_perturbation,
    construct_powers,
    construct_prefix_powers,
    is_perturbation_form,
    registry_sets,
)
from modsum.equivalence import are_equivalent, min_orbit_sum
from modsum.errors import (
    BadParityError,
    BadValuationError,
    BoundViolatedError,
    InvalidPerturbationError,
    ScaleGuardError,
)
from modsum.subsetsum import ResidueSet, is_sumset_distinct


def test_powers():
    assert construct_powers(3, 9).elements == (1, 2, 4)
    big = construct_powers(9, 616)
    assert big.elements == tuple(1 << i for i in range(9))
    assert is_sumset_distinct(big)
    with pytest.raises(ScaleGuardError):
        construct_powers(3, 7)


def test_near_third_frozen_instance():
    built = construct_near_third(5, 2)
    assert built.modulus == 37
    assert built.base.elements == (1, 2, 4, 9, 18)
    assert built.dilation == 12
    assert built.result.elements == (3, 6, 11, 12, 13)
    assert built.max_element == 13
    assert built.max_element <= built.bound < 21.6


def test_near_third_bound_holds_across_instances():
    for n, k in [(5, 2), (7, 2), (9, 4), (11, 4), (13, 6)]:
        built = construct_near_third(n, k)
        assert built.modulus == (1 << n) + (1 << k) + 1
        assert is_sumset_distinct(built.result)
        assert built.max_element <= built.modulus / 3 + built.modulus / (1 << k)


def test_near_third_rejects_bad_parity():
    with pytest.raises(BadParityError):
        construct_near_third(5, 3)
    with pytest.raises(ValueError):
        construct_near_third(3, 3)


def test_perturbation_frozen_instances():
    built = construct_perturbation(4, 1, (0, 0, 0, 1))
    assert (built.t, built.modulus) == (5, 21)
    assert built.result.elements == (1, 2, 4, 9)
    built = construct_perturbation(4, 1, (0, 0, 1, 1))
    assert built.result.elements == (1, 2, 5, 9)


def test_perturbation_outputs_superincreasing():
    for p in [(0, 0, 0, 0, 1), (0, 0, 0, 1, 1), (0, 0, 1, 1, 2)]:
        built = construct_perturbation(5, 2, p)
        total = 0
        for e in built.result.elements:
            assert e > total
            total += e
        assert total <= (1 << 5) - 1 + built.t


def test_perturbation_rejections():
    with pytest.raises(InvalidPerturbationError):
        construct_perturbation(4, 1, (0, 1, 0, 0))  # p_2 < p_0 + p_1
    with pytest.raises(InvalidPerturbationError):
        construct_perturbation(4, 1, (0, 0, 0, 2))  # p_3 > r
    with pytest.raises(InvalidPerturbationError):
        construct_perturbation(4, 1, (0, 0, -1, 0))
    with pytest.raises(InvalidPerturbationError):
        construct_perturbation(4, 0, (0, 0, 0, 0))  # r below 1
    with pytest.raises(InvalidPerturbationError):
        construct_perturbation(4, 1, (0, 0, 0))  # wrong length


def test_prefix_powers():
    assert construct_prefix_powers([3], 4, 21).elements == (2, 3, 4, 8)
    assert construct_prefix_powers([1], 3, 9).elements == (1, 2, 4)
    assert construct_prefix_powers([3, 6], 5, 40).elements == (3, 4, 6, 8, 16)
    with pytest.raises(BadValuationError):
        construct_prefix_powers([2], 4, 30)  # v2(2) = 1, index 0 needs v2 = 0
    with pytest.raises(BoundViolatedError):
        construct_prefix_powers([3], 4, 17)  # 17 <= 16 - 2 + 3


def test_large_min_sum_family():
    built = construct_large_min_sum(8)
    assert built.modulus == 265
    assert built.result.elements == (3, 6, 12, 16, 24, 32, 64, 128)
    assert sum(built.result.elements) == 285
    assert are_equivalent(built.result, built.alternate)
    assert built.alternate.elements == (1, 2, 4, 8, 67, 83, 99, 131)
    nine = construct_large_min_sum(9)
    assert nine.modulus == 521
    assert set(nine.result.elements) == {3, 6, 12, 24, 16, 32, 64, 128, 256}
    with pytest.raises(ScaleGuardError):
        construct_large_min_sum(7)


def test_large_min_sum_orbit_minimum():
    for n, expected in [(8, 267), (9, 523), (10, 1035)]:
        built = construct_large_min_sum(n)
        value, _ = min_orbit_sum(built.result)
        assert value == expected
        assert value >= built.modulus


def test_registry():
    entries = {e.name: e for e in registry_sets()}
    assert set(entries) == {"erdos-616", "concluding-36", "appb-n8"}
    erdos = entries["erdos-616"]
    assert erdos.ok and max(erdos.residue_set.elements) == 161
    concluding = entries["concluding-36"]
    assert concluding.ok
    assert concluding.verified == {
        "sumset_distinct": True,
        "contains_half": False,
        "single_odd": False,
        "perturbation_form": False,
    }
    assert entries["appb-n8"].ok


def test_perturbation_form_predicate():
    built = construct_perturbation(6, 2, (0, 0, 0, 0, 1, 2))
    assert is_perturbation_form(built.result)
    assert is_perturbation_form(ResidueSet.make(21, [1, 2, 4, 9]))
    assert not is_perturbation_form(ResidueSet.make(36, [1, 6, 11, 13, 15]))
    assert not is_perturbation_form(ResidueSet.make(10, [5, 1, 2]))


def test_construction_spec_dispatch():
    assert ConstructionSpec("powers", {"n": 3, "modulus": 9}).build().elements == (1, 2, 4)
    near = ConstructionSpec("thm2", {"n": 5, "k": 2}).build()
    assert near.result.elements == (3, 6, 11, 12, 13)
    entry = ConstructionSpec("registry", {"name": "erdos-616"}).build()
    assert entry.residue_set.modulus == 616
    with pytest.raises(ValueError):
        ConstructionSpec("nope", {}).build()
