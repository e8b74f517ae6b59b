"""Sign/dilation group: move validity, canonical forms, orbit accounting."""

import pytest

from modsum.enumeration import enumerate_all
from modsum.equivalence import (
    apply_dilation,
    apply_signs,
    are_equivalent,
    canonical_form,
    min_orbit_sum,
    res_collapse,
)
from modsum.errors import (
    CollisionError,
    ModulusMismatchError,
    NotCoprimeError,
    NotDistinctError,
)
from modsum.modring import euler_phi, reduce_res, units
from modsum.subsetsum import ResidueSet, is_sumset_distinct


def rs(modulus, *elements):
    return ResidueSet.make(modulus, elements)


def test_apply_signs_examples():
    assert apply_signs(rs(9, 1, 2, 4), 0b001).elements == (2, 4, 8)
    assert apply_signs(rs(9, 1, 2, 4), 0b000).elements == (1, 2, 4)
    assert apply_signs(rs(9, 1, 2, 4), 0b111).elements == (5, 7, 8)
    with pytest.raises(CollisionError):
        apply_signs(rs(5, 1, 4), 0b01)  # 1 and 4 are negatives of each other
    with pytest.raises(ValueError):
        apply_signs(rs(9, 1, 2, 4), 1 << 3)


def test_apply_dilation_examples():
    assert apply_dilation(rs(9, 1, 2, 4), 2).elements == (2, 4, 8)
    assert apply_dilation(rs(37, 1, 2, 4, 9, 18), 12).elements == (11, 12, 24, 31, 34)
    with pytest.raises(NotCoprimeError):
        apply_dilation(rs(9, 1, 2, 4), 3)


def test_res_collapse_examples():
    assert res_collapse(rs(9, 5, 7, 8)).elements == (1, 2, 4)
    assert res_collapse(rs(37, 12, 24, 11, 34, 31)).elements == (3, 6, 11, 12, 13)
    assert res_collapse(rs(9, 1, 2, 4)).elements == (1, 2, 4)
    with pytest.raises(CollisionError):
        res_collapse(rs(9, 1, 8))  # 8 = -1, collapses onto 1


def test_moves_preserve_distinctness_exhaustively():
    # every sign mask and every unit dilation keeps solutions solutions
    for n, modulus in [(2, 5), (3, 9), (3, 10), (3, 12), (4, 17)]:
        for rset in enumerate_all(n, modulus):
            for mask in range(1 << n):
                assert is_sumset_distinct(apply_signs(rset, mask))
            for lam in units(modulus):
                assert is_sumset_distinct(apply_dilation(rset, lam))


def test_canonical_form_examples():
    assert canonical_form(rs(9, 8, 7, 5)).canonical.elements == (1, 2, 4)
    assert canonical_form(rs(11, 2, 3, 4)).canonical.elements == (1, 2, 4)
    d = canonical_form(rs(9, 1, 2, 4))
    assert d.canonical.elements == (1, 2, 4)
    assert d.orbit_size == 8  # all 8 solutions mod 9 form one orbit


def test_canonical_form_witness_reconstructs():
    for n, modulus in [(3, 9), (3, 10), (3, 11), (4, 18)]:
        for rset in enumerate_all(n, modulus):
            d = canonical_form(rset)
            assert d.reconstruct() == rset
            assert all(e == reduce_res(e, modulus) for e in d.canonical.elements)


def test_canonical_form_idempotent():
    for n, modulus in [(3, 9), (3, 10), (3, 11), (4, 20)]:
        for rset in enumerate_all(n, modulus):
            c = canonical_form(rset).canonical
            again = canonical_form(c)
            assert again.canonical == c


def test_canonical_form_rejects_non_distinct():
    with pytest.raises(NotDistinctError):
        canonical_form(rs(5, 1, 4))


def test_are_equivalent_examples():
    # full sign flip
    assert are_equivalent(rs(9, 1, 2, 4), rs(9, 5, 7, 8))
    # {1,3,5} mod 11 is the lambda=4 dilate of {1,2,4} after folding
    assert res_collapse(apply_dilation(rs(11, 1, 3, 5), 4)).elements == (1, 2, 4)
    assert are_equivalent(rs(11, 1, 2, 4), rs(11, 1, 3, 5))
    # mod 13 the two orbits really are different (exhaustive unit scan)
    a, b = rs(13, 1, 2, 4), rs(13, 1, 2, 5)
    target = res_collapse(b).elements
    assert all(
        tuple(sorted(reduce_res(lam * e % 13, 13) for e in a.elements)) != target
        for lam in units(13)
    )
    assert not are_equivalent(a, b)
    assert are_equivalent(a, a)
    with pytest.raises(ModulusMismatchError):
        are_equivalent(rs(9, 1, 2, 4), rs(11, 1, 2, 4))


def test_equivalence_relation_properties():
    sets = list(enumerate_all(3, 13))
    sample = sets[::5]
    for x in sample:
        assert are_equivalent(x, x)
    for x in sample[:6]:
        for y in sample[:6]:
            assert are_equivalent(x, y) == are_equivalent(y, x)
    # transitivity via canonical representatives
    for x in sample[:6]:
        for y in sample[:6]:
            for z in sample[:6]:
                if are_equivalent(x, y) and are_equivalent(y, z):
                    assert are_equivalent(x, z)


def test_orbit_sizes_sum_to_total_count():
    for n, modulus in [(2, 5), (3, 9), (3, 10), (3, 11), (3, 12), (4, 17), (4, 18), (4, 20)]:
        sets = list(enumerate_all(n, modulus))
        orbits = {}
        for rset in sets:
            d = canonical_form(rset)
            orbits[d.canonical.elements] = d.orbit_size
        assert sum(orbits.values()) == len(sets)


def test_doubling_collapses_dilates_for_pow2_plus_one():
    # modulus 2^n + 1: folded dilates repeat with period dividing 2n in lambda -> 2 lambda
    for n in (3, 4, 5):
        modulus = (1 << n) + 1
        powers = rs(modulus, *[1 << i for i in range(n)])
        folds = {
            tuple(sorted(reduce_res(lam * e % modulus, modulus) for e in powers.elements))
            for lam in units(modulus)
        }
        assert len(folds) == euler_phi(modulus) // (2 * n)


def test_min_orbit_sum_examples():
    assert min_orbit_sum(rs(9, 1, 2, 4)) == (7, 1)
    appb = rs(265, 3, 6, 12, 24, 16, 32, 64, 128)
    value, lam = min_orbit_sum(appb)
    assert value == 267 and value >= 265
    assert lam == 66
    # identity representative of the powers already achieves the scan minimum
    for n in (4, 5):
        modulus = (1 << n) + 1
        value, lam = min_orbit_sum(rs(modulus, *[1 << i for i in range(n)]))
        assert (value, lam) == ((1 << n) - 1, 1)
    with pytest.raises(NotDistinctError):
        min_orbit_sum(rs(5, 1, 4))


def test_min_orbit_sum_is_orbit_minimum():
    # brute force over the whole orbit: dilations x sign masks
    rset = rs(13, 1, 2, 5)
    best = min(
        sum(min(e, 13 - e) for e in apply_dilation(rset, lam).elements)
        for lam in units(13)
    )
    assert min_orbit_sum(rset)[0] == best
