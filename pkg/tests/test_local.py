from fractions import Fraction

import pytest

from qfrep.forms import TernaryForm, represented_upto
from qfrep.local import (
    dickson_exception_member,
    is_eligible,
    is_locally_represented,
    lemma41_target,
    local_density,
    spinor_genus_count_bound,
)

DICKSON = [(1, 1, 2), (1, 1, 6), (1, 2, 6), (2, 3, 3), (1, 1, 16)]


def naive_density(f, n, p, k):
    """Independent oracle: literal triple loop modulo p^k."""
    m = p**k
    count = 0
    for x in range(m):
        for y in range(m):
            for z in range(m):
                if f.evaluate((x, y, z)) % m == n % m:
                    count += 1
    return Fraction(count, p ** (2 * k))


def test_locally_represented_examples():
    v = is_locally_represented(TernaryForm(5, 7, 70), 68, 2)
    assert v.represented
    assert v.witness is not None
    assert TernaryForm(5, 7, 70).evaluate(v.witness) % 2**v.depth == 68 % 2**v.depth

    v = is_locally_represented(TernaryForm(1, 1, 2), 14, 2)
    assert not v.represented and v.witness is None

    for p in (2, 3, 5, 11):
        assert is_locally_represented(TernaryForm(2, 3, 5, 1, -1, 2), 0, p).represented


def test_composite_p_rejected():
    with pytest.raises(ValueError):
        is_locally_represented(TernaryForm(1, 1, 2), 5, 6)
    with pytest.raises(ValueError):
        local_density(TernaryForm(1, 1, 2), 5, 9, 1)


def test_witness_invariant_on_grid():
    for coeffs in [(1, 1, 2), (1, 1, 16), (2, 2, 9, 2, -2, 0), (5, 7, 70)]:
        f = TernaryForm(*coeffs)
        for p in (2, 3, 5, 7):
            for n in range(0, 40):
                v = is_locally_represented(f, n, p)
                if v.represented:
                    pk = p**v.depth
                    assert f.evaluate(v.witness) % pk == n % pk


def test_eligible_examples():
    assert is_eligible(TernaryForm(1, 7, 14), 32)
    assert not is_eligible(TernaryForm(1, 1, 2), 14)
    assert not is_eligible(TernaryForm(1, 1, 1), 7)


def test_density_examples():
    assert local_density(TernaryForm(1, 1, 1), 1, 5, 1) == Fraction(6, 5)
    assert local_density(TernaryForm(1, 1, 2), 14, 2, 7) == 0
    # density of 0 always includes the zero vector
    assert local_density(TernaryForm(1, 2, 3), 0, 3, 2) >= Fraction(1, 3**4)


def test_density_against_naive_oracle():
    cases = [
        (TernaryForm(1, 1, 1), 1, 5, 1),
        (TernaryForm(1, 1, 2), 3, 2, 3),
        (TernaryForm(2, 2, 9, 2, -2, 0), 2, 3, 2),
        (TernaryForm(1, 2, 6), 5, 2, 2),
        (TernaryForm(1, 1, 16), 7, 3, 1),
    ]
    for f, n, p, k in cases:
        assert local_density(f, n, p, k) == naive_density(f, n, p, k)


def test_density_stabilization_small_grid():
    from qfrep.arith import padic_ord

    cases = [
        (TernaryForm(1, 1, 1), 2, 3),
        (TernaryForm(1, 1, 2), 14, 2),
        (TernaryForm(1, 1, 2), 7, 2),
        (TernaryForm(1, 2, 6), 5, 3),
        (TernaryForm(2, 3, 3), 4, 3),
        (TernaryForm(1, 1, 1), 4, 2),
    ]
    for f, n, p in cases:
        k = padic_ord(2 * f.disc(), p) + padic_ord(n, p) + 3
        if p**(k + 1) > 1024:
            continue
        assert local_density(f, n, p, k) == local_density(f, n, p, k + 1)


def test_represented_iff_stabilized_density_positive():
    from qfrep.arith import padic_ord

    for coeffs in [(1, 1, 2), (1, 2, 6), (2, 3, 3)]:
        f = TernaryForm(*coeffs)
        for p in (2, 3):
            for n in range(1, 25):
                k = padic_ord(2 * f.disc(), p) + padic_ord(n, p) + 3
                if p**k > 256:
                    continue
                dens = local_density(f, n, p, k)
                assert is_locally_represented(f, n, p).represented == (dens > 0)


def test_dickson_examples():
    assert dickson_exception_member((1, 2, 6), 5)
    assert dickson_exception_member((2, 3, 3), 1)
    assert dickson_exception_member((1, 1, 16), 7)
    assert dickson_exception_member((1, 1, 16), 6)
    assert dickson_exception_member((1, 1, 16), 12)
    assert dickson_exception_member((1, 1, 2), 14)
    assert not dickson_exception_member((1, 1, 2), 7)
    with pytest.raises(ValueError):
        dickson_exception_member((1, 2, 3), 5)


def test_local_global_consistency_on_regular_forms():
    """For each tabulated triple and all n <= 20000: brute
    non-representability, closed-form membership, and local ineligibility
    agree (these forms are regular)."""
    limit = 20000
    for triple in DICKSON:
        f = TernaryForm.diagonal(*triple)
        rep = represented_upto(f, limit)
        for n in range(limit + 1):
            member = dickson_exception_member(triple, n)
            assert member == (not rep[n]), (triple, n)
            assert member == (not is_eligible(f, n)), (triple, n)


def test_lemma41_targets():
    assert lemma41_target(1).value == 68
    assert lemma41_target(1).linear_constant == 1
    assert lemma41_target(3).value == 178
    assert lemma41_target(3).linear_constant == 4
    assert not lemma41_target(16).covered
    assert not lemma41_target(32).covered
    assert lemma41_target(8).value == 70 * 8 - 32


def test_lemma41_targets_are_eligible():
    f = TernaryForm(5, 7, 70)
    for n in range(1, 10001):
        t = lemma41_target(n)
        if t.covered:
            assert is_eligible(f, t.value), n


def test_spinor_bound_examples():
    assert spinor_genus_count_bound(TernaryForm(5, 7, 70)).verdict == "MustBeSingle"
    assert spinor_genus_count_bound(TernaryForm(1, 11, 55)).verdict == "MustBeSingle"
    assert spinor_genus_count_bound(TernaryForm(1, 26, 156)).verdict == "PossiblyMultiple"
    assert spinor_genus_count_bound(TernaryForm(1, 1, 32)).verdict == "PossiblyMultiple"
    # forms the single-spinor-genus arguments rely on
    assert spinor_genus_count_bound(TernaryForm(1, 11, 99)).verdict == "MustBeSingle"
    assert spinor_genus_count_bound(TernaryForm(1, 5, 30)).verdict == "MustBeSingle"
    assert spinor_genus_count_bound(TernaryForm(1, 7, 14)).verdict == "MustBeSingle"
