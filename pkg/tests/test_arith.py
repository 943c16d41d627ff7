import random

import pytest

from qfrep.arith import (
    check_input_range,
    factorize,
    is_prime,
    is_square,
    padic_ord,
    sqrt_exact,
    sqrt_mod_prime,
)


def test_is_square():
    squares = {k * k for k in range(200)}
    for n in range(10000):
        assert is_square(n) == (n in squares)
    assert not is_square(-4)
    assert sqrt_exact(49) == 7 and sqrt_exact(50) is None


def test_padic_ord():
    assert padic_ord(48, 2) == 4
    assert padic_ord(48, 3) == 1
    assert padic_ord(-9800, 7) == 2
    with pytest.raises(ValueError):
        padic_ord(0, 3)


def test_is_prime_against_sieve():
    limit = 5000
    sieve = [True] * (limit + 1)
    sieve[0] = sieve[1] = False
    for i in range(2, limit + 1):
        if sieve[i]:
            for j in range(i * i, limit + 1, i):
                sieve[j] = False
    for n in range(limit + 1):
        assert is_prime(n) == sieve[n], n
    assert is_prime(2**61 - 1)
    assert not is_prime(2**64 - 1)


def test_factorize():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 10**9)
        fac = factorize(n)
        prod = 1
        for p, e in fac.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n
    assert factorize(9800) == {2: 3, 5: 2, 7: 2}
    assert factorize(16224) == {2: 5, 3: 1, 13: 2}


def test_sqrt_mod_prime():
    for p in (3, 5, 7, 11, 13, 17, 101, 97):
        residues = {(x * x) % p for x in range(p)}
        for a in range(p):
            r = sqrt_mod_prime(a, p)
            if a in residues:
                assert r is not None and r * r % p == a
            else:
                assert r is None


def test_input_range():
    check_input_range(2**62, -(2**62))
    with pytest.raises(ValueError):
        check_input_range(2**63)
