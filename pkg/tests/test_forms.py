import random
from math import ceil, sqrt

import numpy as np
import pytest

from qfrep.forms import (
    DiagonalQuaternary,
    TernaryForm,
    automorphisms,
    discriminant,
    evaluate_ternary,
    matrix_det,
    matrix_mul,
    represent_all,
    represent_count,
    representation_counts,
    transform,
)


def brute_solutions(f, n):
    """Independent oracle: box search with a float eigenvalue radius."""
    q = np.array(f.gram(), dtype=float) / 2.0
    lam = min(np.linalg.eigvalsh(q))
    bound = int(ceil(sqrt(n / lam))) + 2 if n > 0 else 0
    out = []
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            for z in range(-bound, bound + 1):
                if f.evaluate((x, y, z)) == n:
                    out.append((x, y, z))
    return out


def test_evaluate_examples():
    assert evaluate_ternary(TernaryForm(1, 1, 2), (0, 0, 0)) == 0
    assert evaluate_ternary(TernaryForm(1, 1, 2), (2, 1, 1)) == 7
    assert evaluate_ternary(TernaryForm(2, 2, 9, 2, -2, 0), (1, 0, 0)) == 2


def test_discriminant_examples():
    assert discriminant(TernaryForm(1, 1, 2)) == 8
    assert discriminant(TernaryForm(5, 7, 70)) == 9800  # 4*5*7*70
    assert discriminant(TernaryForm(1, 4, 9, -4, 0, 0)) == 128


def test_discriminant_matches_determinant_oracle():
    rng = random.Random(7)
    made = 0
    while made < 50:
        coeffs = [rng.randint(1, 9), rng.randint(1, 9), rng.randint(1, 9),
                  rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)]
        try:
            f = TernaryForm(*coeffs)
        except ValueError:
            continue
        made += 1
        det = round(np.linalg.det(np.array(f.gram(), dtype=float)))
        assert f.disc() * 2 == det


def test_non_positive_definite_rejected():
    with pytest.raises(ValueError):
        TernaryForm(1, 1, -1)
    with pytest.raises(ValueError):
        TernaryForm(1, 1, 1, 0, 0, 5)  # 4ab - t^2 < 0


def test_represent_all_examples():
    f = TernaryForm(1, 1, 2)
    assert represent_all(f, 14) == []  # 14 is in the (1,1,2) exception set
    assert represent_all(f, 0) == [(0, 0, 0)]
    sols = represent_all(f, 7)
    assert len(sols) == 16
    assert set(sols) == {(sx * 2, sy * 1, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)} | \
                        {(sx * 1, sy * 2, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)}
    assert sols == sorted(sols)


def test_represent_count_examples():
    assert represent_count(TernaryForm(1, 1, 32), 2) == 4
    assert represent_count(TernaryForm(1, 4, 9, -4, 0, 0), 2) == 0
    assert represent_count(TernaryForm(3, 5, 11, 1, -2, 1), 0) == 1


@pytest.mark.parametrize("coeffs", [
    (1, 1, 2, 0, 0, 0),
    (2, 2, 9, 2, -2, 0),
    (1, 4, 9, -4, 0, 0),
    (2, 3, 5, 1, -1, 2),
    (1, 7, 14, 0, 0, 0),
])
def test_solutions_match_brute_oracle(coeffs):
    f = TernaryForm(*coeffs)
    for n in [0, 1, 2, 3, 7, 12, 25, 32, 49]:
        got = represent_all(f, n)
        assert got == sorted(brute_solutions(f, n))
        assert represent_count(f, n) == len(got)
        for v in got:
            assert f.evaluate(v) == n


def test_counts_sweep_matches_per_n():
    f = TernaryForm(2, 2, 9, 2, -2, 0)
    counts = representation_counts(f, 60)
    for n in range(61):
        assert counts[n] == represent_count(f, n)


def test_automorphism_orders():
    assert len(automorphisms(TernaryForm(1, 1, 1))) == 48
    assert len(automorphisms(TernaryForm(1, 1, 2))) == 16
    assert len(automorphisms(TernaryForm(1, 7, 14))) == 8


def test_automorphism_group_axioms():
    for f in [TernaryForm(1, 1, 2), TernaryForm(2, 2, 9, 2, -2, 0)]:
        auts = automorphisms(f)
        ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        neg = ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
        assert ident in auts and neg in auts
        aset = set(auts)
        for m in auts:
            assert matrix_det(m) in (1, -1)
            assert transform(f, m) == f
        rng = random.Random(5)
        for _ in range(30):
            m, p = rng.choice(auts), rng.choice(auts)
            assert matrix_mul(m, p) in aset


def test_solution_set_invariant_under_automorphisms():
    from qfrep.forms import apply_matrix
    f = TernaryForm(1, 1, 2)
    auts = automorphisms(f)
    sols = set(represent_all(f, 9))
    for m in auts:
        assert {apply_matrix(m, v) for v in sols} == sols


def test_quaternary_basics():
    q = DiagonalQuaternary(1, 1, 1, 2)
    assert q.evaluate((1, 2, 0, 3)) == 1 + 4 + 18
    assert DiagonalQuaternary.parse("1,1,3,4").weights() == (1, 1, 3, 4)
    with pytest.raises(ValueError):
        DiagonalQuaternary(1, 0, 1, 1)


def test_parse_literals():
    assert TernaryForm.parse("5,7,70").coeffs() == (5, 7, 70, 0, 0, 0)
    assert TernaryForm.parse("2,2,9,2,-2,0").coeffs() == (2, 2, 9, 2, -2, 0)
    with pytest.raises(ValueError):
        TernaryForm.parse("1,2")
