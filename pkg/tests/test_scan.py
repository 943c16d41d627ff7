import pytest

from qfrep.forms import DiagonalQuaternary
from qfrep.restrict import RestrictionSpec, Target
from qfrep.scan import (
    CrossCheckReport,
    ProblemIndex,
    ScanProblem,
    cross_check,
    find_restricted,
    scan_range,
)

FOUR_SQUARES = DiagonalQuaternary(1, 1, 1, 1)
SPEC_135_NAT = RestrictionSpec((1, 3, 5, 0), Target.squares(), "nat")


def brute_witness_exists(form, spec, n):
    """Independent oracle: full quadruple box search."""
    from math import isqrt

    w = form.weights()
    rng = []
    for i in range(4):
        b = isqrt(n // w[i]) if n else 0
        lo = 0 if spec.domain == "nat" else -b
        rng.append(range(lo, b + 1))
    for x in rng[0]:
        for y in rng[1]:
            for z in rng[2]:
                for v in rng[3]:
                    q = (x, y, z, v)
                    if form.evaluate(q) == n and spec.satisfied_by(q):
                        return True
    return False


def test_find_restricted_examples():
    d = find_restricted(FOUR_SQUARES, SPEC_135_NAT, 14)
    assert d.quadruple == (2, 3, 1, 0)
    assert d.linear_value == 16

    d = find_restricted(DiagonalQuaternary(1, 1, 1, 2),
                        RestrictionSpec((0, 1, 1, 1), Target.fixed(1), "int"), 1)
    assert d is not None
    assert d.form.evaluate(d.quadruple) == 1 and d.linear_value == 1

    assert find_restricted(FOUR_SQUARES,
                           RestrictionSpec((1, 3, 5, 0), Target.any_of([1, 4]), "int"),
                           0) is None


def test_find_restricted_against_brute_oracle():
    cases = [
        (FOUR_SQUARES, SPEC_135_NAT),
        (FOUR_SQUARES, RestrictionSpec((1, 3, 5, 0), Target.any_of([1, 4]), "int")),
        (DiagonalQuaternary(1, 1, 1, 2), RestrictionSpec((1, 2, 3, 0), Target.fixed(1), "int")),
        (DiagonalQuaternary(1, 1, 2, 3), RestrictionSpec((0, 1, 2, 1), Target.fixed(1), "int")),
        (DiagonalQuaternary(1, 1, 1, 2), RestrictionSpec((1, 1, 2, 2), Target.fixed(2), "int")),
    ]
    for form, spec in cases:
        for n in range(0, 40):
            got = find_restricted(form, spec, n)
            assert (got is not None) == brute_witness_exists(form, spec, n), (spec, n)
            if got is not None:
                assert form.evaluate(got.quadruple) == n
                assert spec.satisfied_by(got.quadruple)


def test_scan_examples():
    rep = scan_range(ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 0, 10000))
    assert rep.exceptions == ()
    assert rep.checked == 10001

    rep = scan_range(ScanProblem(DiagonalQuaternary(1, 1, 1, 2),
                                 RestrictionSpec((1, 2, 3, 0), Target.fixed(1), "int"),
                                 1, 100))
    assert rep.exceptions == ()  # the large-n guarantee already holds here

    # empty effective range: everything excluded by the pre-filter
    rep = scan_range(ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 0, 10,
                                 exclude=((2, (0, 1)),)))
    assert rep.exceptions == () and rep.checked == 0 and rep.excluded == 11


def test_scan_determinism_across_workers():
    problem = ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 0, 20000)
    outs = {scan_range(problem, workers=w).to_json() for w in (1, 4, 8)}
    assert len(outs) == 1


def test_scan_witnesses_are_validated_on_emit():
    rep = scan_range(ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 0, 9000))
    assert rep.witnesses
    for n, d in rep.witnesses.items():
        assert d.form.evaluate(d.quadruple) == n
        assert d.restriction.satisfied_by(d.quadruple)


def test_scan_prefilter():
    rep = scan_range(ScanProblem(FOUR_SQUARES,
                                 RestrictionSpec((1, 3, 5, 0), Target.any_of([1, 4]), "int"),
                                 0, 2000, exclude=((16, (0,)),)))
    assert all(n % 16 != 0 for n in rep.exceptions)
    assert rep.excluded == len([n for n in range(2001) if n % 16 == 0])


def test_monotone_target_property():
    # where the linear bound stays below 16, a power-of-four failure is an
    # anyof{1,4} failure as well: the reachable target values coincide
    pow4 = RestrictionSpec((1, 3, 5, 0), Target.powers_of_four(), "int")
    anyof = RestrictionSpec((1, 3, 5, 0), Target.any_of([1, 4]), "int")
    for n in range(0, 4):  # 9 * sqrt(n) < 16
        p = find_restricted(FOUR_SQUARES, pow4, n)
        a = find_restricted(FOUR_SQUARES, anyof, n)
        assert (p is None) == (a is None)


def test_problem_validation():
    with pytest.raises(ValueError):
        ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 5, 1)
    with pytest.raises(ValueError):
        ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 0, 10, exclude=((1, (0,)),))
    with pytest.raises(ValueError):
        scan_range(ScanProblem(FOUR_SQUARES, SPEC_135_NAT, 0, 10), workers=0)


def test_cross_check_examples():
    rep = cross_check("T11i_b", 1, 500)
    assert rep.consistent() and rep.successes == 500 and not rep.unavailable

    rep = cross_check("T12i", 1, 500)
    assert rep.consistent()
    assert rep.unavailable.get("not-covered") == len([n for n in range(1, 501) if n % 16 == 0])

    rep = cross_check("T12ii_23", 5, 4)
    assert isinstance(rep, CrossCheckReport) and rep.successes == 0 and rep.consistent()


def test_index_first_witness_is_deterministic():
    idx1 = ProblemIndex(FOUR_SQUARES, SPEC_135_NAT, 4096)
    idx2 = ProblemIndex(FOUR_SQUARES, SPEC_135_NAT, 4096)
    for n in (0, 5, 14, 99, 1000, 4095):
        a, b = idx1.witness(n), idx2.witness(n)
        assert (a is None) == (b is None)
        if a is not None:
            assert a.quadruple == b.quadruple
