"""Reduction and Z-equivalence of positive ternary forms, enumeration of
classes of a given discriminant, genus partition by local invariants, and
class-weighted representation averages.

The canonical representative of a class is the lexicographically smallest
Gram tuple (a,b,c,r,s,t) over all bases whose vectors realize the three
successive minima with |det| = 1.  In rank 3 such a basis always exists, so
this is a complete, deterministic canonicalization; it satisfies the classical
reduction inequalities 0 < a <= b <= c, |r| <= b, |s| <= a, |t| <= a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize
from .forms import (
    Matrix3,
    TernaryForm,
    automorphisms,
    matrix_det,
    representation_counts,
    represent_all,
    transform,
)
from .padic import odd_prime_symbol, two_adic_shape

DEFAULT_DISC_BOUND = 25000


@dataclass(frozen=True)
class CanonicalForm:
    form: TernaryForm
    transform: Matrix3  # columns are the chosen basis vectors: form = f o M


@dataclass(frozen=True)
class GenusRecord:
    discriminant: int
    classes: tuple[TernaryForm, ...]
    aut_orders: tuple[int, ...]
    spinor_partition: tuple[tuple[int, ...], ...] | None


def _successive_minima(f: TernaryForm):
    """(values, pools) of the three successive minima of f."""
    vecs: list = []
    minima: list[int] = []
    rank = 0
    n = 0
    while rank < 3:
        n += 1
        sols = represent_all(f, n)
        if not sols:
            continue
        vecs.extend(sols)
        new_rank = np.linalg.matrix_rank(np.array(vecs, dtype=np.int64))
        while rank < new_rank:
            minima.append(n)
            rank += 1
    pools = [represent_all(f, m) for m in minima]
    return minima, pools


_reduce_cache: dict = {}


def reduce_form(f: TernaryForm) -> CanonicalForm:
    """Deterministic canonical representative of the class of f, plus the
    unimodular basis matrix that produces it."""
    key = f.coeffs()
    if key in _reduce_cache:
        return _reduce_cache[key]
    (l1, l2, l3), (pool1, pool2, pool3) = _successive_minima(f)
    gram = np.array(f.gram(), dtype=np.int64)
    p1 = np.array(pool1, dtype=np.int64)
    p2 = np.array(pool2, dtype=np.int64)
    p3 = np.array(pool3, dtype=np.int64)
    b23 = p2 @ gram @ p3.T
    b13 = p1 @ gram @ p3.T
    b12 = p1 @ gram @ p2.T
    best = None
    best_cols = None
    for i1 in range(len(p1)):
        for i2 in range(len(p2)):
            cross = np.cross(p1[i1], p2[i2])
            if not cross.any():
                continue
            dets = p3 @ cross
            for i3 in np.nonzero(np.abs(dets) == 1)[0]:
                tup = (int(b23[i2, i3]), int(b13[i1, i3]), int(b12[i1, i2]))
                if best is None or tup < best:
                    best = tup
                    best_cols = (p1[i1], p2[i2], p3[int(i3)])
    if best is None:
        raise AssertionError("no minima basis found; rank-3 theorem violated")
    r, s, t = best
    canon = TernaryForm(l1, l2, l3, r, s, t)
    cols = best_cols
    m: Matrix3 = tuple(tuple(int(cols[j][i]) for j in range(3)) for i in range(3))  # type: ignore
    out = CanonicalForm(canon, m)
    if len(_reduce_cache) > 50_000:
        _reduce_cache.clear()
    _reduce_cache[key] = out
    return out


def is_equivalent(f: TernaryForm, g: TernaryForm) -> bool:
    if f.disc() != g.disc():
        return False
    return reduce_form(f).form == reduce_form(g).form


_class_cache: dict = {}


def enumerate_classes(d: int, bound: int = DEFAULT_DISC_BOUND) -> list[TernaryForm]:
    """One canonical representative per Z-class of positive ternary forms of
    discriminant d, by exhaustive search over the reduced coefficient box
    (a <= b <= c, |t| <= a, |s| <= a, |r| <= b, abc <= d; c is solved from
    the discriminant equation)."""
    if d < 1:
        raise ValueError("discriminant must be positive")
    if d > bound:
        raise ValueError(f"discriminant {d} exceeds the enumeration bound {bound}")
    if d in _class_cache:
        return list(_class_cache[d])
    found: set = set()
    a = 1
    while a * a * a <= d:
        b = a
        while a * b * b <= d:
            rs = np.arange(-b, b + 1, dtype=np.int64)
            ss = np.arange(-a, a + 1, dtype=np.int64)
            ts = np.arange(-a, a + 1, dtype=np.int64)
            r3 = rs[:, None, None]
            s3 = ss[None, :, None]
            t3 = ts[None, None, :]
            den = 4 * a * b - t3 * t3
            num = d + a * r3 * r3 + b * s3 * s3 - r3 * s3 * t3
            c3 = num // den
            ok = (num % den == 0) & (c3 >= b)
            for ri, si, ti in zip(*np.nonzero(ok)):
                form = TernaryForm(a, b, int(c3[ri, si, ti]), int(rs[ri]), int(ss[si]), int(ts[ti]))
                found.add(reduce_form(form).form)
            b += 1
        a += 1
    classes = sorted(found, key=lambda g: g.coeffs())
    for g in classes:
        assert g.disc() == d
    _class_cache[d] = tuple(classes)
    return classes


def _count_vector(f: TernaryForm, m: int) -> tuple:
    """#{v mod m : f(v) = j mod m} for all j, vectorized."""
    a, b, c, r, s, t = (v % m for v in f.coeffs())
    idx = np.arange(m, dtype=np.int64)
    xs, ys = idx[:, None], idx[None, :]
    base = (a * xs * xs + b * ys * ys + t * xs * ys) % m
    counts = np.zeros(m, dtype=np.int64)
    for z in range(m):
        vals = (base + (c * z * z) % m + (r * z) * ys + (s * z) * xs) % m
        counts += np.bincount(vals.ravel(), minlength=m)
    return tuple(int(v) for v in counts)


_signature_cache: dict = {}


def local_signature(f: TernaryForm) -> tuple:
    """Genus-separating local data: exact Jordan symbols at odd primes; at
    p = 2 the scale/dimension/parity shape plus solution-count fingerprints
    modulo 2^j for j up to min(ord_2(2d) + 3, 8)."""
    canon = reduce_form(f).form
    key = canon.coeffs()
    if key in _signature_cache:
        return _signature_cache[key]
    d = canon.disc()
    gram = canon.gram()
    sig = [d]
    for p, e in sorted(factorize(2 * d).items()):
        if p == 2:
            depth = min(e + 3, 8)
            prints = tuple(_count_vector(canon, 2**j) for j in range(1, depth + 1))
            sig.append(("two", two_adic_shape(gram, key), prints))
        else:
            sig.append(("odd", p, odd_prime_symbol(gram, key, p)))
    out = tuple(sig)
    _signature_cache[key] = out
    return out


_SPINOR_128 = (
    ((1, 1, 32, 0, 0, 0), (2, 2, 9, 2, -2, 0)),
    ((1, 4, 9, -4, 0, 0),),
)


def genus_of(f: TernaryForm, bound: int = DEFAULT_DISC_BOUND) -> GenusRecord:
    """Classes of the genus of f, with automorphism orders; the spinor
    partition is populated from the built-in discriminant-128 table only."""
    d = f.disc()
    classes = enumerate_classes(d, bound)
    mine = local_signature(f)
    members = [g for g in classes if local_signature(g) == mine]
    canon = reduce_form(f).form
    assert canon in members, "form missing from its own genus enumeration"
    aut_orders = tuple(len(automorphisms(g)) for g in members)
    partition = None
    if d == 128:
        idx: list[tuple[int, ...]] = []
        matched = True
        for part in _SPINOR_128:
            part_idx = []
            for coeffs in part:
                rep = reduce_form(TernaryForm(*coeffs)).form
                if rep in members:
                    part_idx.append(members.index(rep))
                else:
                    matched = False
            idx.append(tuple(part_idx))
        if matched and sum(len(q) for q in idx) == len(members):
            partition = tuple(idx)
    return GenusRecord(d, tuple(members), aut_orders, partition)


def weighted_average(classes: list[tuple[TernaryForm, int]], n: int) -> Fraction:
    """Automorphism-weighted average of representation counts over a set of
    classes: (sum r(f_i,n)/|Aut_i|) / (sum 1/|Aut_i|), exact."""
    if not classes:
        raise ValueError("empty class list")
    if any(aut <= 0 for _, aut in classes):
        raise ValueError("automorphism orders must be positive")
    num = sum(Fraction(int(representation_counts(g, n)[n]), aut) for g, aut in classes)
    den = sum(Fraction(1, aut) for _, aut in classes)
    return num / den


def weighted_average_range(classes: list[tuple[TernaryForm, int]], limit: int) -> list[Fraction]:
    """weighted_average for every n in [0, limit], via one counting sweep
    per class."""
    if not classes:
        raise ValueError("empty class list")
    den = sum(Fraction(1, aut) for _, aut in classes)
    sweeps = [(representation_counts(g, limit), aut) for g, aut in classes]
    out = []
    for n in range(limit + 1):
        num = sum(Fraction(int(counts[n]), aut) for counts, aut in sweeps)
        out.append(num / den)
    return out
