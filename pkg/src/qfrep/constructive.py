"""Deterministic constructions of restricted four-square decompositions.

Each routine realizes one constructive argument: solve a diagonal ternary
precursor equation, normalize signs and residues of the solution into the
stated congruence classes, then apply an explicit algebraic identity that
produces the quadruple together with its linear-restriction value.

The precursor solutions are scanned in lexicographic order and the first
triple whose sign/residue orbit admits the normalization is used, so every
construction is reproducible and carries a replayable trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .forms import DiagonalQuaternary, Quadruple, Triple
from .local import lemma41_target
from .restrict import RestrictionSpec, Target


class NormalizationFailed(RuntimeError):
    """The scan exhausted a precursor solution set that the underlying
    argument guarantees to contain a normalizable triple; indicates a
    transcription bug, never an expected outcome."""


@dataclass(frozen=True)
class Unavailable:
    variant: str
    n: int
    stage: str  # "precursor" | "normalization" | "not-covered"


@dataclass(frozen=True)
class Decomposition:
    variant: str
    n: int
    quadruple: Quadruple
    form: DiagonalQuaternary
    restriction: RestrictionSpec
    linear_value: int
    trace: tuple[tuple[str, object], ...]


@dataclass(frozen=True)
class LemmaWitness:
    lemma: str
    n: int
    value: int  # the represented target, e.g. 88n-11
    weights: tuple[int, int, int]
    triple: Triple
    trace: tuple[tuple[str, object], ...]


# ---------------------------------------------------------------------------
# lexicographic scan of w1 x^2 + w2 y^2 + w3 z^2 = m


def _pairs(w2: int, w3: int, rem: int) -> list[tuple[int, int]]:
    """All (y, z) with w2 y^2 + w3 z^2 = rem, sorted lexicographically."""
    if rem < 0:
        return []
    out = []
    # iterate the heavier variable: smaller range
    heavy_is_z = w3 >= w2
    wh, wl = (w3, w2) if heavy_is_z else (w2, w3)
    kb = isqrt(rem // wh)
    if kb > 48:
        ks = np.arange(kb + 1, dtype=np.int64)
        q = rem - wh * ks * ks
        qd, qm = np.divmod(q, wl)
        root = np.rint(np.sqrt(qd.astype(np.float64))).astype(np.int64)
        sel = np.nonzero((qm == 0) & (root * root == qd))[0]
        hits = [(int(k), int(root[k])) for k in sel]
    else:
        hits = []
        for k in range(kb + 1):
            q = rem - wh * k * k
            j, r = divmod(q, wl)
            if r:
                continue
            root = isqrt(j)
            if root * root == j:
                hits.append((k, root))
    for k, j in hits:
        y, z = (j, k) if heavy_is_z else (k, j)
        for yy in ((0,) if y == 0 else (-y, y)):
            for zz in ((0,) if z == 0 else (-z, z)):
                out.append((yy, zz))
    out.sort()
    return out


def iter_diagonal_lex(weights: tuple[int, int, int], m: int):
    """Solutions of w1 x^2 + w2 y^2 + w3 z^2 = m in lexicographic order."""
    w1, w2, w3 = weights
    if m < 0:
        return
    xb = isqrt(m // w1)
    for x in range(-xb, xb + 1):
        for y, z in _pairs(w2, w3, m - w1 * x * x):
            yield (x, y, z)


def _sign_with(value: int, pred) -> int | None:
    for cand in (value, -value):
        if pred(cand):
            return cand
    return None


def rewrite_both_odd(m: int) -> tuple[int, int]:
    """m = a^2 + 7 b^2 with a, b odd, for m > 0 divisible by 8 and already
    of the form u^2 + 7 v^2; exhaustive search over b."""
    if m <= 0 or m % 8 != 0:
        raise ValueError("rewrite_both_odd needs m > 0 with 8 | m")
    b = 1
    while 7 * b * b <= m:
        q = m - 7 * b * b
        a = isqrt(q)
        if a * a == q and a % 2 == 1:
            return a, b
        b += 2
    raise ValueError(f"{m} admits no both-odd a^2 + 7 b^2 decomposition")


def rewrite_coprime3(m: int) -> tuple[int, int]:
    """m = a^2 + 5 b^2 with 3 dividing neither a nor b, for m > 0 divisible
    by 3 and already of that shape; exhaustive search over b."""
    if m <= 0 or m % 3 != 0:
        raise ValueError("rewrite_coprime3 needs m > 0 with 3 | m")
    b = 1
    while 5 * b * b <= m:
        if b % 3 != 0:
            q = m - 5 * b * b
            a = isqrt(q)
            if a * a == q and a % 3 != 0 and a > 0:
                return a, b
        b += 1
    raise ValueError(f"{m} admits no 3-coprime a^2 + 5 b^2 decomposition")


# ---------------------------------------------------------------------------
# lemma constructions: (weights, target, normalize); normalize returns an
# ordered trace (list of named values) plus the output triple, or None when
# the scanned precursor solution cannot be normalized.


def _norm_l31(n: int, triple: Triple):
    a0, b0, c = triple
    if a0 % 2 == 0 or b0 % 2 == 0:
        return None
    a = _sign_with(a0, lambda v: v % 4 == 1)
    want = ((3 * a - 1) // 2) % 4
    b = _sign_with(b0, lambda v: v % 4 == want)
    if b is None:
        return None
    x, y, z = 3 * a - 2 * b, (a + 3 * b) // 2, c
    return [("a", a), ("b", b), ("c", c)], (x, y, z)


def _norm_l32(n: int, triple: Triple):
    a0, b, c = triple
    if a0 % 2 == 0:
        return None
    want = 3 if b % 2 == 0 else 1
    a = _sign_with(a0, lambda v: v % 4 == want)
    return [("a", a), ("b", b), ("c", c)], (6 * a - 4 * b, a + 3 * b, 2 * c)


def _norm_l33(n: int, triple: Triple):
    a, b, c = triple
    if a % 2 == 0:
        return None
    if (2 * a - b) % 4 != 0:
        return None
    return [("a", a), ("b", b), ("c", c)], (a + 2 * b, (2 * a - b) // 4, c)


def _norm_l34(n: int, triple: Triple):
    a, b, c = triple
    return [("a", a), ("b", b), ("c", c)], (3 * a - 6 * c, a + 3 * c, b)


def _norm_l42(n: int, triple: Triple):
    a, b, c = triple
    p1, p2 = 2 * a + b, a - 2 * b
    if p1 % 4 == 0:
        x, y = p2, p1 // 4
    elif p2 % 4 == 0:
        x, y = p1, p2 // 4
    else:
        return None
    return [("a", a), ("b", b), ("c", c)], (x, y, c)


LEMMAS = {
    "L31": ((1, 2, 4), lambda n: 8 * n - 1, (1, 8, 44), lambda n: 88 * n - 11, _norm_l31),
    "L32": ((1, 2, 4), lambda n: 2 * n - 1, (1, 8, 44), lambda n: 88 * n - 44, _norm_l32),
    "L33": ((1, 1, 16), lambda n: 16 * n - 3, (1, 16, 80), lambda n: 80 * n - 15, _norm_l33),
    "L34": ((1, 2, 6), lambda n: 8 * n - 1, (1, 6, 30), lambda n: 120 * n - 15, _norm_l34),
    "L42": ((1, 1, 32), lambda n: 16 * n - 3, (1, 16, 160), lambda n: 80 * n - 15, _norm_l42),
}


def _l35(n: int) -> LemmaWitness:
    """56n-24 = x^2 + 7y^2 + 56z^2 with x, y odd, via the two-class genus
    transfer and the both-odd rewrite."""
    m = 56 * n - 24
    trace: list[tuple[str, object]] = []
    sol = next(iter_diagonal_lex((1, 7, 14), m), None)
    if sol is not None:
        u, v, w = sol
        trace.append(("route", "direct"))
        trace.append(("precursor", sol))
    else:
        alt = next(iter_diagonal_lex((2, 7, 7), m), None)
        if alt is None:
            raise NormalizationFailed(f"{m} represented by neither genus class")
        gx, gy, gz = alt
        for cy, cz in ((gy, gz), (gy, -gz), (-gy, gz), (-gy, -gz),
                       (gz, gy), (gz, -gy), (-gz, gy), (-gz, -gy)):
            if (cy - cz) % 4 == 0:
                break
        else:
            raise NormalizationFailed("transfer parity normalization failed")
        u = (2 * gx - 7 * cy - 7 * cz) // 4
        v = (2 * gx + cy + cz) // 4
        w = (cz - cy) // 2
        if u * u + 7 * v * v + 14 * w * w != m:
            raise NormalizationFailed("genus transfer identity failed")
        trace.append(("route", "transfer"))
        trace.append(("precursor", alt))
        trace.append(("transfer", (u, v, w)))
    if w % 2 != 0:
        raise NormalizationFailed("third coordinate of the (1,7,14) solution must be even")
    c = w // 2
    a, b = rewrite_both_odd(m - 56 * c * c)
    trace += [("rewrite", (a, b)), ("c", c)]
    if a * a + 7 * b * b + 56 * c * c != m:
        raise NormalizationFailed("both-odd rewrite broke the target")
    return LemmaWitness("L35", n, m, (1, 7, 56), (a, b, c), tuple(trace))


def construct_lemma(lemma: str, n: int) -> LemmaWitness | Unavailable:
    """Triple realizing the lemma target with its congruence side
    conditions; Unavailable("precursor") only for L42 at small n."""
    if n < 1:
        raise ValueError("n must be positive")
    if lemma == "L35":
        return _l35(n)
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}")
    pre_w, pre_t, out_w, out_t, norm = LEMMAS[lemma]
    m = pre_t(n)
    target = out_t(n)
    seen = False
    for triple in iter_diagonal_lex(pre_w, m):
        seen = True
        got = norm(n, triple)
        if got is None:
            continue
        named, out = got
        if sum(w * v * v for w, v in zip(out_w, out)) != target:
            raise NormalizationFailed(f"{lemma}: identity failed on {triple}")
        trace = (("precursor", triple),) + tuple(named)
        return LemmaWitness(lemma, n, target, out_w, out, trace)
    if lemma == "L42" and not seen:
        return Unavailable(lemma, n, "precursor")
    raise NormalizationFailed(f"{lemma}: no precursor solution normalized for n={n}")


def validate_lemma(w: LemmaWitness) -> bool:
    """Re-run the lemma pipeline from the recorded precursor and re-check
    the target equation and side conditions."""
    x, y, z = w.triple
    if sum(c * v * v for c, v in zip(w.weights, w.triple)) != w.value:
        return False
    if w.lemma == "L31" and x % 8 != 1:
        return False
    if w.lemma == "L32" and x % 8 != 2:
        return False
    if w.lemma == "L35" and (x % 2 == 0 or y % 2 == 0):
        return False
    if w.lemma == "L35":
        return w.value == 56 * w.n - 24
    pre_w, pre_t, _, out_t, norm = LEMMAS[w.lemma]
    tr = dict(w.trace)
    triple = tr["precursor"]
    if sum(c * v * v for c, v in zip(pre_w, triple)) != pre_t(w.n):
        return False
    got = norm(w.n, triple)
    return got is not None and got[1] == w.triple and out_t(w.n) == w.value


# ---------------------------------------------------------------------------
# theorem variants


@dataclass(frozen=True)
class Variant:
    name: str
    family: str  # "T1.1" always succeeds; "T1.2" may be Unavailable
    form: DiagonalQuaternary
    restriction: RestrictionSpec
    precursor: tuple[int, int, int]
    target: object  # callable n -> int
    normalize: object  # callable (n, triple) -> (trace list, quadruple, linear) | None


def _t11i_a(n, triple):
    r, s, t = triple
    if r % 2 or s % 2 or t % 2 == 0:
        return None
    rh = _sign_with(r // 2, lambda v: v % 3 == 1)
    t1 = _sign_with(t, lambda v: v % 4 == 3)
    u = (rh - 1) // 3
    x, z = s // 2, (t1 + 1) // 4
    quad = (x, 1 - z + 2 * u, z, -z - u)
    return [("r", 2 * rh), ("s", s), ("t", t1), ("u", u), ("x", x), ("z", z)], quad


def _t11i_b(n, triple):
    r1_0, y8_0, r2 = triple
    if r1_0 % 8 not in (1, 7) or r2 % 2 == 0:
        return None
    r1 = _sign_with(r1_0, lambda v: v % 8 == 1)
    y8 = _sign_with(y8_0, lambda v: (v - 2 * r1) % 11 == 0)
    if y8 is None:
        return None
    s, t = y8 % 11, (y8 - y8 % 11) // 11
    if s <= 6:
        u, s_star, abc = (r2 + 1) // 2, 33 - 16 * s, (1, s - 2, 2 - s)
    else:
        u, s_star, abc = (r2 + 3) // 2, 121 - 16 * s, (3, s - 8, 7 - s)
    if (r1 - s_star) % 88:
        return None
    v = (r1 - s_star) // 88
    a, b, c = abc
    quad = (a + 2 * t - u + v, 2 * t + u + v, b - t - 6 * v, c - t + 5 * v)
    return [("r1", r1), ("y8", y8), ("r2", r2), ("s", s), ("t", t),
            ("u", u), ("v", v), ("branch", "low" if s <= 6 else "high")], quad


def _t11i_c(n, triple):
    r1_0, y8_0, r2 = triple
    if r1_0 % 8 not in (2, 6) or r2 % 2:
        return None
    r1 = _sign_with(r1_0, lambda v: v % 8 == 2)
    y8 = _sign_with(y8_0, lambda v: (v - 2 * r1) % 11 == 0)
    if y8 is None:
        return None
    s, t = y8 % 11, (y8 - y8 % 11) // 11
    u = r2 // 2
    if (r1 + 16 * s + 22) % 88:
        return None
    v = (r1 + 16 * s + 22) // 88
    quad = (2 * t - u + v, 2 * t + u + v, 2 + s - t - 6 * v, -1 - s - t + 5 * v)
    return [("r1", r1), ("y8", y8), ("r2", r2), ("s", s), ("t", t),
            ("u", u), ("v", v)], quad


def _t11ii_l1(n, triple):
    r1_0, r2_0, x = triple
    if r1_0 % 2 == 0:
        return None
    r1 = _sign_with(r1_0, lambda v: v % 8 == 1)
    if r1 is None:
        return None
    r2 = _sign_with(r2_0, lambda v: (v + 2 * r1) % 5 == 0)
    if r2 is None:
        return None
    s, t = r2 % 5, (r2 - r2 % 5) // 5
    par = -1 if s % 2 else 1
    if r1 % 16 == 1:
        s_star = 5 - par * 20 - 8 * s
        abc = (0, -s // 2, 1 + s // 2) if s % 2 == 0 else (1, (1 - s) // 2, (s - 3) // 2)
        if (r1 - s_star) % 80:
            return None
        v = (r1 - s_star) // 80
        a, b, c = abc
        quad = (x, a + t + 2 * v, b - 2 * t + v, c - 5 * v)
        branch = "r1=1(16)"
    else:
        s_star = 5 + par * 20 - 8 * s
        abc = (1, s // 2 - 2, 1 - s // 2) if s % 2 == 0 else (0, (s + 3) // 2, -(s + 1) // 2)
        if (r1 - s_star) % 80:
            return None
        v = (r1 - s_star) // 80
        a, b, c = abc
        quad = (x, a + t + 2 * v, b - t - 7 * v, c - t + 3 * v)
        branch = "r1=9(16)"
    return [("r1", r1), ("r2", r2), ("x", x), ("s", s), ("t", t), ("v", v),
            ("branch", branch)], quad


def _t11ii_l3(n, triple):
    r0_0, r1_0, r2 = triple
    if r0_0 % 2 == 0 or r0_0 % 3 != 0 or r1_0 % 2 or r2 % 2:
        return None
    r0 = _sign_with(r0_0, lambda v: v % 4 == 3)
    r1 = _sign_with(r1_0, lambda v: (v // 2 - r0) % 5 == 0 if v % 2 == 0 else False)
    if r1 is None:
        return None
    half = r1 // 2
    s = half % 5
    t = (half - s) // 5
    x = r2 // 2
    if r0 % 8 == 7:
        s_sharp = -24 * s + 15 if s <= 2 else -24 * s + 135
        if (r0 - s_sharp) % 120:
            return None
        v = (r0 - s_sharp) // 120
        a, b, c = (1 - s, 2 * s - 1, 0) if s <= 2 else (7 - s, 2 * s - 10, -1)
        quad = (x, a + t + 6 * v, b + t - 9 * v, c - t - v)
        branch = "r0=-1(8)"
    else:
        s_sharp = -45 if s == 0 else -24 * s + 75
        if (r0 - s_sharp) % 120:
            return None
        v = (r0 - s_sharp) // 120
        a, b, c = (-2, -1, 2) if s == 0 else (4 - s, 2 - s, s - 3)
        quad = (x, a + t + 6 * v, b - 2 * t + 3 * v, c - 5 * v)
        branch = "r0=3(8)"
    return [("r0", r0), ("r1", r1), ("r2", r2), ("s", s), ("t", t), ("v", v),
            ("x", x), ("branch", branch)], quad


def _t11iii_a(n, triple):
    r0, s0, x = triple
    if r0 % 2 == 0 or s0 % 2:
        return None
    r = _sign_with(r0, lambda v: v % 6 == 1)
    s = _sign_with(s0, lambda v: v % 6 == 2)
    if r is None or s is None:
        return None
    w = (1 - r) // 6
    v = (2 - s) // 6
    quad = (x, 1 - 2 * v - w, v - w, w)
    return [("r", r), ("s", s), ("x", x), ("v", v), ("w", w)], quad


def _t11iii_b(n, triple):
    r0_0, r1_0, x = triple
    if r0_0 % 2 == 0 or r1_0 % 2 == 0:
        return None
    r0 = _sign_with(r0_0, lambda v: v % 7 == 2)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (v + r0) % 4 == 0)
    s = ((r1 + 3) % 8) - 3
    t = (r1 - s) // 8
    r_off = 7 * s - 12 if s in (-1, 1) else (-7 * s) // 3 + 16
    if (r0 - r_off) % 56:
        return None
    v = (r0 - r_off) // 56
    if s in (-1, 1):
        a, b, c = -(s - 3) // 2, (s - 1) // 2, 0
    else:
        a, b, c = s // 3 - 1, 1, -(s - 3) // 6
    quad = (x, a + t - 5 * v, b + t + 3 * v, c - t + v)
    return [("r0", r0), ("r1", r1), ("x", x), ("s", s), ("t", t), ("v", v)], quad


def _t12i(n, triple):
    tgt = lemma41_target(n)
    const = tgt.linear_constant
    r0_0, r1_0, w = triple
    if const == 1:
        r0 = _sign_with(r0_0, lambda v: v % 7 == 1)
        r1 = _sign_with(r1_0, lambda v: v % 5 == 2)
        if r0 is None or r1 is None or (r0 - r1) % 2:
            return None
        if r0 % 2:
            u, v = (r0 - 1) // 14, (r1 + 3) // 10
            if r0 % 14 != 1 or r1 % 10 != 7:
                return None
            x, y, z = 1 + u - 3 * v, 3 * u + v, -2 * u
            branch = "r0=1(14)"
        else:
            if r0 % 14 != 8 or r1 % 10 != 2:
                return None
            u, v = (r0 - 8) // 14, (r1 - 2) // 10
            x, y, z = u - 3 * v, 2 + 3 * u + v, -1 - 2 * u
            branch = "r0=8(14)"
    else:
        r0 = _sign_with(r0_0, lambda v: v % 7 == 4)
        r1 = _sign_with(r1_0, lambda v: v % 5 == 3)
        if r0 is None or r1 is None or (r0 - r1) % 2:
            return None
        if r0 % 2 == 0:
            if r0 % 14 != 4 or r1 % 10 != 8:
                return None
            u, v = (r0 - 4) // 14, (r1 + 2) // 10
            x, y, z = 1 + u - 3 * v, 1 + 3 * u + v, -2 * u
            branch = "r0=4(14)"
        else:
            if r0 % 14 != 11 or r1 % 10 != 3:
                return None
            u, v = (r0 + 3) // 14, (r1 - 3) // 10
            x, y, z = -1 + u - 3 * v, 3 * u + v, 1 - 2 * u
            branch = "r0=-3(14)"
    quad = (x, y, z, w)
    return [("target", 70 * n - 2 if const == 1 else 70 * n - 32), ("const", const),
            ("r0", r0), ("r1", r1), ("w", w), ("u", u), ("v", v), ("branch", branch)], quad


def _t12ii_23(n, triple):
    r0_0, r1_0, w = triple
    if r1_0 % 2 == 0:
        return None
    r0 = _sign_with(r0_0, lambda v: v % 7 == 3)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (v + r0) % 3 == 0)
    if r1 is None:
        return None
    half = (r1 - 1) // 2
    s = half % 3
    t = (half - s) // 3
    if (r0 - 7 * s + 4) % 21:
        return None
    v = (r0 - 7 * s + 4) // 21
    quad = (1 - s + t - 4 * v, -s - 2 * t - v, s + t + 2 * v, w)
    return [("r0", r0), ("r1", r1), ("w", w), ("s", s), ("t", t), ("v", v)], quad


def _t12ii_25(n, triple):
    r0_0, r1_0, w = triple
    r0 = _sign_with(r0_0, lambda v: v % 6 == 1)
    r1 = _sign_with(r1_0, lambda v: v % 5 == 2)
    if r0 is None or r1 is None:
        return None
    u, v = (r0 - 1) // 6, (r1 - 2) // 5
    quad = (1 + u + 2 * v, 2 * u - v, -u, w)
    return [("r0", r0), ("r1", r1), ("w", w), ("u", u), ("v", v)], quad


def _t12ii_34(n, triple):
    r0_0, r1_0, w = triple
    r0 = _sign_with(r0_0, lambda v: v % 13 == 7)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (v - r0) % 3 == 0)
    if r1 is None:
        return None
    s = ((2 * (r1 - 1) + 1) % 3) - 1
    t = (r1 - 1 - 2 * s) // 3
    if (r0 - 26 * s - 7) % 78:
        return None
    u = (r0 - 26 * s - 7) // 78
    quad = (1 + 3 * s + t + 7 * u, -s + t - 5 * u, -t + 2 * u, w)
    return [("r0", r0), ("r1", r1), ("w", w), ("s", s), ("t", t), ("u", u)], quad


def _t12ii_2yzw(n, triple):
    r0_0, r1_0, x = triple
    r0 = _sign_with(r0_0, lambda v: v % 11 == 10)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (v - 2 * r0) % 5 == 0)
    if r1 is None:
        return None
    s = r1 % 5
    t = (r1 - s) // 5
    if (r0 + 22 * s - 10) % 55:
        return None
    v = (r0 + 22 * s - 10) // 55
    a, b, c = s, 0, 1 - 2 * s
    quad = (x, a + t - 2 * v, b - 2 * t - v, c + 5 * v)
    return [("r0", r0), ("r1", r1), ("x", x), ("s", s), ("t", t), ("v", v)], quad


def _t12iii_x2yw(n, triple):
    r0_0, r1_0, z = triple
    if r0_0 % 2 == 0:
        return None
    r0 = _sign_with(r0_0, lambda v: v % 8 == 1)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (v - 2 * r0) % 5 == 0)
    if r1 is None:
        return None
    s = ((r1 + 1) % 5) - 1
    t = (r1 - s) // 5
    par = -1 if s % 2 else 1
    r_off = 5 + par * 20 + 8 * s
    if (r0 - r_off) % 80:
        return None
    u = (r0 - r_off) // 80
    if s % 2:
        a, b, c = (3 - s) // 2, 0, (s - 1) // 2
    else:
        a, b, c = -2 - s // 2, 1, 1 + s // 2
    quad = (a + t - 7 * u, b - t + 2 * u, z, c + t + 3 * u)
    return [("r0", r0), ("r1", r1), ("z", z), ("s", s), ("t", t), ("u", u)], quad


def _t12iii_yzw(n, triple):
    r0_0, r1_0, x = triple
    r0 = _sign_with(r0_0, lambda v: v % 11 == 1)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (r0 - 5 * (v % 9)) % 9 == 0)
    if r1 is None:
        return None
    s = r1 % 9
    t = (r1 - s) // 9
    s0 = 45 if s <= 4 else 144
    if (r0 + 22 * s - s0) % 99:
        return None
    u = (r0 + 22 * s - s0) // 99
    a, b, c = (1, s - 2, 2 - s) if s <= 4 else (2, s - 7, 6 - s)
    quad = (x, a + 2 * t + u, b - t - 5 * u, c - t + 4 * u)
    return [("r0", r0), ("r1", r1), ("x", x), ("s", s), ("t", t), ("u", u),
            ("branch", "s<=4" if s <= 4 else "s>4")], quad


def _t12iii_y2zw(n, triple):
    r0_0, r1_0, x = triple
    if (r0_0 * r1_0) % 3 == 0:
        try:
            r0_0, r1_0 = rewrite_coprime3(r0_0 * r0_0 + 5 * r1_0 * r1_0)
        except ValueError:
            return None
    r0 = _sign_with(r0_0, lambda v: v % 5 == 1)
    if r0 is None:
        return None
    r1 = _sign_with(r1_0, lambda v: (v + r0) % 3 == 0)
    if r1 is None:
        return None
    raw = r1 % 6
    s = raw if raw <= 2 else raw - 6
    t = (r1 - s) // 6
    s0 = 6 - 10 * s if s in (-1, 1) else -9 + 5 * s
    if (r0 - s0) % 30:
        return None
    u = (r0 - s0) // 30
    # the two s-branches use different output shapes; the odd-s one is the
    # unique integer solution of the identity constraints for its table
    if s in (-1, 1):
        a, b, c = (3 * s - 1) // 2, (1 - s) // 2, (1 - s) // 2
        quad = (x, a + t - 4 * u, b - t + u, c + t + 2 * u)
    else:
        a, b, c = s // 2, 0, 1 - s // 2
        quad = (x, a + 2 * t + u, b - t + u, c - 3 * u)
    return [("r0", r0), ("r1", r1), ("x", x), ("s", s), ("t", t), ("u", u)], quad


def _t12i_target(n: int) -> int:
    t = lemma41_target(n)
    if not t.covered:
        raise ValueError("no target for multiples of 16")
    return t.value


VARIANTS: dict[str, Variant] = {}


def _register(name, family, weights4, coeffs, target, precursor, pre_target, normalize):
    VARIANTS[name] = Variant(
        name, family, DiagonalQuaternary(*weights4),
        RestrictionSpec(coeffs, target), precursor, pre_target, normalize,
    )


_register("T11i_a", "T1.1", (1, 1, 1, 2), (0, 1, 3, 2), Target.fixed(1),
          (2, 3, 3), lambda n: 12 * n - 1, _t11i_a)
_register("T11i_b", "T1.1", (1, 1, 1, 2), (1, 1, 2, 2), Target.fixed(1),
          (1, 8, 44), lambda n: 88 * n - 11, _t11i_b)
_register("T11i_c", "T1.1", (1, 1, 1, 2), (1, 1, 2, 2), Target.fixed(2),
          (1, 8, 44), lambda n: 88 * n - 44, _t11i_c)
_register("T11ii_λ1", "T1.1", (1, 1, 1, 3), (0, 2, 1, 1), Target.fixed(1),
          (1, 16, 80), lambda n: 80 * n - 15, _t11ii_l1)
_register("T11ii_λ3", "T1.1", (1, 1, 1, 3), (0, 2, 1, 3), Target.fixed(1),
          (1, 6, 30), lambda n: 120 * n - 15, _t11ii_l3)
_register("T11iii_a", "T1.1", (1, 1, 2, 3), (0, 1, 2, 3), Target.fixed(1),
          (1, 1, 6), lambda n: 6 * n - 1, _t11iii_a)
_register("T11iii_b", "T1.1", (1, 1, 3, 4), (0, 1, 1, 2), Target.fixed(1),
          (1, 7, 56), lambda n: 56 * n - 24, _t11iii_b)
_register("T12i", "T1.2", (1, 1, 1, 1), (1, 3, 5, 0), Target.any_of((1, 4)),
          (5, 7, 70), _t12i_target, _t12i)
_register("T12ii_23", "T1.2", (1, 1, 1, 2), (1, 2, 3, 0), Target.fixed(1),
          (2, 7, 84), lambda n: 42 * n - 3, _t12ii_23)
_register("T12ii_25", "T1.2", (1, 1, 1, 2), (1, 2, 5, 0), Target.fixed(1),
          (5, 6, 60), lambda n: 30 * n - 1, _t12ii_25)
_register("T12ii_34", "T1.2", (1, 1, 1, 2), (1, 3, 4, 0), Target.fixed(1),
          (1, 26, 156), lambda n: 78 * n - 3, _t12ii_34)
_register("T12ii_2yzw", "T1.2", (1, 1, 1, 2), (0, 2, 1, 1), Target.fixed(1),
          (1, 11, 55), lambda n: 55 * n - 10, _t12ii_2yzw)
_register("T12iii_x2yw", "T1.2", (1, 1, 2, 3), (1, 2, 0, 1), Target.fixed(1),
          (1, 16, 160), lambda n: 80 * n - 15, _t12iii_x2yw)
_register("T12iii_yzw", "T1.2", (1, 1, 2, 3), (0, 1, 1, 1), Target.fixed(1),
          (1, 11, 99), lambda n: 99 * n - 54, _t12iii_yzw)
_register("T12iii_y2zw", "T1.2", (1, 1, 2, 3), (0, 1, 2, 1), Target.fixed(1),
          (1, 5, 30), lambda n: 30 * n - 9, _t12iii_y2zw)

# ASCII aliases for the two lambda-named variants
ALIASES = {"T11ii_l1": "T11ii_λ1", "T11ii_l3": "T11ii_λ3"}


def variant_names() -> list[str]:
    return list(VARIANTS)


def resolve_variant(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in VARIANTS:
        raise ValueError(f"unknown variant {name!r}")
    return name


def decompose(variant: str, n: int) -> Decomposition | Unavailable:
    """Run one constructive variant: returns a validated Decomposition, or
    Unavailable for uncovered/small inputs of the large-n variants."""
    if n < 1:
        raise ValueError("n must be positive")
    name = resolve_variant(variant)
    var = VARIANTS[name]
    if name == "T12i" and not lemma41_target(n).covered:
        return Unavailable(name, n, "not-covered")
    m = var.target(n)
    seen = False
    for triple in iter_diagonal_lex(var.precursor, m):
        seen = True
        got = var.normalize(n, triple)
        if got is None:
            continue
        named, quad = got
        if var.form.evaluate(quad) != n:
            raise NormalizationFailed(f"{name}: output identity failed at n={n}")
        lin = var.restriction.linear(quad)
        if not var.restriction.target.contains(lin):
            raise NormalizationFailed(f"{name}: restriction value {lin} off target at n={n}")
        trace = (("precursor", triple),) + tuple(named)
        return Decomposition(name, n, quad, var.form, var.restriction, lin, trace)
    if var.family == "T1.1":
        raise NormalizationFailed(f"{name}: construction failed at n={n}")
    return Unavailable(name, n, "precursor" if not seen else "normalization")


def validate(d: Decomposition, n: int | None = None) -> bool:
    """Replay the construction from the recorded precursor triple and
    re-check every identity, the form value, and the restriction."""
    if n is None:
        n = d.n
    if n != d.n or d.variant not in VARIANTS:
        return False
    var = VARIANTS[d.variant]
    if var.form.evaluate(d.quadruple) != n:
        return False
    if var.restriction.linear(d.quadruple) != d.linear_value:
        return False
    if not var.restriction.target.contains(d.linear_value):
        return False
    tr = dict(d.trace)
    triple = tr.get("precursor")
    if triple is None:
        return False
    try:
        m = var.target(n)
    except ValueError:
        return False
    if sum(w * v * v for w, v in zip(var.precursor, triple)) != m:
        return False
    got = var.normalize(n, triple)
    if got is None:
        return False
    named, quad = got
    if quad != d.quadruple:
        return False
    replay = dict((("precursor", triple),) + tuple(named))
    return all(replay.get(k) == v for k, v in d.trace)
