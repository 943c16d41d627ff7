"""Positive ternary quadratic forms and exact integer representation search.

A form f(x,y,z) = a x^2 + b y^2 + c z^2 + r yz + s zx + t xy is stored by its
six coefficients.  Its associated matrix is

    A = [[2a, t, s],
         [t, 2b, r],
         [s, r, 2c]]

and the discriminant is det(A)/2.  All enumeration bounds are derived with
exact integer arithmetic (no floating-point cutoffs): for f(v) = n,

    d * x^2 <= (4bc - r^2) n,   d * y^2 <= (4ac - s^2) n,   d * z^2 <= (4ab - t^2) n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

Triple = tuple[int, int, int]
Quadruple = tuple[int, int, int, int]
Matrix3 = tuple[Triple, Triple, Triple]


@dataclass(frozen=True)
class TernaryForm:
    a: int
    b: int
    c: int
    r: int = 0
    s: int = 0
    t: int = 0

    def __post_init__(self):
        m1 = 2 * self.a
        m2 = 4 * self.a * self.b - self.t * self.t
        if m1 <= 0 or m2 <= 0 or self.disc() <= 0:
            raise ValueError(f"form {self.coeffs()} is not positive definite")

    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.r, self.s, self.t)

    def gram(self) -> Matrix3:
        a, b, c, r, s, t = self.coeffs()
        return ((2 * a, t, s), (t, 2 * b, r), (s, r, 2 * c))

    def disc(self) -> int:
        """d(f) = det(A)/2 = 4abc + rst - ar^2 - bs^2 - ct^2."""
        a, b, c, r, s, t = self.coeffs()
        return 4 * a * b * c + r * s * t - a * r * r - b * s * s - c * t * t

    def evaluate(self, v: Triple) -> int:
        x, y, z = v
        a, b, c, r, s, t = self.coeffs()
        return a * x * x + b * y * y + c * z * z + r * y * z + s * z * x + t * x * y

    def bilinear(self, u: Triple, v: Triple) -> int:
        """u^T A v; satisfies f(u+v) = f(u) + f(v) + bilinear(u, v)."""
        a, b, c, r, s, t = self.coeffs()
        return (2 * a * u[0] * v[0] + 2 * b * u[1] * v[1] + 2 * c * u[2] * v[2]
                + r * (u[1] * v[2] + u[2] * v[1])
                + s * (u[0] * v[2] + u[2] * v[0])
                + t * (u[0] * v[1] + u[1] * v[0]))

    def literal(self) -> str:
        return ",".join(str(v) for v in self.coeffs())

    @classmethod
    def diagonal(cls, a: int, b: int, c: int) -> "TernaryForm":
        return cls(a, b, c, 0, 0, 0)

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        parts = text.split(",")
        if len(parts) not in (3, 6):
            raise ValueError("form literal must be 'a,b,c' or 'a,b,c,r,s,t'")
        vals = [int(p) for p in parts]
        if len(vals) == 3:
            vals += [0, 0, 0]
        return cls(*vals)

    @classmethod
    def from_gram(cls, g) -> "TernaryForm":
        if g[0][0] % 2 or g[1][1] % 2 or g[2][2] % 2:
            raise ValueError("Gram matrix of an integral form must have even diagonal")
        return cls(g[0][0] // 2, g[1][1] // 2, g[2][2] // 2,
                   g[1][2], g[0][2], g[0][1])


@dataclass(frozen=True)
class DiagonalQuaternary:
    d1: int
    d2: int
    d3: int
    d4: int

    def __post_init__(self):
        if min(self.weights()) < 1:
            raise ValueError("quaternary weights must be positive")

    def weights(self) -> Quadruple:
        return (self.d1, self.d2, self.d3, self.d4)

    def evaluate(self, v: Quadruple) -> int:
        return sum(d * x * x for d, x in zip(self.weights(), v))

    def literal(self) -> str:
        return ",".join(str(v) for v in self.weights())

    @classmethod
    def parse(cls, text: str) -> "DiagonalQuaternary":
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("quaternary literal must be 'd1,d2,d3,d4'")
        return cls(*parts)


def evaluate_ternary(f: TernaryForm, v: Triple) -> int:
    return f.evaluate(v)


def discriminant(f: TernaryForm) -> int:
    return f.disc()


def _axis_bound(num: int, den: int) -> int:
    """Largest m >= 0 with den * m^2 <= num (num >= 0, den > 0)."""
    if num <= 0:
        return 0
    m = isqrt(num // den)
    while den * (m + 1) * (m + 1) <= num:
        m += 1
    return m


def _quad_interval(alpha: int, beta: int, gamma: int) -> tuple[int, int]:
    """Integer interval where alpha y^2 + beta y + gamma >= 0, for alpha < 0.

    Returns (lo, hi) with lo > hi when empty.
    """
    delta = beta * beta - 4 * alpha * gamma
    if delta < 0:
        return 1, 0
    sd = isqrt(delta)
    q = 2 * alpha

    def g(y: int) -> int:
        return (alpha * y + beta) * y + gamma

    hi = (-beta - sd) // q
    lo = (-beta + sd) // q
    if lo > hi:
        lo, hi = hi, lo
    while g(hi + 1) >= 0:
        hi += 1
    while hi >= lo and g(hi) < 0:
        hi -= 1
    while g(lo - 1) >= 0:
        lo -= 1
    while lo <= hi and g(lo) < 0:
        lo += 1
    if lo > hi:
        return 1, 0
    return lo, hi


def iter_solutions(f: TernaryForm, n: int):
    """Yield every integer triple with f(v) = n, in lexicographic order."""
    if n < 0:
        return
    a, b, c, r, s, t = f.coeffs()
    d = f.disc()
    xb = _axis_bound((4 * b * c - r * r) * n, d)
    alpha = r * r - 4 * b * c
    two_c = 2 * c
    for x in range(-xb, xb + 1):
        beta = (2 * r * s - 4 * c * t) * x
        gamma = (s * s - 4 * a * c) * x * x + 4 * c * n
        ylo, yhi = _quad_interval(alpha, beta, gamma)
        ax2 = a * x * x
        for y in range(ylo, yhi + 1):
            lin = r * y + s * x
            disc_z = lin * lin - 4 * c * (ax2 + b * y * y + t * x * y - n)
            if disc_z < 0:
                continue
            sd = isqrt(disc_z)
            if sd * sd != disc_z:
                continue
            num = -lin - sd
            if num % two_c == 0:
                yield (x, y, num // two_c)
            if sd and (sd - lin) % two_c == 0:
                yield (x, y, (sd - lin) // two_c)


def represent_all(f: TernaryForm, n: int) -> list[Triple]:
    """The full solution set of f(v) = n, lexicographically ordered."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(iter_solutions(f, n))


def represent_count(f: TernaryForm, n: int) -> int:
    """r(f, n) = number of integer triples with f(v) = n."""
    return sum(1 for _ in iter_solutions(f, n))


def representation_counts(f: TernaryForm, limit: int) -> np.ndarray:
    """Array out[n] = r(f, n) for 0 <= n <= limit, by one vectorized sweep."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    a, b, c, r, s, t = f.coeffs()
    d = f.disc()
    xb = _axis_bound((4 * b * c - r * r) * limit, d)
    yb = _axis_bound((4 * a * c - s * s) * limit, d)
    zb = _axis_bound((4 * a * b - t * t) * limit, d)
    xs = np.arange(-xb, xb + 1, dtype=np.int64)
    ys = np.arange(-yb, yb + 1, dtype=np.int64)
    base = (a * xs * xs)[:, None] + (b * ys * ys)[None, :] + t * xs[:, None] * ys[None, :]
    counts = np.zeros(limit + 1, dtype=np.int64)
    for z in range(-zb, zb + 1):
        vals = base + (c * z * z) + (r * z) * ys[None, :] + (s * z) * xs[:, None]
        vals = vals.ravel()
        sel = vals[(vals >= 0) & (vals <= limit)]
        counts += np.bincount(sel, minlength=limit + 1)
    return counts


def represented_upto(f: TernaryForm, limit: int) -> np.ndarray:
    """Boolean array out[n] = (r(f, n) > 0) for 0 <= n <= limit."""
    return representation_counts(f, limit) > 0


def automorphisms(f: TernaryForm) -> list[Matrix3]:
    """All integral M with M^T A M = A, as row-major 3x3 tuples.

    Column j of M is the image of the j-th basis vector, so column norms are
    (a, b, c) and pairwise bilinear products are (t, s, r).
    """
    a, b, c, r, s, t = f.coeffs()
    cols1 = represent_all(f, a)
    cols2 = represent_all(f, b)
    cols3 = represent_all(f, c)
    out = []
    for v1 in cols1:
        pairs = [v2 for v2 in cols2 if f.bilinear(v1, v2) == t]
        for v2 in pairs:
            for v3 in cols3:
                if f.bilinear(v1, v3) == s and f.bilinear(v2, v3) == r:
                    m = ((v1[0], v2[0], v3[0]),
                         (v1[1], v2[1], v3[1]),
                         (v1[2], v2[2], v3[2]))
                    out.append(m)
    out.sort()
    return out


def apply_matrix(m: Matrix3, v: Triple) -> Triple:
    return (m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2])


def matrix_det(m: Matrix3) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def matrix_mul(m: Matrix3, p: Matrix3) -> Matrix3:
    return tuple(
        tuple(sum(m[i][k] * p[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def transform(f: TernaryForm, m: Matrix3) -> TernaryForm:
    """The form g with g(v) = f(M v); requires |det M| = 1 for equivalence."""
    cols = [(m[0][j], m[1][j], m[2][j]) for j in range(3)]
    a = f.evaluate(cols[0])
    b = f.evaluate(cols[1])
    c = f.evaluate(cols[2])
    r = f.bilinear(cols[1], cols[2])
    s = f.bilinear(cols[0], cols[2])
    t = f.bilinear(cols[0], cols[1])
    return TernaryForm(a, b, c, r, s, t)
