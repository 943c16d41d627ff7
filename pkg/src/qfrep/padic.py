"""Exact p-adic structure of integral symmetric matrices: Jordan splitting
and a value-set decision for representability over Z_p.

All computations use Fractions whose denominators are units at p, so every
step is exact.  The solvability test works on the doubled form v^T A v
(target 2n), whose Jordan constituents have classical value sets:

    unit * p^e * x^2          -> {0} u  p^(e+2k) * unit-square classes
    2^e * [[0,1],[1,0]]       -> all of 2^(e+1) Z_2
    2^e * [[2,1],[1,2]]       -> {0} u  2^(e+1) 4^k * (all odd units)

Membership of a sum of such sets is a finite congruence check: a term
p^f * w is free beyond p^(f+margin) (margin 3 at p=2, 1 at odd p), so only
terms at the minimal scale window matter.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import padic_ord


def _frac_val(x: Fraction, p: int) -> int:
    return padic_ord(x.numerator, p) - padic_ord(x.denominator, p)


def _unit_part(x: Fraction, p: int) -> Fraction:
    v = _frac_val(x, p)
    num, den = x.numerator, x.denominator
    if v > 0:
        num //= p**v
    elif v < 0:
        den //= p**(-v)
    return Fraction(num, den)


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _chi(x: Fraction, p: int) -> int:
    """Legendre character of a p-adic unit given as a Fraction."""
    return _legendre(x.numerator, p) * _legendre(x.denominator, p)


def _unit_mod(x: Fraction, p: int, k: int) -> int:
    """The unit x as a residue modulo p^k."""
    m = p**k
    return x.numerator * pow(x.denominator, -1, m) % m


def jordan_blocks(gram, p: int) -> list[tuple]:
    """Jordan splitting of a nondegenerate symmetric integer matrix over Z_p.

    Returns a list of block descriptors:
      ("d", e, unit)          1x1 block  p^e * unit   (unit: Fraction, val 0)
      ("h", e)                2x2 block  2^e * [[0,1],[1,0]]      (p = 2 only)
      ("a", e)                2x2 block  2^e * [[2,1],[1,2]]      (p = 2 only)
    """
    m = [[Fraction(v) for v in row] for row in gram]
    k = len(m)
    blocks: list[tuple] = []
    while k > 0:
        best = None
        for i in range(k):
            for j in range(i, k):
                if m[i][j] != 0:
                    v = _frac_val(m[i][j], p)
                    # prefer a diagonal pivot whenever one achieves the
                    # minimal valuation: 2x2 blocks are for the even case only
                    rank = (v, 0 if i == j else 1)
                    if best is None or rank < best[:2]:
                        best = (v, rank[1], i, j)
        if best is None:
            raise ValueError("degenerate matrix")
        v0, _, i0, j0 = best
        if i0 != j0 and p != 2:
            # odd p: adding row+column j0 into i0 drops the diagonal to v0
            for c in range(k):
                m[i0][c] += m[j0][c]
            for r in range(k):
                m[r][i0] += m[r][j0]
            j0 = i0
        if i0 == j0:
            piv = m[i0][i0]
            rest = [r for r in range(k) if r != i0]
            nm = [[m[r][c] - m[r][i0] * m[i0][c] / piv for c in rest] for r in rest]
            blocks.append(("d", v0, _unit_part(piv, p)))
        else:
            # p = 2, minimal valuation strictly off-diagonal: split a 2x2 block
            a, b, d = m[i0][i0], m[i0][j0], m[j0][j0]
            det = a * d - b * b
            rest = [r for r in range(k) if r not in (i0, j0)]
            nm = []
            for r in rest:
                row = []
                for c in rest:
                    u, w = m[r][i0], m[r][j0]
                    x = (u * d - w * b) / det
                    y = (w * a - u * b) / det
                    row.append(m[r][c] - x * m[i0][c] - y * m[j0][c])
                nm.append(row)
            unit_det = _unit_part(det, p)
            if _frac_val(det, p) != 2 * v0:
                raise AssertionError("unexpected 2x2 block valuation")
            kind = "h" if _unit_mod(unit_det, 2, 3) == 7 else "a"
            blocks.append((kind, v0))
        m = nm
        k = len(m)
    blocks.sort(key=lambda blk: (blk[1], blk[0]))
    return blocks


def _atom_families(blocks, p: int):
    """(families, full_floors): families are (base scale, parity step 2,
    unit residue set) for the doubled-form value calculus; full_floors are
    scales e with value set all of p^e Z_p."""
    margin = 3 if p == 2 else 1
    families = []
    fulls = []
    for blk in blocks:
        if blk[0] == "d":
            _, e, unit = blk
            if p == 2:
                w = {_unit_mod(unit, 2, 3)}
            else:
                chi = _chi(unit, p)
                w = {u for u in range(1, p) if _legendre(u, p) == chi}
            families.append((e, w))
        elif blk[0] == "h":
            fulls.append(blk[1] + 1)
        else:  # "a": anisotropic even block, p = 2 only
            if p != 2:
                raise AssertionError("2x2 Jordan block at an odd prime")
            families.append((blk[1] + 1, {1, 3, 5, 7}))
    return families, fulls, margin


def solvable_from_blocks(blocks, target: int, p: int) -> bool:
    """Whether the form with the given Jordan blocks represents `target`
    (a value of v^T A v) over Z_p."""
    if target == 0:
        return True
    if target < 0:
        return False
    m = padic_ord(target, p)
    families, fulls, margin = _atom_families(blocks, p)
    if fulls and m >= min(fulls):
        return True
    for minf in range(0, m + 1):
        mod = p ** (minf + margin)
        goal = target % mod
        # per family: inactive, or an active scale f in the window with a
        # unit residue; track whether the global minimum f = minf is attained
        options = []
        for e, wset in families:
            opts = [(0, False)]
            for f in range(max(e, minf), minf + margin):
                if (f - e) % 2:
                    continue
                pf = p**f
                opts.extend(((pf * w) % mod, f == minf) for w in wset)
            options.append(opts)
        for e in fulls:
            if e >= minf + margin:
                continue
            # a hyperbolic constituent is free over p^e Z_p, which already
            # covers the working modulus, so every option carries the flag
            f = max(e, minf)
            opts = [(0, False)]
            opts.extend(((p**f * w) % mod, True) for w in range(p**margin))
            options.append(opts)
        sums = {(0, False)}
        for opts in options:
            sums = {((s + v) % mod, flag or fl) for s, flag in sums for v, fl in opts}
        if (goal, True) in sums:
            return True
    return False


_block_cache: dict = {}


def gram_blocks_cached(key, gram, p: int):
    if (key, p) not in _block_cache:
        _block_cache[(key, p)] = jordan_blocks(gram, p)
    return _block_cache[(key, p)]


def odd_prime_symbol(gram, key, p: int) -> tuple:
    """Complete Z_p-equivalence invariant at an odd prime: per scale, the
    dimension and the Legendre character of the unit determinant."""
    if p == 2:
        raise ValueError("use the counting fingerprint at p = 2")
    per_scale: dict[int, list] = {}
    for blk in gram_blocks_cached(key, gram, p):
        per_scale.setdefault(blk[1], []).append(blk[2])
    out = []
    for e in sorted(per_scale):
        units = per_scale[e]
        chi = 1
        for u in units:
            chi *= _chi(u, p)
        out.append((e, len(units), chi))
    return tuple(out)


def two_adic_shape(gram, key) -> tuple:
    """Invariant (not complete) 2-adic data: per scale, dimension and
    whether the constituent has an odd diagonal part."""
    per_scale: dict[int, dict] = {}
    for blk in gram_blocks_cached(key, gram, 2):
        kind, e = blk[0], blk[1]
        dim = 1 if kind == "d" else 2
        slot = per_scale.setdefault(e, {"dim": 0, "odd": False})
        slot["dim"] += dim
        if kind == "d":
            slot["odd"] = True
    return tuple((e, per_scale[e]["dim"], per_scale[e]["odd"]) for e in sorted(per_scale))
