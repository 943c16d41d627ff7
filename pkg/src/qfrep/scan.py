"""Restricted-representation decision for single inputs and high-throughput
range verification with exception reporting.

The engine enumerates, once per (form, restriction, domain, limit), every
value of the constrained part of the form: for each target value of the
linear form, the variable with the largest coefficient is eliminated and the
remaining constrained variables sweep their exact ranges.  The reachable
partial values (with a first witness each) are combined with the value set of
the unconstrained variables, so membership, witnesses, and certified
no-witness verdicts for any n up to the limit are O(#free-values) lookups.

Ranges are scanned in fixed 4096-wide shards whose reports are merged in
shard order, so results are independent of the worker count.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .constructive import Decomposition, Unavailable, VARIANTS, decompose, resolve_variant, validate
from .forms import DiagonalQuaternary, Quadruple
from .restrict import RestrictionSpec

SHARD_WIDTH = 4096


@dataclass(frozen=True)
class ScanProblem:
    form: DiagonalQuaternary
    restriction: RestrictionSpec
    lo: int
    hi: int
    exclude: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty range: lo > hi")
        if self.lo < 0:
            raise ValueError("range must be nonnegative")
        for mod, residues in self.exclude:
            if mod < 2 or any(r % mod != r for r in residues):
                raise ValueError("malformed residue pre-filter")

    def excluded(self, n: int) -> bool:
        return any(n % mod in residues for mod, residues in self.exclude)


@dataclass
class ScanReport:
    problem: ScanProblem
    exceptions: tuple[int, ...]
    witnesses: dict[int, Decomposition]
    checked: int
    excluded: int
    wall_time: float

    def canonical_dict(self, include_timing: bool = False) -> dict:
        p = self.problem
        out = {
            "form": p.form.literal(),
            "linear": p.restriction.literal(),
            "target": p.restriction.target.describe(),
            "domain": p.restriction.domain,
            "range": [p.lo, p.hi],
            "exclude": [[m, list(rs)] for m, rs in p.exclude],
            "checked": self.checked,
            "excluded": self.excluded,
            "exception_count": len(self.exceptions),
            "exceptions": list(self.exceptions),
            "witnesses": {
                str(n): {"quadruple": list(d.quadruple), "linear_value": d.linear_value}
                for n, d in sorted(self.witnesses.items())
            },
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.canonical_dict(include_timing))


class ProblemIndex:
    """Exhaustive reachability index for one (form, restriction) pair up to
    a limit: good[n] decides representability, and a deterministic first
    witness can be materialized for any good n."""

    def __init__(self, form: DiagonalQuaternary, spec: RestrictionSpec, limit: int):
        self.form = form
        self.spec = spec
        self.limit = limit
        weights = form.weights()
        coeffs = spec.coeffs
        nat = spec.domain == "nat"
        constrained = [i for i in range(4) if coeffs[i] != 0]
        self.free = [i for i in range(4) if coeffs[i] == 0]
        self.elim = max(constrained, key=lambda i: (abs(coeffs[i]), i))
        self.others = [i for i in constrained if i != self.elim]

        bounds = [isqrt(limit // w) for w in weights]
        linear_bound = sum(abs(coeffs[i]) * bounds[i] for i in range(4))

        self.partial = np.zeros(limit + 1, dtype=bool)
        self.partial_wit = np.zeros((limit + 1, 4), dtype=np.int64)
        ce = coeffs[self.elim]
        for v in spec.target.iter_values(linear_bound):
            for rest in self._other_blocks(bounds, nat):
                acc = np.full(rest.shape[0], v, dtype=np.int64)
                for k, i in enumerate(self.others):
                    acc = acc - coeffs[i] * rest[:, k]
                q, r = np.divmod(acc, ce)
                ok = r == 0
                if nat:
                    ok &= q >= 0
                else:
                    ok &= np.abs(q) <= bounds[self.elim]
                m = weights[self.elim] * q * q
                for k, i in enumerate(self.others):
                    m = m + weights[i] * rest[:, k] * rest[:, k]
                ok &= m <= limit
                idx = np.nonzero(ok)[0]
                if idx.size == 0:
                    continue
                mm = m[idx]
                new = ~self.partial[mm]
                # keep the first witness in enumeration order per partial value
                first = np.unique(mm[new], return_index=True)[1]
                sel = idx[new.nonzero()[0][first]]
                rows = np.zeros((sel.size, 4), dtype=np.int64)
                for k, i in enumerate(self.others):
                    rows[:, i] = rest[sel, k]
                rows[:, self.elim] = q[sel]
                self.partial_wit[m[sel]] = rows
                self.partial[m[sel]] = True

        # value set of the unconstrained variables
        if not self.free:
            self.free_vals = np.zeros(1, dtype=np.int64)
            self.free_wit = np.zeros((1, 4), dtype=np.int64)
        else:
            vals = np.zeros(1, dtype=np.int64)
            wit = np.zeros((1, 4), dtype=np.int64)
            for i in self.free:
                ks = np.arange(isqrt(limit // weights[i]) + 1, dtype=np.int64)
                cand = vals[:, None] + (weights[i] * ks * ks)[None, :]
                keep = cand <= limit
                rows = np.repeat(wit, len(ks), axis=0)[keep.ravel()]
                rows[:, i] = np.tile(ks, len(vals))[keep.ravel()]
                vals = cand.ravel()[keep.ravel()]
                order = np.argsort(vals, kind="stable")
                vals, rows = vals[order], rows[order]
                uniq, first = np.unique(vals, return_index=True)
                vals, wit = uniq, rows[first]
            self.free_vals = vals
            self.free_wit = wit

        self.good = np.zeros(limit + 1, dtype=bool)
        for pos, t in enumerate(self.free_vals):
            t = int(t)
            self.good[t:] |= self.partial[: limit + 1 - t]

    def _other_blocks(self, bounds, nat):
        """Lexicographic enumeration of the non-eliminated constrained
        variables, yielded in bounded-size blocks."""
        ranges = [
            np.arange(0 if nat else -bounds[i], bounds[i] + 1, dtype=np.int64)
            for i in self.others
        ]
        if len(ranges) == 0:
            yield np.zeros((1, 0), dtype=np.int64)
        elif len(ranges) == 1:
            yield ranges[0][:, None]
        elif len(ranges) == 2:
            a, b = ranges
            yield np.stack([np.repeat(a, len(b)), np.tile(b, len(a))], axis=1)
        else:
            a, b, c = ranges
            tail = np.stack([np.repeat(b, len(c)), np.tile(c, len(b))], axis=1)
            step = max(1, 600_000 // max(1, tail.shape[0]))
            for lo in range(0, len(a), step):
                head = a[lo:lo + step]
                block = np.empty((len(head) * tail.shape[0], 3), dtype=np.int64)
                block[:, 0] = np.repeat(head, tail.shape[0])
                block[:, 1:] = np.tile(tail, (len(head), 1))
                yield block

    def witness(self, n: int) -> Decomposition | None:
        if n < 0 or n > self.limit or not self.good[n]:
            return None
        for pos, t in enumerate(self.free_vals):
            t = int(t)
            if t > n:
                break
            if self.partial[n - t]:
                quad = tuple(int(a + b) for a, b in
                             zip(self.partial_wit[n - t], self.free_wit[pos]))
                lin = self.spec.linear(quad)
                trace = (("partial", n - t), ("free_square_sum", t))
                d = Decomposition("scan", n, quad, self.form, self.spec, lin, trace)
                if self.form.evaluate(quad) != n or not self.spec.satisfied_by(quad):
                    raise AssertionError("index produced an invalid witness")
                return d
        raise AssertionError("good[n] set but no witness found")


_index_cache: dict = {}


def _index_for(form: DiagonalQuaternary, spec: RestrictionSpec, limit: int) -> ProblemIndex:
    key = (form.weights(), spec.coeffs, spec.target, spec.domain)
    idx = _index_cache.get(key)
    if idx is None or idx.limit < limit:
        size = max(4096, 1 << (max(limit, 1) - 1).bit_length())
        if len(_index_cache) > 8:
            _index_cache.clear()
        idx = ProblemIndex(form, spec, size)
        _index_cache[key] = idx
    return idx


def find_restricted(form: DiagonalQuaternary, spec: RestrictionSpec, n: int) -> Decomposition | None:
    """A witness quadruple for form = n under the restriction, or None as a
    certified exhaustive no-witness verdict."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _index_for(form, spec, n).witness(n)


def scan_range(problem: ScanProblem, workers: int = 1) -> ScanReport:
    """Exceptions and witness samples over [lo, hi]; the result does not
    depend on the worker count."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t0 = time.perf_counter()
    idx = _index_for(problem.form, problem.restriction, problem.hi)
    shards = [
        (lo, min(lo + SHARD_WIDTH - 1, problem.hi))
        for lo in range(problem.lo, problem.hi + 1, SHARD_WIDTH)
    ]

    def run_shard(bounds):
        lo, hi = bounds
        ns = np.arange(lo, hi + 1)
        keep = np.ones(ns.size, dtype=bool)
        for mod, residues in problem.exclude:
            keep &= ~np.isin(ns % mod, residues)
        good = idx.good[lo:hi + 1]
        exceptions = [int(v) for v in ns[keep & ~good]]
        audit = None
        hits = ns[keep & good]
        if hits.size:
            audit = idx.witness(int(hits[0]))
        return exceptions, audit, int(keep.sum())

    if workers == 1:
        results = [run_shard(s) for s in shards]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_shard, shards))

    exceptions: list[int] = []
    witnesses: dict[int, Decomposition] = {}
    checked = 0
    for exc, audit, kept in results:
        exceptions.extend(exc)
        if audit is not None:
            witnesses[audit.n] = audit
        checked += kept
    total = problem.hi - problem.lo + 1
    return ScanReport(problem, tuple(exceptions), witnesses, checked,
                      total - checked, time.perf_counter() - t0)


@dataclass
class CrossCheckReport:
    variant: str
    lo: int
    hi: int
    successes: int
    unavailable: dict[str, int] = field(default_factory=dict)
    mismatches: tuple[int, ...] = ()
    validation_failures: tuple[int, ...] = ()

    def consistent(self) -> bool:
        return not self.mismatches and not self.validation_failures

    def canonical_dict(self) -> dict:
        return {
            "variant": self.variant,
            "range": [self.lo, self.hi],
            "successes": self.successes,
            "unavailable": dict(sorted(self.unavailable.items())),
            "mismatches": list(self.mismatches),
            "validation_failures": list(self.validation_failures),
        }


def cross_check(variant: str, lo: int, hi: int) -> CrossCheckReport:
    """Compare the constructive route against the exhaustive index on the
    same (form, restriction): a construction may never succeed where the
    index certifies no witness, and every construction must validate."""
    name = resolve_variant(variant)
    var = VARIANTS[name]
    if lo > hi:
        return CrossCheckReport(name, lo, hi, 0)
    idx = _index_for(var.form, var.restriction, hi)
    successes = 0
    unavailable: dict[str, int] = {}
    mismatches = []
    failures = []
    for n in range(max(lo, 1), hi + 1):
        d = decompose(name, n)
        if isinstance(d, Unavailable):
            unavailable[d.stage] = unavailable.get(d.stage, 0) + 1
            continue
        successes += 1
        if not validate(d):
            failures.append(n)
        if not idx.good[n]:
            mismatches.append(n)
    return CrossCheckReport(name, lo, hi, successes, unavailable,
                            tuple(mismatches), tuple(failures))
