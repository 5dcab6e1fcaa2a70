"""4-SUM detection: meet-in-the-middle pairing plus the sampled-vector race.

The exact detector pairs the largest array with the smallest so the bigger of
the two Minkowski-sum sides is as small as possible, then intersects the two
pairwise-sum multisets.  The sensitive variant races dyadic subsampling
vectors, cheapest pairing cost first, and verifies every witness by
summation before reporting it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graphcore import enumerate_sampling_family, split_seed
from .work import Budget, WorkMeter, race

MAX_ABS_ENTRY = 1 << 61
# reduction shifts are 30U, 90U, 270U, -390U; keeping the shifted entries
# inside the container bound needs 391 * U <= 2**61
MAX_REDUCIBLE = 1 << 58
_SHIFT_FACTOR = 391

_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))

_CHUNK = 1 << 14


@dataclass(frozen=True)
class FourArrays:
    """Four integer arrays whose pairwise sums must stay inside int64."""

    a1: tuple[int, ...]
    a2: tuple[int, ...]
    a3: tuple[int, ...]
    a4: tuple[int, ...]

    def __post_init__(self):
        for name, arr in zip(("a1", "a2", "a3", "a4"), self.arrays()):
            for x in arr:
                if abs(x) > MAX_ABS_ENTRY:
                    raise ValueError(f"{name} entry {x} exceeds +-2^61")

    def arrays(self) -> tuple[tuple[int, ...], ...]:
        return (self.a1, self.a2, self.a3, self.a4)

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        return (len(self.a1), len(self.a2), len(self.a3), len(self.a4))

    @staticmethod
    def of(arrays: Sequence[Sequence[int]]) -> FourArrays:
        if len(arrays) != 4:
            raise ValueError(f"expected 4 arrays, got {len(arrays)}")
        a1, a2, a3, a4 = (tuple(int(x) for x in arr) for arr in arrays)
        return FourArrays(a1, a2, a3, a4)


@dataclass(frozen=True)
class FourSumResult:
    found: bool
    witness: Optional[tuple[int, int, int, int]]
    work_units: int
    algorithm_tag: str = "find4sum"


def reduce_single_to_four(a: Sequence[int]) -> FourArrays:
    """Shift one array into four so zero-sum quadruples survive exactly.

    With U the largest magnitude, array i gets +3^i * 10U and the fourth
    gets -(30U + 90U + 270U).  The shifts cancel only when one element is
    taken from each array, so the solutions are exactly the zero-sum
    position quadruples of the input, repeats allowed.
    """
    vals = tuple(int(x) for x in a)
    u = max((abs(x) for x in vals), default=0)
    if u > MAX_REDUCIBLE or u * _SHIFT_FACTOR > MAX_ABS_ENTRY:
        raise ValueError(f"entries up to {u} leave no shift headroom")
    shifts = (30 * u, 90 * u, 270 * u, -390 * u)
    return FourArrays(
        tuple(x + shifts[0] for x in vals),
        tuple(x + shifts[1] for x in vals),
        tuple(x + shifts[2] for x in vals),
        tuple(x + shifts[3] for x in vals),
    )


def _descending_order(sizes: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(range(4), key=lambda i: (-sizes[i], i)))


def _pairing_core(
    arrs: Sequence[np.ndarray], meter: WorkMeter
) -> Optional[tuple[int, int, int, int]]:
    """Minkowski-sum intersection over int64 arrays, lexicographic-first.

    The second pairing's sums are sorted by value; the first pairing
    streams through in index order and stops at the first match.  Only then
    is the matching right-side sum rebuilt in index order to recover the
    first pair producing it, so the no-hit path never pays for indices.
    """
    sizes = [int(a.size) for a in arrs]
    if min(sizes) == 0:
        return None
    big, mid_a, mid_b, small = _descending_order(sizes)
    right = (arrs[mid_a][:, None] + arrs[mid_b][None, :]).ravel()
    meter.add(2 * right.size)  # build + sort passes
    right.sort()
    n_small = sizes[small]
    rows_per_block = max(1, _CHUNK // max(1, n_small))
    for r0 in range(0, sizes[big], rows_per_block):
        r1 = min(r0 + rows_per_block, sizes[big])
        target = -(arrs[big][r0:r1, None] + arrs[small][None, :]).ravel()
        meter.add(target.size)
        pos = np.searchsorted(right, target, side="left")
        pos_c = np.minimum(pos, right.size - 1)
        hit = (pos < right.size) & (right[pos_c] == target)
        if hit.any():
            k = int(np.argmax(hit))
            li = r0 + k // n_small
            si = k % n_small
            want = int(arrs[big][li]) + int(arrs[small][si])
            rebuilt = (arrs[mid_a][:, None] + arrs[mid_b][None, :]).ravel()
            meter.add(rebuilt.size)
            ri = int(np.nonzero(rebuilt == -want)[0][0])
            mi, bi = divmod(ri, sizes[mid_b])
            by_array = [0, 0, 0, 0]
            by_array[big] = li
            by_array[small] = si
            by_array[mid_a] = mi
            by_array[mid_b] = bi
            return tuple(by_array)
    return None


def find4sum(f: FourArrays, meter: Optional[WorkMeter] = None) -> FourSumResult:
    """Exact detection by intersecting two pairwise Minkowski sums.

    Arrays are ordered by size descending and paired outside-in, which
    minimizes the larger pairwise product; work stays within 8 times the
    two pairing products.  The reported witness is the lexicographically
    first hit on both sides.
    """
    own = WorkMeter() if meter is None else meter
    start = own.total
    sizes = f.sizes
    if min(sizes) == 0:
        return FourSumResult(False, None, 0)
    order = _descending_order(sizes)
    bound = 8 * (
        sizes[order[0]] * sizes[order[3]] + sizes[order[1]] * sizes[order[2]]
    )
    arrs = [np.asarray(a, dtype=np.int64) for a in f.arrays()]
    witness = _pairing_core(arrs, own)
    spent = own.total - start
    assert spent <= bound, (spent, bound)
    if witness is None:
        return FourSumResult(False, None, spent)
    total = sum(f.arrays()[i][witness[i]] for i in range(4))
    assert total == 0, (witness, total)
    return FourSumResult(True, witness, spent)


def mu2(exponents: Sequence[int]) -> float:
    """Cheapest pairing cost of a dyadic density vector.

    For each split into two pairs the bigger density product dominates; the
    vector's cost is the best split's dominant product.
    """
    best = None
    for (a, b), (c, d) in _PAIRINGS:
        level = min(exponents[a] + exponents[b], exponents[c] + exponents[d])
        best = level if best is None or level > best else best
    return 2.0**-best


def schedule_4sum_vectors(n: int):
    """Dyadic 4-vectors ordered by ascending pairing cost."""
    fam = enumerate_sampling_family(n, 4)
    return sorted(fam, key=lambda v: (mu2(v.exponents), v.exponents))


def _vector_branch(arrs: Sequence[np.ndarray], exponents: tuple[int, ...], seed: int):
    def factory(budget: Budget, meter: WorkMeter):
        gen = np.random.Generator(np.random.PCG64(seed))
        kept: list[np.ndarray] = []
        for ai in range(4):
            n_i = arrs[ai].size
            ell = exponents[ai]
            meter.add(n_i)
            if ell == 0:
                kept.append(np.arange(n_i))
            else:
                draws = gen.integers(0, 1 << ell, size=n_i)
                kept.append(np.nonzero(draws == 0)[0])
        sizes = sorted((int(k.size) for k in kept), reverse=True)
        est = sizes[0] * sizes[3] + sizes[1] * sizes[2] + 2
        while meter.total + est > budget.granted:
            yield
        sub = [arrs[ai][kept[ai]] for ai in range(4)]
        w = _pairing_core(sub, meter)
        if w is None:
            return None
        back = tuple(int(kept[ai][w[ai]]) for ai in range(4))
        assert sum(int(arrs[ai][back[ai]]) for ai in range(4)) == 0, back
        return back

    return factory


def sensitive_detect_4sum(
    f: FourArrays, seed: int, budget: Optional[int] = None
) -> FourSumResult:
    """Race subsampling vectors, cheapest first, against an exact fallback.

    Every vector keeps each element of array i with its dyadic density and
    runs the pairing detector on the survivors; the full-density vector is
    part of the family, so with no budget cap the answer is always exact.
    A budget cap can end the race early with an inconclusive miss.
    """
    tag_base = "sensitive-4sum"
    if min(f.sizes) == 0:
        return FourSumResult(False, None, 0, tag_base)
    n = max(f.sizes)
    arrs = [np.asarray(a, dtype=np.int64) for a in f.arrays()]
    entries = []
    for vec in schedule_4sum_vectors(n):
        ex = tuple(vec.exponents)
        entries.append(
            (f"P={ex}", _vector_branch(arrs, ex, split_seed(seed, "vec", *ex)))
        )
    value, tag, work = race(entries, total_budget=budget)
    if value is None:
        return FourSumResult(False, None, work, tag_base)
    return FourSumResult(True, value, work, f"{tag_base}:{tag}")


def gen_foursum_planted(n: int, t: int, seed: int) -> FourArrays:
    """Random arrays of size n with t planted zero-sum quadruples.

    Entries are drawn near +-2^55, so accidental zero sums are vanishingly
    rare; each planted solution occupies fresh indices in every array.
    """
    if not 0 <= t <= n:
        raise ValueError(f"cannot plant {t} solutions in arrays of size {n}")
    gen = np.random.Generator(np.random.PCG64(split_seed(seed, "4sum-plant")))
    lim = 1 << 55
    arrays = [
        [int(x) for x in gen.integers(-lim, lim + 1, size=n)] for _ in range(4)
    ]
    spots = [
        [int(i) for i in gen.permutation(n)[:t]] for _ in range(4)
    ]
    for k in range(t):
        x, y, z = (int(v) for v in gen.integers(-lim, lim + 1, size=3))
        arrays[0][spots[0][k]] = x
        arrays[1][spots[1][k]] = y
        arrays[2][spots[2][k]] = z
        arrays[3][spots[3][k]] = -(x + y + z)
    return FourArrays(*(tuple(arr) for arr in arrays))
