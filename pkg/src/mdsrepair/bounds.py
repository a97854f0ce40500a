"""Repair-bandwidth lower bounds and the field-size threshold.

All arithmetic here is exact (ints and fractions.Fraction): the claim that
the repair scheme *achieves* the minimum is an exact-equality claim, so
nothing in this module may round.

Units are symbols (field elements).  Multiply by the field width m to get
bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BadShape

Amount = int | Fraction


@dataclass(frozen=True)
class RepairPlan:
    """One repair's traffic: what each of d helpers uploads.

    file_size is the total stored object in symbols, node_storage the
    per-node capacity (file_size / k for an MDS layout), downloads the
    per-helper symbol counts.
    """

    file_size: Amount
    node_storage: Amount
    downloads: tuple[Amount, ...]

    def __post_init__(self):
        if self.file_size <= 0:
            raise BadShape("file_size must be positive")
        if self.node_storage < 0 or any(b < 0 for b in self.downloads):
            raise BadShape("storage and download amounts must be nonnegative")

    @property
    def d(self) -> int:
        return len(self.downloads)

    @property
    def total_downloaded(self) -> Amount:
        return sum(self.downloads)


def cut_bound(file_size: Amount, k: int, d: int) -> Fraction:
    """Minimum total symbols any repair from d helpers must move.

    For a file of ``file_size`` symbols stored across an (n, k)-MDS layout
    with per-node storage file_size/k, a replacement node reading from d
    survivors must download at least file_size*d / (k*(d-k+1)) symbols,
    whatever the code.  Exact rational, never floating point.
    """
    if k < 1:
        raise BadShape(f"k must be >= 1, got {k}")
    if d < k:
        raise BadShape(f"need at least k={k} helpers, got d={d}")
    if file_size <= 0:
        raise BadShape("file_size must be positive")
    return Fraction(file_size) * d / (k * (d - k + 1))


def find_cut_violation(plan: RepairPlan, k: int) -> tuple[int, ...] | None:
    """First (k-1)-subset of helpers whose cut inequality fails, else None.

    Each (k-1)-subset P of the d helpers induces the constraint

        (k - 1) * node_storage + sum of downloads outside P >= file_size

    (a data collector reading the replacement node plus the k-1 nodes in P
    must still see a full file's worth of information).  Subsets are
    enumerated in lexicographic order; helper indices are 0-based.
    """
    if k < 1:
        raise BadShape(f"k must be >= 1, got {k}")
    if plan.d < k:
        raise BadShape(f"plan has d={plan.d} helpers, need at least k={k}")
    total = sum(plan.downloads)
    base = (k - 1) * Fraction(plan.node_storage)
    for subset in combinations(range(plan.d), k - 1):
        inside = sum(plan.downloads[i] for i in subset)
        if base + (total - inside) < plan.file_size:
            return subset
    return None


def satisfies_cut_inequalities(plan: RepairPlan, k: int) -> bool:
    return find_cut_violation(plan, k) is None


def degree_bound(n: int, k: int) -> int:
    """Threshold d0 = 2 * C(2n-1, 2k-1); the field must satisfy |F| > d0.

    This bounds the total degree of the polynomial whose nonvanishing
    certifies one repair draw, hence (Schwartz-Zippel) the per-draw
    rejection probability is at most d0 / |F|.
    """
    if k < 1:
        raise BadShape(f"k must be >= 1, got {k}")
    if 2 * k > n:
        raise BadShape(f"shape requires 2k <= n, got n={n}, k={k}")
    return 2 * math.comb(2 * n - 1, 2 * k - 1)
