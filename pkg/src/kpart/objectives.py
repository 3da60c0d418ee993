"""Objective evaluation for instance/partition pairs.

Integer objectives (subset-sum balance, compression cost, product of sums)
are computed exactly; entropy objectives are floats derived from exact
integers. All k label slots participate in min_diff/min_max/max_min and
product_of_sums, so an empty slot contributes a zero sum; entropy and
compression ignore empty groups via the 0 * log 0 = 0 convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Dist, InputError, Instance, Partition, subset_sums
from .entropy import min_entropy, shannon_entropy
from .huffman import _merge_cost_sorted

INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class ObjectiveReport:
    """Every objective value for one instance/partition pair.

    product_of_sums is exact regardless of magnitude; product_overflow
    flags when it leaves the signed 64-bit envelope the integer contracts
    otherwise guarantee.
    """

    min_diff: int
    min_max: int
    max_min: int
    entropy_bits: float
    min_entropy_bits: float
    product_of_sums: int
    product_overflow: bool
    compression_numerator: int
    compression_bits: float

    def to_json_dict(self) -> dict:
        return {
            "min_diff": self.min_diff,
            "min_max": self.min_max,
            "max_min": self.max_min,
            "entropy_bits": self.entropy_bits,
            "min_entropy_bits": self.min_entropy_bits,
            "product_of_sums": self.product_of_sums,
            "product_overflow": self.product_overflow,
            "compression_numerator": self.compression_numerator,
            "compression_bits": self.compression_bits,
        }


def compression_cost(inst: Instance, p: Partition) -> int:
    """Exact integer L(X|A) * M: total Huffman merge cost over the groups.

    Each nonempty group contributes the merge cost of an optimal prefix-free
    code over its member weights; singleton groups need no bits.
    """
    if len(p.assignment) != len(inst.weights):
        raise InputError(
            f"partition covers {len(p.assignment)} elements, "
            f"instance has {len(inst.weights)}"
        )
    buckets: list[list[int]] = [[] for _ in range(p.k)]
    for w, a in zip(inst.weights, p.assignment):
        buckets[a].append(w)
    total = 0
    for b in buckets:
        if len(b) > 1:
            b.sort()
            total += _merge_cost_sorted(b)
    return total


def evaluate(inst: Instance, p: Partition) -> ObjectiveReport:
    """Compute every objective for one partition."""
    sums = subset_sums(inst, p).sums
    lo = min(sums)
    hi = max(sums)
    prod = 1
    for q in sums:
        prod *= q
    marg = Dist(sums, inst.total)
    cnum = compression_cost(inst, p)
    return ObjectiveReport(
        min_diff=hi - lo,
        min_max=hi,
        max_min=lo,
        entropy_bits=shannon_entropy(marg),
        min_entropy_bits=min_entropy(marg),
        product_of_sums=prod,
        product_overflow=prod > INT64_MAX,
        compression_numerator=cnum,
        compression_bits=cnum / inst.total,
    )
