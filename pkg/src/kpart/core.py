"""Domain types for multiway number partitioning.

An Instance is a list of positive integer weights; a Partition assigns each
element index to one of k group labels. Distributions are kept exact as
integer numerators over a common denominator so that every objective can be
compared without rounding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

# Size envelope: with weights <= 2**40 and at most 2**20 elements, the total
# and every merge sum stay below 2**60, inside signed 64-bit range.
MAX_WEIGHT = 1 << 40
MAX_ELEMENTS = 1 << 20


class InputError(ValueError):
    """Malformed or semantically invalid input."""


class SizeLimitError(InputError):
    """Input exceeds the guarded size envelope."""


_TOKEN = re.compile(r"[+-]?[0-9]+\Z")


# --- types ------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    """A list S of positive integer weights plus its exact total M.

    Weights keep input order; duplicates are distinct elements identified
    by index.
    """

    weights: tuple[int, ...]
    total: int = field(init=False)

    def __post_init__(self) -> None:
        ws = tuple(self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise InputError("an instance needs at least one weight")
        if len(ws) > MAX_ELEMENTS:
            raise SizeLimitError(
                f"{len(ws)} elements exceed the limit of {MAX_ELEMENTS}"
            )
        try:
            total = sum(ws)
        except TypeError:
            raise InputError("weights must be integers") from None
        if not isinstance(total, int):
            raise InputError("weights must be integers")
        if min(ws) < 1:
            raise InputError(f"weights must be positive, got {min(ws)}")
        if max(ws) > MAX_WEIGHT:
            raise SizeLimitError(f"weight {max(ws)} exceeds the limit of {MAX_WEIGHT}")
        object.__setattr__(self, "total", total)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True, eq=False)
class Partition:
    """An assignment of element indices to group labels 0..k-1.

    Equality and hashing are label-invariant: two partitions are equal when
    they induce the same grouping regardless of label names. canonical()
    relabels groups in first-occurrence order.
    """

    assignment: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        a = tuple(self.assignment)
        object.__setattr__(self, "assignment", a)
        if self.k < 1:
            raise InputError(f"k must be at least 1, got {self.k}")
        if not a:
            raise InputError("assignment must cover at least one element")
        if min(a) < 0 or max(a) >= self.k:
            raise InputError("assignment labels must lie in [0, k)")

    def canonical(self) -> "Partition":
        """Relabel groups in first-occurrence order; idempotent."""
        remap: dict[int, int] = {}
        out = []
        for a in self.assignment:
            g = remap.get(a)
            if g is None:
                g = len(remap)
                remap[a] = g
            out.append(g)
        tup = tuple(out)
        if tup == self.assignment:
            return self
        return Partition(tup, self.k)

    def groups(self) -> tuple[tuple[int, ...], ...]:
        """Member indices per label; empty groups are empty tuples."""
        out: list[list[int]] = [[] for _ in range(self.k)]
        for e, a in enumerate(self.assignment):
            out[a].append(e)
        return tuple(tuple(g) for g in out)

    def to_json_dict(self) -> dict:
        return {"k": self.k, "assignment": list(self.assignment)}

    @staticmethod
    def from_json_dict(obj: dict) -> "Partition":
        if not isinstance(obj, dict) or set(obj) != {"k", "assignment"}:
            raise InputError('partition JSON must be {"k": int, "assignment": [int]}')
        k = obj["k"]
        assignment = obj["assignment"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise InputError("partition k must be an integer")
        if not isinstance(assignment, list) or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in assignment
        ):
            raise InputError("partition assignment must be a list of integers")
        return Partition(tuple(assignment), k)

    def __eq__(self, other: object):
        if not isinstance(other, Partition):
            return NotImplemented
        return (
            self.k == other.k
            and self.canonical().assignment == other.canonical().assignment
        )

    def __hash__(self) -> int:
        return hash((self.k, self.canonical().assignment))


@dataclass(frozen=True)
class Dist:
    """An exact probability vector: integer numerators over one denominator.

    members optionally records the element index behind each numerator,
    which conditional distributions carry along.
    """

    numerators: tuple[int, ...]
    denominator: int
    members: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        nums = tuple(self.numerators)
        object.__setattr__(self, "numerators", nums)
        if self.members is not None:
            object.__setattr__(self, "members", tuple(self.members))
            if len(self.members) != len(nums):
                raise InputError("members must align one-to-one with numerators")
        if self.denominator < 1:
            raise InputError("denominator must be positive")
        if not nums:
            raise InputError("a distribution needs at least one entry")
        if min(nums) < 0:
            raise InputError("numerators must be non-negative")
        if sum(nums) != self.denominator:
            raise InputError("numerators must sum to the denominator exactly")


@dataclass(frozen=True)
class SubsetSums:
    """Per-group weight totals q_i for one partition."""

    sums: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        sums = tuple(self.sums)
        object.__setattr__(self, "sums", sums)
        if sum(sums) != self.total:
            raise InputError("subset sums must conserve the instance total")


# --- operations -------------------------------------------------------


def parse_instance(text: str) -> Instance:
    """Parse whitespace- or comma-separated decimal weights.

    A '#' starts a comment running to end of line. Raises InputError on
    empty input, non-integer tokens, or nonpositive values.
    """
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    tokens = body.replace(",", " ").split()
    if not tokens:
        raise InputError("no weights found in input")
    weights = []
    for tok in tokens:
        if _TOKEN.match(tok) is None:
            raise InputError(f"not a decimal integer: {tok!r}")
        weights.append(int(tok))
    return Instance(tuple(weights))


def subset_sums(inst: Instance, p: Partition) -> SubsetSums:
    """Per-label weight totals; empty labels yield 0."""
    if len(p.assignment) != len(inst.weights):
        raise InputError(
            f"partition covers {len(p.assignment)} elements, "
            f"instance has {len(inst.weights)}"
        )
    sums = [0] * p.k
    for w, a in zip(inst.weights, p.assignment):
        sums[a] += w
    return SubsetSums(tuple(sums), inst.total)


def marginal_dist(inst: Instance, p: Partition) -> Dist:
    """Distribution of the group label A = f(X): subset sums over M."""
    return Dist(subset_sums(inst, p).sums, inst.total)


def conditional_dist(inst: Instance, p: Partition, label: int) -> Dist:
    """Distribution of X restricted to one group.

    Numerators are the member weights over the group sum; members carries
    the element indices. Raises InputError for an empty group.
    """
    if len(p.assignment) != len(inst.weights):
        raise InputError(
            f"partition covers {len(p.assignment)} elements, "
            f"instance has {len(inst.weights)}"
        )
    if not 0 <= label < p.k:
        raise InputError(f"label {label} outside [0, {p.k})")
    members = tuple(e for e, a in enumerate(p.assignment) if a == label)
    if not members:
        raise InputError(f"group {label} is empty")
    nums = tuple(inst.weights[e] for e in members)
    return Dist(nums, sum(nums), members)


def instance_dist(inst: Instance) -> Dist:
    """Distribution of X itself: weights over M."""
    return Dist(inst.weights, inst.total)
