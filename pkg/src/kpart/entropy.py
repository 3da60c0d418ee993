"""Entropy metrics over exact integer distributions, in bits (log base 2)."""

from __future__ import annotations

import math

from .core import Dist, InputError, Instance, Partition, instance_dist, marginal_dist

Bits = float


def shannon_entropy(d: Dist) -> Bits:
    """H(d) = sum over i of (n_i/D) * log2(D/n_i).

    Zero numerators contribute nothing (0 * log 0 = 0). The weighted sum is
    accumulated with math.fsum, so the result does not depend on entry order.
    """
    dd = d.denominator
    acc = math.fsum(n * math.log2(n) for n in d.numerators if n)
    h = math.log2(dd) - acc / dd
    return h if h > 0.0 else 0.0


def min_entropy(d: Dist) -> Bits:
    """H_inf(d) = -log2(max_i n_i / D), a lower bound on shannon_entropy."""
    m = max(d.numerators)
    if m <= 0:
        raise InputError("distribution has no mass")
    h = math.log2(d.denominator) - math.log2(m)
    return h if h > 0.0 else 0.0


def conditional_entropy(inst: Instance, p: Partition) -> Bits:
    """H(X|A) = H(X) - H(A), clamped at zero against float residue.

    A = f(X) is a function of X, so conditioning on the group label removes
    exactly H(A) bits of uncertainty.
    """
    h = shannon_entropy(instance_dist(inst)) - shannon_entropy(marginal_dist(inst, p))
    return h if h > 0.0 else 0.0


def grouping_identity_residual(d: Dist, r: int) -> float:
    """|LHS - RHS| of the two-block grouping identity, split at position r.

    The identity decomposes H(d) into the entropy of the coarse two-block
    distribution (mass before r vs from r on) plus the mass-weighted
    entropies of the two conditional halves. Test-suite helper; the residual
    should vanish up to float noise.
    """
    k = len(d.numerators)
    if not 1 <= r <= k - 1:
        raise InputError(f"split point {r} outside [1, {k - 1}]")
    left = d.numerators[:r]
    right = d.numerators[r:]
    ql = sum(left)
    qr = sum(right)
    if ql == 0 or qr == 0:
        raise InputError("degenerate split: a half with zero mass has no conditional")
    dd = d.denominator
    lhs = shannon_entropy(d)
    rhs = (
        shannon_entropy(Dist((ql, qr), dd))
        + (ql / dd) * shannon_entropy(Dist(left, ql))
        + (qr / dd) * shannon_entropy(Dist(right, qr))
    )
    return abs(lhs - rhs)
