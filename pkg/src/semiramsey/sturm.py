"""Sturm sequences and exact real-root counting for univariate polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ArgumentError, PreconditionError
from .poly import MultivariatePolynomial, derivative, univariate_divmod

SturmSequence = list  # list[MultivariatePolynomial], g, g', then negated remainders


def sturm_sequence(g: MultivariatePolynomial) -> SturmSequence:
    """Canonical Sturm chain of g: g0 = g, g1 = g', g_i = -rem(g_{i-2}, g_{i-1}).

    Stops before the first identically-zero remainder.  No pseudo-remainders
    and no content normalization: plain exact rational division.
    """
    if g.num_vars != 1:
        raise ArgumentError("sturm_sequence expects a univariate polynomial")
    if g.is_zero():
        raise ArgumentError("sturm_sequence of the zero polynomial is undefined")
    seq = [g]
    d = derivative(g)
    if d.is_zero():
        return seq
    seq.append(d)
    while True:
        _, rem = univariate_divmod(seq[-2], seq[-1])
        if rem.is_zero():
            return seq
        seq.append(-rem)


def sign_changes(values: Sequence[Fraction]) -> int:
    """Sign changes in a sequence, zeros ignored."""
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(g: MultivariatePolynomial, a: Fraction, b: Fraction,
                     seq: SturmSequence | None = None) -> int:
    """Number of distinct real roots of g in the open interval (a, b).

    Requires a < b and g(a) != 0 != g(b).  Roots are counted without
    multiplicity, which is exactly what the Sturm chain delivers.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a >= b:
        raise ArgumentError(f"empty interval ({a}, {b})")
    if seq is None:
        seq = sturm_sequence(g)
    if g.eval([a]) == 0:
        raise PreconditionError(f"g({a}) = 0: endpoint must not be a root", witness=a)
    if g.eval([b]) == 0:
        raise PreconditionError(f"g({b}) = 0: endpoint must not be a root", witness=b)
    at_a = [p.eval([a]) for p in seq]
    at_b = [p.eval([b]) for p in seq]
    return sign_changes(at_a) - sign_changes(at_b)
