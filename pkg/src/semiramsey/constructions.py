"""Point-set constructions with matching semi-algebraic relations.

Everything returns exact rational data.  The central pieces are the
one-dimensional ternary base instance, the stepping-up construction that
doubles the exponent (squaring the point count into twice the dimension
and raising the arity by one), a one-dimensional arity-4 family built from
positional digit patterns, and the Frankl-Wilson intersection graph.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (ArgumentError, DegenerateInputError, PreconditionError,
                     ResourceLimitError, MAX_BITS, MAX_POINTS)
from .poly import MultivariatePolynomial, Scalar, _coef
from .relation import (Formula, OrderedPointSet, SemiAlgebraicRelation,
                       eval_membership)
from .rng import SeededRng


@dataclass
class ConstructionInstance:
    """A point set, the relation evaluated on it, the stability radius
    epsilon claimed for it, and provenance describing how it was built."""
    points: OrderedPointSet
    relation: SemiAlgebraicRelation
    epsilon: Fraction
    provenance: dict

    def __post_init__(self):
        if self.relation.point_dim != self.points.dim:
            raise ArgumentError("instance points and relation dimension differ")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ArgumentError("epsilon must be positive")


def tower(height: int, x: int, max_bits: int = MAX_BITS) -> int:
    """Iterated exponential: tower(1, x) = x, tower(i+1, x) = 2**tower(i, x).

    Refuses to build integers wider than max_bits bits.
    """
    if height < 1:
        raise ArgumentError("tower height must be at least 1")
    if x < 0:
        raise ArgumentError("tower argument must be nonnegative")
    value = x
    for _ in range(height - 1):
        if value > max_bits:
            raise ResourceLimitError(f"tower value would exceed {max_bits} bits")
        value = 2 ** value
    return value


# -- base construction ------------------------------------------------------


def _ordering_atoms(arity: int, dim: int):
    """Linear polynomials x_{i+1}[c] - x_i[c] whose positivity says the
    tuple is coordinatewise strictly increasing."""
    nv = arity * dim
    polys = []
    for slot in range(arity - 1):
        for c in range(dim):
            p = (MultivariatePolynomial.variable((slot + 1) * dim + c, nv)
                 - MultivariatePolynomial.variable(slot * dim + c, nv))
            polys.append(p)
    return polys


class _RelationBuilder:
    """Accumulates deduplicated polynomials while a formula is assembled."""

    def __init__(self, arity: int, dim: int):
        self.arity = arity
        self.dim = dim
        self.polys: list[MultivariatePolynomial] = []
        self._index: dict[MultivariatePolynomial, int] = {}

    def atom(self, p: MultivariatePolynomial, cmp: str) -> Formula:
        i = self._index.get(p)
        if i is None:
            i = len(self.polys)
            self.polys.append(p)
            self._index[p] = i
        return Formula.leaf(i, cmp)

    def build(self, formula: Formula) -> SemiAlgebraicRelation:
        return SemiAlgebraicRelation(self.arity, self.dim, self.polys, formula)


def base_relation() -> SemiAlgebraicRelation:
    """Ternary relation on R^1: x1 < x2 < x3 and x1 + x3 - 2*x2 >= -1/2.

    On integer points the last atom agrees with x1 + x3 >= 2*x2 (the value is
    an integer, so >= -1/2 and >= 0 coincide), and the -1/2 slack is what
    makes the instance 1/10-deep rather than boundary-tight.
    """
    rb = _RelationBuilder(3, 1)
    order = [rb.atom(p, "gt") for p in _ordering_atoms(3, 1)]
    x1 = MultivariatePolynomial.variable(0, 3)
    x2 = MultivariatePolynomial.variable(1, 3)
    x3 = MultivariatePolynomial.variable(2, 3)
    mid = x1 + x3 - 2 * x2 + Fraction(1, 2)
    return rb.build(Formula.all_of(order + [rb.atom(mid, "ge")]))


def base_construction(n: int, max_points: int = MAX_POINTS) -> ConstructionInstance:
    """The integers 1..2^n on the line with the ternary base relation.

    Its largest homogeneous subset has size exactly n + 1 (e.g. the powers
    1, 2, 4, ..., 2^n on the inside).
    """
    if n < 1:
        raise ArgumentError("n must be at least 1")
    count = 2 ** n
    if count > max_points:
        raise ResourceLimitError(f"2^{n} points exceeds cap {max_points}")
    points = OrderedPointSet(1, [(i,) for i in range(1, count + 1)])
    return ConstructionInstance(
        points=points,
        relation=base_relation(),
        epsilon=Fraction(1, 10),
        provenance={"kind": "base", "n": n},
    )


# -- delta index ------------------------------------------------------------


def delta_index(a: int, b: int, bits: int) -> int:
    """One plus the highest bit position where a-1 and b-1 differ.

    Defined for distinct a, b in 1..2^bits; symmetric in its arguments.
    """
    if bits < 1:
        raise ArgumentError("bits must be at least 1")
    top = 2 ** bits
    if not (1 <= a <= top and 1 <= b <= top):
        raise ArgumentError(f"arguments must lie in 1..{top}")
    if a == b:
        raise ArgumentError("delta_index needs distinct arguments")
    return ((a - 1) ^ (b - 1)).bit_length()


@dataclass(frozen=True)
class DeltaIndex:
    """The delta map on 1..2^bits for a fixed width."""
    bits: int

    def __call__(self, a: int, b: int) -> int:
        return delta_index(a, b, self.bits)


def verify_delta_properties(bits: int, chains: int = 200, seed: int = 0):
    """Exhaustively check, over all of 1..2^bits:

    A: delta(a, b) != delta(b, c) for every a < b < c, and
    B: delta(a, c) = max(delta(a, b), delta(b, c)) for every a < b < c,
       plus max-of-consecutive over seeded random longer chains.

    Returns (True, None) or (False, witness).  Uses numpy so the N = 10
    case (all ~1.8e8 triples) finishes in seconds.
    """
    import numpy as np

    n = 2 ** bits
    xs = np.arange(n, dtype=np.int64)
    xor = xs[:, None] ^ xs[None, :]
    bl = np.array([v.bit_length() for v in range(n)], dtype=np.int64)
    d = bl[xor]  # d[a-1][b-1] = delta(a, b)

    for mid in range(1, n - 1):
        left = d[:mid, mid]
        right = d[mid, mid + 1:]
        common = np.intersect1d(left, right)
        if common.size:
            value = int(common[0])
            a = int(np.nonzero(left == value)[0][0]) + 1
            c = int(np.nonzero(right == value)[0][0]) + mid + 2
            return False, ("A", (a, mid + 1, c))

    for mid in range(1, n - 1):
        lhs = np.maximum.outer(d[:mid, mid], d[mid, mid + 1:])
        rhs = d[:mid, mid + 1:]
        bad = np.nonzero(lhs != rhs)
        if bad[0].size:
            a = int(bad[0][0]) + 1
            c = int(bad[1][0]) + mid + 2
            return False, ("B", (a, mid + 1, c))

    rng = SeededRng(seed)
    if n >= 3:
        for _ in range(chains):
            length = rng.randint(3, min(12, n))
            chain = sorted(rng.sample(range(1, n + 1), length))
            dmax = max(delta_index(x, y, bits) for x, y in zip(chain, chain[1:]))
            if delta_index(chain[0], chain[-1], bits) != dmax:
                return False, ("B-chain", tuple(chain))
    return True, None


# -- stepping-up: points ----------------------------------------------------


def slope(p: Sequence[Scalar], q: Sequence[Scalar]) -> tuple[Fraction, ...]:
    """Componentwise slope of two points of R^{2d} read as d (x, y) pairs:
    coordinate i is (y'_i - y_i) / (x'_i - x_i)."""
    if len(p) != len(q):
        raise ArgumentError("slope of points with different dimensions")
    if len(p) % 2 or not p:
        raise ArgumentError("slope needs an even-dimensional space")
    p = [_coef(v) for v in p]
    q = [_coef(v) for v in q]
    out = []
    for i in range(0, len(p), 2):
        dx = q[i] - p[i]
        if dx == 0:
            raise DegenerateInputError(
                f"vanishing x-difference in coordinate pair {i // 2}")
        out.append((q[i + 1] - p[i + 1]) / dx)
    return tuple(out)


def _largest_dyadic_below(bound: Fraction, strict: bool) -> Fraction:
    """Largest 1/2^j that is <= bound (or < bound when strict)."""
    if bound <= 0:
        raise ArgumentError("no positive dyadic below a nonpositive bound")
    j = 0
    value = Fraction(1)
    while value > bound or (strict and value == bound):
        j += 1
        value = Fraction(1, 2 ** j)
    return value


def _cross_ball_radius(anchor: Sequence[Fraction], eps: Fraction) -> Fraction:
    """Largest dyadic radius r such that any point of B(0, r) paired with any
    point of B((1, a_1, ..., 1, a_d), r) has componentwise slope within eps/2
    of (a_1, ..., a_d), and the two balls are separated coordinatewise.

    Starts at 1/2 and halves until the exact corner check passes, so the
    result really is the largest 1/2^j that works.  Slopes are monotone in
    the numerator and antitone in the (positive) denominator, so checking the
    four extreme numerator/denominator combinations per coordinate is exact.
    """
    half = eps / 2
    r = Fraction(1, 2)
    while True:
        ok = 2 * r < min(Fraction(1), min(anchor))
        if ok:
            for a in anchor:
                lo_den = 1 - 2 * r
                if lo_den <= 0 or (a + 2 * r) / lo_den > a + half \
                        or (a - 2 * r) / (1 + 2 * r) < a - half:
                    ok = False
                    break
        if ok:
            return r
        r = r / 2


def step_up_points(base: ConstructionInstance,
                   max_points: int = MAX_POINTS) -> tuple[OrderedPointSet, Fraction]:
    """Recursive doubling construction: N base points in R^d with stability
    radius eps give 2^N points in R^{2d}.

    Level m places two shrunken copies of the level m-1 output into dyadic
    boxes at the origin and at (1, a_{m,1}, ..., 1, a_{m,d}) where a_m is the
    m-th base point; the box radius is the largest 1/2^j for which every
    cross-copy slope provably lands within eps/2 of a_m.  Consequently the
    slope of output points i < j always lies within eps/2 of base point
    delta(i, j) in the max norm.

    Returns (points, eps1) where the output is eps1-increasing and every
    cross slope stays within eps of its base point under any perturbation of
    the output points by at most eps1.  Requires every base coordinate to be
    strictly positive (the copy anchored at the origin makes the output
    itself unsuitable for further stepping-up without a translation).
    """
    pts = base.points
    eps = base.epsilon
    n = len(pts)
    if n < 1:
        raise ArgumentError("base must have at least one point")
    if 2 ** n > max_points:
        raise ResourceLimitError(f"2^{n} output points exceeds cap {max_points}")
    violation = _eps_increasing_violation(pts, eps)
    if violation is not None:
        raise PreconditionError("base points are not eps-increasing",
                                witness=violation)
    for i in range(1, n + 1):
        if min(pts.point(i)) <= 0:
            raise PreconditionError(
                "stepping up needs strictly positive base coordinates",
                witness=i)

    d = pts.dim

    def build(m: int) -> list[tuple[Fraction, ...]]:
        if m == 1:
            first = pts.point(1)
            q2 = tuple(itertools.chain.from_iterable(
                (Fraction(1), a) for a in first))
            return [(Fraction(0),) * (2 * d), q2]
        prev = build(m - 1)
        anchor_pt = pts.point(m)
        center = tuple(itertools.chain.from_iterable(
            (Fraction(1), a) for a in anchor_pt))
        radius = _cross_ball_radius(anchor_pt, eps)
        lo = [min(p[c] for p in prev) for c in range(2 * d)]
        span = max(max(p[c] for p in prev) - lo[c] for c in range(2 * d))
        scale = radius / span
        copy1 = [tuple(scale * (p[c] - lo[c]) for c in range(2 * d)) for p in prev]
        copy2 = [tuple(center[c] + scale * (p[c] - lo[c]) for c in range(2 * d))
                 for p in prev]
        return copy1 + copy2

    out = build(n)
    eps1 = _stepped_stability_radius(out, pts, eps)
    return OrderedPointSet(2 * d, out), eps1


def _stepped_stability_radius(out: list, base_pts: OrderedPointSet,
                              eps: Fraction) -> Fraction:
    """Largest dyadic eps1 making the stepped-up output eps1-increasing with
    all perturbed pair slopes still within eps of their base points.

    Analytic per-pair bounds give a candidate which is then verified exactly
    on corner perturbations; the candidate is halved on failure and doubled
    while the next larger dyadic still passes.
    """
    n_out = len(out)
    dim2 = len(out[0])
    bits = n_out.bit_length() - 1
    gap = min(out[i + 1][c] - out[i][c]
              for i in range(n_out - 1) for c in range(dim2))
    pairs = []
    bound = gap / 2
    for i in range(n_out):
        for j in range(i + 1, n_out):
            target = base_pts.point(delta_index(i + 1, j + 1, bits))
            for c in range(len(target)):
                amp = out[j][2 * c] - out[i][2 * c]      # x-difference
                num = out[j][2 * c + 1] - out[i][2 * c + 1]  # y-difference
                pairs.append((amp, num, target[c]))
                t_hi = target[c] + eps
                t_lo = target[c] - eps
                # From (num + 2e)/(amp - 2e) <= t_hi and
                # (num - 2e)/(amp + 2e) >= t_lo, solved for e.
                if 1 + t_hi > 0:
                    bound = min(bound, (t_hi * amp - num) / (2 * (1 + t_hi)))
                if 1 + t_lo > 0:
                    bound = min(bound, (num - t_lo * amp) / (2 * (1 + t_lo)))
                bound = min(bound, amp / 4)

    def passes(e: Fraction) -> bool:
        if 2 * e >= gap:
            return False
        for amp, num, t in pairs:
            if amp - 2 * e <= 0:
                return False
            if (num + 2 * e) / (amp - 2 * e) > t + eps:
                return False
            if (num - 2 * e) / (amp + 2 * e) < t - eps:
                return False
        return True

    eps1 = _largest_dyadic_below(bound, strict=True)
    while not passes(eps1):
        eps1 = eps1 / 2
    while eps1 < 1 and passes(eps1 * 2):
        eps1 = eps1 * 2
    return eps1


# -- stepping-up: relation --------------------------------------------------


def _slope_fractions(arity_out: int, dim2: int):
    """Numerator/denominator polynomials of the slope map between consecutive
    slots of an arity_out tuple in R^dim2 (dim2 = 2d).

    Returns nums[s][c], dens[s][c] for consecutive pair s and coordinate c.
    """
    d = dim2 // 2
    nv = arity_out * dim2
    nums, dens = [], []
    for s in range(arity_out - 1):
        row_n, row_d = [], []
        for c in range(d):
            x_lo = MultivariatePolynomial.variable(s * dim2 + 2 * c, nv)
            y_lo = MultivariatePolynomial.variable(s * dim2 + 2 * c + 1, nv)
            x_hi = MultivariatePolynomial.variable((s + 1) * dim2 + 2 * c, nv)
            y_hi = MultivariatePolynomial.variable((s + 1) * dim2 + 2 * c + 1, nv)
            row_n.append(y_hi - y_lo)
            row_d.append(x_hi - x_lo)
        nums.append(row_n)
        dens.append(row_d)
    return nums, dens


def _clear_denominators(f: MultivariatePolynomial,
                        nums: Sequence[MultivariatePolynomial],
                        dens: Sequence[MultivariatePolynomial]) -> MultivariatePolynomial:
    """Sign-correct substitution x_i -> nums[i]/dens[i] into f.

    Multiplies through by even powers of every denominator, so the result has
    the sign of f at the substituted rational point whenever no denominator
    vanishes.
    """
    if len(nums) != f.num_vars or len(dens) != f.num_vars:
        raise ArgumentError("need a numerator/denominator pair per variable")
    space = nums[0].num_vars
    caps = []
    for i in range(f.num_vars):
        m = max((e[i] for e in f.terms), default=0)
        caps.append(m + (m % 2))  # round up to even
    out = MultivariatePolynomial(space)
    for e, coef in f.terms.items():
        term = MultivariatePolynomial.constant(space, coef)
        for i, k in enumerate(e):
            if k:
                term = term * nums[i] ** k
            rest = caps[i] - k
            if rest:
                term = term * dens[i] ** rest
        out = out + term
    return out


def step_up_relation(base: SemiAlgebraicRelation) -> SemiAlgebraicRelation:
    """Relation of arity k+1 on R^{2d} induced by an arity-k relation on R^d.

    A coordinatewise increasing tuple is a member when one of three patterns
    holds for its consecutive slopes: the second slope is a componentwise
    local minimum; the slopes increase componentwise and the slope tuple
    satisfies the base relation; or the slopes decrease componentwise and the
    reversed slope tuple satisfies the base relation.  All slope conditions
    are written as polynomial atoms by clearing denominators through even
    powers, which preserves signs on tuples with nonvanishing x-differences.
    """
    k = base.arity
    if k < 3:
        raise ArgumentError("stepping up requires base arity at least 3")
    d = base.point_dim
    dim2 = 2 * d
    arity_out = k + 1
    rb = _RelationBuilder(arity_out, dim2)
    nums, dens = _slope_fractions(arity_out, dim2)

    order = Formula.all_of(
        rb.atom(p, "gt") for p in _ordering_atoms(arity_out, dim2))

    def slope_greater(s_hi: int, s_lo: int) -> Formula:
        """Componentwise sigma(s_hi) > sigma(s_lo), denominators cleared."""
        parts = []
        for c in range(d):
            diff = (nums[s_hi][c] * dens[s_lo][c]
                    - nums[s_lo][c] * dens[s_hi][c])
            parts.append(rb.atom(diff * dens[s_hi][c] * dens[s_lo][c], "gt"))
        return Formula.all_of(parts)

    c1 = Formula.all_of([slope_greater(0, 1), slope_greater(2, 1)])

    def base_on_slopes(order_of_slots: Sequence[int]) -> Formula:
        flat_nums = [nums[s][c] for s in order_of_slots for c in range(d)]
        flat_dens = [dens[s][c] for s in order_of_slots for c in range(d)]

        def remap(formula: Formula, table: dict) -> Formula:
            if formula.op == "atom":
                return table[id(formula)]
            return Formula(formula.op,
                           tuple(remap(ch, table) for ch in formula.children))

        table = {}
        for leaf_atom, leaf in _formula_leaves(base.formula):
            cleared = _clear_denominators(
                base.polys[leaf_atom.poly_index], flat_nums, flat_dens)
            table[id(leaf)] = rb.atom(cleared, leaf_atom.cmp)
        return remap(base.formula, table)

    increasing = Formula.all_of(
        slope_greater(s + 1, s) for s in range(k - 1))
    decreasing = Formula.all_of(
        slope_greater(s, s + 1) for s in range(k - 1))
    c2 = Formula.all_of([increasing, base_on_slopes(list(range(k)))])
    c3 = Formula.all_of([decreasing, base_on_slopes(list(range(k - 1, -1, -1)))])

    return rb.build(Formula.all_of([order, Formula.any_of([c1, c2, c3])]))


def _formula_leaves(formula: Formula):
    """Yield (atom, node) for every atom leaf, shared nodes once."""
    seen = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.op == "atom":
            yield node.atom, node
        stack.extend(node.children)


def step_up(base: ConstructionInstance,
            max_points: int = MAX_POINTS) -> ConstructionInstance:
    """Full stepping-up of an instance: points, relation and new epsilon."""
    points, eps1 = step_up_points(base, max_points=max_points)
    return ConstructionInstance(
        points=points,
        relation=step_up_relation(base.relation),
        epsilon=eps1,
        provenance={"kind": "step-up", "base": base.provenance,
                    "base_size": len(base.points)},
    )


def step_up_membership_rule(base: ConstructionInstance,
                            indices: Sequence[int]) -> bool:
    """Combinatorial membership rule for stepped-up tuples, phrased purely in
    terms of delta indices; the polynomial relation must agree with it on the
    constructed points.

    For consecutive deltas (delta_1, ..., delta_k) of an increasing tuple:
    strictly increasing deltas defer to the base relation on the delta-indexed
    base points, strictly decreasing ones to the base relation on the reversed
    tuple, a local minimum at delta_2 is a member, and anything else is not.
    """
    bits = len(base.points)  # stepped-up points are indexed by 1..2^bits
    deltas = [delta_index(a, b, bits) for a, b in zip(indices, indices[1:])]
    k = len(deltas)
    if k < 3:
        raise ArgumentError("rule needs tuples of arity at least 4")
    if all(a < b for a, b in zip(deltas, deltas[1:])):
        return eval_membership(base.relation, base.points, deltas)
    if all(a > b for a, b in zip(deltas, deltas[1:])):
        return eval_membership(base.relation, base.points, deltas[::-1])
    if deltas[0] > deltas[1] and deltas[2] > deltas[1]:
        return True
    return False


# -- one-dimensional arity-4 construction ------------------------------------


def one_dim_k4_relation() -> SemiAlgebraicRelation:
    """Arity-4 relation on the line: x1 < x2 < x3 < x4 and one of

    C1: x2-x1 > x3-x2 and x4-x3 > x3-x2,
    C2: x2-x1 < x3-x2 < x4-x3 and (x2-x1)(x4-x3) >= (x3-x2)^2,
    C3: x2-x1 > x3-x2 > x4-x3 and (x2-x1)(x4-x3) >= (x3-x2)^2.
    """
    rb = _RelationBuilder(4, 1)
    x = [MultivariatePolynomial.variable(i, 4) for i in range(4)]
    d1, d2, d3 = x[1] - x[0], x[2] - x[1], x[3] - x[2]
    order = Formula.all_of(rb.atom(p, "gt") for p in (d1, d2, d3))
    quad = rb.atom(d1 * d3 - d2 * d2, "ge")
    c1 = Formula.all_of([rb.atom(d1 - d2, "gt"), rb.atom(d3 - d2, "gt")])
    c2 = Formula.all_of([rb.atom(d2 - d1, "gt"), rb.atom(d3 - d2, "gt"), quad])
    c3 = Formula.all_of([rb.atom(d1 - d2, "gt"), rb.atom(d2 - d3, "gt"), quad])
    return rb.build(Formula.all_of([order, Formula.any_of([c1, c2, c3])]))


def one_dim_k4_construction(n: int, base: int = 10,
                            max_points: int = MAX_POINTS,
                            max_bits: int = MAX_BITS) -> ConstructionInstance:
    """2^(2^n) points on the line from base-b digit patterns, with the
    arity-4 relation above.

    Point for pattern p: 1 + sum over i < 2^n of p(i) * b^i.  The base b must
    be large enough that every pairwise difference has base-b logarithm within
    1/10 of the highest differing digit position; this is verified exactly by
    comparing (p - q)^10 against powers of b.  Tuples of these points have no
    homogeneous subset of size 2n + 1.
    """
    if n < 1:
        raise ArgumentError("n must be at least 1")
    if base < 2:
        raise ArgumentError("digit base must be at least 2")
    digits = 2 ** n
    count = 2 ** digits
    if count > max_points:
        raise ResourceLimitError(f"2^(2^{n}) points exceeds cap {max_points}")
    if digits * math.log2(base) > max_bits:
        raise ResourceLimitError("coordinates would exceed the bit cap")
    values = []
    for pattern in range(count):
        v = 1
        for i in range(digits):
            if (pattern >> i) & 1:
                v += base ** i
        values.append(v)
    values.sort()
    # Exact check: for p > q with highest differing digit i,
    # b^(10i - 1) < (p - q)^10 < b^(10i + 1).
    for ai in range(len(values)):
        for bi in range(ai + 1, len(values)):
            diff = values[bi] - values[ai]
            i = _top_digit(values[bi] - 1, values[ai] - 1, base, digits)
            tenth = diff ** 10
            if not (base ** (10 * i) < tenth * base and tenth < base ** (10 * i + 1)):
                raise PreconditionError(
                    f"base {base} too small: difference of points "
                    f"{values[ai]} and {values[bi]} is not within a tenth of "
                    f"digit position {i}",
                    witness=(values[ai], values[bi]))
    points = OrderedPointSet(1, [(v,) for v in values])
    return ConstructionInstance(
        points=points,
        relation=one_dim_k4_relation(),
        epsilon=Fraction(1, 10),
        provenance={"kind": "one-dim-k4", "n": n, "base": base,
                    "eps_note": "epsilon records the increasing margin and the "
                                "digit-position slack; deepness is not claimed "
                                "(the quadratic atom is boundary-tight)"},
    )


def _top_digit(a: int, b: int, base: int, digits: int) -> int:
    """Highest base-b digit position where a and b differ."""
    for i in range(digits - 1, -1, -1):
        if (a // base ** i) % base != (b // base ** i) % base:
            return i
    raise ArgumentError("values do not differ")


# -- Frankl-Wilson graph ------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, int(math.isqrt(p)) + 1):
        if p % q == 0:
            return False
    return True


def frankl_wilson_graph(m: int, p: int, max_points: int = MAX_POINTS):
    """Vertices: all (p^2-1)-subsets of 1..m as increasing vectors; edges:
    pairs with intersection size congruent to -1 mod p.

    Returns (points, relation, adjacency) where adjacency is the
    combinatorial edge predicate on 1-based vertex indices and the relation
    is the semi-algebraic encoding by coordinate equalities.  Neither cliques
    nor independent sets exceed binomial(m, p - 1).
    """
    if not _is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    r = p * p - 1
    if m < r:
        raise ArgumentError(f"need m >= p^2 - 1 = {r}")
    count = math.comb(m, r)
    if count > max_points:
        raise ResourceLimitError(f"binomial({m},{r}) vertices exceeds cap {max_points}")
    subsets = list(itertools.combinations(range(1, m + 1), r))
    points = OrderedPointSet(r, subsets)

    def adjacency(i: int, j: int) -> bool:
        inter = len(set(subsets[i - 1]) & set(subsets[j - 1]))
        return inter % p == p - 1

    relation = _frankl_wilson_relation(r, p)
    return points, relation, adjacency


def _frankl_wilson_relation(r: int, p: int) -> SemiAlgebraicRelation:
    """Binary relation counting coordinate equalities x_i = y_j.

    For strictly increasing coordinate vectors the equality pattern is an
    order-preserving matching, so membership (intersection size congruent to
    -1 mod p) is a disjunction over all matchings of an admissible size: the
    matched pairs are equalities and every other pair a strict inequality.
    """
    nv = 2 * r
    rb = _RelationBuilder(2, r)
    diff = {}
    for i in range(r):
        for j in range(r):
            diff[i, j] = (MultivariatePolynomial.variable(i, nv)
                          - MultivariatePolynomial.variable(r + j, nv))
    sizes = [s for s in range(r + 1) if s % p == p - 1]
    patterns = []
    for s in sizes:
        for left in itertools.combinations(range(r), s):
            for right in itertools.combinations(range(r), s):
                matched = set(zip(left, right))
                literals = []
                for i in range(r):
                    for j in range(r):
                        leaf = rb.atom(diff[i, j], "eq")
                        if (i, j) in matched:
                            literals.append(leaf)
                        else:
                            literals.append(Formula.negation(leaf))
                patterns.append(Formula.all_of(literals))
    return rb.build(Formula.any_of(patterns))


# -- stability verifiers ------------------------------------------------------


def _eps_increasing_violation(points: OrderedPointSet, eps: Fraction):
    """First (index, coordinate) whose consecutive gap is not above 2*eps,
    or None when the set is eps-increasing."""
    eps = _coef(eps)
    if eps <= 0:
        raise ArgumentError("eps must be positive")
    for i in range(1, len(points)):
        lo = points.points[i - 1]
        hi = points.points[i]
        for c in range(points.dim):
            if hi[c] - lo[c] <= 2 * eps:
                return i, c
    return None


def verify_eps_increasing(points: OrderedPointSet, eps: Fraction) -> bool:
    """Whether consecutive points exceed each other by more than 2*eps in
    every coordinate, so that arbitrary perturbations within closed eps-balls
    (max norm) preserve strict coordinatewise order."""
    return _eps_increasing_violation(points, eps) is None


def verify_eps_deep_sampled(instance: ConstructionInstance,
                            samples_per_tuple: int = 20,
                            seed: int = 0,
                            eps: Fraction | None = None):
    """Sampled necessary condition for eps-deepness: membership of every
    index tuple must survive perturbing the tuple's points within their
    closed eps-balls.

    Perturbations tried per tuple: every single point pushed to each corner
    of its ball, plus seeded pseudorandom rational perturbations of all
    points at once.  Returns (True, None) or (False, witness) where the
    witness holds the tuple, the perturbed coordinates and both memberships.
    This samples; it can refute deepness but never fully certify it.
    """
    eps = _coef(eps if eps is not None else instance.epsilon)
    if eps <= 0:
        raise ArgumentError("eps must be positive")
    rel = instance.relation
    pts = instance.points
    k = rel.arity
    d = pts.dim
    rng = SeededRng(seed)
    corners = list(itertools.product((-eps, eps), repeat=d))
    for indices in itertools.combinations(range(1, len(pts) + 1), k):
        coords = pts.coords_for(indices)
        original = rel.holds_on_coords(coords)
        trials = []
        for slot in range(k):
            for corner in corners:
                perturbed = list(coords)
                for c in range(d):
                    perturbed[slot * d + c] += corner[c]
                trials.append(perturbed)
        for _ in range(samples_per_tuple):
            perturbed = [v + rng.fraction(-eps, eps) for v in coords]
            trials.append(perturbed)
        for perturbed in trials:
            if rel.holds_on_coords(perturbed) != original:
                return False, {
                    "indices": indices,
                    "perturbed": perturbed,
                    "original": original,
                    "perturbed_membership": not original,
                }
    return True, None
