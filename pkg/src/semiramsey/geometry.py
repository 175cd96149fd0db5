"""Exact computational geometry: orientations, hyperplane arrangements,
one-sided tuples and convex position, all over the rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ArgumentError, DegenerateInputError, PreconditionError
from .poly import MultivariatePolynomial, Scalar, _coef
from .relation import Formula, OrderedPointSet, SemiAlgebraicRelation


# -- exact linear algebra -------------------------------------------------


def det(matrix: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant by fraction-free style elimination over Fraction."""
    n = len(matrix)
    m = [[_coef(x) for x in row] for row in matrix]
    for row in m:
        if len(row) != n:
            raise ArgumentError("determinant of a non-square matrix")
    sign = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / pv
            if factor == 0:
                continue
            row = m[r]
            prow = m[col]
            for c in range(col, n):
                row[c] -= factor * prow[c]
    result = Fraction(sign)
    for i in range(n):
        result *= m[i][i]
    return result


def solve_linear_system(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> list[Fraction]:
    """Solve a square system exactly; raises DegenerateInputError if singular."""
    n = len(a)
    m = [[_coef(x) for x in row] + [_coef(bv)] for row, bv in zip(a, b)]
    if any(len(row) != n + 1 for row in m) or len(m) != n:
        raise ArgumentError("system shape mismatch")
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise DegenerateInputError("singular linear system")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _sym_det(entries: Sequence[Sequence[MultivariatePolynomial]]) -> MultivariatePolynomial:
    """Symbolic determinant by Leibniz expansion (rows of polynomials)."""
    n = len(entries)
    nv = entries[0][0].num_vars
    out = MultivariatePolynomial(nv)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n)
                         if perm[i] > perm[j])
        term = MultivariatePolynomial.constant(nv, (-1) ** inversions)
        for row, col in enumerate(perm):
            term = term * entries[row][col]
        out = out + term
    return out


# -- point orientation ----------------------------------------------------


def orientation(points: Sequence[Sequence[Scalar]]) -> int:
    """Sign of det of the (d+1)x(d+1) matrix whose j-th column is (1, p_j).

    Takes exactly d+1 points in R^d; returns -1, 0 or +1.
    """
    k = len(points)
    if k < 2:
        raise ArgumentError("orientation needs at least two points")
    d = len(points[0])
    if k != d + 1:
        raise ArgumentError(f"orientation in R^{d} needs {d + 1} points, got {k}")
    for p in points:
        if len(p) != d:
            raise ArgumentError("points of mixed dimension")
    matrix = [[Fraction(1)] * k] + [[_coef(p[i]) for p in points] for i in range(d)]
    v = det(matrix)
    return 0 if v == 0 else (1 if v > 0 else -1)


def orientation_polynomial(dim: int) -> MultivariatePolynomial:
    """The orientation determinant as a polynomial in (d+1)*d variables,
    blocked slot-major (point j occupies variables [j*d, (j+1)*d))."""
    d = dim
    nv = (d + 1) * d
    one = MultivariatePolynomial.constant(nv, 1)
    rows = [[one] * (d + 1)]
    for coord in range(d):
        rows.append([MultivariatePolynomial.variable(j * d + coord, nv)
                     for j in range(d + 1)])
    return _sym_det(rows)


def order_type_relation(dim: int) -> SemiAlgebraicRelation:
    """(d+1)-ary relation holding on positively oriented tuples."""
    if dim < 1:
        raise ArgumentError("dimension must be at least 1")
    p = orientation_polynomial(dim)
    return SemiAlgebraicRelation(dim + 1, dim, [p], Formula.leaf(0, "gt"))


def general_position_points(points: OrderedPointSet):
    """All (d+1)-subsets have nonzero orientation.

    Returns (True, None) or (False, witness_indices).
    """
    d = points.dim
    n = len(points)
    idx = range(1, n + 1)
    for combo in itertools.combinations(idx, d + 1):
        if orientation([points.point(i) for i in combo]) == 0:
            return False, combo
    return True, None


# -- hyperplane arrangements ----------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane sum_i a[i] * x_i = b in R^d."""
    a: tuple
    b: Fraction

    @classmethod
    def make(cls, a: Sequence[Scalar], b: Scalar) -> "Hyperplane":
        coeffs = tuple(_coef(x) for x in a)
        if all(x == 0 for x in coeffs):
            raise ArgumentError("hyperplane needs a nonzero normal vector")
        return cls(coeffs, _coef(b))

    @property
    def dim(self) -> int:
        return len(self.a)

    def side(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.dim:
            raise ArgumentError("point/hyperplane dimension mismatch")
        return sum((c * _coef(x) for c, x in zip(self.a, point)), Fraction(0)) - self.b

    def representation_point(self) -> tuple[Fraction, ...]:
        """The point (a_1, ..., a_d, b) in R^{d+1} used by one_sided_relation."""
        return self.a + (self.b,)

    def proportional_to(self, other: "Hyperplane") -> bool:
        """Same hyperplane as a set (coefficient vectors parallel, same b ratio)."""
        if self.dim != other.dim:
            return False
        ratio = None
        for x, y in zip(self.a + (self.b,), other.a + (other.b,)):
            if (x == 0) != (y == 0):
                return False
            if x != 0:
                r = y / x
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
        return ratio is not None and ratio != 0


class Arrangement:
    """Ordered list of hyperplanes in a common dimension."""

    def __init__(self, dim: int, hyperplanes: Sequence[Hyperplane]):
        if dim < 1:
            raise ArgumentError("dimension must be at least 1")
        for h in hyperplanes:
            if h.dim != dim:
                raise ArgumentError("hyperplane of wrong dimension in arrangement")
        self.dim = dim
        self.hyperplanes = tuple(hyperplanes)

    def __len__(self):
        return len(self.hyperplanes)

    def hyperplane(self, index: int) -> Hyperplane:
        if not 1 <= index <= len(self.hyperplanes):
            raise ArgumentError(f"hyperplane index {index} out of range")
        return self.hyperplanes[index - 1]

    def representation_points(self) -> OrderedPointSet:
        return OrderedPointSet(self.dim + 1,
                               [h.representation_point() for h in self.hyperplanes])


def hyperplane_intersection(hyperplanes: Sequence[Hyperplane]) -> tuple[Fraction, ...]:
    """Common point of d hyperplanes in R^d (exact; error if not unique)."""
    if not hyperplanes:
        raise ArgumentError("no hyperplanes given")
    d = hyperplanes[0].dim
    if len(hyperplanes) != d:
        raise ArgumentError(f"need exactly {d} hyperplanes in R^{d}")
    a = [h.a for h in hyperplanes]
    b = [h.b for h in hyperplanes]
    return tuple(solve_linear_system(a, b))


def general_position_hyperplanes(arr: Arrangement):
    """Every d-subset meets in a single point and those points are pairwise
    distinct.  Returns (True, None) or (False, witness)."""
    d = arr.dim
    n = len(arr)
    vertices = {}
    for combo in itertools.combinations(range(1, n + 1), d):
        try:
            v = hyperplane_intersection([arr.hyperplane(i) for i in combo])
        except DegenerateInputError:
            return False, combo
        if v in vertices:
            return False, (vertices[v], combo)
        vertices[v] = combo
    return True, None


def one_sided_relation(dim: int) -> SemiAlgebraicRelation:
    """d-ary relation on hyperplane representation points in R^{d+1}.

    A d-tuple of hyperplanes is in the relation when their common point has
    positive last coordinate.  By Cramer's rule that coordinate is a ratio
    det(A_d)/det(A) of two determinants in the representation coordinates,
    so positivity is the single polynomial condition det(A_d)*det(A) > 0.
    Singular tuples make the product vanish and are therefore non-members.
    """
    d = dim
    if d < 1:
        raise ArgumentError("dimension must be at least 1")
    nv = d * (d + 1)

    def entry(slot: int, coord: int) -> MultivariatePolynomial:
        return MultivariatePolynomial.variable(slot * (d + 1) + coord, nv)

    coeff_rows = [[entry(i, j) for j in range(d)] for i in range(d)]
    numer_rows = [[entry(i, j) for j in range(d - 1)] + [entry(i, d)] for i in range(d)]
    p = _sym_det(numer_rows) * _sym_det(coeff_rows)
    return SemiAlgebraicRelation(d, d + 1, [p], Formula.leaf(0, "gt"))


def is_one_sided(arr: Arrangement, reference: Hyperplane | None = None):
    """Whether all arrangement vertices lie strictly on one side of the
    reference hyperplane (default x_d = 0).

    Requires the arrangement in general position.  Returns (True, sign) or
    (False, witness_combo).
    """
    d = arr.dim
    ok, witness = general_position_hyperplanes(arr)
    if not ok:
        raise PreconditionError("arrangement not in general position", witness=witness)
    if reference is None:
        normal = [Fraction(0)] * d
        normal[d - 1] = Fraction(1)
        reference = Hyperplane.make(normal, 0)
    seen_sign = 0
    for combo in itertools.combinations(range(1, len(arr) + 1), d):
        v = hyperplane_intersection([arr.hyperplane(i) for i in combo])
        s = reference.side(v)
        if s == 0:
            return False, combo
        s = 1 if s > 0 else -1
        if seen_sign == 0:
            seen_sign = s
        elif s != seen_sign:
            return False, combo
    return True, seen_sign


def project_onto_hyperplane(arr: Arrangement, pivot_index: int):
    """Central-chart projection of an arrangement into a pivot hyperplane.

    Each member h is replaced by h intersected with the pivot, written in the
    chart that drops the coordinate axis of the pivot's largest-|coefficient|
    entry (ties: higher index).  Returns (projected arrangement in R^{d-1},
    image of the hyperplane x_d = 0).  Members parallel to the pivot are
    degenerate and rejected; when the floor x_d = 0 itself is parallel to
    the pivot its image is None instead of a chart hyperplane.
    """
    d = arr.dim
    if d < 3:
        raise ArgumentError("projection needs ambient dimension at least 3")
    pivot = arr.hyperplane(pivot_index)
    drop = max(range(d), key=lambda i: (abs(pivot.a[i]), i))
    cm = pivot.a[drop]

    def image_of(h: Hyperplane) -> Hyperplane | None:
        coeffs = [h.a[i] * cm - h.a[drop] * pivot.a[i] for i in range(d) if i != drop]
        rhs = h.b * cm - h.a[drop] * pivot.b
        if all(c == 0 for c in coeffs):
            return None
        return Hyperplane.make(coeffs, rhs)

    members = []
    for i, h in enumerate(arr.hyperplanes, start=1):
        if i == pivot_index:
            continue
        image = image_of(h)
        if image is None:
            raise DegenerateInputError(
                "member parallel to the pivot has no hyperplane image in the chart")
        members.append(image)
    floor_normal = [Fraction(0)] * d
    floor_normal[d - 1] = Fraction(1)
    floor_image = image_of(Hyperplane.make(floor_normal, 0))
    return Arrangement(d - 1, members), floor_image


def is_convex_position(points: OrderedPointSet) -> bool:
    """Whether every point is a vertex of the convex hull (planar, exact).

    Requires general position (raises PreconditionError otherwise, with the
    offending triple as witness).
    """
    if points.dim != 2:
        raise ArgumentError("convex position test is for planar point sets")
    ok, witness = general_position_points(points)
    if not ok:
        raise PreconditionError("points not in general position", witness=witness)
    n = len(points)
    for q in range(1, n + 1):
        others = [i for i in range(1, n + 1) if i != q]
        qp = points.point(q)
        for tri in itertools.combinations(others, 3):
            a, b, c = (points.point(i) for i in tri)
            s1 = orientation([a, b, qp])
            s2 = orientation([b, c, qp])
            s3 = orientation([c, a, qp])
            if s1 == s2 == s3:
                return False
    return True
