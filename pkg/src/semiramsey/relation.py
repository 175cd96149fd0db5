"""Semi-algebraic k-ary relations on ordered point sets.

A relation of arity k on points in R^d is a Boolean combination of
polynomial sign conditions in k*d variables.  Variables are blocked
slot-major: slot s (0-based) occupies variables [s*d, (s+1)*d).
Membership is only ever evaluated on strictly increasing index tuples,
matching the convention that point sets are ordered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ArgumentError
from .poly import MultivariatePolynomial, Scalar, _coef

COMPARISONS = ("ge", "gt", "eq")


@dataclass(frozen=True)
class Atom:
    """Sign condition on one polynomial of the relation: p >= 0, > 0 or = 0."""
    poly_index: int
    cmp: str

    def __post_init__(self):
        if self.cmp not in COMPARISONS:
            raise ArgumentError(f"unknown comparison {self.cmp!r}")
        if self.poly_index < 0:
            raise ArgumentError("negative polynomial index")

    def holds(self, value: Fraction) -> bool:
        if self.cmp == "ge":
            return value >= 0
        if self.cmp == "gt":
            return value > 0
        return value == 0


class Formula:
    """Boolean formula tree over atoms.

    Nodes are immutable and may be shared between parents; evaluation
    memoizes on node identity so shared subtrees cost once.  An AND with
    no children is constant true, an OR with no children constant false.
    """

    __slots__ = ("op", "children", "atom")

    def __init__(self, op: str, children: tuple = (), atom: Atom | None = None):
        if op not in ("and", "or", "not", "atom"):
            raise ArgumentError(f"unknown formula op {op!r}")
        if op == "atom":
            if atom is None:
                raise ArgumentError("atom node needs an Atom")
            children = ()
        elif op == "not":
            if len(children) != 1:
                raise ArgumentError("not takes exactly one child")
        self.op = op
        self.children = tuple(children)
        self.atom = atom

    @classmethod
    def leaf(cls, poly_index: int, cmp: str) -> "Formula":
        return cls("atom", atom=Atom(poly_index, cmp))

    @classmethod
    def all_of(cls, children: Iterable["Formula"]) -> "Formula":
        return cls("and", tuple(children))

    @classmethod
    def any_of(cls, children: Iterable["Formula"]) -> "Formula":
        return cls("or", tuple(children))

    @classmethod
    def negation(cls, child: "Formula") -> "Formula":
        return cls("not", (child,))

    def atoms(self) -> list[Atom]:
        out, seen = [], set()
        self._collect_atoms(out, seen)
        return out

    def _collect_atoms(self, out: list, seen: set):
        if id(self) in seen:
            return
        seen.add(id(self))
        if self.op == "atom":
            out.append(self.atom)
        for ch in self.children:
            ch._collect_atoms(out, seen)

    def max_poly_index(self) -> int:
        return max((a.poly_index for a in self.atoms()), default=-1)

    def evaluate(self, atom_truth: Callable[[Atom], bool], _cache: dict | None = None) -> bool:
        if _cache is None:
            _cache = {}
        key = id(self)
        if key in _cache:
            return _cache[key]
        if self.op == "atom":
            v = atom_truth(self.atom)
        elif self.op == "not":
            v = not self.children[0].evaluate(atom_truth, _cache)
        elif self.op == "and":
            v = all(ch.evaluate(atom_truth, _cache) for ch in self.children)
        else:
            v = any(ch.evaluate(atom_truth, _cache) for ch in self.children)
        _cache[key] = v
        return v

    def size(self) -> int:
        """Node count of the tree with shared nodes counted once."""
        seen = set()
        stack = [self]
        n = 0
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            n += 1
            stack.extend(node.children)
        return n

    def __repr__(self):
        if self.op == "atom":
            return f"p{self.atom.poly_index} {self.atom.cmp} 0"
        if self.op == "not":
            return f"not({self.children[0]!r})"
        joiner = " and " if self.op == "and" else " or "
        inner = joiner.join(repr(c) for c in self.children)
        return f"({inner})" if self.children else ("true" if self.op == "and" else "false")


BooleanFormula = Formula

TRUE = Formula("and")
FALSE = Formula("or")


class SemiAlgebraicRelation:
    """Arity-k relation on R^d given by polynomials and a Boolean formula."""

    def __init__(self, arity: int, point_dim: int,
                 polys: Sequence[MultivariatePolynomial], formula: Formula):
        if arity < 1:
            raise ArgumentError("arity must be at least 1")
        if point_dim < 1:
            raise ArgumentError("point dimension must be at least 1")
        nv = arity * point_dim
        for i, p in enumerate(polys):
            if p.num_vars != nv:
                raise ArgumentError(
                    f"poly {i} has {p.num_vars} variables, expected arity*dim = {nv}")
        top = formula.max_poly_index()
        if top >= len(polys):
            raise ArgumentError(f"formula references poly {top}, only {len(polys)} given")
        self.arity = arity
        self.point_dim = point_dim
        self.polys = tuple(polys)
        self.formula = formula

    def complexity(self) -> int:
        """Description complexity t: ambient dimension, polynomial count and
        max degree all bounded by t."""
        max_deg = max((p.degree() for p in self.polys), default=0)
        return max(self.arity * self.point_dim, len(self.polys), max_deg)

    def holds_on_coords(self, coords: Sequence[Fraction]) -> bool:
        """Evaluate on already-concatenated coordinates of an index tuple."""
        if len(coords) != self.arity * self.point_dim:
            raise ArgumentError("coordinate vector has the wrong length")
        values: dict[int, Fraction] = {}

        def truth(atom: Atom) -> bool:
            v = values.get(atom.poly_index)
            if v is None:
                v = self.polys[atom.poly_index].eval(coords)
                values[atom.poly_index] = v
            return atom.holds(v)

        return self.formula.evaluate(truth)


class OrderedPointSet:
    """Finite ordered list of rational points; indices are 1-based."""

    def __init__(self, dim: int, points: Sequence[Sequence[Scalar]]):
        if dim < 1:
            raise ArgumentError("dimension must be at least 1")
        pts = []
        for p in points:
            if len(p) != dim:
                raise ArgumentError(f"point {p} does not have dimension {dim}")
            pts.append(tuple(_coef(x) for x in p))
        self.dim = dim
        self.points = tuple(pts)

    def __len__(self):
        return len(self.points)

    def point(self, index: int) -> tuple[Fraction, ...]:
        if not 1 <= index <= len(self.points):
            raise ArgumentError(f"point index {index} out of range 1..{len(self.points)}")
        return self.points[index - 1]

    def coords_for(self, indices: Sequence[int]) -> list[Fraction]:
        out: list[Fraction] = []
        for i in indices:
            out.extend(self.point(i))
        return out


def eval_membership(relation: SemiAlgebraicRelation, points: OrderedPointSet,
                    indices: Sequence[int]) -> bool:
    """Whether the index tuple (1-based, strictly increasing) is in the relation."""
    if relation.point_dim != points.dim:
        raise ArgumentError(
            f"relation lives in R^{relation.point_dim}, points in R^{points.dim}")
    if len(indices) != relation.arity:
        raise ArgumentError(
            f"tuple has {len(indices)} indices, relation arity is {relation.arity}")
    for a, b in zip(indices, indices[1:]):
        if a >= b:
            raise ArgumentError(f"indices must be strictly increasing, got {tuple(indices)}")
    return relation.holds_on_coords(points.coords_for(indices))


SignVector = tuple  # tuple of -1 / 0 / +1, one entry per polynomial


def sign_vector(polys: Sequence[MultivariatePolynomial],
                point: Sequence[Scalar]) -> SignVector:
    """Componentwise sign of a polynomial family at a point."""
    out = []
    for p in polys:
        v = p.eval(point)
        out.append(0 if v == 0 else (1 if v > 0 else -1))
    return tuple(out)


def count_distinct_sign_vectors(polys: Sequence[MultivariatePolynomial],
                                points: Iterable[Sequence[Scalar]]) -> int:
    return len({sign_vector(polys, p) for p in points})


def milnor_thom_bound(max_degree: int, family_size: int, dim: int) -> int:
    """Upper bound (50*D*r/d)^d on realized sign vectors of r polynomials of
    degree <= D in R^d, with the rational base rounded up before taking the
    d-th power so the result is an exact integer.

    Hypotheses: r >= d >= 2 and D >= 1.
    """
    if dim < 2 or family_size < dim:
        raise ArgumentError("requires family_size >= dim >= 2")
    if max_degree < 1:
        raise ArgumentError("requires max_degree >= 1")
    base = math.ceil(Fraction(50 * max_degree * family_size, dim))
    return base ** dim
