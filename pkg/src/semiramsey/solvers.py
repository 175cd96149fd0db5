"""Homogeneous-subset solvers and hypergraph routines.

max_homogeneous is an exact branch-and-bound over both polarities.
erdos_rado_greedy is the recursive class-refinement extraction: it seeds
k-2 points, repeatedly keeps the largest membership-signature class, and
recurses on a relation of one lower arity obtained by fixing the last
chosen point, certifying the final subset against the original relation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (ArgumentError, BudgetExhaustedError, PreconditionError,
                     ResourceLimitError)
from .poly import MultivariatePolynomial
from .relation import (OrderedPointSet, SemiAlgebraicRelation, eval_membership,
                       milnor_thom_bound)
from .rng import SeededRng


@dataclass
class HomogeneousResult:
    """A homogeneous subset: indices (1-based, increasing), which side of the
    relation they all fall on, whether homogeneity was re-verified
    exhaustively, and solver statistics (including whether the subset is a
    certified maximum)."""
    subset: tuple
    polarity: str  # "in" or "out"
    certified: bool
    stats: dict = field(default_factory=dict)


def _membership_oracle(points: OrderedPointSet, relation: SemiAlgebraicRelation):
    """Memoized membership for index tuples."""
    cache: dict[tuple, bool] = {}

    def member(indices: tuple) -> bool:
        v = cache.get(indices)
        if v is None:
            v = eval_membership(relation, points, indices)
            cache[indices] = v
        return v

    return member


def max_homogeneous(points: OrderedPointSet, relation: SemiAlgebraicRelation,
                    budget: int = 10 ** 6) -> HomogeneousResult:
    """Maximum homogeneous subset by branch and bound over both polarities.

    Candidates are filtered so that every arity-subset of the partial set
    stays on the chosen side; the search is pruned when the remaining
    candidates cannot beat the best subset found.  If the node budget runs
    out the best subset found so far is returned with stats["maximum"] set
    to False (it is still a certified homogeneous subset).
    """
    n = len(points)
    k = relation.arity
    if n < 1:
        raise ArgumentError("empty point set")
    member = _membership_oracle(points, relation)
    nodes = 0
    exhausted = False

    def search(polarity_value: bool) -> tuple:
        nonlocal nodes, exhausted
        best: tuple = ()

        def extend(current: list[int], candidates: list[int]):
            nonlocal best, nodes, exhausted
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            if len(current) > len(best):
                best = tuple(current)
            for pos, cand in enumerate(candidates):
                if len(current) + len(candidates) - pos <= len(best):
                    break
                if exhausted:
                    return
                ok = True
                if len(current) >= k - 1:
                    for prefix in itertools.combinations(current, k - 1):
                        if member(prefix + (cand,)) != polarity_value:
                            ok = False
                            break
                if not ok:
                    continue
                extend(current + [cand], candidates[pos + 1:])

        extend([], list(range(1, n + 1)))
        return best

    best_in = search(True)
    best_out = search(False)
    if len(best_in) >= len(best_out):
        subset, polarity = best_in, "in"
    else:
        subset, polarity = best_out, "out"
    certified = _certify(member, subset, k, polarity)
    return HomogeneousResult(
        subset=subset,
        polarity=polarity,
        certified=certified,
        stats={"nodes": nodes, "maximum": not exhausted,
               "method": "branch-and-bound"},
    )


def _certify(member: Callable, subset: tuple, k: int, polarity: str) -> bool:
    want = polarity == "in"
    if len(subset) < k:
        return True
    return all(member(tup) == want
               for tup in itertools.combinations(subset, k))


def homogeneous_check(points: OrderedPointSet, relation: SemiAlgebraicRelation,
                      subset: Sequence[int]):
    """Polarity of a subset if homogeneous, else (None, witnesses)."""
    member = _membership_oracle(points, relation)
    k = relation.arity
    subset = tuple(sorted(subset))
    if len(subset) < k:
        return "in", None
    values = {member(t) for t in itertools.combinations(subset, k)}
    if values == {True}:
        return "in", None
    if values == {False}:
        return "out", None
    return None, subset


# -- greedy extraction --------------------------------------------------------


def erdos_rado_greedy(points: OrderedPointSet, relation: SemiAlgebraicRelation,
                      budget: int = 10 ** 6,
                      log_classes: bool = True) -> HomogeneousResult:
    """Greedy homogeneous-subset extraction for arity >= 3.

    One pass: seed the first k-2 points, then repeatedly take the smallest-
    indexed survivor q and split the rest by the truth values of every atom
    polynomial restricted at (each (k-2)-subset of chosen points, q, .),
    keeping a largest class (ties to the one holding the smallest index).
    Fixing the last chosen point in the final slot then drops the arity by
    one; at arity 2 an exact budgeted search finishes the job.  The returned
    subset is re-certified exhaustively against the original relation.
    """
    k = relation.arity
    if k < 3:
        raise ArgumentError("greedy extraction needs arity at least 3")
    if len(points) < k:
        raise ArgumentError("need at least arity many points")
    if relation.point_dim != points.dim:
        raise ArgumentError("relation/point dimension mismatch")

    classes_per_level: list[list[int]] = []
    coords = [points.point(i) for i in range(1, len(points) + 1)]
    indices = list(range(1, len(points) + 1))
    subset = _greedy_level(coords, indices, relation, budget, classes_per_level)
    subset = tuple(sorted(subset))

    member = _membership_oracle(points, relation)
    polarity, witness = _subset_polarity(member, subset, k)
    certified = polarity is not None
    if not certified:
        raise AssertionError(
            f"greedy produced a non-homogeneous subset, witness {witness}")
    return HomogeneousResult(
        subset=subset,
        polarity=polarity,
        certified=True,
        stats={"classes_per_level": classes_per_level, "method": "greedy"},
    )


def _subset_polarity(member, subset: tuple, k: int):
    if len(subset) < k:
        return "in", None
    seen_true = seen_false = False
    for tup in itertools.combinations(subset, k):
        if member(tup):
            seen_true = True
        else:
            seen_false = True
        if seen_true and seen_false:
            return None, tup
    return ("in" if seen_true else "out"), None


def _greedy_level(coords: list, indices: list[int],
                  relation: SemiAlgebraicRelation, budget: int,
                  classes_log: list) -> list[int]:
    """One arity level of the greedy recursion; returns original indices."""
    k = relation.arity
    d = relation.point_dim
    if k == 2:
        pts = OrderedPointSet(d, coords)
        res = max_homogeneous(pts, relation, budget=budget)
        return [indices[i - 1] for i in res.subset]

    chosen: list[int] = list(range(k - 2))       # positions into coords
    survivors = list(range(k - 2, len(coords)))
    level_log: list[int] = []

    # cache[(poly, prefix-positions)] = polynomial with the first k-2 slots
    # fixed, leaving the last two slots (2d variables) free
    prefix_cache: dict[tuple, MultivariatePolynomial] = {}

    def prefix_restricted(pi: int, prefix: tuple) -> MultivariatePolynomial:
        key = (pi, prefix)
        got = prefix_cache.get(key)
        if got is None:
            fixed = {}
            for slot, pos in enumerate(prefix):
                for c in range(d):
                    fixed[slot * d + c] = coords[pos][c]
            got = relation.polys[pi].restrict(fixed)
            prefix_cache[key] = got
        return got

    while survivors:
        q = survivors.pop(0)
        chosen.append(q)
        if not survivors:
            break
        # Signature of a survivor w: truth of every atom polynomial of the
        # relation restricted at ((k-2)-subset of earlier chosen, q, w).
        restricted: list[tuple[MultivariatePolynomial, str]] = []
        atom_cmps = {}
        for atom in relation.formula.atoms():
            atom_cmps.setdefault(atom.poly_index, set()).add(atom.cmp)
        poly_indices = sorted(atom_cmps)
        for prefix in itertools.combinations(chosen[:-1], k - 2):
            for pi in poly_indices:
                half = prefix_restricted(pi, prefix)
                fixed = {c: coords[q][c] for c in range(d)}
                restricted.append((half.restrict(fixed), pi))
        groups: dict[tuple, list[int]] = {}
        for w in survivors:
            sig = []
            for rp, pi in restricted:
                value = rp.eval(coords[w])
                for cmp in sorted(atom_cmps[pi]):
                    if cmp == "ge":
                        sig.append(value >= 0)
                    elif cmp == "gt":
                        sig.append(value > 0)
                    else:
                        sig.append(value == 0)
            groups.setdefault(tuple(sig), []).append(w)
        level_log.append((len(chosen) - 1, len(groups)))
        survivors = max(groups.values(), key=lambda g: (len(g), -g[0]))

    classes_log.append(level_log)

    # Fix the last chosen point into the final slot: arity drops by one.
    last = chosen[-1]
    rest = chosen[:-1]
    fixed = {(k - 1) * d + c: coords[last][c] for c in range(d)}
    lower = SemiAlgebraicRelation(
        k - 1, d, [p.restrict(fixed) for p in relation.polys], relation.formula)
    inner = _greedy_level([coords[i] for i in rest],
                          [indices[i] for i in rest], lower, budget, classes_log)
    return inner + [indices[last]]


def greedy_class_bound_check(relation: SemiAlgebraicRelation,
                             classes_at_step: int, chosen: int) -> bool | None:
    """Compare an observed class count at a greedy step against the sign-
    pattern bound for the restricted family (None when the bound's
    hypotheses do not apply)."""
    k = relation.arity
    d = relation.point_dim
    t = len(relation.polys)
    family = t * math.comb(chosen, k - 2)
    deg = max((p.degree() for p in relation.polys), default=0)
    if d < 2 or family < d or deg < 1:
        return None
    return classes_at_step <= milnor_thom_bound(deg, family, d)


# -- monotone subsequences ----------------------------------------------------


def longest_monotone_subsequence(values: Sequence) -> list:
    """Longest strictly increasing or strictly decreasing subsequence
    (the longer of the two) by exact dynamic programming.

    Entries must be distinct.  Always at least ceil(sqrt(len(values))) long.
    """
    vals = [v if isinstance(v, (int, Fraction)) else Fraction(v)
            for v in values]
    if len(set(vals)) != len(vals):
        raise ArgumentError("entries must be distinct")
    if not vals:
        return []

    def longest(cmp) -> list:
        n = len(vals)
        length = [1] * n
        prev = [-1] * n
        for i in range(n):
            for j in range(i):
                if cmp(vals[j], vals[i]) and length[j] + 1 > length[i]:
                    length[i] = length[j] + 1
                    prev[i] = j
        end = max(range(n), key=lambda i: length[i])
        out = []
        while end != -1:
            out.append(vals[end])
            end = prev[end]
        return out[::-1]

    inc = longest(lambda a, b: a < b)
    dec = longest(lambda a, b: a > b)
    return inc if len(inc) >= len(dec) else dec


# -- transitive Ramsey --------------------------------------------------------


@dataclass
class TransitiveColoring:
    """2-coloring of the triples of 1..n, transitive when any two triples
    (i1,i2,i3), (i2,i3,i4) of one color force (i1,i2,i4) and (i1,i3,i4)
    into that color."""
    n: int
    colors: dict  # sorted triple -> "red" | "blue"

    def color(self, triple) -> str:
        return self.colors[tuple(sorted(triple))]

    def is_transitive(self) -> bool:
        for quad in itertools.combinations(range(1, self.n + 1), 4):
            i1, i2, i3, i4 = quad
            c = self.colors.get((i1, i2, i3))
            if c is not None and c == self.colors.get((i2, i3, i4)):
                if (self.colors.get((i1, i2, i4)) != c
                        or self.colors.get((i1, i3, i4)) != c):
                    return False
        return True

    def monochromatic_subset(self, size: int, color: str):
        need = math.comb(size, 3)
        for sub in itertools.combinations(range(1, self.n + 1), size):
            if need == 0 or all(self.colors[t] == color
                                for t in itertools.combinations(sub, 3)):
                return sub
        return None


def transitive_ramsey_number(s: int, n: int) -> int:
    """Least N such that every transitive 2-coloring of triples of 1..N has
    a red clique of size s or a blue clique of size n:
    binomial(s + n - 4, s - 2) + 1."""
    if s < 3 or n < 3:
        raise ArgumentError("both clique sizes must be at least 3")
    return math.comb(s + n - 4, s - 2) + 1


def verify_transitive_ramsey(s: int, n: int, N: int,
                             budget: int = 10 ** 7):
    """Check whether every transitive coloring of triples of 1..N contains a
    red K_s or blue K_n, by backtracking over transitivity-consistent
    colorings with early pruning of completed monochromatic cliques.

    Returns (True, None) or (False, witness_coloring).  Raises
    BudgetExhaustedError when the node budget runs out (inconclusive).
    """
    if s < 3 or n < 3:
        raise ArgumentError("both clique sizes must be at least 3")
    if N < 1:
        raise ArgumentError("N must be positive")
    triples = list(itertools.combinations(range(1, N + 1), 3))
    colors: dict[tuple, str] = {}
    nodes = 0

    def consistent_after(t: tuple, c: str) -> bool:
        # The triple t = (i2, i3, i4) is the lexicographically largest of its
        # 4-sets {i1 < i2 < i3 < i4}; check those transitivity constraints.
        i2, i3, i4 = t
        for i1 in range(1, i2):
            a = colors.get((i1, i2, i3))
            if a == c:
                if colors.get((i1, i2, i4)) != c or colors.get((i1, i3, i4)) != c:
                    return False
        return True

    def completes_clique(t: tuple, c: str, size: int) -> bool:
        if math.comb(size, 3) > len(colors) + 1:
            return False
        others = [v for v in range(1, N + 1) if v not in t]
        for extra in itertools.combinations(others, size - 3):
            group = tuple(sorted(t + extra))
            if all(colors.get(tr) == c or tr == t
                   for tr in itertools.combinations(group, 3)):
                return True
        return False

    def assign(pos: int):
        nonlocal nodes
        if pos == len(triples):
            coloring = TransitiveColoring(N, dict(colors))
            if (coloring.monochromatic_subset(s, "red") is None
                    and coloring.monochromatic_subset(n, "blue") is None):
                return coloring
            return None
        t = triples[pos]
        for c, limit in (("red", s), ("blue", n)):
            nodes += 1
            if nodes > budget:
                raise BudgetExhaustedError(
                    f"transitive-coloring search exceeded {budget} nodes")
            if not consistent_after(t, c):
                continue
            if completes_clique(t, c, limit):
                continue
            colors[t] = c
            found = assign(pos + 1)
            if found is not None:
                return found
            del colors[t]
        return None

    witness = assign(0)
    if witness is None:
        return True, None
    return False, witness


# -- 3-uniform hypergraphs ----------------------------------------------------


@dataclass
class Hypergraph3:
    """3-uniform hypergraph on vertices 1..n."""
    n: int
    edges: frozenset

    @classmethod
    def make(cls, n: int, edges) -> "Hypergraph3":
        clean = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != 3 or len(set(t)) != 3:
                raise ArgumentError(f"edge {e} is not a 3-set")
            if not all(1 <= v <= n for v in t):
                raise ArgumentError(f"edge {e} out of vertex range")
            clean.add(t)
        return cls(n, frozenset(clean))

    def is_independent(self, vertices) -> bool:
        vs = set(vertices)
        return not any(set(e) <= vs for e in self.edges)


def spencer_independent_set(graph: Hypergraph3, seed: int = 0,
                            max_rounds: int = 10 ** 4) -> tuple[list[int], dict]:
    """Deletion-method independent set of size at least
    (2N/3) * sqrt(N / (3|E|)) for hypergraphs with |E| >= N/3.

    Samples vertices with probability sqrt(N / (3|E|)), deletes one vertex of
    every surviving edge, and retries with fresh seeded randomness until the
    exact integer comparison 27 * |S|^2 * |E| >= 4 * N^3 certifies the bound
    (at most max_rounds attempts).  Returns (vertices, stats).
    """
    n = graph.n
    m = len(graph.edges)
    if m * 3 < n:
        raise PreconditionError(
            f"needs at least N/3 edges, got {m} for N = {n}")
    p = math.sqrt(n / (3 * m))
    rng = SeededRng(seed)
    for round_no in range(1, max_rounds + 1):
        sampled = {v for v in range(1, n + 1) if rng.random() < p}
        surviving = [e for e in graph.edges if set(e) <= sampled]
        for e in sorted(surviving):
            if set(e) <= sampled:
                sampled.discard(max(e))
        result = sorted(sampled)
        assert graph.is_independent(result)
        if 27 * len(result) ** 2 * m >= 4 * n ** 3:
            return result, {"rounds": round_no, "probability": p,
                            "bound_check": f"27*{len(result)}^2*{m} >= 4*{n}^3"}
    raise ResourceLimitError(
        f"no round out of {max_rounds} met the deletion bound")


def is_Ks3_free(points: OrderedPointSet, relation: SemiAlgebraicRelation,
                s: int):
    """No s points with all triples in the relation.  (True, None) or
    (False, witness_subset)."""
    if relation.arity != 3:
        raise ArgumentError("clique freeness is for ternary relations")
    if s < 3:
        raise ArgumentError("clique size must be at least 3")
    member = _membership_oracle(points, relation)
    for sub in itertools.combinations(range(1, len(points) + 1), s):
        if all(member(t) for t in itertools.combinations(sub, 3)):
            return False, sub
    return True, None


def is_K4e_free(points: OrderedPointSet, relation: SemiAlgebraicRelation):
    """Every 4 points induce at most two member triples.  (True, None) or
    (False, witness_quad)."""
    if relation.arity != 3:
        raise ArgumentError("this freeness notion is for ternary relations")
    member = _membership_oracle(points, relation)
    for quad in itertools.combinations(range(1, len(points) + 1), 4):
        if sum(member(t) for t in itertools.combinations(quad, 3)) > 2:
            return False, quad
    return True, None


def find_bad_triples(points: OrderedPointSet, relation: SemiAlgebraicRelation):
    """Index triples where a defining polynomial, restricted through two of
    the points, vanishes at the third.

    For each index pair a < b, each atom polynomial is pinned at (p_a, p_b)
    in each of the three slot pairs; identically-zero restrictions impose no
    roots and are skipped but reported.  A triple is bad when any surviving
    univariate polynomial vanishes at a third point.  Returns
    (sorted_bad_triples, skipped_zero_restrictions).
    """
    if relation.arity != 3 or relation.point_dim != 1:
        raise ArgumentError("bad triples are defined for ternary relations on the line")
    n = len(points)
    vals = [points.point(i)[0] for i in range(1, n + 1)]
    bad: set[tuple] = set()
    skipped: list[tuple] = []
    slot_pairs = (((1, 2), 0), ((0, 2), 1), ((0, 1), 2))  # fixed slots, free slot
    for a in range(n):
        for b in range(a + 1, n):
            family = []
            for pi, poly in enumerate(relation.polys):
                for fixed_slots, free in slot_pairs:
                    restricted = poly.restrict({fixed_slots[0]: vals[a],
                                                fixed_slots[1]: vals[b]})
                    if restricted.is_zero():
                        skipped.append((a + 1, b + 1, pi, free))
                        continue
                    if restricted.degree() < 1:
                        continue
                    family.append(restricted)
            if not family:
                continue
            for c in range(n):
                if c == a or c == b:
                    continue
                x = vals[c]
                if any(f.eval([x]) == 0 for f in family):
                    bad.add(tuple(sorted((a + 1, b + 1, c + 1))))
    return sorted(bad), skipped
