"""Toric ideals of integer matrices and of graphs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .binomials import (
    DEGREVLEX,
    Binomial,
    MonomialOrder,
    ReducedGB,
    buchberger,
    ideal_membership,
    regroebner,
    saturate,
)
from .exactlin import IntMatrix, feasible_nonnegative, kernel_basis, rank, solve_rational
from .graphcore import Graph, Walk, closed_even_walks, incidence_matrix


class WalkNotClosedEven(ValueError):
    pass


class NotInIdeal(ValueError):
    pass


@dataclass(frozen=True)
class ToricIdeal:
    """I_A together with the matrix whose columns give the multigrading."""

    matrix: IntMatrix
    gb: ReducedGB
    graph: Graph | None = None

    @property
    def nvars(self) -> int:
        return self.matrix.ncols

    @property
    def columns(self) -> list[tuple[int, ...]]:
        return self.matrix.columns()

    def multidegree(self, m: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(m)

    def dimension(self) -> int:
        """Krull dimension of R/I_A, equal to rank(A)."""
        return rank(self.matrix)

    def generators(self) -> tuple[Binomial, ...]:
        return self.gb.elements

    def names(self) -> list[str]:
        return [f"e{i + 1}" for i in range(self.nvars)]


def lattice_basis_ideal(A: IntMatrix, order: MonomialOrder = DEGREVLEX) -> ReducedGB:
    L = kernel_basis(A)
    return buchberger([Binomial.from_vector(v) for v in L], order, A.ncols)


def toric_ideal_of_matrix(A, order: MonomialOrder = DEGREVLEX) -> ToricIdeal:
    """Lattice-basis ideal of ker(A), saturated by the product of all variables."""
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A)
    J = lattice_basis_ideal(A, order)
    I = saturate(J, (1,) * A.ncols)
    return ToricIdeal(A, I)


def toric_ideal_of_graph(G: Graph, order: MonomialOrder = DEGREVLEX) -> ToricIdeal:
    T = toric_ideal_of_matrix(incidence_matrix(G), order)
    return ToricIdeal(T.matrix, T.gb, G)


def walk_binomial(w: Walk) -> Binomial | None:
    """Product of odd-position edges minus product of even-position edges.

    Positions are counted from 1, as in the usual convention; None when the two
    products coincide.
    """
    if not w.closed or not w.even:
        raise WalkNotClosedEven(f"walk of length {w.length} is not closed and even")
    n = max(w.edge_sequence) + 1 if w.edge_sequence else 0
    return _walk_binomial(w, n)


def _walk_binomial(w: Walk, nvars: int) -> Binomial | None:
    plus, minus = [0] * nvars, [0] * nvars
    for k, e in enumerate(w.edge_sequence):
        if k % 2 == 0:
            plus[e] += 1
        else:
            minus[e] += 1
    return Binomial.make(plus, minus)


def graph_walk_binomial(G: Graph, w: Walk) -> Binomial | None:
    """walk_binomial in the ring K[E(G)], with the φ(f_w) = 0 check."""
    if not w.closed or not w.even:
        raise WalkNotClosedEven(f"walk of length {w.length} is not closed and even")
    w.validate(G)
    b = _walk_binomial(w, G.m)
    if b is not None:
        A = incidence_matrix(G)
        assert A.apply(b.plus) == A.apply(b.minus), "walk binomial not homogeneous"
    return b


def _divisors(m: Sequence[int]):
    return itertools.product(*(range(x + 1) for x in m))


def is_primitive(b: Binomial, I: ToricIdeal) -> bool:
    """No other binomial u - v of I has u | x^{b+} and v | x^{b-}.

    All pairs of divisors are enumerated; pairs with different multidegree are
    discarded before the membership test, which is then exact.
    """
    if not ideal_membership(b, I.gb):
        raise NotInIdeal(str(b))
    A = I.matrix
    minus_divs = {}
    for v in _divisors(b.minus):
        minus_divs.setdefault(A.apply(v), []).append(v)
    for u in _divisors(b.plus):
        for v in minus_divs.get(A.apply(u), ()):
            if u == v or (u == b.plus and v == b.minus):
                continue
            if ideal_membership(Binomial(u, v), I.gb):
                return False
    return True


def primitive_walk_generators(
    G: Graph, max_length: int | None = None, I: ToricIdeal | None = None
) -> list[Binomial]:
    """Binomials of primitive closed even walks, deduplicated up to sign."""
    if max_length is None:
        max_length = 2 * G.m
    if max_length % 2:
        raise ValueError("max_length must be even")
    if I is None:
        I = toric_ideal_of_graph(G)
    seen = {}
    for w in closed_even_walks(G, max_length, primitive_candidates=True):
        b = _walk_binomial(w, G.m)
        if b is None:
            continue
        c = b.canonical()
        if c in seen:
            continue
        seen[c] = is_primitive(c, I)
    out = [b for b, prim in seen.items() if prim]
    out.sort(key=lambda b: (b.degree(), DEGREVLEX.key(b.plus)))
    return out


def grading_vector(A) -> list[Fraction] | None:
    """Some c with α_i · c = 1 for every column α_i, or None."""
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A)
    return solve_rational(A.transpose(), [1] * A.ncols)


def is_grading_vector(A, c: Sequence) -> bool:
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A)
    return all(sum(Fraction(a) * Fraction(x) for a, x in zip(col, c)) == 1 for col in A.columns())


def admits_positive_multigrading(A) -> bool:
    """ker(A) ∩ ℕ^s = {0}.

    Decided by exact phase-I simplex: the grading exists iff the polytope
    {A v = 0, v ≥ 0, Σ v = 1} is empty.
    """
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A)
    s = A.ncols
    if s == 0:
        return True
    rows = [r for r in A.data if any(r)] + [(1,) * s]
    return feasible_nonnegative(rows, [0] * (len(rows) - 1) + [1]) is None


def ideal_from_generators(gens: Sequence[Binomial], nvars: int, order: MonomialOrder = DEGREVLEX) -> ReducedGB:
    return buchberger(gens, order, nvars)


def with_order(T: ToricIdeal, order: MonomialOrder) -> ToricIdeal:
    return ToricIdeal(T.matrix, regroebner(T.gb, order), T.graph)
