"""Pure-difference binomial ideals.

A binomial here is always ``x^plus - x^minus`` with coefficients +1 and -1.
Buchberger's algorithm never leaves that world: an S-polynomial of two pure
differences is a pure difference, and so is every reduction step. The zero
binomial is represented by ``None``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .kernels import find_divisor

Monomial = tuple[int, ...]
ExpVec = tuple[int, ...]


class CoefficientCollapse(ArithmeticError):
    """A reduction left the pure-difference world (engine bug)."""


class OrderMismatch(ValueError):
    pass


class UnsupportedColon(NotImplementedError):
    pass


# --------------------------------------------------------------------------
# exponent vectors


def positive_part(alpha: Sequence[int]) -> ExpVec:
    return tuple(a if a > 0 else 0 for a in alpha)


def negative_part(alpha: Sequence[int]) -> ExpVec:
    return tuple(-a if a < 0 else 0 for a in alpha)


def support(alpha: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(alpha) if a)


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def format_monomial(m: Monomial, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"e{i + 1}" for i in range(len(m))]
    parts = []
    for name, x in zip(names, m):
        if x == 1:
            parts.append(name)
        elif x > 1:
            parts.append(f"{name}^{x}")
    return "*".join(parts) if parts else "1"


# --------------------------------------------------------------------------
# monomial orders


def _revkey(m):
    return tuple(-x for x in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    """degrevlex, lex, or an elimination block order.

    ``elim`` with ``block=k`` compares the first ``k`` variables by degrevlex
    and breaks ties with degrevlex on the rest. ``perm`` lists variable
    indices from most to least significant; None means natural order.
    """

    kind: str = "degrevlex"
    block: int = 0
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown order {self.kind!r}")

    def key(self, m: Monomial):
        if self.perm is not None:
            m = tuple(m[i] for i in self.perm)
        if self.kind == "degrevlex":
            return (sum(m), _revkey(m))
        if self.kind == "lex":
            return m
        k = self.block
        head, rest = m[:k], m[k:]
        return (sum(head), _revkey(head), sum(rest), _revkey(rest))

    def eliminates(self, k: int) -> bool:
        if k == 0:
            return True
        if self.perm is not None and tuple(sorted(self.perm[:k])) != tuple(range(k)):
            return False
        return self.kind == "lex" or (self.kind == "elim" and self.block == k)

    def describe(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "elim":
            d["block"] = self.block
        if self.perm is not None:
            d["perm"] = list(self.perm)
        return d


DEGREVLEX = MonomialOrder("degrevlex")


# --------------------------------------------------------------------------
# binomials


@dataclass(frozen=True)
class Binomial:
    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise ValueError("length mismatch")
        if self.plus == self.minus:
            raise ValueError("zero binomial; use None")
        if min(self.plus, default=0) < 0 or min(self.minus, default=0) < 0:
            raise ValueError("negative exponent")

    @classmethod
    def from_vector(cls, alpha: Sequence[int]) -> "Binomial | None":
        """``x^{α+} - x^{α-}``; None for α = 0."""
        if not any(alpha):
            return None
        return cls(positive_part(alpha), negative_part(alpha))

    @classmethod
    def make(cls, plus: Sequence[int], minus: Sequence[int]) -> "Binomial | None":
        plus, minus = tuple(plus), tuple(minus)
        if plus == minus:
            return None
        return cls(plus, minus)

    @property
    def nvars(self) -> int:
        return len(self.plus)

    def vector(self) -> ExpVec:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def negate(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def oriented(self, order: MonomialOrder) -> "Binomial":
        return self if order.key(self.plus) > order.key(self.minus) else self.negate()

    def canonical(self) -> "Binomial":
        """Sign-normalised form: larger exponent tuple first (order independent)."""
        return self if self.plus > self.minus else self.negate()

    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    def is_pure(self) -> bool:
        """Supports of the two terms are disjoint."""
        return not any(a and b for a, b in zip(self.plus, self.minus))

    def embed(self, index_map: Sequence[int], nvars: int) -> "Binomial":
        """Rename variable i to index_map[i] inside a ring with nvars variables."""
        p, m = [0] * nvars, [0] * nvars
        for i, j in enumerate(index_map):
            p[j] += self.plus[i]
            m[j] += self.minus[i]
        return Binomial(tuple(p), tuple(m))

    def format(self, names: Sequence[str] | None = None) -> str:
        return f"{format_monomial(self.plus, names)} - {format_monomial(self.minus, names)}"

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus)}

    @classmethod
    def from_json(cls, d) -> "Binomial":
        return cls(tuple(d["plus"]), tuple(d["minus"]))


@dataclass(frozen=True)
class ReducedGB:
    """Reduced Gröbner basis; each element's ``plus`` is its leading term."""

    order: MonomialOrder
    nvars: int
    elements: tuple[Binomial, ...] = ()
    unit: bool = False
    _leads: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_leads", tuple(b.plus for b in self.elements))

    @classmethod
    def unit_ideal(cls, order: MonomialOrder, nvars: int) -> "ReducedGB":
        return cls(order, nvars, (), True)

    @property
    def leads(self) -> tuple[Monomial, ...]:
        return self._leads

    @property
    def is_zero(self) -> bool:
        return not self.unit and not self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_json(self) -> dict:
        return {
            "order": self.order.describe(),
            "nvars": self.nvars,
            "unit": self.unit,
            "elements": [b.to_json() for b in self.elements],
        }

    @classmethod
    def from_json(cls, d) -> "ReducedGB":
        o = d["order"]
        order = MonomialOrder(o["kind"], o.get("block", 0), tuple(o["perm"]) if "perm" in o else None)
        return cls(order, d["nvars"], tuple(Binomial.from_json(e) for e in d["elements"]), d.get("unit", False))


# --------------------------------------------------------------------------
# reduction


def _apply(u, lead, tail):
    return tuple(a - b + c for a, b, c in zip(u, lead, tail))


def _reduce_pair(u, v, leads, tails, key):
    """Fully reduce ``u - v``; returns an oriented (lead, tail) pair or None."""
    while True:
        if u == v:
            return None
        if key(u) < key(v):
            u, v = v, u
        idx = find_divisor(leads, u)
        if idx < 0:
            break
        u = _apply(u, leads[idx], tails[idx])
    ku = key(u)
    while True:
        idx = find_divisor(leads, v)
        if idx < 0:
            break
        v = _apply(v, leads[idx], tails[idx])
    if v == u or key(v) >= ku:
        raise CoefficientCollapse(f"tail reduction reached the leading term {u}")
    return u, v


def normal_form(b: Binomial | None, G: ReducedGB) -> Binomial | None:
    """Remainder of ``b`` on division by ``G``; None means zero."""
    if b is None:
        return None
    if b.nvars != G.nvars:
        raise ValueError("variable count mismatch")
    if G.unit:
        return None
    tails = tuple(e.minus for e in G.elements)
    r = _reduce_pair(b.plus, b.minus, G.leads, tails, G.order.key)
    return None if r is None else Binomial(*r)


def reduce_monomial(m: Monomial, G: ReducedGB) -> Monomial:
    """Normal form of a monomial (a monomial again, since G is pure-difference)."""
    leads = G.leads
    tails = tuple(e.minus for e in G.elements)
    while True:
        idx = find_divisor(leads, m)
        if idx < 0:
            return m
        m = _apply(m, leads[idx], tails[idx])


# --------------------------------------------------------------------------
# Buchberger


def buchberger(
    gens: Iterable[Binomial | None],
    order: MonomialOrder = DEGREVLEX,
    nvars: int | None = None,
) -> ReducedGB:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs are processed smallest lcm first (normal strategy), ties broken by
    generator index; the product and chain criteria prune pairs.
    """
    gens = [g for g in gens if g is not None]
    if nvars is None:
        if not gens:
            raise ValueError("nvars required for an empty generating set")
        nvars = gens[0].nvars
    key = order.key
    leads: list = []
    tails: list = []
    alive: list[bool] = []
    pending: dict[tuple[int, int], Monomial] = {}
    heap: list = []

    def add(u, v):
        i = len(leads)
        for j in range(i):
            if not alive[j]:
                continue
            lcm = mono_lcm(leads[j], u)
            pending[(j, i)] = lcm
            heapq.heappush(heap, (key(lcm), j, i))
        leads.append(u)
        tails.append(v)
        alive.append(True)
        # an older element whose lead is divisible by the new lead is redundant
        # for reduction, but its pairs stay (they are needed for correctness)

    for g in gens:
        if g.nvars != nvars:
            raise ValueError("variable count mismatch")
        r = _reduce_pair(g.plus, g.minus, leads, tails, key)
        if r is not None:
            add(*r)

    while heap:
        _, i, j = heapq.heappop(heap)
        lcm = pending.pop((i, j), None)
        if lcm is None:
            continue
        li, lj = leads[i], leads[j]
        if all(not (a and b) for a, b in zip(li, lj)):
            continue  # coprime leading terms
        chain = False
        for k in range(len(leads)):
            if k == i or k == j:
                continue
            if ((min(i, k), max(i, k)) in pending) or ((min(j, k), max(j, k)) in pending):
                continue
            if mono_divides(leads[k], lcm):
                chain = True
                break
        if chain:
            continue
        u = _apply(lcm, li, tails[i])
        v = _apply(lcm, lj, tails[j])
        r = _reduce_pair(u, v, leads, tails, key)
        if r is not None:
            add(*r)

    return _finalize(list(zip(leads, tails)), order, nvars)


def _finalize(pairs, order, nvars) -> ReducedGB:
    key = order.key
    pairs = sorted(set(pairs), key=lambda p: (key(p[0]), key(p[1])))
    minimal = []
    for u, v in pairs:
        if any(mono_divides(w, u) for w, _ in minimal):
            continue
        minimal.append((u, v))
    leads = [u for u, _ in minimal]
    out = []
    for idx, (u, v) in enumerate(minimal):
        others_l = leads[:idx] + leads[idx + 1:]
        others_t = [t for k, (_, t) in enumerate(minimal) if k != idx]
        while True:
            d = find_divisor(others_l, v)
            if d < 0:
                break
            v = _apply(v, others_l[d], others_t[d])
        if v == u:
            raise CoefficientCollapse("interreduction collapsed an element")
        out.append(Binomial(u, v))
    out.sort(key=lambda b: (key(b.plus), key(b.minus)))
    return ReducedGB(order, nvars, tuple(out))


def regroebner(I: ReducedGB, order: MonomialOrder) -> ReducedGB:
    """The same ideal under a different monomial order."""
    if I.order == order:
        return I
    if I.unit:
        return ReducedGB.unit_ideal(order, I.nvars)
    return buchberger(I.elements, order, I.nvars)


def ideal_membership(b: Binomial | None, I: ReducedGB) -> bool:
    return normal_form(b, I) is None


def ideal_equal(I: ReducedGB, J: ReducedGB) -> bool:
    """Equality of ideals; J is recomputed under I's order if they differ."""
    if I.nvars != J.nvars:
        raise ValueError("variable count mismatch")
    J = regroebner(J, I.order)
    return I.unit == J.unit and I.elements == J.elements


def ideal_sum(*ideals: ReducedGB) -> ReducedGB:
    if not ideals:
        raise ValueError("at least one ideal required")
    order, n = ideals[0].order, ideals[0].nvars
    if any(I.unit for I in ideals):
        return ReducedGB.unit_ideal(order, n)
    return buchberger([b for I in ideals for b in I.elements], order, n)


def is_subideal(I: ReducedGB, J: ReducedGB) -> bool:
    """I ⊆ J."""
    if J.unit:
        return True
    if I.unit:
        return False
    return all(ideal_membership(b, J) for b in I.elements)


def eliminate(I: ReducedGB, drop_first_k: int) -> ReducedGB:
    """GB of I ∩ K[x_{k+1}, ..., x_n], expressed in the remaining variables."""
    k = drop_first_k
    if k == 0:
        return I
    if not I.order.eliminates(k):
        raise OrderMismatch(f"order {I.order} does not eliminate the first {k} variables")
    rest = I.nvars - k
    if I.order.kind == "lex":
        new_order = MonomialOrder("lex")
    else:
        new_order = DEGREVLEX
    if I.unit:
        return ReducedGB.unit_ideal(new_order, rest)
    kept = [
        Binomial(b.plus[k:], b.minus[k:])
        for b in I.elements
        if not any(b.plus[:k]) and not any(b.minus[:k])
    ]
    return _finalize([(b.plus, b.minus) for b in kept], new_order, rest)


def _lift(I: ReducedGB, extra: int = 1) -> list[Binomial]:
    pad = (0,) * extra
    return [Binomial(pad + b.plus, pad + b.minus) for b in I.elements]


def saturate(I: ReducedGB, m: Monomial) -> ReducedGB:
    """GB of ``I : (x^m)^∞`` via an auxiliary variable t and ``t·x^m - 1``."""
    m = tuple(m)
    if len(m) != I.nvars:
        raise ValueError("monomial length mismatch")
    if I.unit or not any(m) or not I.elements:
        return I
    n = I.nvars
    gens = _lift(I)
    gens.append(Binomial((1,) + m, (0,) * (n + 1)))
    J = buchberger(gens, MonomialOrder("elim", 1), n + 1)
    return regroebner(eliminate(J, 1), I.order)


def _colon_monomial(I: ReducedGB, m: Monomial) -> ReducedGB:
    # I : m = (I ∩ <m>) / m, with I ∩ <m> = (t·I + (1-t)·m) ∩ K[x]
    n = I.nvars
    gens = [Binomial((1,) + b.plus, (1,) + b.minus) for b in I.elements]
    gens.append(Binomial((0,) + m, (1,) + m))
    J = eliminate(buchberger(gens, MonomialOrder("elim", 1), n + 1), 1)
    quotients = []
    for b in J.elements:
        if not (mono_divides(m, b.plus) and mono_divides(m, b.minus)):
            raise CoefficientCollapse("intersection element not divisible by the monomial")
        quotients.append(Binomial(mono_div(b.plus, m), mono_div(b.minus, m)))
    return buchberger(quotients, I.order, n)


def is_prime(I: ReducedGB) -> bool:
    """Primality of a pure-difference ideal (characteristic 0).

    Prime iff I is a lattice ideal (saturated by the product of all
    variables) whose lattice is saturated in ℤ^n.
    """
    from .exactlin import is_saturated_sublattice, lattice_span_basis

    if I.unit:
        return False
    if not I.elements:
        return True
    if not ideal_equal(I, saturate(I, (1,) * I.nvars)):
        return False
    L = lattice_span_basis([b.vector() for b in I.elements], I.nvars)
    return is_saturated_sublattice(L)


def colon_power(I: ReducedGB, f: "Binomial | Monomial", k: int = 1) -> ReducedGB:
    """GB of ``I : <f^k>``.

    ``f`` may be a monomial (exponent tuple) or a binomial. Colon by a
    binomial power stays inside the binomial world only in two situations,
    both handled: ``f ∈ I`` (unit ideal), or ``I`` prime.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if I.unit:
        return I
    if isinstance(f, Binomial):
        if ideal_membership(f, I):
            # f^k ∈ I as well
            return ReducedGB.unit_ideal(I.order, I.nvars)
        if is_prime(I):
            return I
        raise UnsupportedColon("colon by a binomial requires a prime ideal or f in I")
    m = tuple(x * k for x in f)
    if len(m) != I.nvars:
        raise ValueError("monomial length mismatch")
    if not any(m) or not I.elements:
        return I
    return _colon_monomial(I, m)
