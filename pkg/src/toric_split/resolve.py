"""Hilbert series and Betti numbers of toric rings.

Two Betti backends are provided and are meant to be run against each other:

* ``divisor-complex`` works purely in the affine semigroup ℕA: for a degree
  b it builds Δ_b = {F : b − Σ_F α_i ∈ ℕA} and takes reduced homology.
* ``koszul`` never looks at the semigroup directly. It enumerates standard
  monomials of the Gröbner basis and writes down the degree-b strand of the
  Koszul complex of R/I, with multiplication by x_j done by normal forms.

Both reduce to exact integer rank computations.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import os
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor
from typing import Sequence

from .binomials import Binomial, ReducedGB, mono_div, mono_lcm, reduce_monomial
from .exactlin import IntMatrix, feasible_nonnegative, rank
from .kernels import find_divisor, int_rank
from .toricgen import ToricIdeal, admits_positive_multigrading, grading_vector


class NotGradable(ValueError):
    """No rational c with c · α_i = 1 for every column."""


class GradingUnavailable(ValueError):
    """ker(A) meets ℕ^s outside 0, so multigraded Betti numbers are not finite."""


class BoundTooSmall(RuntimeError):
    def __init__(self, msg, table=None):
        super().__init__(msg)
        self.table = table


# --------------------------------------------------------------------------
# integer polynomials in t, stored low degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p, q):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_shift(p, k):
    return _trim((0,) * k + tuple(p)) if p else ()


def poly_neg(p):
    return tuple(-a for a in p)


def poly_eval(p, t):
    return sum(a * t**k for k, a in enumerate(p))


def poly_div_one_minus_t(p):
    """Exact quotient p / (1 − t); raises ArithmeticError if (1 − t) ∤ p."""
    if not p:
        return ()
    # q_k = p_0 + ... + p_k ; remainder is the total sum
    q, acc = [], 0
    for a in p[:-1]:
        acc += a
        q.append(acc)
    if acc + p[-1] != 0:
        raise ArithmeticError("not divisible by 1 - t")
    return _trim(q)


def poly_str(p, var="t") -> str:
    if not p:
        return "0"
    terms = []
    for k, a in enumerate(p):
        if not a:
            continue
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else f"{mag}*") + (var if k == 1 else f"{var}^{k}")
        terms.append(("-" if a < 0 else "+", body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


# --------------------------------------------------------------------------
# standard monomials and Hilbert series


def _monomials_of_degree(s: int, d: int):
    for combo in itertools.combinations_with_replacement(range(s), d):
        m = [0] * s
        for j in combo:
            m[j] += 1
        yield tuple(m)


def standard_monomials(I: ReducedGB, degree: int) -> list[tuple[int, ...]]:
    """Monomials of the given total degree outside the initial ideal."""
    if I.unit:
        return []
    leads = I.leads
    out = [m for m in _monomials_of_degree(I.nvars, degree) if find_divisor(leads, m) < 0]
    out.sort(key=I.order.key, reverse=True)
    return out


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda m: (sum(m), m))
    keep = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(k, g)) for k in keep):
            keep.append(g)
    return tuple(sorted(keep))


def monomial_ideal_numerator(gens: Sequence[Sequence[int]]):
    """K-polynomial of R/M for a monomial ideal M, in the standard grading.

    Recursion N(M' + ⟨m⟩) = N(M') − t^{deg m} · N(M' : m), memoised on the
    minimal generating set.
    """
    memo = {}

    def N(G):
        if G in memo:
            return memo[G]
        if not G:
            res = (1,)
        elif _pairwise_coprime(G):
            res = (1,)
            for g in G:
                res = poly_mul(res, poly_add((1,), poly_shift((-1,), sum(g))))
        else:
            # pivot on a generator of largest degree: its colon tends to be small
            m = max(G, key=lambda g: (sum(g), g))
            rest = tuple(g for g in G if g != m)
            colon = _minimalize(mono_div(mono_lcm(g, m), m) for g in rest)
            res = poly_add(N(rest), poly_neg(poly_shift(N(colon), sum(m))))
        memo[G] = res
        return res

    return N(_minimalize(tuple(g) for g in gens))


def _pairwise_coprime(G):
    seen = set()
    for g in G:
        sup = {i for i, x in enumerate(g) if x}
        if sup & seen:
            return False
        seen |= sup
    return True


@dataclass(frozen=True)
class HilbertData:
    """HS(t) = numerator / (1−t)^nvars = h_polynomial / (1−t)^dimension."""

    numerator: tuple[int, ...]
    dimension: int
    h_polynomial: tuple[int, ...]
    nvars: int

    def coefficient(self, d: int) -> int:
        """dim (R/I)_d read off from h/(1−t)^dim."""
        k = self.dimension
        if k == 0:
            return self.h_polynomial[d] if d < len(self.h_polynomial) else 0
        return sum(a * comb(d - j + k - 1, k - 1) for j, a in enumerate(self.h_polynomial) if j <= d)

    def to_dict(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "dimension": self.dimension,
            "h_polynomial": list(self.h_polynomial),
            "nvars": self.nvars,
        }


def hilbert_data(I: ToricIdeal) -> HilbertData:
    if grading_vector(I.matrix) is None:
        raise NotGradable("columns of A do not lie on an affine hyperplane")
    s = I.nvars
    if I.gb.unit:
        raise NotGradable("unit ideal")
    num = monomial_ideal_numerator(I.gb.leads)
    dim = rank(I.matrix)
    h = num
    for _ in range(s - dim):
        h = poly_div_one_minus_t(h)
    if poly_eval(h, 1) == 0:
        raise ArithmeticError("h(1) = 0: dimension and numerator disagree")
    return HilbertData(num, dim, h, s)


# --------------------------------------------------------------------------
# Betti tables


@dataclass
class BettiTable:
    """β_{i,deg}; ``deg`` is a multidegree tuple or an integer."""

    mode: str  # "multigraded" | "graded"
    entries: dict = field(default_factory=dict)
    subject: str = "module"  # "module" (R/I) | "ideal" (I)

    def __post_init__(self):
        if self.mode not in ("multigraded", "graded"):
            raise ValueError(self.mode)
        if self.subject not in ("module", "ideal"):
            raise ValueError(self.subject)
        self.entries = {k: v for k, v in self.entries.items() if v}
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("negative Betti number")

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return (self.mode, self.subject, self.entries) == (other.mode, other.subject, other.entries)

    def totals(self) -> list[int]:
        if not self.entries:
            return []
        top = max(i for i, _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), v in self.entries.items():
            out[i] += v
        return out

    def to_ideal(self) -> "BettiTable":
        if self.subject == "ideal":
            return self
        ent = {(i - 1, d): v for (i, d), v in self.entries.items() if i >= 1}
        return BettiTable(self.mode, ent, "ideal")

    def to_module(self) -> "BettiTable":
        if self.subject == "module":
            return self
        zero = (0,) * len(next(iter(self.entries))[1]) if self.mode == "multigraded" and self.entries else 0
        ent = {(i + 1, d): v for (i, d), v in self.entries.items()}
        ent[(0, zero)] = 1
        return BettiTable(self.mode, ent, "module")

    # -- output --------------------------------------------------------

    def to_text(self) -> str:
        if self.mode == "multigraded":
            lines = [f"{'i':>3}  {'multidegree':<24} beta"]
            for (i, d), v in sorted(self.entries.items()):
                lines.append(f"{i:>3}  {' '.join(map(str, d)):<24} {v}")
            return "\n".join(lines)
        if not self.entries:
            return "(empty table)"
        top = max(i for i, _ in self.entries)
        rows = sorted({j - i for i, j in self.entries})
        rows = list(range(min(rows), max(rows) + 1))
        cols = list(range(top + 1))
        tot = self.totals()
        cells = {r: [str(self[(i, i + r)]) if self[(i, i + r)] else "." for i in cols] for r in rows}
        widths = [max([len(str(i)), len(str(tot[i]))] + [len(cells[r][i]) for r in rows]) for i in cols]
        lab = max(len("total:"), max(len(f"{r}:") for r in rows))

        def line(label, vals):
            return (label.rjust(lab) + " " + " ".join(v.rjust(w) for v, w in zip(vals, widths))).rstrip()

        out = [line("", [str(i) for i in cols]), line("total:", [str(t) for t in tot])]
        out += [line(f"{r}:", cells[r]) for r in rows]
        return "\n".join(out)

    def to_json(self) -> str:
        ent = [
            {"i": i, "degree": list(d) if isinstance(d, tuple) else d, "value": v}
            for (i, d), v in sorted(self.entries.items())
        ]
        return json.dumps({"mode": self.mode, "subject": self.subject, "entries": ent}, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "BettiTable":
        d = json.loads(text)
        ent = {}
        for e in d["entries"]:
            deg = tuple(e["degree"]) if isinstance(e["degree"], list) else e["degree"]
            ent[(e["i"], deg)] = e["value"]
        return cls(d["mode"], ent, d["subject"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "degree", "value"])
        for (i, d), v in sorted(self.entries.items()):
            w.writerow([i, " ".join(map(str, d)) if isinstance(d, tuple) else d, v])
        return buf.getvalue()


def betti_graded(T: BettiTable, d: int) -> BettiTable:
    """Collapse multidegrees: |α| = d·j goes to degree j."""
    if T.mode == "graded":
        return T
    out = defaultdict(int)
    for (i, a), v in T.entries.items():
        tot = sum(a)
        if tot % d:
            raise ValueError(f"multidegree {a} has total {tot}, not a multiple of {d}")
        out[(i, tot // d)] += v
    return BettiTable("graded", dict(out), T.subject)


def _graded_by(T: BettiTable, c: Sequence[Fraction]) -> BettiTable:
    out = defaultdict(int)
    for (i, a), v in T.entries.items():
        deg = sum(Fraction(x) * y for x, y in zip(c, a))
        assert deg.denominator == 1
        out[(i, int(deg))] += v
    return BettiTable("graded", dict(out), T.subject)


def _module(T: BettiTable) -> BettiTable:
    return T.to_module() if T.subject == "ideal" else T


def regularity(T: BettiTable) -> int:
    T = _module(T)
    return max(j - i for i, j in T.entries)


def proj_dim(T: BettiTable) -> int:
    T = _module(T)
    return max(i for i, _ in T.entries)


def k_polynomial(T: BettiTable) -> tuple[int, ...]:
    """Σ (−1)^i β_{i,j} t^j of a graded module table."""
    T = _module(T)
    top = max(j for _, j in T.entries)
    p = [0] * (top + 1)
    for (i, j), v in T.entries.items():
        p[j] += (-1) ** i * v
    return _trim(p)


# --------------------------------------------------------------------------
# Betti numbers


def _weight_functional(A: IntMatrix) -> list[Fraction]:
    """Some w with w · α_i ≥ 1 for every column (exists iff the grading is positive)."""
    c = grading_vector(A)
    if c is not None:
        return c
    At = A.transpose()
    n = A.nrows
    # Aᵀ w⁺ − Aᵀ w⁻ − slack = 1
    rows = [list(r) + [-x for x in r] + [-int(k == i) for k in range(A.ncols)] for i, r in enumerate(At.data)]
    sol = feasible_nonnegative(rows, [1] * A.ncols)
    if sol is None:
        raise GradingUnavailable("no positive multigrading")
    return [sol[k] - sol[n + k] for k in range(n)]


def default_degree_bound(I: ToricIdeal) -> int:
    """Degree of the K-polynomial when standard graded, never below the generator degrees."""
    gen = max((e.degree() for e in I.gb.elements), default=0)
    try:
        H = hilbert_data(I)
    except NotGradable:
        return 2 * (gen + I.nvars)
    return max(gen, len(H.numerator) - 1)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TORIC_SPLIT_THREADS", "1")))
    except ValueError:
        return 1


class _Context:
    """Degree data shared by the strand computations of one table.

    Multidegrees are packed into single integers with balanced digits in base
    ``radix``; since every point we subtract from is a genuine element of the
    semigroup, all digits stay inside (−radix/2, radix/2) and packing is
    injective on everything that is compared.
    """

    def __init__(self, I: ToricIdeal, bound: int, backend: str):
        A = I.matrix
        self.cols = [tuple(c) for c in A.columns()]
        self.s = len(self.cols)
        self.r = A.nrows
        self.backend = backend
        w = _weight_functional(A)
        wmax = max(sum(Fraction(a) * x for a, x in zip(w, c)) for c in self.cols)
        self.weight_bound = floor(bound * wmax)
        amax = max((abs(x) for c in self.cols for x in c), default=0)
        # b − Σ_{j∈V} α_j is the deepest subtraction ever packed
        self.radix = 2 * (self.weight_bound + self.s + 1) * amax + 1
        self.packed_cols = [self.pack(c) for c in self.cols]
        if backend == "divisor-complex":
            self._build_semigroup(bound)
        else:
            self._build_standard(I.gb, bound)

    def pack(self, b) -> int:
        out = 0
        for x in reversed(b):
            out = out * self.radix + x
        return out

    def _build_semigroup(self, bound):
        # every element of ℕA of w-weight ≤ weight_bound, grown one column at a time
        P = self.packed_cols
        layer, allpts, cands = {0}, {0}, {0: (0,) * self.r}
        tuples = {0: (0,) * self.r}
        for d in range(1, self.weight_bound + 1):
            nxt = set()
            for p in layer:
                t = tuples[p]
                for j, c in enumerate(P):
                    q = p + c
                    if q not in nxt:
                        nxt.add(q)
                        if q not in tuples:
                            tuples[q] = tuple(x + y for x, y in zip(t, self.cols[j]))
            allpts |= nxt
            if d <= bound:
                for q in nxt:
                    cands[q] = tuples[q]
            layer = nxt
        self.member = allpts
        self.candidates = sorted(cands.items(), key=lambda kv: (sum(kv[1]), kv[1]))

    def _build_standard(self, gb: ReducedGB, bound):
        # escalator: standard monomials of degree d+1 are x_j · (standard of degree d)
        leads = gb.leads
        zero = (0,) * self.s
        std = defaultdict(list)
        std[0].append(zero)
        layer = {zero}
        cands = {0: (0,) * self.r}
        for d in range(1, self.weight_bound + 1):
            nxt = set()
            for m in layer:
                for j in range(self.s):
                    u = m[:j] + (m[j] + 1,) + m[j + 1:]
                    if u not in nxt and find_divisor(leads, u) < 0:
                        nxt.add(u)
            for u in nxt:
                b = self._image(u)
                p = self.pack(b)
                std[p].append(u)
                if d <= bound:
                    cands[p] = b
            layer = nxt
        for v in std.values():
            v.sort()
        self.member = dict(std)
        self.gb = gb
        self.candidates = sorted(cands.items(), key=lambda kv: (sum(kv[1]), kv[1]))

    def _image(self, m):
        out = [0] * self.r
        for j, e in enumerate(m):
            if e:
                c = self.cols[j]
                for k in range(self.r):
                    out[k] += e * c[k]
        return tuple(out)

    def faces(self, b: int):
        """Faces of Δ_b (tuples, grouped by size) with their packed degrees b − α_F.

        None when Δ_b is acyclic for an obvious reason: it is the full simplex
        on its vertex set, or all of its facets share a vertex (a cone). The
        complex {∅} of b = 0 comes back as ``[[((), 0)]]``.
        """
        P, member = self.packed_cols, self.member
        V = [j for j in range(self.s) if b - P[j] in member]
        if V and b - sum(P[j] for j in V) in member:
            return None
        levels = [[((), b)]]
        layer = levels[0]
        common = -1  # bitmask meet of the facets
        while layer:
            nxt = []
            for F, c in layer:
                start = F[-1] + 1 if F else 0
                extended = False
                for j in V:
                    if j >= start and c - P[j] in member:
                        nxt.append((F + (j,), c - P[j]))
                        extended = True
                if not extended and F:
                    # a facet unless some smaller index also extends it
                    if not any(j < start and j not in F and c - P[j] in member for j in V):
                        mask = 0
                        for j in F:
                            mask |= 1 << j
                        common &= mask
            if nxt:
                levels.append(nxt)
            layer = nxt
        if V and common:
            return None
        return levels

    def strand(self, b: int) -> dict[int, int]:
        """{i: β_{i,b}(R/I)} for one packed multidegree."""
        levels = self.faces(b)
        if levels is None:
            return {}
        if self.backend == "divisor-complex":
            return self._simplicial_homology(levels)
        return self._koszul_homology(levels)

    def _simplicial_homology(self, levels):
        # C_k = faces with k vertices (k = 0 is the empty face); β_{k,b} = dim H̃_{k−1}(Δ_b)
        ranks = [0]
        for k in range(1, len(levels)):
            index = {F: n for n, (F, _) in enumerate(levels[k - 1])}
            width = len(index)
            rows = []
            for F, _ in levels[k]:
                row = [0] * width
                for t in range(len(F)):
                    row[index[F[:t] + F[t + 1:]]] = -1 if t % 2 else 1
                rows.append(row)
            ranks.append(int_rank(rows, width))
        ranks.append(0)
        out = {}
        for k in range(len(levels)):
            h = len(levels[k]) - ranks[k] - ranks[k + 1]
            if h:
                out[k] = h
        return out

    def _koszul_homology(self, levels):
        # K_i = ⊕_{|F|=i} (R/I)_{b−α_F} e_F, ∂(m e_F) = Σ ± NF(x_j m) e_{F∖j}
        gb, std = self.gb, self.member
        bases = []
        for lev in levels:
            basis = {}
            for F, c in lev:
                for m in std[c]:
                    basis[(F, m)] = len(basis)
            bases.append(basis)
        ranks = [0]
        for i in range(1, len(levels)):
            rows = []
            tgt = bases[i - 1]
            for (F, m) in bases[i]:
                row = [0] * len(tgt)
                for t, j in enumerate(F):
                    u = m[:j] + (m[j] + 1,) + m[j + 1:]
                    nf = reduce_monomial(u, gb)
                    row[tgt[(F[:t] + F[t + 1:], nf)]] += -1 if t % 2 else 1
                rows.append(row)
            ranks.append(int_rank(rows, len(tgt)))
        ranks.append(0)
        out = {}
        for i in range(len(levels)):
            h = len(bases[i]) - ranks[i] - ranks[i + 1]
            if h:
                out[i] = h
        return out


_WORKER_CTX = None


def _worker_init(ctx):
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _worker_run(chunk):
    return [(b, _WORKER_CTX.strand(p)) for p, b in chunk]


def betti_multigraded(
    I: ToricIdeal,
    max_total_degree: int | None = None,
    backend: str = "divisor-complex",
    check: bool = True,
) -> BettiTable:
    """β_{i,b}(R/I_A) for every b = A·m with deg m ≤ max_total_degree.

    With ``check`` the K-polynomial identity is tested against the Hilbert
    series whenever A is standard graded, and BoundTooSmall is raised (with
    the partial table attached) if it fails.
    """
    if backend not in ("divisor-complex", "koszul"):
        raise ValueError(f"unknown backend {backend!r}")
    if not admits_positive_multigrading(I.matrix):
        raise GradingUnavailable("ker(A) contains a nonzero nonnegative vector")
    if max_total_degree is None:
        max_total_degree = default_degree_bound(I)
    gen = max((e.degree() for e in I.gb.elements), default=0)
    if max_total_degree < gen:
        raise BoundTooSmall(f"bound {max_total_degree} is below the generator degree {gen}")
    ctx = _Context(I, max_total_degree, backend)
    entries = {}
    nthreads = _threads()
    if nthreads > 1 and len(ctx.candidates) > 1000:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [ctx.candidates[k::nthreads * 4] for k in range(nthreads * 4)]
        with ProcessPoolExecutor(nthreads, initializer=_worker_init, initargs=(ctx,)) as ex:
            results = [r for part in ex.map(_worker_run, chunks) for r in part]
    else:
        results = ((b, ctx.strand(p)) for p, b in ctx.candidates)
    for b, h in results:
        for i, v in h.items():
            entries[(i, b)] = v
    T = BettiTable("multigraded", entries, "module")
    if check:
        c = grading_vector(I.matrix)
        if c is not None:
            H = hilbert_data(I)
            if k_polynomial(_graded_by(T, c)) != H.numerator:
                raise BoundTooSmall(
                    f"K-polynomial identity fails at bound {max_total_degree}", T
                )
    return T


def graph_betti_table(I: ToricIdeal, max_total_degree: int | None = None, backend: str = "divisor-complex") -> BettiTable:
    """Standard-graded table of a toric ideal of a graph (|α| = 2·degree)."""
    return betti_graded(betti_multigraded(I, max_total_degree, backend), 2)
