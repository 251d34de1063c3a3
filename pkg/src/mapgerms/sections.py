"""Hyperplane sections of stable germs through the linear parts of Lift(F).

For a linear form L = sum a_i X_i the linear parts of tL(eta_j) and of L
itself span a subspace of the linear forms; writing them as (X)·N(a) gives a
matrix whose entries are linear in the symbols a.  The generic rank of N over
Q(a) bounds the best section codimension by m + 1 - rank.  ``vke_codim``
computes the full codimension of a given L by a local standard basis.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .gb import SubmoduleRep
from .germ import MapGerm
from .linalg import dense_rank
from .poly import Poly, RingCtx, VectorField, make_ring


def linear_parts(gens) -> List[Tuple[Tuple[mpq, ...], ...]]:
    """Degree-one parts of vector fields as m x m matrices A[i][k]."""
    if isinstance(gens, SubmoduleRep):
        gens = gens.generators
    return [g.linear_part() for g in gens]


@dataclass
class SymbolicMatrix:
    """Matrix with entries in Q[a_1..a_m] (Poly over ``ring``)."""

    ring: RingCtx
    rows: List[List[Poly]]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def specialize(self, a: Sequence) -> List[List[mpq]]:
        point = dict(zip(self.ring.vars, a))
        return [[e.evaluate(point) for e in r] for r in self.rows]

    def nonzero_columns(self) -> List[int]:
        m, g = self.shape
        return [j for j in range(g) if any(self.rows[i][j] for i in range(m))]

    def to_json(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self.rows]


def symbol_ring(m: int) -> RingCtx:
    return make_ring([f"a{i}" for i in range(1, m + 1)])


def n_matrix(F: MapGerm, lift_gens: Sequence[VectorField]) -> SymbolicMatrix:
    """N_F(a): column j holds the coefficients of the linear part of
    sum_i a_i (eta_j)_i; the last column is L itself."""
    m = F.p
    A = symbol_ring(m)
    a = A.gens()
    cols = []
    for eta in lift_gens:
        if eta.rank != m:
            raise ValueError("lift generator has wrong rank")
        lin = eta.linear_part()
        col = []
        for k in range(m):
            e = A.zero()
            for i in range(m):
                if lin[i][k]:
                    e = e + a[i] * lin[i][k]
            col.append(e)
        cols.append(col)
    cols.append(list(a))
    rows = [[cols[j][k] for j in range(len(cols))] for k in range(m)]
    return SymbolicMatrix(A, rows)


def numeric_rank(N: SymbolicMatrix, a: Sequence) -> int:
    return dense_rank(N.specialize(a))


def generic_rank(N: SymbolicMatrix, samples: int = 3, seed: int = 0) -> int:
    """Rank over Q(a) by fraction-free elimination; random specialisations
    give a lower bound that the symbolic result must meet."""
    rng = random.Random(seed)
    m = N.ring.nvars
    lower = 0
    for _ in range(samples):
        pt = [mpq(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(m)]
        lower = max(lower, numeric_rank(N, pt))
    r = bareiss_rank(N)
    if r < lower:
        raise AssertionError("symbolic rank below a specialisation rank")
    return r


def bareiss_rank(N: SymbolicMatrix) -> int:
    """Rank of a polynomial matrix by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in N.rows]
    nrows, ncols = N.shape
    ring = N.ring
    prev = ring.one()
    rank = 0
    row_idx = list(range(nrows))
    col_idx = list(range(ncols))
    k = 0
    while k < min(nrows, ncols):
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                e = M[i][j]
                if e and (best is None or len(e) < best[0]):
                    best = (len(e), i, j)
        if best is None:
            break
        _, pi, pj = best
        M[k], M[pi] = M[pi], M[k]
        for r in M:
            r[k], r[pj] = r[pj], r[k]
        piv = M[k][k]
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                num = piv * M[i][j] - M[i][k] * M[k][j]
                if num and not prev.is_constant():
                    q = num.exact_div(prev)
                    if q is None:
                        raise AssertionError("Bareiss division was not exact")
                    num = q
                elif num:
                    num = num * (1 / prev.constant_term())
                M[i][j] = num
            M[i][k] = ring.zero()
        prev = piv
        rank += 1
        k += 1
    return rank


@dataclass
class SectionReport:
    germ: MapGerm
    n_matrix: SymbolicMatrix
    generic_rank: int
    best_codim: int
    witness: Optional[Poly]
    method: str = "linear-parts"
    flags: List[str] = field(default_factory=list)

    @property
    def m(self) -> int:
        return self.germ.p

    @property
    def has_codim_one_section(self) -> bool:
        return self.generic_rank == self.m

    def to_json(self) -> dict:
        return {
            "germ": self.germ.label,
            "m": self.m,
            "generic_rank": self.generic_rank,
            "best_codim": self.best_codim,
            "witness": None if self.witness is None else str(self.witness),
            "method": self.method,
            "flags": list(self.flags),
        }


def _candidates(m: int, rng: random.Random, random_tries: int):
    """0/1/-1 vectors by support size (later coordinates first), then random."""
    for size in range(1, m + 1):
        for support in itertools.combinations(range(m - 1, -1, -1), size):
            for signs in itertools.product((1, -1), repeat=size - 1):
                v = [0] * m
                v[support[0]] = 1
                for s, idx in zip(signs, support[1:]):
                    v[idx] = s
                yield v
        if size >= 3:
            break
    for _ in range(random_tries):
        yield [rng.randint(-9, 9) for _ in range(m)]


def find_witness(N: SymbolicMatrix, target_rank: int, seed: int = 0, random_tries: int = 200):
    rng = random.Random(seed)
    for v in _candidates(N.ring.nvars, rng, random_tries):
        if any(v) and numeric_rank(N, v) == target_rank:
            return v
    return None


def best_section_codim(F: MapGerm, lift_gens: Optional[Sequence[VectorField]] = None) -> SectionReport:
    """m + 1 - generic rank of N_F, with a witness linear form."""
    if lift_gens is None:
        from .discriminant import discriminant
        lift_gens = discriminant(F).derlog.generators
    lift_gens = [g.to_ring(F.target) if g.ring.vars == F.target.vars else g for g in lift_gens]
    N = n_matrix(F, lift_gens)
    r = generic_rank(N)
    m = F.p
    best = m + 1 - r
    v = find_witness(N, r)
    L = None
    if v is not None:
        L = F.target.zero()
        for c, x in zip(v, F.target.gens()):
            if c:
                L = L + x * c
    flags = []
    if best >= 2:
        flags.append("linear-parts bound")
    return SectionReport(F, N, r, best, L, "linear-parts", flags)


def vke_codim(d, L: Poly, lift_gens: Optional[Sequence[VectorField]] = None):
    """dim O_m / (<tL(eta) : eta in Lift> + <L>) over the local ring.

    ``d`` is a DiscriminantData (its derlog generators are used) unless
    ``lift_gens`` is given.  L may be nonlinear; tL(eta) = sum eta_i dL/dX_i.
    """
    gens = list(lift_gens) if lift_gens is not None else list(d.derlog.generators)
    if L.constant_term():
        raise ValueError("L must vanish at the origin")
    ring = gens[0].ring.with_ordering("local") if gens else L.ring.with_ordering("local")
    Lr = L.to_ring(ring)
    polys = [VectorField(ring, tuple(c.to_ring(ring) for c in g.components)).apply(Lr) for g in gens]
    polys.append(Lr)
    I = SubmoduleRep.ideal([p for p in polys if p] or [ring.zero()], ring)
    q = I.quotient_dimension()
    return q.value if not q.finite else int(q.value)
