"""Standard bases of submodules of free modules over polynomial and local rings.

Vectors are handled internally as dicts ``(component, exponent) -> int``
(integer coefficients, content stripped).  The ring ordering decides between
Buchberger (global) and Mora's tangent-cone normal form (local).  Modules that
are homogeneous for the ring grading (with component shifts) are computed with
the global order even when the ring is local: for graded modules the two give
the same membership and quotient dimension.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .poly import Poly, RingCtx, VectorField

Mono = Tuple[int, Tuple[int, ...]]
Vec = Dict[Mono, int]

INFINITY = float("inf")


class BudgetExceeded(RuntimeError):
    """A computation ran past its configured limit."""


# ---------------------------------------------------------------- orders

class ModuleOrder:
    """Term order on ``ring^rank``.

    Default is term-over-position, with a higher component index winning ties.
    ``split`` turns it into a two-block position-over-term order in which the
    components below ``split`` dominate the rest.
    """

    def __init__(self, ring: RingCtx, rank: int, local: bool, split: Optional[int] = None):
        self.ring = ring
        self.rank = rank
        self.local = local
        self.split = split
        self._ring_key = ring.with_ordering("local" if local else "global").key \
            if ring.ordering != "elim" else ring.key
        self._cache: Dict[Mono, tuple] = {}

    def key(self, m: Mono) -> tuple:
        k = self._cache.get(m)
        if k is None:
            c, e = m
            blk = 0 if self.split is None else (1 if c < self.split else 0)
            k = (blk, self._ring_key(e), c)
            self._cache[m] = k
        return k

    def lead(self, v: Vec) -> Mono:
        return max(v, key=self.key)

    def wdeg(self, e) -> int:
        return self.ring.wdeg(e)


def _divides(a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _content(v: Vec) -> int:
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(v: Vec) -> Vec:
    g = _content(v)
    if g > 1:
        return {k: c // g for k, c in v.items()}
    return v


def _sub_scaled(a: Vec, ca: int, b: Vec, cb: int, shift: Tuple[int, ...]) -> Vec:
    """ca*a - cb * x^shift * b."""
    out = {k: ca * c for k, c in a.items()} if ca != 1 else dict(a)
    for (comp, e), c in b.items():
        m = (comp, tuple(x + y for x, y in zip(e, shift)))
        v = out.get(m, 0) - cb * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


# ---------------------------------------------------------------- conversion

def vf_to_vec(v: VectorField) -> Tuple[Vec, mpq]:
    """Integer vector and the positive scale s with v = vec / s."""
    den = 1
    for comp in v.components:
        for c in comp.terms.values():
            d = int(c.denominator)
            den = den * d // gcd(den, d)
    out: Vec = {}
    for i, comp in enumerate(v.components):
        for e, c in comp.terms.items():
            out[(i, e)] = int(c * den)
    return out, mpq(den)


def vec_to_vf(v: Vec, ring: RingCtx, rank: int, scale=1) -> VectorField:
    comps: List[Dict] = [dict() for _ in range(rank)]
    s = mpq(scale)
    for (c, e), x in v.items():
        comps[c][e] = mpq(x) / s
    return VectorField(ring, tuple(Poly(ring, t) for t in comps))


# ---------------------------------------------------------------- engine

@dataclass
class _Elem:
    vec: Vec
    lm: Mono
    lc: int
    ecart: int
    active: bool = True


class _Engine:
    """Buchberger / Mora over one module order."""

    def __init__(self, order: ModuleOrder, is_ideal: bool, max_steps: Optional[int] = None):
        self.order = order
        self.is_ideal = is_ideal
        self.elems: List[_Elem] = []
        self.max_steps = max_steps
        self.steps = 0
        # weighted degree from which every monomial is known to lie in the module
        self.corner: Optional[int] = None

    # helpers
    def make(self, v: Vec) -> _Elem:
        lm = self.order.lead(v)
        ecart = 0
        if self.order.local:
            w = self.order.wdeg
            ecart = max(w(e) for (_, e) in v) - w(lm[1])
        return _Elem(v, lm, v[lm], ecart)

    def _tick(self):
        self.steps += 1
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceeded("standard basis step budget exceeded")

    def _find_reducer(self, lm: Mono, pool) -> Optional[_Elem]:
        comp, e = lm
        best = None
        for g in pool:
            if g.lm[0] == comp and _divides(g.lm[1], e):
                if not self.order.local:
                    return g
                if best is None or g.ecart < best.ecart:
                    best = g
        return best

    def _reduce_step(self, h: _Elem, g: _Elem) -> Vec:
        self._tick()
        shift = tuple(a - b for a, b in zip(h.lm[1], g.lm[1]))
        d = gcd(h.lc, g.lc)
        ch, cg = g.lc // d, h.lc // d
        if ch < 0:
            ch, cg = -ch, -cg
        return _primitive(_sub_scaled(h.vec, ch, g.vec, cg, shift))

    def top_reduce(self, v: Vec, pool=None) -> Vec:
        """Weak normal form (global: top reduction; local: Mora)."""
        if pool is None:
            pool = [g for g in self.elems if g.active]
        if not v:
            return v
        if not self.order.local:
            while v:
                h = self.make(v)
                g = self._find_reducer(h.lm, pool)
                if g is None:
                    return v
                v = self._reduce_step(h, g)
            return v
        T = list(pool)
        while v:
            if self.corner is not None:
                v = self._cut(v)
                if not v:
                    return v
            h = self.make(v)
            g = self._find_reducer(h.lm, T)
            if g is None:
                return v
            if g.ecart > h.ecart:
                T.append(h)
            v = self._reduce_step(h, g)
        return v

    # Buchberger with Gebauer-Moeller
    def run(self, gens: Sequence[Vec]) -> List[Vec]:
        pairs: List[Tuple[int, int, Tuple[int, ...], int]] = []
        for v in gens:
            v = _primitive(dict(v))
            v = self.top_reduce(v)
            if v:
                pairs = self._update(pairs, self.make(v))
                self.find_corner()
        while pairs:
            pairs.sort(key=lambda p: (self.order.wdeg(p[2]), p[3], p[0], p[1]))
            i, j, _, _ = pairs.pop(0)
            s = self._spoly(self.elems[i], self.elems[j])
            s = self.top_reduce(s)
            if s:
                pairs = self._update(pairs, self.make(s))
                self.find_corner()
        return [g.vec for g in self.elems if g.active]

    # high corner: once the leading module holds every monomial of weighted
    # degree >= D, Nakayama gives M^D F inside the module, so reductions may
    # drop those terms.  Only used for local orders without a block split.
    def find_corner(self) -> Optional[int]:
        if not self.order.local or self.order.split is not None:
            return None
        leads = [g.lm for g in self.elems if g.active]
        D = corner_degree(leads, self.order.ring, self.order.rank)
        if D is not None and (self.corner is None or D < self.corner):
            self.corner = D
        return self.corner

    def _cut(self, v: Vec) -> Vec:
        w, D = self.order.wdeg, self.corner
        if all(w(e) < D for (_, e) in v):
            return v
        return _primitive({m: c for m, c in v.items() if w(m[1]) < D})

    def _spoly(self, a: _Elem, b: _Elem) -> Vec:
        self._tick()
        l = _lcm(a.lm[1], b.lm[1])
        sa = tuple(x - y for x, y in zip(l, a.lm[1]))
        sb = tuple(x - y for x, y in zip(l, b.lm[1]))
        d = gcd(a.lc, b.lc)
        va = _sub_scaled({}, 1, a.vec, -(b.lc // d), sa)
        return _primitive(_sub_scaled(va, 1, b.vec, a.lc // d, sb))

    def _update(self, pairs, h: _Elem):
        hi = len(self.elems)
        self.elems.append(h)
        comp, he = h.lm
        cand = []
        for i, g in enumerate(self.elems[:-1]):
            if g.active and g.lm[0] == comp:
                cand.append((i, _lcm(g.lm[1], he), all(x == 0 or y == 0 for x, y in zip(g.lm[1], he))))
        # chain criterion among new pairs
        keep = []
        for idx, (i, l, disjoint) in enumerate(cand):
            if disjoint and self.is_ideal:
                keep.append((i, l, True))
                continue
            redundant = False
            for jdx, (j, l2, _) in enumerate(cand):
                if jdx == idx:
                    continue
                if _divides(l2, l) and (l2 != l or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((i, l, disjoint))
        new_pairs = [(i, hi, l, comp) for (i, l, disjoint) in keep
                     if not (disjoint and self.is_ideal)]
        # prune old pairs
        kept_old = []
        for (i, j, l, c) in pairs:
            if c == comp and _divides(he, l):
                li = _lcm(self.elems[i].lm[1], he)
                lj = _lcm(self.elems[j].lm[1], he)
                if li != l and lj != l:
                    continue
            kept_old.append((i, j, l, c))
        for g in self.elems[:-1]:
            if g.active and g.lm[0] == comp and _divides(he, g.lm[1]):
                g.active = False
        return kept_old + new_pairs


def _ideal_like(rank: int) -> bool:
    return rank == 1


# ---------------------------------------------------------------- homogeneity

def _grading_shifts(vecs: Sequence[Vec], ring: RingCtx, rank: int) -> Optional[List[int]]:
    """Component shifts making every vector homogeneous, or None."""
    w = ring.wdeg
    by_comp: Dict[int, List[Tuple[int, int]]] = {}
    for k, v in enumerate(vecs):
        for (c, e) in v:
            by_comp.setdefault(c, []).append((k, w(e)))
    shift: Dict[int, int] = {}
    deg: Dict[int, int] = {}
    for start in range(len(vecs)):
        if start in deg:
            continue
        deg[start] = 0
        queue = [("v", start)]
        while queue:
            kind, idx = queue.pop()
            if kind == "v":
                for (c, e) in vecs[idx]:
                    need = deg[idx] - w(e)
                    if c in shift:
                        if shift[c] != need:
                            return None
                    else:
                        shift[c] = need
                        queue.append(("c", c))
            else:
                for k, we in by_comp[idx]:
                    need = we + shift[idx]
                    if k in deg:
                        if deg[k] != need:
                            return None
                    else:
                        deg[k] = need
                        queue.append(("v", k))
    return [shift.get(c, 0) for c in range(rank)]


def _homogeneous_with(vecs: Sequence[Vec], ring: RingCtx, rank: int, shifts: List[int]) -> bool:
    w = ring.wdeg
    for v in vecs:
        degs = {w(e) + shifts[c] for (c, e) in v}
        if len(degs) > 1:
            return False
    return True


# ---------------------------------------------------------------- cache

CACHE_ENV = "MAPGERMS_CACHE_DIR"


def _cache_dir() -> Optional[str]:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    os.makedirs(d, exist_ok=True)
    return d


def _cache_key(ring: RingCtx, rank: int, local: bool, vecs: Sequence[Vec], tag: str) -> str:
    payload = json.dumps({
        "vars": ring.vars, "ordering": ring.ordering, "block": ring.block,
        "weights": ring.weights, "rank": rank, "local": local, "tag": tag,
        "gens": [sorted([c, list(e), x] for (c, e), x in v.items()) for v in vecs],
    }, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _cache_load(key: str) -> Optional[List[Vec]]:
    d = _cache_dir()
    if d is None:
        return None
    path = os.path.join(d, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    return [{(c, tuple(e)): x for c, e, x in v} for v in data]


def _cache_store(key: str, basis: List[Vec]) -> None:
    d = _cache_dir()
    if d is None:
        return
    data = [sorted([c, list(e), x] for (c, e), x in v.items()) for v in basis]
    tmp = os.path.join(d, key + f".{os.getpid()}.tmp")
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, os.path.join(d, key + ".json"))


# ---------------------------------------------------------------- public API

@dataclass
class QuotientDim:
    value: float  # int or INFINITY
    certified_degree: int

    @property
    def finite(self) -> bool:
        return self.value != INFINITY

    def __int__(self):
        if not self.finite:
            raise ValueError("infinite quotient dimension")
        return int(self.value)


@dataclass
class LiftResult:
    """sum(coeffs[i] * g_i) == unit * target, with ``unit`` a unit of the ring."""

    coeffs: List[Poly]
    unit: Poly


class SubmoduleRep:
    """Finitely generated submodule of ``ring^rank`` with a lazily cached basis."""

    def __init__(self, ring: RingCtx, rank: int, generators: Sequence[VectorField],
                 max_steps: Optional[int] = None):
        if rank < 1:
            raise ValueError("rank must be positive")
        gens = []
        for g in generators:
            if not isinstance(g, VectorField):
                g = VectorField(ring, tuple(g))
            if g.rank != rank:
                raise ValueError("generator has wrong ambient rank")
            gens.append(g.to_ring(ring) if g.ring.vars != ring.vars else VectorField(ring, g.components))
        self.ring = ring
        self.rank = rank
        self.generators: Tuple[VectorField, ...] = tuple(gens)
        self.max_steps = max_steps
        self._lock = threading.Lock()
        self._basis: Optional[List[Vec]] = None
        self._aug: Optional[List[Vec]] = None
        self._order: Optional[ModuleOrder] = None

    @classmethod
    def ideal(cls, polys: Sequence[Poly], ring: Optional[RingCtx] = None, **kw) -> "SubmoduleRep":
        ring = ring or polys[0].ring
        return cls(ring, 1, [VectorField(ring, (p,)) for p in polys], **kw)

    # --- configuration
    @property
    def local(self) -> bool:
        return self.ring.ordering == "local"

    def _int_gens(self) -> List[Vec]:
        return [vf_to_vec(g)[0] for g in self.generators if not g.is_zero()]

    def _effective_order(self, vecs: List[Vec], rank: int, split=None) -> ModuleOrder:
        local = self.local
        if local:
            shifts = _grading_shifts(vecs, self.ring, rank)
            if shifts is not None and _homogeneous_with(vecs, self.ring, rank, shifts):
                local = False
        return ModuleOrder(self.ring, rank, local, split)

    # --- standard basis
    def std_basis_vecs(self) -> List[Vec]:
        if self._basis is None:
            vecs = self._int_gens()
            order = self._effective_order(vecs, self.rank)
            key = _cache_key(self.ring, self.rank, order.local, vecs, "std")
            basis = _cache_load(key)
            if basis is None:
                eng = _Engine(order, _ideal_like(self.rank), self.max_steps)
                basis = eng.run(vecs)
                if not order.local:
                    basis = _interreduce(eng, basis)
                _cache_store(key, basis)
            with self._lock:
                self._order = order
                self._basis = basis
        return self._basis

    def standard_basis(self) -> "SubmoduleRep":
        basis = self.std_basis_vecs()
        out = SubmoduleRep(self.ring, self.rank, [vec_to_vf(v, self.ring, self.rank) for v in basis])
        out._basis = basis
        out._order = self._order
        return out

    @property
    def order(self) -> ModuleOrder:
        self.std_basis_vecs()
        return self._order

    def leading_monomials(self) -> List[Mono]:
        o = self.order
        return [o.lead(v) for v in self.std_basis_vecs()]

    def _engine(self) -> _Engine:
        eng = _Engine(self.order, _ideal_like(self.rank), self.max_steps)
        for v in self.std_basis_vecs():
            eng.elems.append(eng.make(v))
        eng.find_corner()
        return eng

    # --- membership
    def normal_form(self, v: VectorField) -> VectorField:
        """Normal form of v; zero iff v lies in the module.

        Global orders return the fully reduced remainder.  Local orders return a
        weak normal form (leading term not in the leading module), up to a unit.
        """
        if v.rank != self.rank:
            raise ValueError("ambient rank mismatch")
        vec, scale = vf_to_vec(v.to_ring(self.ring))
        eng = self._engine()
        if eng.order.local:
            r = eng.top_reduce(vec)
        else:
            r = _full_reduce_scaled(eng, vec)
            if r[0]:
                return vec_to_vf(r[0], self.ring, self.rank, r[1] * scale)
            return VectorField.zero(self.ring, self.rank)
        return vec_to_vf(r, self.ring, self.rank)

    def contains(self, v: VectorField) -> bool:
        vec, _ = vf_to_vec(v.to_ring(self.ring))
        return not self._engine().top_reduce(vec)

    def contains_module(self, other: "SubmoduleRep") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "SubmoduleRep") -> bool:
        return self.contains_module(other) and other.contains_module(self)

    def check_buchberger(self) -> bool:
        """Every S-vector of the stored basis reduces to zero."""
        eng = self._engine()
        els = eng.elems
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                if els[i].lm[0] != els[j].lm[0]:
                    continue
                if eng.top_reduce(eng._spoly(els[i], els[j])):
                    return False
        return True

    # --- quotient dimension
    def quotient_dimension(self, max_degree: int = 200) -> QuotientDim:
        """dim_K of ring^rank / module (the local ring when the ring is local)."""
        if self._basis is None and self.rank == 1 and self.local:
            vecs = self._int_gens()
            if self._effective_order(vecs, 1).local and _through_origin_curve(self):
                return QuotientDim(INFINITY, 0)
        lms = self.leading_monomials()
        n = self.ring.nvars
        by_comp: Dict[int, List[Tuple[int, ...]]] = {c: [] for c in range(self.rank)}
        for c, e in lms:
            by_comp[c].append(e)
        total = 0
        cert = 0
        for c in range(self.rank):
            mons = by_comp[c]
            for i in range(n):
                if not any(all(x == 0 for j, x in enumerate(e) if j != i) for e in mons):
                    return QuotientDim(INFINITY, 0)
            d = 0
            while True:
                outside = [m for m in _monomials_of_degree(n, d)
                           if not any(_divides(e, m) for e in mons)]
                if not outside:
                    break
                total += len(outside)
                d += 1
                if d > max_degree:
                    raise BudgetExceeded("quotient enumeration degree exceeded")
            cert = max(cert, d)
        return QuotientDim(total, cert)

    def cobasis(self) -> List[Mono]:
        """Monomials (component, exponent) outside the leading module."""
        qd = self.quotient_dimension()
        if not qd.finite:
            raise ValueError("quotient is infinite dimensional")
        lms = self.leading_monomials()
        out = []
        n = self.ring.nvars
        for c in range(self.rank):
            mons = [e for cc, e in lms if cc == c]
            for d in range(qd.certified_degree + 1):
                out.extend((c, m) for m in _monomials_of_degree(n, d)
                           if not any(_divides(e, m) for e in mons))
        return out

    # --- syzygies and lifting
    def _augmented(self) -> List[Vec]:
        """Basis of the module spanned by (g_i | e_i), original block dominating."""
        if self._aug is None:
            vecs = []
            g = len(self.generators)
            for i, gen in enumerate(self.generators):
                v, den = vf_to_vec(gen)
                v[(self.rank + i, (0,) * self.ring.nvars)] = int(den)
                vecs.append(v)
            order = self._effective_order(vecs, self.rank + g, split=self.rank)
            key = _cache_key(self.ring, self.rank + g, order.local, vecs, f"aug{self.rank}")
            basis = _cache_load(key)
            if basis is None:
                eng = _Engine(order, False, self.max_steps)
                basis = eng.run(vecs)
                if not order.local:
                    basis = _interreduce(eng, basis)
                _cache_store(key, basis)
            self._aug = basis
            self._aug_order = order
        return self._aug

    def syzygies(self) -> "SubmoduleRep":
        """Relation module {(a_1..a_g) : sum a_i g_i = 0}."""
        aug = self._augmented()
        g = len(self.generators)
        rels = []
        for v in aug:
            if all(c >= self.rank for (c, _) in v):
                w = {(c - self.rank, e): x for (c, e), x in v.items()}
                rels.append(vec_to_vf(w, self.ring, g))
        if not rels:
            rels = [VectorField.zero(self.ring, g)]
        return SubmoduleRep(self.ring, g, rels)

    def lift_through(self, target: VectorField) -> Optional[LiftResult]:
        """Coefficients expressing ``unit * target`` in the generators, or None."""
        if target.rank != self.rank:
            raise ValueError("ambient rank mismatch")
        aug = self._augmented()
        g = len(self.generators)
        order = ModuleOrder(self.ring, self.rank + g + 1, self._aug_order.local, self.rank)
        eng = _Engine(order, False, self.max_steps)
        for v in aug:
            eng.elems.append(eng.make(v))
        vec, scale = vf_to_vec(target.to_ring(self.ring))
        vec = dict(vec)
        vec[(self.rank + g, (0,) * self.ring.nvars)] = 1
        # reduce until the original block vanishes
        r = _reduce_original(eng, vec, self.rank)
        if r is None:
            return None
        # r = u*(target*scale | 0 | 1) - sum(a_i (s_i g_i | e_i | 0)) with tag part visible
        coeffs: List[Dict] = [dict() for _ in range(g)]
        unit: Dict = {}
        for (c, e), x in r.items():
            if c == self.rank + g:
                unit[e] = x
            else:
                coeffs[c - self.rank][e] = x
        # generator scales: aug rows store (den*g_i | den e_i)
        upoly = Poly(self.ring, {e: mpq(x) for e, x in unit.items()})
        outs = []
        for i, t in enumerate(coeffs):
            outs.append(Poly(self.ring, {e: -mpq(x) for e, x in t.items()}))
        # sum_i outs_i * g_i == upoly * scale * target;  normalise to unit * target
        upoly = upoly * scale
        if not self._aug_order.local:
            if not upoly.is_constant():
                raise AssertionError("global lift produced a non-constant unit")
            c = upoly.constant_term()
            outs = [p * (1 / c) for p in outs]
            upoly = self.ring.one()
        return LiftResult(outs, upoly)


def _reduce_original(eng: _Engine, vec: Vec, rank: int) -> Optional[Vec]:
    """Reduce until no term of the original block is left; None if stuck."""
    pool = [g for g in eng.elems]
    T = list(pool)
    v = vec
    while True:
        orig = [m for m in v if m[0] < rank]
        if not orig:
            return v
        h = eng.make(v)
        g = eng._find_reducer(h.lm, T)
        if g is None:
            return None
        if eng.order.local and g.ecart > h.ecart:
            T.append(h)
        v = eng._reduce_step(h, g)


def _full_reduce_scaled(eng: _Engine, v: Vec):
    """Full reduction tracking the overall scale: returns (remainder, factor).

    remainder / factor == normal form of v (v taken with scale 1).
    """
    pool = [g for g in eng.elems if g.active]
    done: Vec = {}
    factor = 1
    while v:
        h = eng.make(v)
        g = eng._find_reducer(h.lm, pool)
        if g is None:
            done[h.lm] = v.pop(h.lm)
            continue
        eng._tick()
        shift = tuple(a - b for a, b in zip(h.lm[1], g.lm[1]))
        d = gcd(h.lc, g.lc)
        ch, cg = g.lc // d, h.lc // d
        if ch < 0:
            ch, cg = -ch, -cg
        v = _sub_scaled(v, ch, g.vec, cg, shift)
        if ch != 1:
            done = {k: x * ch for k, x in done.items()}
            factor *= ch
    return done, factor


def corner_degree(leads: Sequence[Mono], ring: RingCtx, rank: int) -> Optional[int]:
    """1 + the largest weighted degree of a monomial outside the leading
    module, or None when the quotient is infinite."""
    n = ring.nvars
    top = -1
    for c in range(rank):
        mons = [e for cc, e in leads if cc == c]
        for i in range(n):
            if not any(all(x == 0 for j, x in enumerate(e) if j != i) for e in mons):
                return None
        d = 0
        while True:
            outside = [m for m in _monomials_of_degree(n, d) if not any(_divides(e, m) for e in mons)]
            if not outside:
                break
            top = max(top, max(ring.wdeg(m) for m in outside))
            d += 1
    return top + 1


def _through_origin_curve(ideal: SubmoduleRep) -> bool:
    """True when V(I) has a positive dimensional branch through 0.

    Such a branch leaves some hyperplane x_i = 0, so 0 lies in the closure of
    V(I) minus {x_i = 0}, i.e. every generator of I : x_i^oo vanishes at 0.
    Saturations are global eliminations, cheap where local Mora tails are not.
    """
    ring = ideal.ring
    polys = [g.components[0] for g in ideal.generators if not g.is_zero()]
    if not polys or any(p.constant_term() for p in polys):
        return False
    t = "t"
    while t in ring.vars:
        t += "_"
    R = RingCtx((t,) + tuple(ring.vars), "global")
    lifted = [p.to_ring(R) for p in polys]
    for v in ring.vars:
        gens = lifted + [R.one() - R.var(t) * R.var(v)]
        sat = eliminate(SubmoduleRep.ideal(gens, R, max_steps=ideal.max_steps), [t], ideal.max_steps)
        if all(not q.constant_term() for q in sat):
            return True
    return False


def _interreduce(eng: _Engine, basis: List[Vec]) -> List[Vec]:
    """Reduced basis for global orders (minimal, tails reduced, primitive)."""
    order = eng.order
    elems = [eng.make(v) for v in basis]
    minimal = []
    for i, a in enumerate(elems):
        dominated = False
        for j, b in enumerate(elems):
            if i != j and a.lm[0] == b.lm[0] and _divides(b.lm[1], a.lm[1]):
                if b.lm != a.lm or j < i:
                    dominated = True
                    break
        if not dominated:
            minimal.append(a)
    out = []
    for a in minimal:
        others = [b for b in minimal if b is not a]
        lead = {a.lm: a.vec[a.lm]}
        tail = {k: x for k, x in a.vec.items() if k != a.lm}
        red, factor = _full_reduce_scaled(eng_with(order, others), tail)
        v = {k: x * factor for k, x in lead.items()}
        for k, x in red.items():
            v[k] = v.get(k, 0) + x
        v = _primitive({k: x for k, x in v.items() if x})
        if v[order.lead(v)] < 0:
            v = {k: -x for k, x in v.items()}
        out.append(v)
    out.sort(key=lambda v: order.key(order.lead(v)))
    return out


def eng_with(order: ModuleOrder, elems: List[_Elem]) -> _Engine:
    e = _Engine(order, order.rank == 1)
    e.elems = list(elems)
    return e


def _monomials_of_degree(n: int, d: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def monomials_up_to(n: int, d: int):
    for k in range(d + 1):
        yield from _monomials_of_degree(n, k)


# ---------------------------------------------------------------- functional wrappers

def standard_basis(m: SubmoduleRep) -> SubmoduleRep:
    return m.standard_basis()


def normal_form(v: VectorField, m: SubmoduleRep) -> VectorField:
    return m.normal_form(v)


def quotient_dimension(m: SubmoduleRep) -> QuotientDim:
    return m.quotient_dimension()


def syzygies(m: SubmoduleRep) -> SubmoduleRep:
    return m.syzygies()


def lift_through(m: SubmoduleRep, target: VectorField) -> Optional[LiftResult]:
    return m.lift_through(target)


def eliminate(ideal: SubmoduleRep, names: Sequence[str], max_steps: Optional[int] = None) -> List[Poly]:
    """Generators of ideal ∩ K[remaining variables], in the remaining-variable ring."""
    if ideal.rank != 1:
        raise ValueError("eliminate expects an ideal")
    ring = ideal.ring
    names = list(names)
    for nm in names:
        ring.index(nm)
    rest = [v for v in ring.vars if v not in names]
    w = ring.weights
    order_vars = names + rest
    weights = None
    if w is not None:
        weights = tuple(w[ring.index(v)] for v in order_vars)
    elim_ring = RingCtx(tuple(order_vars), "elim", weights, len(names))
    gens = [g.components[0].to_ring(elim_ring) for g in ideal.generators]
    vecs = [vf_to_vec(VectorField(elim_ring, (p,)))[0] for p in gens if p]
    order = ModuleOrder(elim_ring, 1, False)
    key = _cache_key(elim_ring, 1, False, vecs, "elim")
    basis = _cache_load(key)
    if basis is None:
        eng = _Engine(order, True, max_steps)
        basis = _interreduce(eng, eng.run(vecs))
        _cache_store(key, basis)
    k = len(names)
    out_ring = RingCtx(tuple(rest), "global", tuple(w[ring.index(v)] for v in rest) if w else None)
    out = []
    for v in basis:
        if all(not any(e[:k]) for (_, e) in v):
            out.append(Poly(out_ring, {e[k:]: mpq(x) for (_, e), x in v.items()}))
    if not out:
        out = [out_ring.zero()]
    return out
