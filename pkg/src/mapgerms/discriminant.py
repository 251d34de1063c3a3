"""Critical loci, discriminants, logarithmic vector fields and liftability.

For n >= p the discriminant is the image of the critical set; for n < p it is
the image of the germ.  Both are obtained by eliminating source variables from
the graph ideal.  Components that are plain source variables (unfolding
parameters) are substituted before elimination, which keeps the number of
eliminated variables down to the genuinely nonlinear ones.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import os
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from gmpy2 import mpq

from .gb import SubmoduleRep, _cache_dir, eliminate
from .germ import MapGerm, format_germ, weighted
from .linalg import Echelon
from .poly import Poly, RingCtx, VectorField, determinant, make_ring


class NotLiftable(ValueError):
    """eta∘F is not in tF(theta_n)."""


class NotInSubalgebra(ValueError):
    """The function does not factor through the germ."""


class NonPrincipal(ValueError):
    pass


# ---------------------------------------------------------------- helpers

def _identity_components(F: MapGerm) -> Dict[str, str]:
    """source variable -> target variable for components equal to a variable."""
    out: Dict[str, str] = {}
    for t, c in zip(F.target.vars, F.components):
        if len(c.terms) != 1:
            continue
        (e, v), = c.terms.items()
        if v == 1 and sum(e) == 1:
            name = F.source.vars[e.index(1)]
            if name not in out:
                out[name] = t
    return out


@dataclass(frozen=True)
class _Graph:
    germ: MapGerm
    ring: RingCtx  # eliminated source variables first, then target variables
    elim: Tuple[str, ...]
    subs: Dict[str, Poly]  # source variable -> polynomial in ring
    comps: Tuple[Poly, ...]  # components in ring

    def pull(self, q: Poly) -> Poly:
        return q.substitute({v: self.subs[v] for v in q.variables()}, self.ring)


def _graph(F: MapGerm) -> _Graph:
    F = weighted(F)
    clash = set(F.source.vars) & set(F.target.vars)
    if clash:
        raise ValueError(f"source and target share variable names {sorted(clash)}")
    ident = _identity_components(F)
    elim = tuple(v for v in F.source.vars if v not in ident)
    names = elim + tuple(F.target.vars)
    weights = None
    if F.source.weights is not None and F.target.weights is not None:
        sw = dict(zip(F.source.vars, F.source.weights))
        tw = dict(zip(F.target.vars, F.target.weights))
        weights = tuple(sw.get(v, tw.get(v)) for v in names)
    R = RingCtx(names, "elim", weights, len(elim))
    subs = {v: (R.var(ident[v]) if v in ident else R.var(v)) for v in F.source.vars}
    comps = tuple(c.substitute(subs, R) for c in F.components)
    return _Graph(F, R, elim, subs, comps)


def _reduced_jacobian(F: MapGerm) -> Tuple[List[List[Poly]], List[str]]:
    """Jacobian with identity rows and their columns removed."""
    ident = _identity_components(F)
    idrows = set(ident.values())
    cols = [v for v in F.source.vars if v not in ident]
    rows = [[c.diff(v) for v in cols] for t, c in zip(F.target.vars, F.components) if t not in idrows]
    return rows, cols


def _minors(rows: List[List[Poly]], ring: RingCtx) -> List[Poly]:
    k = len(rows)
    if k == 0:
        return [ring.one()]
    ncols = len(rows[0]) if rows else 0
    out = []
    for cols in itertools.combinations(range(ncols), k):
        d = determinant([[r[j] for j in cols] for r in rows])
        if d:
            out.append(d)
    return out


def critical_ideal(F: MapGerm) -> SubmoduleRep:
    """Ideal of maximal (order p) minors of dF when n >= p; zero ideal if n < p."""
    if F.n < F.p:
        return SubmoduleRep.ideal([F.source.zero()], F.source)
    rows, _ = _reduced_jacobian(F)
    gens = _minors(rows, F.source)
    if not gens:
        gens = [F.source.zero()]
    return SubmoduleRep.ideal(gens, F.source)


# ---------------------------------------------------------------- sympy bridge

def _to_sympy(p: Poly):
    syms = sympy.symbols(p.ring.vars)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, a in zip(syms, e):
            if a:
                term *= s ** a
        expr += term
    return sympy.Poly(expr, *syms, domain="QQ")


def _from_sympy(sp, ring: RingCtx) -> Poly:
    terms = {}
    for e, c in sp.terms():
        c = sympy.Rational(c)
        terms[tuple(e)] = mpq(int(c.p), int(c.q))
    return Poly(ring, terms)


def squarefree_part(h: Poly) -> Poly:
    if h.is_constant():
        return h
    return _normalise(_from_sympy(sympy.sqf_part(_to_sympy(h)), h.ring))


def _normalise(h: Poly) -> Poly:
    if not h:
        return h
    h = h.primitive()
    if h.lead_coeff() < 0:
        h = -h
    return h


# ---------------------------------------------------------------- discriminant

@dataclass
class DiscriminantData:
    germ: MapGerm
    equation: Poly
    derlog: SubmoduleRep

    def to_json(self) -> dict:
        return {
            "germ": self.germ.label or format_germ(self.germ),
            "equation": str(self.equation),
            "derlog_generators": [[str(c) for c in g.components] for g in self.derlog.generators],
        }


def _germ_hash(F: MapGerm) -> str:
    return hashlib.sha256(format_germ(F).encode()).hexdigest()


def _disc_cache_path(F: MapGerm) -> Optional[str]:
    d = _cache_dir()
    if d is None:
        return None
    return os.path.join(d, "disc-" + _germ_hash(F) + ".json")


def discriminant_equation(F: MapGerm, max_steps: Optional[int] = None) -> Poly:
    """Reduced equation of the discriminant (n >= p) or image (n < p)."""
    G = _graph(F)
    gens = [G.ring.var(t) - c for t, c in zip(F.target.vars, G.comps)
            if c != G.ring.var(t)]
    if F.n >= F.p:
        rows, cols = _reduced_jacobian(G.germ)
        minors = _minors(rows, G.germ.source)
        gens += [G.pull(m) for m in minors]
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("graph ideal is zero")
    out = eliminate(SubmoduleRep.ideal(gens, G.ring), list(G.elim), max_steps)
    out = [p for p in out if p]
    tgt = F.target if F.target.weights is not None or G.germ.target.weights is None else G.germ.target
    if not out:
        raise NonPrincipal("elimination ideal is zero (image is not a hypersurface)")
    if len(out) > 1:
        g = out[0]
        for p in out[1:]:
            g = _from_sympy(sympy.gcd(_to_sympy(g), _to_sympy(p)), g.ring)
        raise NonPrincipal(f"elimination ideal has {len(out)} generators (gcd {g})")
    h = out[0].to_ring(G.germ.target)
    return squarefree_part(h).to_ring(tgt)


def discriminant(F: MapGerm, max_steps: Optional[int] = None, use_cache: bool = True) -> DiscriminantData:
    path = _disc_cache_path(F) if use_cache else None
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        h = F.target.parse(data["equation"])
        gens = [VectorField.parse(F.target, g) for g in data["derlog_generators"]]
        return DiscriminantData(F, h, SubmoduleRep(_local(F.target), F.p, gens))
    h = discriminant_equation(F, max_steps).to_ring(F.target)
    d = DiscriminantData(F, h, derlog(h, max_steps=max_steps))
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + f".{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump(d.to_json(), fh, sort_keys=True)
        os.replace(tmp, path)
    return d


def _local(ring: RingCtx) -> RingCtx:
    return ring.with_ordering("local")


def derlog(h: Poly, prune: bool = True, max_steps: Optional[int] = None,
           method: str = "auto") -> SubmoduleRep:
    """Vector fields eta with eta(h) in <h>, over the local ring at the origin.

    ``method`` is "syzygy" (syzygies of the partials and h), "graded" (degree
    by degree linear algebra, weighted homogeneous free divisors only) or
    "auto" (graded when it certifies a basis, otherwise syzygy).
    """
    if not h:
        raise ValueError("derlog of the zero polynomial")
    if method not in ("auto", "graded", "syzygy"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "graded"):
        gens = derlog_graded(h)
        if gens is not None:
            ring = _local(h.ring)
            return SubmoduleRep(ring, ring.nvars, [g.to_ring(ring) for g in gens])
        if method == "graded":
            raise ValueError("graded route needs a weighted homogeneous free divisor")
    ring = _local(h.ring)
    h = h.to_ring(ring)
    m = ring.nvars
    parts = [h.diff(v) for v in ring.vars] + [h]
    rel = SubmoduleRep(ring, 1, [VectorField(ring, (p,)) for p in parts], max_steps).syzygies()
    gens = []
    for g in rel.generators:
        eta = VectorField(ring, g.components[:m])
        if not eta.is_zero():
            gens.append(eta)
    if prune:
        gens = minimal_generators(gens, ring, m)
    return SubmoduleRep(ring, m, gens)


def _homogeneity(h: Poly) -> Optional[Tuple[Tuple[int, ...], int]]:
    """(weights, degree) with h weighted homogeneous for positive weights."""
    w = h.ring.weights
    if w is not None and h.is_weighted_homogeneous(w):
        return tuple(w), h.wdegree()
    from .germ import find_weights, MapGerm as _MG
    tgt = make_ring(["_h"])
    try:
        found = find_weights(_MG(h.ring.with_ordering("global"), tgt, (h.to_ring(h.ring.with_ordering("global")),)))
    except ValueError:
        return None
    if found is None:
        return None
    return found[0], found[1][0]


def derlog_graded(h: Poly, max_extra: int = 0) -> Optional[List[VectorField]]:
    """Homogeneous generators of Derlog(h) certified by Saito's criterion.

    Returns None when h is not weighted homogeneous or no free basis shows up
    by degree deg(h) + max weight (+ ``max_extra``).
    """
    hw = _homogeneity(h)
    if hw is None or h.is_constant():
        return None
    w, D = hw
    m = len(w)
    for _, found in _graded_steps(h, w, range(-max(w), D + max(w) + max_extra + 1)):
        gens = [g for _, g in found]
        if len(gens) > m:
            return None
        if len(gens) == m:
            det = determinant([[g.components[i] for g in gens] for i in range(m)])
            q = det.exact_div(h.to_ring(det.ring)) if det else None
            if q is not None and q.is_constant() and q.constant_term() != 0:
                return [VectorField(h.ring, tuple(c.to_ring(h.ring) for c in g.components)) for g in gens]
    return None


def derlog_upto(h: Poly, top: int) -> List[Tuple[int, VectorField]]:
    """Minimal homogeneous generators of Derlog(h) of weighted degree <= top.

    No freeness is assumed, so the list is complete only up to ``top``.
    Degrees are those of the field (component degree minus variable weight).
    """
    hw = _homogeneity(h)
    if hw is None or h.is_constant():
        raise ValueError("h must be weighted homogeneous and nonconstant")
    w, _ = hw
    found: List[Tuple[int, VectorField]] = []
    for _, found in _graded_steps(h, w, range(-max(w), top + 1)):
        pass
    return [(dg, VectorField(h.ring, tuple(c.to_ring(h.ring) for c in g.components))) for dg, g in found]


def _graded_steps(h: Poly, w, degrees):
    """Yield (d, generators so far) degree by degree."""
    ring = make_ring(h.ring.vars, "global", w)
    h = h.to_ring(ring)
    m = ring.nvars
    partials = [h.diff(v) for v in ring.vars]
    gens: List[Tuple[int, VectorField]] = []
    for d in degrees:
        unknowns = [(i, e) for i in range(m) for e in _weighted_monomials(w, d + w[i])]
        if not unknowns:
            continue
        mults = list(_weighted_monomials(w, d)) if d >= 0 else []
        cols: Dict[Tuple[int, ...], int] = {}

        def row(p: Poly):
            r = {}
            for e, c in p.terms.items():
                if e not in cols:
                    cols[e] = len(cols)
                r[cols[e]] = c
            return r

        ech = Echelon(track=True)
        rels = []
        for mu in mults:
            ech.add_or_relation(row(ring.monomial(mu) * h))
        nm = len(mults)
        for i, e in unknowns:
            rel = ech.add_or_relation(row(ring.monomial(e) * partials[i]))
            if rel is not None:
                rels.append(rel)
        if not rels:
            continue
        # eta coefficient space, columns indexed by unknowns; old generators first
        ucol = {u: k for k, u in enumerate(unknowns)}
        span = Echelon()
        for dg, g in gens:
            for mu in _weighted_monomials(w, d - dg) if d >= dg else []:
                span.add(_field_row(g, ring.monomial(mu), ucol))
        for rel in rels:
            comps = [ring.zero()] * m
            for k, c in rel.items():
                if k < nm:
                    continue
                i, e = unknowns[k - nm]
                comps[i] = comps[i] + ring.monomial(e, c)
            eta = VectorField(ring, tuple(comps))
            if eta.is_zero():
                continue
            if span.add(_field_row(eta, ring.one(), ucol)):
                gens.append((d, _primitive_field(eta)))
        yield d, list(gens)


def _field_row(eta: VectorField, mu: Poly, ucol) -> Dict[int, mpq]:
    out = {}
    for i, c in enumerate(eta.components):
        for e, v in (c * mu).terms.items():
            out[ucol[(i, e)]] = v
    return out


def _primitive_field(eta: VectorField) -> VectorField:
    coeffs = [v for c in eta.components for v in c.terms.values()]
    from math import gcd
    num = 0
    den = 1
    for v in coeffs:
        num = gcd(num, int(v.numerator))
        den = den * int(v.denominator) // gcd(den, int(v.denominator))
    scale = mpq(den, num) if num else mpq(1)
    out = VectorField(eta.ring, tuple(c * scale for c in eta.components))
    lead = next(c for c in out.components if c)
    if lead.lead_coeff() < 0:
        out = VectorField(eta.ring, tuple(-c for c in out.components))
    return out


def minimal_generators(gens: Sequence[VectorField], ring: RingCtx, rank: int) -> List[VectorField]:
    """Drop redundant generators, scanning by (order at 0, position)."""
    ring = _local(ring)
    items = sorted(((g.order(), i, g.to_ring(ring)) for i, g in enumerate(gens) if not g.is_zero()),
                   key=lambda t: (t[0], t[1]))
    kept: List[VectorField] = []
    for _, _, g in items:
        if kept and SubmoduleRep(ring, rank, kept).contains(g):
            continue
        kept.append(g)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        if others and SubmoduleRep(ring, rank, others).contains(kept[i]):
            kept.pop(i)
        else:
            i += 1
    return kept


def is_tangent(eta: VectorField, h: Poly) -> bool:
    return eta.apply(h.to_ring(eta.ring)).exact_div(h.to_ring(eta.ring)) is not None


# ---------------------------------------------------------------- liftability

@dataclass
class LiftWitness:
    xi: VectorField
    unit: Poly  # dF(xi) == unit * (eta∘F); unit is 1 for graded germs


@lru_cache(maxsize=64)
def _tf_module(F: MapGerm) -> SubmoduleRep:
    ring = _local(F.source)
    J = F.jacobian()
    cols = [VectorField(ring, tuple(J[i][j].to_ring(ring) for i in range(F.p))) for j in range(F.n)]
    return SubmoduleRep(ring, F.p, cols)


def verify_liftable(F: MapGerm, eta: VectorField) -> LiftWitness:
    """Solve dF·xi = eta∘F; raises NotLiftable when no xi exists."""
    if eta.rank != F.p:
        raise ValueError("eta must have one component per target coordinate")
    eta = eta.to_ring(F.target) if eta.ring.vars == F.target.vars else eta
    target = F.pullback_field(VectorField(F.target, tuple(c.to_ring(F.target) for c in eta.components)))
    mod = _tf_module(F)
    res = mod.lift_through(target)
    if res is None:
        raise NotLiftable("eta∘F is not in tF(theta_n)")
    xi = VectorField(F.source, tuple(c.to_ring(F.source) for c in res.coeffs))
    unit = res.unit.to_ring(F.source)
    lhs = F.tf(xi)
    rhs = VectorField(F.source, tuple(unit * c for c in target.components))
    if not (lhs - rhs).is_zero():
        raise AssertionError("lifting witness failed verification")
    return LiftWitness(xi, unit)


def is_liftable(F: MapGerm, eta: VectorField) -> bool:
    try:
        verify_liftable(F, eta)
    except NotLiftable:
        return False
    return True


def lift_with_linear_part(F: MapGerm, eta_lin: VectorField) -> Optional[Tuple[VectorField, VectorField]]:
    """A liftable eta whose linear part is ``eta_lin``, with its xi.

    Works degree-wise for a weighted homogeneous germ: eta_lin must be
    homogeneous, and the higher terms of eta and all of xi are unknowns of
    the same degree.  Returns None when the linear system has no solution.
    """
    W = weighted(F)
    sw, tw = W.source.weights, W.target.weights
    if sw is None or tw is None:
        raise ValueError("germ is not weighted homogeneous")
    lin = eta_lin.linear_part()
    p, n = F.p, F.n
    degs = {tw[k] - tw[i] for i in range(p) for k in range(p) if lin[i][k]}
    if len(degs) != 1:
        raise ValueError("linear part is not homogeneous")
    d = degs.pop()
    comps = W.components
    cols: Dict[Tuple[int, Tuple[int, ...]], int] = {}

    def row(vf: Sequence[Poly]):
        r = {}
        for i, c in enumerate(vf):
            for e, v in c.terms.items():
                r[cols.setdefault((i, e), len(cols))] = v
        return r

    powers: Dict[Tuple[int, ...], Poly] = {}

    def compose(E):
        if E not in powers:
            out = W.source.one()
            for c, a in zip(comps, E):
                if a:
                    out = out * c ** a
            powers[E] = out
        return powers[E]

    unknowns = []
    ech = Echelon(track=True)
    for j in range(n):
        for e in _weighted_monomials(sw, d + sw[j]):
            field = [W.source.zero()] * n
            field[j] = W.source.monomial(e)
            ech.add_or_relation(row(W.tf(VectorField(W.source, tuple(field))).components))
            unknowns.append(("xi", j, e))
    for i in range(p):
        for E in _weighted_monomials(tw, d + tw[i]):
            if sum(E) < 2:
                continue
            vf = [W.source.zero()] * p
            vf[i] = -compose(E)
            ech.add_or_relation(row(vf))
            unknowns.append(("eta", i, E))
    rhs = [W.source.zero()] * p
    for i in range(p):
        for k in range(p):
            if lin[i][k]:
                rhs[i] = rhs[i] + comps[k] * lin[i][k]
    sol = ech.solve(row(rhs))
    if sol is None:
        return None
    xi = [F.source.zero()] * n
    eta = [sum((F.target.var(F.target.vars[k]) * lin[i][k] for k in range(p) if lin[i][k]), F.target.zero())
           for i in range(p)]
    for idx, c in sol.items():
        kind, i, e = unknowns[idx]
        if kind == "xi":
            xi[i] = xi[i] + F.source.monomial(e, c)
        else:
            eta[i] = eta[i] + F.target.monomial(e, c)
    xi_f = VectorField(F.source, tuple(xi))
    eta_f = VectorField(F.target, tuple(eta))
    if not (F.tf(xi_f) - F.pullback_field(eta_f)).is_zero():
        raise AssertionError("graded lift failed verification")
    return xi_f, eta_f


# ---------------------------------------------------------------- subalgebra membership

@lru_cache(maxsize=16)
def _graph_basis(F: MapGerm) -> Tuple[_Graph, SubmoduleRep]:
    G = _graph(F)
    gens = [G.ring.var(t) - c for t, c in zip(F.target.vars, G.comps) if c != G.ring.var(t)]
    if not gens:
        gens = [G.ring.zero()]
    mod = SubmoduleRep.ideal(gens, G.ring)
    mod.std_basis_vecs()
    return G, mod


def express_in_target(F: MapGerm, q: Poly) -> Poly:
    """Q over the target with Q∘F == q, by normal form for an elimination order."""
    G, mod = _graph_basis(F)
    qq = G.pull(q.to_ring(F.source))
    nf = mod.normal_form(VectorField(G.ring, (qq,))).components[0]
    k = len(G.elim)
    if any(any(e[:k]) for e in nf.terms):
        raise NotInSubalgebra("function does not factor through the germ")
    Q = Poly(F.target, {e[k:]: c for e, c in nf.terms.items()})
    return Q


def express_graded(F: MapGerm, q: Poly) -> Poly:
    """Same as express_in_target, by linear algebra degree by degree.

    Requires a weighted homogeneous germ with positive weights.
    """
    W = weighted(F)
    if W.source.weights is None or W.target.weights is None:
        raise ValueError("germ is not weighted homogeneous")
    sw = W.source.weights
    tw = W.target.weights
    comps = W.components
    q = q.to_ring(W.source)
    parts: Dict[int, Dict] = {}
    for e, c in q.terms.items():
        parts.setdefault(sum(a * b for a, b in zip(e, sw)), {})[e] = c
    result: Dict[Tuple[int, ...], mpq] = {}
    for d, terms in sorted(parts.items()):
        monos = list(_weighted_monomials(tw, d))
        ech = Echelon(track=True)
        cols: Dict[Tuple[int, ...], int] = {}

        def row(p: Poly):
            r = {}
            for e, c in p.terms.items():
                if e not in cols:
                    cols[e] = len(cols)
                r[cols[e]] = c
            return r

        comp_rows = []
        for m in monos:
            comp_rows.append(row(_compose_monomial(comps, m, W.source)))
        for r in comp_rows:
            ech.add(r)
        tgt_row = row(Poly(W.source, terms))
        sol = ech.solve(tgt_row)
        if sol is None:
            raise NotInSubalgebra(f"weighted degree {d} part does not factor through the germ")
        for idx, c in sol.items():
            m = monos[idx]
            result[m] = result.get(m, 0) + c
    return Poly(F.target, {e: c for e, c in result.items() if c})


def _weighted_monomials(weights: Sequence[int], d: int):
    n = len(weights)

    def rec(i, left):
        if i == n:
            if left == 0:
                yield ()
            return
        w = weights[i]
        for a in range(left // w, -1, -1):
            for rest in rec(i + 1, left - a * w):
                yield (a,) + rest

    return rec(0, d)


def _compose_monomial(comps: Sequence[Poly], e: Sequence[int], ring: RingCtx) -> Poly:
    out = ring.one()
    for c, a in zip(comps, e):
        if a:
            out = out * c ** a
    return out


def pushforward_field(F: MapGerm, xi: VectorField, graded: bool = False) -> VectorField:
    """eta with eta∘F == dF·xi, componentwise through express_in_target."""
    img = F.tf(xi)
    fn = express_graded if graded else express_in_target
    return VectorField(F.target, tuple(fn(F, c) for c in img.components))


# ---------------------------------------------------------------- Saito

def saito_check(d: DiscriminantData) -> bool:
    """det of the generator matrix equals unit * equation."""
    gens = d.derlog.generators
    m = d.equation.ring.nvars
    if len(gens) != m:
        raise ValueError(f"derlog has {len(gens)} generators, expected {m}")
    ring = d.equation.ring
    mat = [[g.components[i].to_ring(ring) for g in gens] for i in range(m)]
    det = determinant(mat)
    if not det:
        return False
    q = det.exact_div(d.equation)
    return q is not None and q.constant_term() != 0


# ---------------------------------------------------------------- sample points

def critical_points(F: MapGerm, count: int, seed: int = 0, tries: int = 50) -> List[Dict[str, mpq]]:
    """Random rational points of the critical set (all of the source if n < p).

    Solves the minor equations for a set of unfolding parameters in which they
    are affine-linear, with random values for the remaining variables.
    """
    rng = random.Random(seed)
    if F.n < F.p:
        return [{v: mpq(rng.randint(-9, 9), rng.randint(1, 5)) for v in F.source.vars}
                for _ in range(count)]
    minors = [g.components[0] for g in critical_ideal(F).generators if g.components[0]]
    k = F.n - F.p + 1
    cands = [v for v in reversed(F.source.vars)
             if all(m.degree_in(v) <= 1 for m in minors)] if minors else []
    pts: List[Dict[str, mpq]] = []
    for solve_for in itertools.combinations(cands, k):
        if not _affine_in(minors, solve_for):
            continue
        failures = 0
        while len(pts) < count and failures < tries * count:
            pt = _solve_point(minors, solve_for, F.source.vars, rng)
            if pt is None:
                failures += 1
                continue
            pts.append(pt)
        if len(pts) >= count:
            return pts
    raise ValueError("could not parametrize the critical set by affine-linear solving")


def _affine_in(polys, names) -> bool:
    for p in polys:
        for e in p.terms:
            if sum(e[p.ring.index(v)] for v in names) > 1:
                return False
    return True


def _solve_point(minors, solve_for, allvars, rng):
    vals = {v: mpq(rng.randint(-9, 9), rng.randint(1, 5)) for v in allvars if v not in solve_for}
    ring = minors[0].ring
    idx = {v: i for i, v in enumerate(solve_for)}
    k = len(solve_for)
    rows = []
    for m in minors:
        coeffs = [mpq(0)] * (k + 1)
        for e, c in m.terms.items():
            val = mpq(int(c.numerator), int(c.denominator))
            slot = k
            for i, a in enumerate(e):
                name = ring.vars[i]
                if name in idx:
                    if a:
                        slot = idx[name]
                elif a:
                    val *= vals[name] ** a
            coeffs[slot] += val
        rows.append(coeffs)
    sol = _solve_affine(rows, k)
    if sol is None:
        return None
    vals.update({v: sol[i] for i, v in enumerate(solve_for)})
    return vals


def _solve_affine(rows, k) -> Optional[List[mpq]]:
    """Unique solution of sum_j a_ij t_j + b_i = 0, or None."""
    m = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            return None
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    if any(row[k] for row in m[r:]):
        return None
    return [-m[i][k] for i in range(k)]


def vanishes_on_critical_image(d: DiscriminantData, count: int = 200, seed: int = 0) -> bool:
    F = d.germ
    h = d.equation.to_ring(F.target)
    for pt in critical_points(F, count, seed):
        img = {t: c.evaluate(pt) for t, c in zip(F.target.vars, F.components)}
        if h.evaluate(img) != 0:
            return False
    return True


# ---------------------------------------------------------------- graded membership

def _field_degree(v: VectorField, w) -> Optional[int]:
    degs = {sum(a * b for a, b in zip(e, w)) - w[i]
            for i, c in enumerate(v.components) for e in c.terms}
    return degs.pop() if len(degs) == 1 else None


def graded_contains(gens: Sequence[VectorField], v: VectorField, weights=None) -> Optional[bool]:
    """Membership of a homogeneous field in the module spanned by homogeneous
    fields, by linear algebra in the degree of v.

    Degrees are those of vector fields on the target (component weight minus
    coordinate weight).  Returns None when something is not homogeneous.
    """
    w = tuple(weights or v.ring.weights or (1,) * v.ring.nvars)
    if not w or min(w) <= 0:
        return None
    if v.is_zero():
        return True
    d = _field_degree(v, w)
    if d is None:
        return None
    ech = Echelon()
    ring = v.ring
    cols: Dict = {}

    def row(f: VectorField, m: Poly) -> Dict[int, mpq]:
        return {cols.setdefault((i, e), len(cols)): c
                for i, comp in enumerate(f.components) for e, c in (comp.to_ring(ring) * m).terms.items()}

    for g in gens:
        if g.is_zero():
            continue
        dg = _field_degree(g, w)
        if dg is None:
            return None
        if dg > d:
            continue
        for mu in _weighted_monomials(w, d - dg):
            ech.add(row(g, ring.monomial(mu)))
    return ech.contains(row(v, ring.one()))


def module_equal(A: Sequence[VectorField], B: Sequence[VectorField], ring: RingCtx,
                 method: str = "auto") -> bool:
    """Two-sided generator membership; "graded" linear algebra or "basis"."""
    A = [g.to_ring(ring) for g in A]
    B = [g.to_ring(ring) for g in B]
    if method in ("auto", "graded"):
        res = [graded_contains(A, g) for g in B] + [graded_contains(B, g) for g in A]
        if None not in res:
            return all(res)
        if method == "graded":
            raise ValueError("fields are not weighted homogeneous")
    loc = ring.with_ordering("local")
    MA = SubmoduleRep(loc, len(A[0].components), [g.to_ring(loc) for g in A])
    MB = SubmoduleRep(loc, len(B[0].components), [g.to_ring(loc) for g in B])
    return MA.equals(MB)
