"""Stable unfoldings, augmentations, zero-component extensions, corank 1 forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .gb import SubmoduleRep
from .germ import MapGerm, corank, linear_matrix, weighted
from .poly import Poly, RingCtx, VectorField, determinant, make_ring
from . import tangent


class NotKFinite(ValueError):
    pass


@dataclass(frozen=True)
class Unfolding:
    """total(x, params) = (f_params(x), params) with f_0 = base."""

    base: MapGerm
    total: MapGerm
    params: Tuple[str, ...]

    def __post_init__(self):
        k = len(self.params)
        T = self.total
        if T.p != self.base.p + k or T.n != self.base.n + k:
            raise ValueError("unfolding dimensions do not match the base")
        for name, comp in zip(self.params, T.components[T.p - k:]):
            if comp != T.source.var(name):
                raise ValueError(f"component for parameter {name} is not the identity")
        zero = {v: (T.source.zero() if v in self.params else T.source.var(v)) for v in T.source.vars}
        for a, b in zip(T.components[:self.base.p], self.base.components):
            if a.substitute(zero, T.source) != b.to_ring(T.source):
                raise ValueError("unfolding does not restrict to the base germ")

    @property
    def family(self) -> Tuple[Poly, ...]:
        return self.total.components[: self.base.p]


def _fresh(prefix: str, count: int, taken: Sequence[str]) -> List[str]:
    names = []
    i = 1
    while len(names) < count:
        nm = f"{prefix}{i}"
        if nm not in taken:
            names.append(nm)
        i += 1
    return names


def ke_normal_basis(f0: MapGerm, cap: int = tangent.DEFAULT_CAP) -> List[VectorField]:
    """Monomial representatives of a basis of M theta(f0) / T K_e f0.

    Columns are ordered position first, so lower target components and then
    lower degrees are preferred.
    """
    if any(v for row in linear_matrix(f0) for v in row):
        raise ValueError("germ must have rank 0 at the origin")
    kd = tangent.k_exponent(f0, "Ke", cap)
    if kd is None:
        raise NotKFinite("germ is not K-finite (or its K-determinacy exceeds the cap)")
    D = max(kd.exponent - 1, 0)
    fr = tangent.JetFrame(f0, D, position_first=True)
    ech = tangent._echelon(itertools.chain(fr.tf_rows(0), fr.fstar_rows(1)))
    cols = [i for i, (c, e) in enumerate(fr.cols) if sum(e) >= 1]
    return [fr.vector(i) for i in ech.cobasis(cols)]


def mather_stable_unfolding(f0: MapGerm, prefix: str = "u", label: Optional[str] = None) -> Unfolding:
    """F(x,u) = (f0(x) + sum u_i phi_i(x), u), certified stable."""
    basis = ke_normal_basis(f0)
    params = _fresh(prefix, len(basis), f0.source.vars)
    tparams = [p.upper() for p in params]
    if set(tparams) & set(f0.target.vars):
        tparams = [f"{t}_" for t in tparams]
    src_names = list(f0.source.vars) + params
    weights = _param_weights(f0, basis)
    src = make_ring(src_names, "global", weights)
    comps = [c.to_ring(src) for c in f0.components]
    for u, phi in zip(params, basis):
        for i, c in enumerate(phi.components):
            if c:
                comps[i] = comps[i] + src.var(u) * c.to_ring(src)
    comps += [src.var(u) for u in params]
    tw = tuple(c.wdegree() for c in comps) if weights is not None else None
    tgt = make_ring(list(f0.target.vars) + tparams, "global", tw)
    total = MapGerm(src, tgt, tuple(comps), label or (f"unfolding of {f0.label}" if f0.label else None))
    if not tangent.is_stable(total):
        raise AssertionError("constructed unfolding failed the stability certificate")
    return Unfolding(f0, total, tuple(params))


def _param_weights(f0: MapGerm, basis: Sequence[VectorField]):
    W = weighted(f0)
    if W.source.weights is None:
        return None
    tw = [c.wdegree() for c in W.components]
    out = list(W.source.weights)
    for phi in basis:
        i = next(k for k, c in enumerate(phi.components) if c)
        w = tw[i] - phi.components[i].to_ring(W.source).wdegree()
        if w <= 0:
            return None
        out.append(w)
    return tuple(out)


def redundant_parameters(U: Unfolding) -> int:
    """len(params) minus the size of a normal-space basis of the base."""
    return len(U.params) - len(ke_normal_basis(U.base))


def same_up_to_parameter_permutation(A: MapGerm, B: MapGerm) -> bool:
    """Equal after renaming the variables of A to those of B in some order.

    Only permutations that fix the non-parameter source variables are tried,
    with target coordinates permuted alongside.
    """
    if A.dims != B.dims:
        return False
    sa, sb = list(A.source.vars), list(B.source.vars)
    fixed = [v for v in sa if v in sb and not _looks_like_param(v)]
    free_a = [v for v in sa if v not in fixed]
    free_b = [v for v in sb if v not in fixed]
    if len(free_a) != len(free_b):
        return False
    bset = {str(c) for c in B.components}
    for perm in itertools.permutations(free_b):
        ren = dict(zip(free_a, perm))
        ren.update({v: v for v in fixed})
        ring = B.source
        assign = {v: ring.var(ren[v]) for v in sa}
        imgs = {str(c.substitute(assign, ring)) for c in A.components}
        if imgs == bset:
            return True
    return False


def _looks_like_param(v: str) -> bool:
    return v[:1] in "uvw" and v[1:].isdigit()


def augment(h: MapGerm, H: Unfolding, g: Poly, znames: Optional[Tuple[str, str]] = None) -> MapGerm:
    """(x, z) -> (h_{g(z)}(x), z) for a one-parameter unfolding H of h."""
    if len(H.params) != 1:
        raise ValueError("augmentation needs a one-parameter unfolding")
    if g.constant_term():
        raise ValueError("g must vanish at the origin")
    if len(g.ring.vars) != 1:
        raise ValueError("g must be a function of one variable")
    z = g.ring.vars[0] if znames is None else znames[0]
    Z = z.upper() if znames is None else znames[1]
    lam = H.params[0]
    src_names = [v for v in H.total.source.vars if v != lam] + [z]
    if len(set(src_names)) != len(src_names):
        raise ValueError(f"variable {z} already used by the germ")
    src = make_ring(src_names)
    gz = g.to_ring(make_ring([z])).to_ring(src) if g.ring.vars[0] == z else \
        g.substitute({g.ring.vars[0]: src.var(z)}, src)
    assign = {v: src.var(v) for v in H.total.source.vars if v != lam}
    assign[lam] = gz
    comps = [c.substitute(assign, src) for c in H.family] + [src.var(z)]
    tnames = list(H.total.target.vars[: H.base.p]) + [Z]
    tgt = make_ring(tnames)
    return MapGerm(src, tgt, tuple(comps), f"augmentation of {h.label}" if h.label else None)


def versal_unfolding(h: MapGerm, prefix: str = "t") -> Unfolding:
    """One-parameter Ae-versal unfolding (h + t phi, t) of an Ae-codimension 1 germ."""
    res = tangent.codimension(h, "Ae")
    if res.value != 1:
        raise ValueError(f"germ has Ae-codimension {res.value}, expected 1")
    phi = res.cobasis[0]
    t = _fresh(prefix, 1, list(h.source.vars) + [v.lower() for v in h.target.vars])[0]
    src = make_ring(list(h.source.vars) + [t])
    comps = [c.to_ring(src) + src.var(t) * e.to_ring(src) for c, e in zip(h.components, phi.components)]
    comps.append(src.var(t))
    tgt = make_ring(list(h.target.vars) + [t.upper()])
    total = MapGerm(src, tgt, tuple(comps), f"versal unfolding of {h.label}" if h.label else None)
    return Unfolding(h, total, (t,))


# ---------------------------------------------------------------- zero components

def sigma_basis(f0: MapGerm) -> List[Poly]:
    """Monomial basis 1 = s_0, s_1, .., s_r of O_n/<f0>; s_r = J(f0) when n = p."""
    local = f0.source.with_ordering("local")
    ideal = SubmoduleRep.ideal([c.to_ring(local) for c in f0.components], local)
    qd = ideal.quotient_dimension()
    if not qd.finite:
        raise NotKFinite("O_n/<f0> is infinite dimensional")
    mons = sorted((e for _, e in ideal.cobasis()), key=lambda e: (sum(e), tuple(-a for a in e)))
    sig = [f0.source.monomial(e) for e in mons]
    if f0.n == f0.p and len(sig) > 1:
        J = determinant(f0.jacobian())
        sig[-1] = J
        # J must complete the basis: check the last vector is independent mod the ideal
        nf = ideal.normal_form(VectorField(local, (J.to_ring(local),))).components[0]
        if not nf:
            raise ValueError("Jacobian lies in the ideal; cannot use it as the top basis element")
    return sig


def extend_with_zero(f0: MapGerm, k: int = 1, certify: bool = True) -> Tuple[MapGerm, Unfolding]:
    """f = (f0, 0, .., 0) with k zeros and its minimal stable unfolding.

    Each zero adds Z = sum_i sigma_i(x) w_i and the parameters w_i to the
    stable unfolding of the previous step.
    """
    if f0.n > f0.p:
        raise ValueError("extension by zeros needs n <= p")
    if k < 0:
        raise ValueError("k must be nonnegative")
    U = mather_stable_unfolding(f0)
    sig_all = sigma_basis(f0)
    base = f0
    for j in range(1, k + 1):
        sig = sig_all[1:] if j == 1 else _plain_sigmas(f0)[1:]
        U, base = _add_zero(U, base, sig, j if k > 1 else None, certify)
    return base, U


def _plain_sigmas(f0: MapGerm) -> List[Poly]:
    local = f0.source.with_ordering("local")
    ideal = SubmoduleRep.ideal([c.to_ring(local) for c in f0.components], local)
    mons = sorted((e for _, e in ideal.cobasis()), key=lambda e: (sum(e), tuple(-a for a in e)))
    return [f0.source.monomial(e) for e in mons]


def _add_zero(U: Unfolding, base: MapGerm, sig: List[Poly], idx: Optional[int], certify: bool):
    T = U.total
    suffix = "" if idx is None else f"{idx}_"
    wn = [f"w{suffix}{i}" for i in range(1, len(sig) + 1)]
    zn = "Z" if idx is None else f"Z{idx}"
    Wn = [w.upper() for w in wn]
    taken = set(T.source.vars) | set(T.target.vars)
    if taken & (set(wn) | set(Wn) | {zn}):
        raise ValueError("zero-extension variable names clash with the germ")
    sw = None
    if T.source.weights is not None:
        bw = dict(zip(base.source.vars, base.source.weights)) if base.source.weights else None
        W0 = weighted(base) if bw is None else base
        degs = [s.to_ring(W0.source).wdegree() for s in sig]
        wz = max(degs, default=0) + 1
        sw = tuple(T.source.weights) + tuple(wz - d for d in degs)
    src = make_ring(list(T.source.vars) + wn, "global", sw)
    Zpoly = src.zero()
    for s, w in zip(sig, wn):
        Zpoly = Zpoly + s.to_ring(src) * src.var(w)
    fam = [c.to_ring(src) for c in U.family]
    params = list(U.params) + wn
    comps = fam + [Zpoly] + [src.var(v) for v in params]
    fam_t = list(T.target.vars[: base.p])
    par_t = list(T.target.vars[base.p:])
    tnames = fam_t + [zn] + par_t + Wn
    tw = tuple(c.wdegree() for c in comps) if sw is not None else None
    tgt = make_ring(tnames, "global", tw)
    total = MapGerm(src, tgt, tuple(comps), f"zero extension of {T.label}" if T.label else None)
    bsrc = base.source
    bt = make_ring(list(base.target.vars) + [zn])
    new_base = MapGerm(bsrc, bt, tuple(base.components) + (bsrc.zero(),),
                       f"({base.label},0)" if base.label else None)
    if certify and not tangent.is_stable(total):
        raise AssertionError("zero extension failed the stability certificate")
    return Unfolding(new_base, total, tuple(params)), new_base


# ---------------------------------------------------------------- corank 1 normal forms

def corank1_normal_form(n: int, p: int, l: Optional[int] = None) -> MapGerm:
    """Minimal stable corank 1 germ (K^{n+1},0) -> (K^{p+1},0) for n < p.

    Components (u, v, w, y^{l+1} + sum u_i y^i, y^{l+2} + sum v_i y^i + lam y^l,
    sum_i w_{1i} y^i, .., sum_i w_{ri} y^i, lam) with r = p - n - 1 and
    n = l (r + 2) - 1.
    """
    if not n < p:
        raise ValueError("need n < p")
    if n < 1:
        raise ValueError("need n >= 1")
    r = p - n - 1
    if (n + 1) % (r + 2):
        raise ValueError(f"no stable minimal corank 1 germ: n + 1 = {n + 1} is not a multiple of r + 2 = {r + 2}")
    l_forced = (n + 1) // (r + 2)
    if l is not None and l != l_forced:
        raise ValueError(f"multiplicity parameter l must be {l_forced} for (n, p) = ({n}, {p})")
    l = l_forced
    us = [f"u{i}" for i in range(1, l)]
    vs = [f"v{i}" for i in range(1, l)]
    ws = [f"w{j}{i}" for j in range(1, r + 1) for i in range(1, l + 1)]
    names = us + vs + ws + ["y", "lam"]
    src = make_ring(names)
    y = src.var("y")
    c1 = y ** (l + 1)
    for i, u in enumerate(us, 1):
        c1 = c1 + src.var(u) * y ** i
    c2 = y ** (l + 2) + src.var("lam") * y ** l
    for i, v in enumerate(vs, 1):
        c2 = c2 + src.var(v) * y ** i
    extra = []
    for j in range(1, r + 1):
        s = src.zero()
        for i in range(1, l + 1):
            s = s + src.var(f"w{j}{i}") * y ** i
        extra.append(s)
    comps = [src.var(v) for v in us + vs + ws] + [c1, c2] + extra + [src.var("lam")]
    tn = [v.upper() for v in us + vs + ws] + ["X", "Y"] + [f"Z{j}" for j in range(1, r + 1)] + ["LAM"]
    return MapGerm(src, make_ring(tn), tuple(comps), f"corank1-stable({n + 1},{p + 1})")


# ---------------------------------------------------------------- projection of Lift

@dataclass
class ProjectionReport:
    """Two-sided comparison of Lift(F0) with pi_1(Lift(F)|_{Z=W=0})."""

    projected: List[VectorField]
    lift0: List[VectorField]
    forward: List[bool]
    backward: List[bool]
    top_degree: int

    @property
    def equal(self) -> bool:
        return all(self.forward) and all(self.backward)


def restrict_and_project(eta: VectorField, keep: Sequence[str], ring: RingCtx) -> VectorField:
    """Set every coordinate outside ``keep`` to 0 and keep the ``keep`` components."""
    src = eta.ring
    zero = {v: ring.zero() for v in src.vars if v not in keep}
    zero.update({v: ring.var(v) for v in keep})
    idx = [src.index(v) for v in keep]
    return VectorField(ring, tuple(eta.components[i].substitute(zero, ring) for i in idx))


def projection_equality(f0: MapGerm, top: Optional[int] = None) -> ProjectionReport:
    """Check Lift(F0) = pi_1(Lift(F)|_{Z=W=0}) for the one-zero extension.

    F0 is the stable unfolding of f0 and F the stable unfolding of (f0, 0).
    Lift(F) is not assumed free; its homogeneous generators are collected up
    to degree ``top`` (default: one above the top degree of Lift(F0)).  Any
    missing generator only enlarges the projected module, so the backward
    inclusion proven here with a partial list is still a proof.
    """
    from . import discriminant as D

    F0 = mather_stable_unfolding(f0).total
    _, U = extend_with_zero(f0, 1)
    lift0 = list(D.discriminant(F0).derlog.generators)
    g0 = weighted(F0).target
    degs = [max(c.to_ring(g0).wdegree() - w for c, w in zip(g.components, g0.weights) if c)
            for g in lift0]
    if top is None:
        top = max(degs) + 1
    h = D.discriminant_equation(U.total)
    found = D.derlog_upto(h, top)
    keep = list(F0.target.vars)
    projected = [restrict_and_project(g, keep, F0.target) for _, g in found]
    projected = [g for g in projected if not g.is_zero()]
    loc = F0.target.with_ordering("local")
    M0 = SubmoduleRep(loc, F0.p, [g.to_ring(loc) for g in lift0])
    MP = SubmoduleRep(loc, F0.p, [g.to_ring(loc) for g in projected])
    forward = [M0.contains(g.to_ring(loc)) for g in projected]
    backward = [MP.contains(g.to_ring(loc)) for g in lift0]
    return ProjectionReport(projected, lift0, forward, backward, top)
