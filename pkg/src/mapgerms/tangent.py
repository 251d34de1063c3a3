"""Tangent spaces to A- and K-orbits and their codimensions.

Everything is computed as exact linear algebra inside the jet space
J^d theta(f) = theta(f) / M^{d+1} theta(f).

Certification.  Let T be T A_e f (or T A f) and let c satisfy
M^c theta(f) ⊆ T K_e f (resp. T K f); c is found by a K-jet sweep and
Nakayama's lemma over O_n.  If M^k theta(f) ⊆ T + f^*M_p M^k theta(f) then
M^k theta(f) ⊆ T (Nakayama over O_p through the preparation theorem).  The
right-hand side contains M^{k+c} theta(f), so the hypothesis is a finite check
in J^{k+c-1}: its quotient must have the dimension of J^{k-1}/T.  k = 0 is
Mather's infinitesimal stability criterion.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .gb import BudgetExceeded, INFINITY, SubmoduleRep
from .germ import JetSpec, MapGerm
from .linalg import Echelon
from .poly import Poly, VectorField

GROUPS = ("Ae", "A", "Ke", "K")
DEFAULT_CAP = 12

Exp = Tuple[int, ...]


def _monos(n: int, d: int) -> List[Exp]:
    out = []
    for k in range(d + 1):
        out.extend(_monos_deg(n, k))
    return out


@lru_cache(maxsize=None)
def _monos_deg(n: int, d: int) -> Tuple[Exp, ...]:
    if n == 1:
        return ((d,),)
    res = []
    for a in range(d, -1, -1):
        for rest in _monos_deg(n - 1, d - a):
            res.append((a,) + rest)
    return tuple(res)


class JetFrame:
    """Column numbering of J^d theta(f) and generator rows for one germ."""

    def __init__(self, f: MapGerm, d: int, position_first: bool = False):
        self.f = f
        self.d = d
        n, p = f.n, f.p
        if position_first:
            cols = [(c, sum(e), tuple(-a for a in e), c, e) for e in _monos(n, d) for c in range(p)]
        else:
            cols = [(sum(e), c, tuple(-a for a in e), c, e) for e in _monos(n, d) for c in range(p)]
        cols.sort()
        self.cols: List[Tuple[int, Exp]] = [(c, e) for (_, _, _, c, e) in cols]
        self.index: Dict[Tuple[int, Exp], int] = {m: i for i, m in enumerate(self.cols)}
        self._jac = None
        self._prods: Dict[int, List[Tuple[Poly, ...]]] = {}

    # -- conversion
    def row(self, comps: Dict[int, Poly], shift: Optional[Exp] = None) -> Dict[int, mpq]:
        d = self.d
        out = {}
        for c, poly in comps.items():
            for e, v in poly.terms.items():
                if shift is not None:
                    e = tuple(a + b for a, b in zip(e, shift))
                if sum(e) <= d:
                    out[self.index[(c, e)]] = v
        return out

    def vector(self, col: int) -> VectorField:
        c, e = self.cols[col]
        comps = [self.f.source.zero()] * self.f.p
        comps[c] = self.f.source.monomial(e)
        return VectorField(self.f.source, tuple(comps))

    def vf_row(self, v: VectorField) -> Dict[int, mpq]:
        return self.row({i: c.truncate(self.d) for i, c in enumerate(v.components) if c})

    # -- generators
    def jac_columns(self) -> List[Dict[int, Poly]]:
        if self._jac is None:
            f = self.f
            self._jac = []
            for j in range(f.n):
                col = {i: f.components[i].diff(j).truncate(self.d) for i in range(f.p)}
                self._jac.append({i: v for i, v in col.items() if v})
        return self._jac

    def tf_rows(self, min_order: int) -> Iterable[Dict[int, mpq]]:
        """tf(M^min_order theta_n)."""
        for col in self.jac_columns():
            if not col:
                continue
            low = min(p.order() for p in col.values())
            for e in _monos(self.f.n, self.d - low):
                if sum(e) >= min_order:
                    yield self.row(col, e)

    def products(self, s: int) -> List[Poly]:
        """Truncated products of s components of f (monomials of degree s in f)."""
        f = self.f
        if s not in self._prods:
            if s == 0:
                self._prods[0] = [f.source.one()]
            else:
                prev = self.products(s - 1)
                out = []
                seen = set()
                comps = [c.truncate(self.d) for c in f.components]
                for idx in itertools.combinations_with_replacement(range(f.p), s):
                    key = idx
                    if key in seen:
                        continue
                    seen.add(key)
                    q = f.source.one()
                    for i in idx:
                        q = q.mul_trunc(comps[i], self.d)
                        if not q:
                            break
                    if q:
                        out.append(q)
                self._prods[s] = out
        return self._prods[s]

    def fstar_rows(self, s: int, t: int = 0) -> Iterable[Dict[int, mpq]]:
        """f^* M_p^s M_n^t theta(f)."""
        for q in self.products(s):
            low = q.order()
            if low > self.d:
                continue
            for e in _monos(self.f.n, self.d - low):
                if sum(e) < t:
                    continue
                for c in range(self.f.p):
                    yield self.row({c: q}, e)

    def wf_rows(self, min_target_degree: int) -> Iterable[Dict[int, mpq]]:
        """wf(M_p^min theta_p): (q∘f) e_c for target monomials q."""
        f = self.f
        orders = [c.order() if c else None for c in f.components]
        live = [i for i, o in enumerate(orders) if o is not None]
        comps = [c.truncate(self.d) for c in f.components]
        # depth-first over exponent vectors with bounded source order
        def rec(start, acc: Poly, ordsum: int, deg: int):
            if deg >= min_target_degree:
                for c in range(f.p):
                    yield self.row({c: acc})
            for k in range(start, len(live)):
                i = live[k]
                if ordsum + orders[i] > self.d:
                    continue
                nxt = acc.mul_trunc(comps[i], self.d)
                if not nxt:
                    continue
                yield from rec(k, nxt, ordsum + orders[i], deg + 1)
        yield from rec(0, f.source.one(), 0, 0)

    def unit_rows(self) -> Iterable[Dict[int, mpq]]:
        for c in range(self.f.p):
            yield {self.index[(c, (0,) * self.f.n)]: mpq(1)}

    def all_columns(self, min_degree: int = 0) -> List[int]:
        return [i for i, (c, e) in enumerate(self.cols) if sum(e) >= min_degree]


def _echelon(rows) -> Echelon:
    e = Echelon()
    for r in rows:
        if r:
            e.add(r)
    return e


def _space_rows(fr: JetFrame, group: str):
    if group == "Ae":
        return itertools.chain(fr.tf_rows(0), fr.wf_rows(0))
    if group == "A":
        return itertools.chain(fr.tf_rows(1), fr.wf_rows(1))
    if group == "Ke":
        return itertools.chain(fr.tf_rows(0), fr.fstar_rows(1))
    if group == "K":
        return itertools.chain(fr.tf_rows(1), fr.fstar_rows(1))
    raise ValueError(f"unknown group {group!r}")


def _ambient_min_degree(group: str) -> int:
    return 1 if group in ("A", "K") else 0


@dataclass
class TangentSpace:
    germ: MapGerm
    group: str
    jet: JetSpec
    basis: Echelon
    frame: JetFrame = field(repr=False)

    @property
    def quotient_dim(self) -> int:
        cols = self.frame.all_columns(_ambient_min_degree(self.group))
        return len(cols) - sum(1 for c in self.basis.pivots if c in set(cols))

    def cobasis(self) -> List[VectorField]:
        cols = self.frame.all_columns(_ambient_min_degree(self.group))
        return [self.frame.vector(c) for c in self.basis.cobasis(cols)]


def tangent_space(f: MapGerm, group: str, d: int) -> TangentSpace:
    """The image of the tangent space of ``group`` in J^d theta(f)."""
    if d < 1:
        raise ValueError("jet degree must be at least 1")
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}")
    fr = JetFrame(f, d)
    return TangentSpace(f, group, JetSpec(d), _echelon(_space_rows(fr, group)), fr)


def jet_quotient_dim(f: MapGerm, group: str, d: int) -> int:
    """dim of (M)theta(f) / (T + M^{d+1} theta(f)); M for A and K."""
    if d < 0:
        return 0
    fr = JetFrame(f, d)
    e = _echelon(_space_rows(fr, group))
    return len(fr.all_columns(_ambient_min_degree(group))) - e.rank


@dataclass
class CodimResult:
    value: float
    group: str
    cobasis: List[VectorField]
    certified: bool
    certified_degree: int
    note: str = ""

    @property
    def finite(self) -> bool:
        return self.value != INFINITY

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "value": "infinity" if not self.finite else int(self.value),
            "certified": self.certified,
            "certified_degree": self.certified_degree,
            "cobasis": [[str(c) for c in v.components] for v in self.cobasis],
        }


@dataclass
class KDeterminacy:
    exponent: int  # c with M^c theta(f) ⊆ T K(e) f
    dims: List[int]  # jet quotient dims at degrees 0..c


def k_exponent(f: MapGerm, group: str = "Ke", cap: int = DEFAULT_CAP) -> Optional[KDeterminacy]:
    """Least c with M^c theta(f) ⊆ T K_e f (group Ke) or T K f (group K).

    Detected when consecutive jet quotients agree (Nakayama over O_n).  None
    when no agreement happens up to ``cap`` + 1.
    """
    dims = []
    for d in range(0, cap + 2):
        dims.append(jet_quotient_dim(f, group, d))
        if d >= 1 and dims[-1] < dims[-2]:
            raise AssertionError("jet quotient dimensions decreased")
        if d >= 1 and dims[-1] == dims[-2]:
            return KDeterminacy(d, dims)
    return None


def k_module(f: MapGerm, group: str = "Ke") -> SubmoduleRep:
    """T K_e f (or T K f) as a submodule of O_n^p over the local ring."""
    local = f.source.with_ordering("local")
    gens = []
    J = f.jacobian()
    mins = [local.var(v) for v in f.source.vars] if group == "K" else [local.one()]
    for j in range(f.n):
        col = tuple(J[i][j].to_ring(local) for i in range(f.p))
        for m in mins:
            gens.append(VectorField(local, tuple(c * m for c in col)))
    for fi in f.components:
        for c in range(f.p):
            comps = [local.zero()] * f.p
            comps[c] = fi.to_ring(local)
            gens.append(VectorField(local, tuple(comps)))
    return SubmoduleRep(local, f.p, gens)


def _certificate(f: MapGerm, group: str, k: int, c: int, target: int) -> bool:
    """M^k theta ⊆ T + f^*M_p M^k theta, checked in J^{k+c-1}."""
    D = k + c - 1
    if D < 0:
        return target == 0
    fr = JetFrame(f, D)
    base = "Ae" if group == "Ae" else "A"
    rows = itertools.chain(_space_rows(fr, base), fr.fstar_rows(1, k))
    e = _echelon(rows)
    q = len(fr.all_columns(_ambient_min_degree(group))) - e.rank
    return q == target


def is_stable(f: MapGerm, cap: int = DEFAULT_CAP) -> bool:
    """Mather's criterion theta(f) = T K_e f + span{e_1..e_p}."""
    kd = k_exponent(f, "Ke", cap)
    if kd is None:
        return False
    return _mather_defect(f, kd.exponent) == 0


def stability_certificate(f: MapGerm, cap: int = DEFAULT_CAP) -> Dict[str, object]:
    """The data behind is_stable: K-determinacy exponent and Mather defect."""
    kd = k_exponent(f, "Ke", cap)
    if kd is None:
        return {"stable": False, "k_exponent": None, "defect": None,
                "reason": f"Ke quotient did not stabilise by degree {cap + 1}"}
    defect = _mather_defect(f, kd.exponent)
    return {"stable": defect == 0, "k_exponent": kd.exponent,
            "jet_degree": max(kd.exponent - 1, 0), "defect": defect}


def _mather_defect(f: MapGerm, c: int) -> int:
    D = c - 1
    if D < 0:
        return 0
    fr = JetFrame(f, D)
    e = _echelon(itertools.chain(fr.tf_rows(0), fr.fstar_rows(1), fr.unit_rows()))
    return len(fr.cols) - e.rank


def codimension(f: MapGerm, group: str = "Ae", cap: int = DEFAULT_CAP) -> CodimResult:
    """Certified G-codimension of f by an adaptive jet-degree sweep."""
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}")
    kgroup = "K" if group in ("A", "K") else "Ke"
    kd = k_exponent(f, kgroup, cap)
    if kd is None:
        if not k_module(f, "Ke").quotient_dimension().finite:
            return CodimResult(INFINITY, group, [], True, 0, "not K-finite")
        raise BudgetExceeded(f"K-determinacy not reached by degree {cap + 1}")
    c = kd.exponent
    if group in ("Ke", "K"):
        d = max(c - 1, 0)
        ts = tangent_space(f, group, max(d, 1))
        val = kd.dims[c - 1] if c >= 1 else 0
        cob = [v for v in ts.cobasis() if v.order() <= d]
        return CodimResult(val, group, cob, True, d)
    if group == "Ae" and _mather_defect(f, c) == 0:
        return CodimResult(0, group, [], True, max(c - 1, 0), "stable")
    history: List[int] = []
    for k in range(1, cap + 2):
        qprev = jet_quotient_dim(f, group, k - 1)
        if history and qprev < history[-1]:
            raise AssertionError("jet quotient dimensions decreased")
        history.append(qprev)
        if _certificate(f, group, k, c, qprev):
            q1 = jet_quotient_dim(f, group, k)
            q2 = jet_quotient_dim(f, group, k + 1)
            assert q1 == qprev == q2, "certified jet count failed to stay constant"
            d = max(k - 1, 1)
            ts = tangent_space(f, group, d)
            cob = [v for v in ts.cobasis() if v.order() <= k - 1]
            return CodimResult(qprev, group, cob, True, k - 1)
    raise BudgetExceeded(f"{group}-codimension not certified by degree {cap}")


@dataclass
class ConsistencyReport:
    wilson: Optional[bool]
    k_identity: Optional[bool]
    values: Dict[str, float]
    notes: List[str]


def consistency_check(f: MapGerm, cap: int = DEFAULT_CAP) -> ConsistencyReport:
    """Check Aecod = Acod + (p-n) - p and Kecod = Kcod + (p-n) (r = 1)."""
    notes = []
    vals: Dict[str, float] = {}
    ke = codimension(f, "Ke", cap)
    k = codimension(f, "K", cap)
    vals["Ke"], vals["K"] = ke.value, k.value
    kid = None
    if ke.finite:
        kid = ke.value == k.value + (f.p - f.n)
    else:
        notes.append("K identity skipped: not K-finite")
    ae = codimension(f, "Ae", cap)
    vals["Ae"] = ae.value
    wil = None
    if ae.value == 0:
        notes.append("Wilson identity skipped: stable germ")
    elif not ae.finite:
        notes.append("Wilson identity skipped: infinite codimension")
    else:
        a = codimension(f, "A", cap)
        vals["A"] = a.value
        wil = ae.value == a.value + (f.p - f.n) - f.p
    return ConsistencyReport(wil, kid, vals, notes)


# ---------------------------------------------------------------- open orbit test

class Inapplicable(Exception):
    pass


def _module_exponent(f: MapGerm, rows_fn, cap: int) -> Optional[int]:
    prev = None
    for d in range(0, cap + 2):
        fr = JetFrame(f, d)
        e = _echelon(rows_fn(fr))
        q = len(fr.cols) - e.rank
        if prev is not None and q == prev:
            return d
        prev = q
    return None


def open_orbit_test(f: MapGerm, cap: int = DEFAULT_CAP) -> bool:
    """Is the A-orbit of f open in its K-orbit?

    Takes a basis v_j of theta(f)/(T A_e f + f^*M_p theta(f)) and checks
    f_i v_j ∈ T A f modulo f^*M_p^2 theta(f).  Raises Inapplicable when f is
    not K-finite.
    """
    kd = k_exponent(f, "Ke", cap)
    if kd is None:
        raise Inapplicable("germ is not K-finite (or K-determinacy beyond cap)")
    c = kd.exponent
    D = max(c - 1, 0)
    fr = JetFrame(f, D)
    e = _echelon(itertools.chain(fr.tf_rows(0), fr.fstar_rows(1), fr.unit_rows()))
    vs = [fr.vector(col) for col in e.cobasis(range(len(fr.cols)))]
    if not vs:
        return True
    # N'' = tf(M theta_n) + f^*M_p^2 theta(f): an O_n-module
    rows_fn = lambda fr_: itertools.chain(fr_.tf_rows(1), fr_.fstar_rows(2))  # noqa: E731
    c2 = _module_exponent(f, rows_fn, 3 * cap)
    if c2 is None:
        raise Inapplicable("module tf(M theta_n) + f*M_p^2 theta(f) has no finite exponent by cap")
    D2 = max(c2 - 1, 0)
    fr2 = JetFrame(f, D2)
    extra = []
    for k in range(f.p):
        for l in range(f.p):
            extra.append(fr2.row({l: f.components[k].truncate(D2)}))
    e2 = _echelon(itertools.chain(rows_fn(fr2), extra))
    for v in vs:
        for fi in f.components:
            prod = VectorField(f.source, tuple(fi * c for c in v.components))
            if not e2.contains(fr2.vf_row(prod)):
                return False
    return True
