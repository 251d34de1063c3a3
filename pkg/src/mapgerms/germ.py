"""Polynomial map-germs (K^n,0) -> (K^p,0): data model, text format, jets."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .linalg import dense_rank, nullspace
from .poly import Poly, PolySyntaxError, RingCtx, VectorField, jacobian as _jacobian, make_ring, parse_poly


class GermSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class JetSpec:
    degree: int
    certified: bool = False

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("jet degree must be at least 1")


@dataclass(frozen=True)
class MapGerm:
    source: RingCtx
    target: RingCtx
    components: Tuple[Poly, ...]
    label: Optional[str] = None

    def __post_init__(self):
        comps = tuple(c.to_ring(self.source) for c in self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.target.nvars:
            raise ValueError("component count must equal the target dimension")
        for name, c in zip(self.target.vars, comps):
            if c.constant_term():
                raise ValueError(f"component {name} has a nonzero constant term")

    @property
    def n(self) -> int:
        return self.source.nvars

    @property
    def p(self) -> int:
        return self.target.nvars

    @property
    def dims(self) -> Tuple[int, int]:
        return self.n, self.p

    def jacobian(self) -> Tuple[Tuple[Poly, ...], ...]:
        return jacobian(self)

    def pullback(self, q: Poly) -> Poly:
        """q∘f for a polynomial q on the target."""
        return q.substitute(dict(zip(self.target.vars, self.components)), self.source)

    def pullback_field(self, eta: VectorField) -> VectorField:
        """eta∘f, an element of theta(f)."""
        return VectorField(self.source, tuple(self.pullback(c) for c in eta.components))

    def tf(self, xi: VectorField) -> VectorField:
        """df·xi."""
        J = self.jacobian()
        comps = []
        for row in J:
            acc = self.source.zero()
            for a, b in zip(row, xi.components):
                if a and b:
                    acc = acc + a * b
            comps.append(acc)
        return VectorField(self.source, tuple(comps))

    def with_label(self, label: Optional[str]) -> "MapGerm":
        return MapGerm(self.source, self.target, self.components, label)

    def with_weights(self, source_weights, target_weights=None) -> "MapGerm":
        src = self.source.with_weights(source_weights)
        comps = tuple(c.to_ring(src) for c in self.components)
        if target_weights is None:
            target_weights = [c.wdegree() for c in comps]
        tgt = self.target.with_weights(target_weights)
        return MapGerm(src, tgt, comps, self.label)

    def __str__(self):
        return format_germ(self)


def jacobian(f: MapGerm) -> Tuple[Tuple[Poly, ...], ...]:
    """p x n matrix of partial derivatives."""
    return _jacobian(f.components)


def linear_matrix(f: MapGerm) -> List[List[mpq]]:
    """df(0) as a rational matrix."""
    origin = {v: 0 for v in f.source.vars}
    return [[d.evaluate(origin) for d in row] for row in jacobian(f)]


def corank(f: MapGerm) -> int:
    return min(f.n, f.p) - dense_rank(linear_matrix(f))


def determinacy_bound(f: MapGerm, ae_cod: int) -> int:
    """Degree of A-determinacy for a monogerm of A_e-codimension ``ae_cod``."""
    if ae_cod < 0:
        raise ValueError("codimension must be nonnegative")
    return 2 * (f.p + f.n + ae_cod) ** 2 - 1


def determinacy_power(p: int, a_cod: int, r: int = 1) -> int:
    """Exponent (r p + d)^2 with M_n^exponent theta(f) inside TAf when A-cod = d."""
    return (r * p + a_cod) ** 2


def truncate_jet(f: MapGerm, d: int) -> MapGerm:
    if d < 1:
        raise ValueError("jet degree must be at least 1")
    return MapGerm(f.source, f.target, tuple(c.truncate(d) for c in f.components), f.label)


def find_weights(f: MapGerm) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Positive integer source weights making every component quasihomogeneous.

    Returns (source weights, target weights) or None.
    """
    n = f.n
    rows = []
    for c in f.components:
        exps = list(c.terms)
        for e in exps[1:]:
            rows.append([a - b for a, b in zip(e, exps[0])])
    if not rows:
        rows = [[0] * n]
    basis = nullspace(rows)
    if not basis:
        return None
    cand = None
    for coeffs in itertools.product(range(-2, 3), repeat=min(len(basis), 4)):
        if len(basis) > 4:
            coeffs = coeffs + (0,) * (len(basis) - 4)
        v = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(n)]
        if all(x > 0 for x in v):
            cand = v
            break
        if all(x < 0 for x in v):
            cand = [-x for x in v]
            break
    if cand is None:
        return None
    den = 1
    for x in cand:
        den = den * int(x.denominator) // _gcd(den, int(x.denominator))
    ints = [int(x * den) for x in cand]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    ints = [x // g for x in ints]
    src = make_ring(f.source.vars, "global", ints)
    tw = []
    for c in f.components:
        if not c:
            return None
        tw.append(c.to_ring(src).wdegree())
    return tuple(ints), tuple(tw)


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def weighted(f: MapGerm) -> MapGerm:
    """f with weights attached when it is quasihomogeneous; otherwise f."""
    if f.source.weights is not None and f.target.weights is not None:
        return f
    w = find_weights(f)
    if w is None:
        return f
    return f.with_weights(*w)


# ---------------------------------------------------------------- text format

_LINE = re.compile(r"^\s*(source|target|map|label|weights)\s*:(.*)$")


def parse_germ(text: str) -> MapGerm:
    """Parse the germ file format.

    ``source:`` and ``target:`` list variable names; ``map:`` holds
    ``NAME = poly`` assignments separated by ``;`` (continuation lines are
    indented); ``label:`` and ``weights:`` are optional.  Without a ``source``
    line the source variables are the names used on the right-hand sides, in
    order of first appearance.
    """
    fields: Dict[str, str] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if m:
            current = m.group(1)
            if current in fields and current != "map":
                raise GermSyntaxError(f"duplicate '{current}' line")
            fields[current] = (fields.get(current, "") + ";" + m.group(2)) if current == "map" and current in fields else m.group(2)
        elif raw[:1].isspace() and current is not None:
            fields[current] += " " + line.strip()
        else:
            # bare assignment lines count as map entries
            if "=" in line:
                fields["map"] = (fields.get("map", "") + ";" + line) if "map" in fields else line
                current = "map"
            else:
                raise GermSyntaxError(f"cannot parse line {raw!r}")
    if "map" not in fields:
        raise GermSyntaxError("missing 'map:' block")
    assigns: List[Tuple[str, str]] = []
    for part in fields["map"].split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise GermSyntaxError(f"expected NAME = poly, got {part.strip()!r}")
        lhs, rhs = part.split("=", 1)
        lhs = lhs.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", lhs):
            raise GermSyntaxError(f"bad component name {lhs!r}")
        assigns.append((lhs, rhs.strip()))
    if "target" in fields:
        tvars = fields["target"].split()
        names = [a for a, _ in assigns]
        if sorted(names) != sorted(tvars):
            raise GermSyntaxError("map components do not match the target variables")
        lookup = dict(assigns)
        assigns = [(t, lookup[t]) for t in tvars]
    else:
        tvars = [a for a, _ in assigns]
    if len(set(tvars)) != len(tvars):
        raise GermSyntaxError("duplicate target variable")
    if "source" in fields:
        svars = fields["source"].split()
    else:
        svars = []
        for _, rhs in assigns:
            for tok in re.findall(r"[A-Za-z_][A-Za-z_0-9]*", rhs):
                if tok not in svars:
                    svars.append(tok)
    weights = None
    if "weights" in fields:
        ws = fields["weights"].split()
        if len(ws) != len(svars):
            raise GermSyntaxError("one weight per source variable is required")
        try:
            weights = tuple(int(w) for w in ws)
        except ValueError:
            raise GermSyntaxError("weights must be integers") from None
    try:
        src = make_ring(svars, "global", weights)
    except ValueError as exc:
        raise GermSyntaxError(str(exc)) from None
    comps = []
    for name, rhs in assigns:
        try:
            comps.append(parse_poly(rhs, src))
        except PolySyntaxError as exc:
            raise GermSyntaxError(str(exc)) from None
    tw = None
    if weights is not None:
        tw = tuple(max(c.wdegree(), 1) for c in comps)
    tgt = make_ring(tvars, "global", tw)
    label = fields.get("label", "").strip() or None
    try:
        return MapGerm(src, tgt, tuple(comps), label)
    except ValueError as exc:
        raise GermSyntaxError(str(exc)) from None


def format_germ(f: MapGerm) -> str:
    """Canonical text form; parse_germ(format_germ(f)) reproduces f."""
    lines = [
        "source: " + " ".join(f.source.vars),
        "target: " + " ".join(f.target.vars),
        "map: " + "; ".join(f"{t} = {c}" for t, c in zip(f.target.vars, f.components)),
    ]
    if f.label:
        lines.append(f"label: {f.label}")
    if f.source.weights is not None:
        lines.append("weights: " + " ".join(str(w) for w in f.source.weights))
    return "\n".join(lines) + "\n"


def germ_from_strings(source: Sequence[str], target: Sequence[str], comps: Sequence[str],
                      label: Optional[str] = None, weights=None) -> MapGerm:
    src = make_ring(source, "global", weights)
    polys = tuple(parse_poly(c, src) for c in comps)
    tw = tuple(p.wdegree() for p in polys) if weights is not None else None
    return MapGerm(src, make_ring(target, "global", tw), polys, label)


def identity_germ(names: Sequence[str] = ("x",)) -> MapGerm:
    src = make_ring(names)
    tgt = make_ring([v.upper() if v.upper() not in names else v + "_" for v in names])
    return MapGerm(src, tgt, src.gens(), "identity")
