"""Exact multivariate polynomials over the rationals.

Rings carry a monomial ordering used for printing and by the standard-basis
engine.  Three orderings are supported:

``global``
    (weighted) degree reverse lexicographic; every variable is above 1.
``local``
    negative (weighted) degree reverse lexicographic; 1 is above every variable.
``elim``
    elimination order for the first ``block`` variables: weighted degree in the
    block first, then the global order.
"""
from __future__ import annotations

import heapq

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from gmpy2 import mpq

Exp = Tuple[int, ...]

ORDERINGS = ("global", "local", "elim")
MAX_EXPONENT = 2**31 - 1


def to_q(c) -> mpq:
    if isinstance(c, str):
        return mpq(Fraction(c))
    return mpq(c)


@dataclass(frozen=True)
class RingCtx:
    vars: Tuple[str, ...]
    ordering: str = "global"
    weights: Optional[Tuple[int, ...]] = None
    block: int = 0
    _keys: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable name in {self.vars}")
        if self.ordering not in ORDERINGS:
            raise ValueError(f"unknown ordering {self.ordering!r}")
        if self.weights is not None:
            w = tuple(int(x) for x in self.weights)
            if len(w) != len(self.vars):
                raise ValueError("one weight per variable is required")
            if any(x <= 0 for x in w):
                raise ValueError("weights must be positive")
            object.__setattr__(self, "weights", w)
        if not 0 <= self.block <= len(self.vars):
            raise ValueError("elimination block out of range")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def wdeg(self, e: Exp) -> int:
        if self.weights is None:
            return sum(e)
        return sum(a * w for a, w in zip(e, self.weights))

    def key(self, e: Exp) -> tuple:
        """Sort key; a larger key means a larger monomial."""
        k = self._keys.get(e)
        if k is None:
            rev = tuple(-a for a in reversed(e))
            if self.ordering == "global":
                k = (self.wdeg(e),) + rev
            elif self.ordering == "local":
                k = (-self.wdeg(e),) + rev
            else:
                w = self.weights or (1,) * len(e)
                bdeg = sum(a * x for a, x in zip(e[: self.block], w))
                k = (bdeg, self.wdeg(e)) + rev
            self._keys[e] = k
        return k

    def with_ordering(self, ordering: str, block: int = 0) -> "RingCtx":
        return RingCtx(self.vars, ordering, self.weights, block)

    def with_weights(self, weights) -> "RingCtx":
        return RingCtx(self.vars, self.ordering, weights, self.block)

    # constructors
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: to_q(c)})

    def var(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): mpq(1)})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.var(v) for v in self.vars)

    def monomial(self, e: Exp, c=1) -> "Poly":
        return Poly(self, {tuple(e): to_q(c)})

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def __str__(self):
        return f"QQ[{','.join(self.vars)}]/{self.ordering}"


def make_ring(vars: Sequence[str], ordering: str = "global", weights=None) -> RingCtx:
    """Build a ring; ``ordering`` is 'global', 'local' or ('elim', k)."""
    block = 0
    if isinstance(ordering, tuple):
        ordering, block = ordering
    return RingCtx(tuple(vars), ordering, tuple(weights) if weights else None, block)


def _check_exp(e: Exp) -> Exp:
    for a in e:
        if a > MAX_EXPONENT:
            raise OverflowError("exponent overflow")
    return e


class Poly:
    """Immutable polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingCtx, terms: Mapping[Exp, object], _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match ring")
                c = to_q(c)
                if c:
                    clean[e] = c
            self.terms = clean
        self._hash = None

    # --- basic protocol ---
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.vars == other.ring.vars and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.vars, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring.vars != self.ring.vars:
                raise ValueError(f"ring mismatch: {self.ring.vars} vs {other.ring.vars}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(self.ring, t, True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_q(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()}, True)
        other = self._coerce(other)
        t: Dict[Exp, mpq] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly(self.ring, {_check_exp(e): c for e, c in t.items()}, True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            q = self.exact_div(other)
            if q is None:
                raise ArithmeticError("inexact polynomial division")
            return q
        return self * (1 / to_q(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_trunc(self, other: "Poly", d: int) -> "Poly":
        """Product with all terms of total degree > d dropped."""
        t: Dict[Exp, mpq] = {}
        b = [(e, c, sum(e)) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > d:
                continue
            for e2, c2, d2 in b:
                if d1 + d2 > d:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    del t[e]
        return Poly(self.ring, t, True)

    # --- inspection ---
    def sorted_terms(self):
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda ec: key(ec[0]), reverse=True)

    def lead_exp(self) -> Exp:
        return max(self.terms, key=self.ring.key)

    def lead_coeff(self) -> mpq:
        return self.terms[self.lead_exp()]

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((e[i] for e in self.terms), default=0)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(e) for e in self.terms), default=-1)

    def wdegree(self) -> int:
        return max((self.ring.wdeg(e) for e in self.terms), default=-1)

    def constant_term(self) -> mpq:
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return tuple(self.ring.vars[i] for i in sorted(used))

    def truncate(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) <= d}, True)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d}, True)

    def is_weighted_homogeneous(self, weights) -> bool:
        degs = {sum(a * w for a, w in zip(e, weights)) for e in self.terms}
        return len(degs) <= 1

    def diff(self, var) -> "Poly":
        i = self.ring.index(var) if isinstance(var, str) else var
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return Poly(self.ring, t, True)

    def evaluate(self, point: Mapping[str, object]) -> mpq:
        vals = [to_q(point[v]) for v in self.ring.vars]
        total = mpq(0)
        for e, c in self.terms.items():
            term = c
            for v, a in zip(vals, e):
                if a:
                    term *= v**a
            total += term
        return total

    def content(self) -> mpq:
        """Positive rational c with self/c primitive integral."""
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, int(c.numerator))
            den = den * int(c.denominator) // gcd(den, int(c.denominator))
        return mpq(num, den) if num else mpq(1)

    def monic(self) -> "Poly":
        return self * (1 / self.lead_coeff()) if self.terms else self

    def primitive(self) -> "Poly":
        """Integral primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        p = self * (1 / self.content())
        return -p if p.lead_coeff() < 0 else p

    # --- ring maps ---
    def substitute(self, assignment: Mapping[str, "Poly"], target: Optional[RingCtx] = None) -> "Poly":
        """Ring homomorphism sending each variable to ``assignment[var]``.

        Every variable that occurs in ``self`` must be assigned; the images
        live in a common ring (``target`` if given).
        """
        used = self.variables()
        missing = [v for v in used if v not in assignment]
        if missing:
            raise KeyError(f"missing assignment for {missing}")
        imgs = {}
        for v, p in assignment.items():
            if not isinstance(p, Poly):
                if target is None:
                    raise TypeError("constant images need an explicit target ring")
                p = target.const(p)
            imgs[v] = p
        if target is None:
            rings = {p.ring.vars: p.ring for p in imgs.values()}
            if len(rings) > 1:
                raise ValueError("assignment images live in different rings")
            target = next(iter(rings.values())) if rings else self.ring
        idx = [(i, v) for i, v in enumerate(self.ring.vars) if v in used]
        powers: Dict[Tuple[str, int], Poly] = {}

        def power(v, a):
            key = (v, a)
            if key not in powers:
                powers[key] = imgs[v] if a == 1 else power(v, a - 1) * imgs[v]
            return powers[key]

        acc: Dict[Exp, mpq] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, v in idx:
                if e[i]:
                    term = term * power(v, e[i])
            for e2, c2 in term.terms.items():
                val = acc.get(e2, 0) + c2
                if val:
                    acc[e2] = val
                else:
                    acc.pop(e2, None)
        return Poly(target, acc, True)

    def to_ring(self, ring: RingCtx) -> "Poly":
        """Reinterpret in a ring containing all used variables (by name)."""
        if ring.vars == self.ring.vars:
            return Poly(ring, self.terms, True)
        pos = []
        for i, v in enumerate(self.ring.vars):
            pos.append(ring.vars.index(v) if v in ring.vars else None)
        t = {}
        n = ring.nvars
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.vars[i]} missing from target ring")
                    e2[pos[i]] = a
            t[tuple(e2)] = c
        return Poly(ring, t, True)

    # --- division ---
    def exact_div(self, other: "Poly") -> Optional["Poly"]:
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        # lexicographic leading terms; a heap of negated exponents gives the max
        le = max(other.terms)
        lc = other.terms[le]
        rem = dict(self.terms)
        heap = [tuple(-a for a in e) for e in rem]
        heapq.heapify(heap)
        quot: Dict[Exp, mpq] = {}
        while heap:
            e = tuple(-a for a in heapq.heappop(heap))
            c = rem.get(e)
            if not c:
                continue
            if any(a < b for a, b in zip(e, le)):
                return None
            qe = tuple(a - b for a, b in zip(e, le))
            qc = c / lc
            quot[qe] = qc
            for e2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(qe, e2))
                old = rem.get(m)
                v = (old or 0) - qc * c2
                if v:
                    if not old:
                        heapq.heappush(heap, tuple(-a for a in m))
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return Poly(self.ring, quot, True)

    # --- printing ---
    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if a == 1 else f"{v}^{a}" for v, a in zip(self.ring.vars, e) if a
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _fmt_q(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_q(a)}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def _fmt_q(c: mpq) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------- parsing

class PolySyntaxError(ValueError):
    pass


def parse_poly(text: str, ring: RingCtx) -> Poly:
    """Parse ``+ - * ^ /`` expressions with integer literals and ring variables."""
    src = text.strip().replace("^", "**")
    if not src:
        raise PolySyntaxError("empty polynomial")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise PolySyntaxError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval_node(tree.body, ring, text)


def _eval_node(node, ring: RingCtx, text: str) -> Poly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.const(node.value)
    if isinstance(node, ast.Name):
        if node.id not in ring.vars:
            raise PolySyntaxError(f"unknown variable {node.id!r} in {text!r}")
        return ring.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, ring, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, ring, text)
        if isinstance(node.op, ast.Pow):
            right = node.right
            if isinstance(right, ast.Constant) and isinstance(right.value, int) and right.value >= 0:
                return left**right.value
            raise PolySyntaxError(f"exponents must be nonnegative integers in {text!r}")
        right = _eval_node(node.right, ring, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or not right:
                raise PolySyntaxError(f"division only by nonzero constants in {text!r}")
            return left * (1 / right.constant_term())
    raise PolySyntaxError(f"unsupported syntax in {text!r}")


# ---------------------------------------------------------------- vector fields

@dataclass(frozen=True)
class VectorField:
    """Element of a free module over ``ring``: one polynomial per coordinate."""

    ring: RingCtx
    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(
            c.to_ring(self.ring) if isinstance(c, Poly) else self.ring.const(c)
            for c in self.components
        )
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, ring: RingCtx, texts: Iterable[str]) -> "VectorField":
        return cls(ring, tuple(parse_poly(t, ring) for t in texts))

    @classmethod
    def zero(cls, ring: RingCtx, rank: int) -> "VectorField":
        return cls(ring, (ring.zero(),) * rank)

    @classmethod
    def unit(cls, ring: RingCtx, rank: int, i: int) -> "VectorField":
        return cls(ring, tuple(ring.one() if j == i else ring.zero() for j in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def _check(self, other: "VectorField"):
        if other.rank != self.rank:
            raise ValueError("ambient rank mismatch")

    def __add__(self, other):
        self._check(other)
        return VectorField(self.ring, tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        self._check(other)
        return VectorField(self.ring, tuple(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return VectorField(self.ring, tuple(-a for a in self))

    def __mul__(self, c):
        return VectorField(self.ring, tuple(a * c for a in self))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def order(self) -> int:
        orders = [c.order() for c in self.components if c]
        return min(orders) if orders else -1

    def substitute(self, assignment, target: Optional[RingCtx] = None) -> "VectorField":
        comps = tuple(c.substitute(assignment, target) for c in self.components)
        ring = target or (comps[0].ring if comps else self.ring)
        return VectorField(ring, comps)

    def to_ring(self, ring: RingCtx) -> "VectorField":
        return VectorField(ring, tuple(c.to_ring(ring) for c in self.components))

    def truncate(self, d: int) -> "VectorField":
        return VectorField(self.ring, tuple(c.truncate(d) for c in self.components))

    def linear_part(self) -> Tuple[Tuple[mpq, ...], ...]:
        """Matrix A with A[i][k] = coefficient of variable k in component i."""
        n = self.ring.nvars
        rows = []
        for c in self.components:
            row = [mpq(0)] * n
            for e, v in c.terms.items():
                if sum(e) == 1:
                    row[e.index(1)] = v
            rows.append(tuple(row))
        return tuple(rows)

    def apply(self, h: Poly) -> Poly:
        """Derivation: sum of component_i * dh/dX_i."""
        total = self.ring.zero()
        for v, c in zip(self.ring.vars, self.components):
            if c:
                total = total + c * h.diff(v)
        return total

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def jacobian(components: Sequence[Poly]) -> Tuple[Tuple[Poly, ...], ...]:
    """Matrix of partial derivatives: row i, column j is d comp_i / d x_j."""
    if not components:
        return ()
    ring = components[0].ring
    return tuple(tuple(c.diff(j) for j in range(ring.nvars)) for c in components)


def determinant(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by cofactor expansion with memoised minors (small sizes)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    memo: Dict[Tuple[int, Tuple[int, ...]], Poly] = {}

    def minor(r: int, cols: Tuple[int, ...]) -> Poly:
        if r == n:
            return ring.one()
        key = (r, cols)
        if key in memo:
            return memo[key]
        total = ring.zero()
        for pos, c in enumerate(cols):
            entry = matrix[r][c]
            if not entry:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1 :])
            if sub:
                term = entry * sub
                total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))
