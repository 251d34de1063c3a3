"""Which dimension pairs (n, p) are extra-nice, and the algebras behind them.

Membership rules are stated conclusions, encoded as arithmetic; nothing here
computes strata of jet spaces.  The nice-dimension boundary is an external
table shipped in ``data/nice_boundary.json`` and is used only for drawing
and for the sanity check "extra-nice (n,p) implies nice (n+1,p+1)".
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Tuple

YES, NO, UNRESOLVED = "yes", "no", "unresolved"

# neutral anchor strings carried by every answer
ANCHORS = {
    "n<=p-line": "rule:line 5n-4p-5<0 (boundary points (5+4l,5+5l), p>=5)",
    "n=p": "boundary:(5,5) for n=p",
    "n=p-1": "boundary:(9,10) for n=p-1",
    "n=p+1": "boundary:(5,4) for n=p+1",
    "n=p+2": "boundary:(7,5) for n=p+2",
    "n-p>=3": "boundary:(8+k,6) for (n+k,n), k>2",
    "monotone": "rule:(n+1,p+1) extra-nice implies (n,p) extra-nice",
    "delta": "chain:(9,9) > (5,5) > (3,3) > (2,2) for n=p",
}


@dataclass
class DimPairClass:
    n: int
    p: int
    extra_nice: str
    case_tag: str
    citations: List[str]
    flags: List[str] = field(default_factory=list)
    readings: Dict[str, str] = field(default_factory=dict)
    delta_levels: Optional[int] = None

    @property
    def is_extra_nice(self) -> bool:
        return self.extra_nice == YES

    def to_json(self) -> dict:
        out = {"n": self.n, "p": self.p, "extra_nice": self.extra_nice,
               "case_tag": self.case_tag, "citations": list(self.citations),
               "flags": list(self.flags)}
        if self.readings:
            out["readings"] = dict(self.readings)
        if self.n == self.p:
            out["delta_levels"] = self.delta_levels
        return out


def _case(n: int, p: int) -> str:
    d = n - p
    if d <= 0:
        return "n<=p-line"
    if d == 1:
        return "n=p+1"
    if d == 2:
        return "n=p+2"
    return "n-p>=3"


def classify(n: int, p: int) -> DimPairClass:
    if n < 1 or p < 1:
        raise ValueError("dimensions must be positive")
    tag = _case(n, p)
    cites = [ANCHORS[tag]]
    flags: List[str] = []
    readings: Dict[str, str] = {}
    if tag == "n<=p-line":
        ans = YES if 5 * n - 4 * p - 5 < 0 else NO
        if n == p:
            cites.append(ANCHORS["n=p"])
        elif n == p - 1:
            cites.append(ANCHORS["n=p-1"])
    elif tag == "n=p+1":
        ans = YES if n <= 4 else NO
    elif tag == "n=p+2":
        ans = YES if n <= 6 else NO
    else:
        # (n+k, n) read with k = n - p: below (8+k, 6) means p < 6.
        literal = YES if p < 6 else NO
        # k counted as the number of added squares: the difference is k + 2,
        # so the statement only covers n - p >= 5.
        family = (YES if p < 6 else NO) if n - p >= 5 else UNRESOLVED
        readings = {"literal": literal, "family-index": family}
        ans = literal
        flags.append("unresolved-indexing")
    out = DimPairClass(n, p, ans, tag, cites, flags, readings)
    if n == p:
        out.delta_levels = delta_level(n)
        cites.append(ANCHORS["delta"])
    return out


def is_boundary(n: int, p: int) -> bool:
    """Not extra-nice while the pair one step down the diagonal is."""
    if classify(n, p).is_extra_nice:
        return False
    if n == 1 or p == 1:
        return True
    return classify(n - 1, p - 1).is_extra_nice


def boundary_pairs(limit: int = 20) -> List[Tuple[int, int]]:
    return [(n, p) for n in range(1, limit + 1) for p in range(1, limit + 1) if is_boundary(n, p)]


# ---------------------------------------------------------------- nice dimensions (external)

@lru_cache(maxsize=1)
def nice_table() -> dict:
    text = resources.files("mapgerms").joinpath("data/nice_boundary.json").read_text()
    return json.loads(text)


def nice(n: int, p: int) -> bool:
    d = p - n
    for r in nice_table()["rules"]:
        lo, hi = r["p_minus_n_min"], r["p_minus_n_max"]
        if (lo is None or d >= lo) and (hi is None or d <= hi):
            return r["a"] * n + r["b"] * p + r["c"] < 0
    raise AssertionError("nice table does not cover every difference")


def extra_implies_nice(limit: int = 20) -> List[Tuple[int, int]]:
    """Pairs violating "extra-nice (n,p) => nice (n+1,p+1)"; expected empty."""
    return [(n, p) for n in range(1, limit + 1) for p in range(1, limit + 1)
            if classify(n, p).is_extra_nice and not nice(n + 1, p + 1)]


def monotonicity_violations(limit: int = 20) -> List[Tuple[int, int]]:
    return [(n, p) for n in range(1, limit) for p in range(1, limit)
            if classify(n + 1, p + 1).is_extra_nice and not classify(n, p).is_extra_nice]


# ---------------------------------------------------------------- Delta_m chain for n = p

DELTA_BOUNDARIES = {0: 9, 1: 5, 2: 3, 3: 2}
DELTA_WITNESSES = {
    1: ("cod2-nonsimple", "B33 section with L = U3 + lam U4 + U4^2; Ae-codimension 2, not simple"),
    2: ("delta2-witness", "(x, y, z^6 + y z^2 + x z); Ae-codimension 3, not simple"),
    3: ("delta3-witness", "(x, x y + y^6 + y^9 + a y^9); Ae-codimension 4, not simple"),
}


def delta_level(n: int) -> Optional[int]:
    """Largest m with (n, n) strictly inside the Delta_m-nice pairs.

    -1 means outside Delta_0; None means inside every Delta_m.
    """
    if n < DELTA_BOUNDARIES[3]:
        return None
    best = -1
    for m, b in sorted(DELTA_BOUNDARIES.items()):
        if n < b:
            best = m
    return best


def delta_chain(n: int, p: Optional[int] = None) -> dict:
    if p is not None and p != n:
        raise ValueError("the Delta_m chain is stated for n = p only")
    level = delta_level(n)
    on = [m for m, b in DELTA_BOUNDARIES.items() if b == n]
    if n == DELTA_BOUNDARIES[3]:
        on = ["m>=3"]
    return {
        "n": n,
        "boundaries": {str(m): [b, b] for m, b in DELTA_BOUNDARIES.items()},
        "inside_level": level,
        "boundary_of": on,
        "outside_delta0": level == -1,
        "witnesses": {str(m): {"catalog": c, "description": d} for m, (c, d) in DELTA_WITNESSES.items()},
        "citations": [ANCHORS["delta"]],
    }


# ---------------------------------------------------------------- algebra catalog

@dataclass(frozen=True)
class AlgebraEntry:
    name: str
    components: Tuple[str, ...]
    params: Tuple[Tuple[str, int], ...]
    stable_pair: Tuple[int, int]
    formula: str
    simple: bool = True
    table_row: bool = False

    @property
    def section_pair(self) -> Tuple[int, int]:
        return self.stable_pair[0] - 1, self.stable_pair[1] - 1

    def to_json(self) -> dict:
        d = asdict(self)
        d["params"] = dict(self.params)
        d["section_pair"] = list(self.section_pair)
        return d


def _zeros(k: int) -> Tuple[str, ...]:
    return ("0",) * k


def _families(limit: int):
    """Every family formula instantiated with stable pair up to ``limit``."""
    for a in range(2, limit + 1):
        for b in range(2, a + 1):
            s = a + b
            bpq = (f"x^{a}+y^{b}", "x*y")
            if s <= limit:
                yield AlgebraEntry(f"B_{{{a},{b}}}", bpq, (("p", a), ("q", b)), (s, s), "(p+q, p+q)")
            if s + 2 <= limit:
                yield AlgebraEntry(f"P_{{{a},{b}}}", (f"x^{a}+y^{b}+z^2", "x*y"), (("p", a), ("q", b)),
                                   (s + 2, s + 1), "(p+q+2, p+q+1)")
            for k in range(0, limit + 1):
                pair = (2 * s - 2 + k * (s - 2), 2 * s - 1 + k * (s - 1))
                if pair[0] > limit and pair[1] > limit:
                    break
                row = (a, b) in ((3, 3), (3, 2))
                yield AlgebraEntry(f"(B'_{{{a},{b}}},0^{k})", (f"x^{a}", f"y^{b}", "x*y") + _zeros(k),
                                   (("p", a), ("q", b), ("k", k)), pair,
                                   "(2p+2q-2+k(p+q-2), 2p+2q-1+k(p+q-1))", table_row=row and k >= 0)
            for k in range(1, limit + 1):
                pair = (s + k * (s - 1), s + k * s)
                if pair[0] > limit and pair[1] > limit:
                    break
                row = (a, b) in ((3, 3), (3, 2))
                yield AlgebraEntry(f"(B_{{{a},{b}}},0^{k})", bpq + _zeros(k),
                                   (("p", a), ("q", b), ("k", k)), pair,
                                   "(p+q+k(p+q-1), p+q+k(p+q))", table_row=row)
    three = [
        ("Q_4", ("x^2-y^2", "y^2+z^2", "x*z", "y*z"), (12, 13), (9, 10)),
        ("Q_5", ("x^2-y^2", "y^2+z^2", "x*y", "x*z", "y*z"), (15, 17), (12, 13)),
        ("Q_6", ("x^2", "y^2", "z^2", "x*y", "x*z", "y*z"), (18, 21), (15, 16)),
    ]
    for name, comps, (n0, p0), (dn, dp) in three:
        for k in range(0, limit + 1):
            pair = (n0 + dn * k, p0 + dp * k)
            if pair[0] > limit and pair[1] > limit:
                break
            yield AlgebraEntry(f"({name},0^{k})", comps + _zeros(k), (("k", k),), pair,
                               f"({n0}+{dn}k, {p0}+{dp}k)")
    if limit >= 9:
        yield AlgebraEntry("(x^2+y^2+z^2, y^2+z^2+lam w^2)", ("x^2+y^2+z^2", "y^2+z^2+lam*w^2"), (),
                           (9, 7), "(9, 7)", simple=False)


def algebra_catalog(n: int, p: int) -> List[AlgebraEntry]:
    """Catalogued algebras whose minimal stable germ lives in (n, p)."""
    limit = max(n, p)
    return [e for e in _families(limit) if e.stable_pair == (n, p)]


def table_rows(ell: int) -> List[AlgebraEntry]:
    """Rows for p = n + ell: B33, B'33, B32, B'32 with their zero counts."""
    want = {("B", 3, 3): ell, ("B'", 3, 3): ell - 1, ("B", 3, 2): ell, ("B'", 3, 2): ell - 1}
    out = []
    limit = 6 + 6 * max(ell, 1)
    for e in _families(limit):
        prm = dict(e.params)
        if "B" not in e.name or (prm.get("p"), prm.get("q")) not in ((3, 3), (3, 2)):
            continue
        kind = "B'" if "'" in e.name else "B"
        k = prm.get("k", 0)
        if want.get((kind, prm["p"], prm["q"])) == k:
            out.append(e)
    order = [("B", 3, 3), ("B'", 3, 3), ("B", 3, 2), ("B'", 3, 2)]
    key = lambda e: order.index(("B'" if "'" in e.name else "B", dict(e.params)["p"], dict(e.params)["q"]))
    return sorted(out, key=key)


# ---------------------------------------------------------------- figure

def emit_boundary_figure(lo: int = 1, hi: int = 20, fmt: str = "svg") -> str:
    """(n, p) lattice with the extra-nice region and both boundaries."""
    if fmt not in ("svg", "text"):
        raise ValueError(f"unsupported figure format {fmt!r}")
    if hi > 40 or lo < 1:
        raise ValueError("range must lie within 1..40")
    if lo > hi:
        return ""
    rng = range(lo, hi + 1)
    if fmt == "text":
        return _text_figure(rng)
    return _svg_figure(rng)


def _cell(n: int, p: int) -> str:
    if is_boundary(n, p):
        return "B"
    if classify(n, p).is_extra_nice:
        return "#"
    return "." if nice(n, p) else " "


def _text_figure(rng) -> str:
    lines = ["legend: # extra-nice, B extra-nice boundary, . nice only (external table), blank not nice",
             "rows p (top = largest), columns n"]
    for p in reversed(rng):
        lines.append(f"{p:>3} " + "".join(_cell(n, p) for n in rng))
    lines.append("    " + "".join(str(n % 10) for n in rng))
    return "\n".join(lines) + "\n"


def _svg_figure(rng) -> str:
    s = 14
    lo, hi = rng[0], rng[-1]
    size = (hi - lo + 1) * s
    W, H = size + 60, size + 80
    y = lambda p: 20 + (hi - p) * s
    x = lambda n: 40 + (n - lo) * s
    colors = {"#": "#4a7ebb", "B": "#c0392b", ".": "#d5e3f3", " ": "#ffffff"}
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">']
    for p in rng:
        for n in rng:
            c = _cell(n, p)
            out.append(f'<rect x="{x(n)}" y="{y(p)}" width="{s - 1}" height="{s - 1}" fill="{colors[c]}"/>')
    # nice boundary: first non-nice n on each row
    pts = []
    for p in rng:
        first = next((n for n in rng if not nice(n, p)), None)
        if first is not None:
            pts.append(f"{x(first)},{y(p) + s // 2}")
    if pts:
        out.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="#555" stroke-dasharray="3,3"/>')
    ext = [f"{x(n) + s // 2},{y(p) + s // 2}" for n in rng for p in rng if is_boundary(n, p)]
    if ext:
        out.append(f'<polyline points="{" ".join(sorted(ext, key=lambda t: tuple(map(int, t.split(",")))))}" '
                   'fill="none" stroke="#c0392b" stroke-width="1.5"/>')
    out.append(f'<text x="40" y="{H - 40}" font-size="10">solid: extra-nice boundary; dashed: nice boundary'
               f' (external data: {nice_table()["source"]})</text>')
    out.append(f'<text x="40" y="{H - 25}" font-size="10">horizontal n, vertical p, range {lo}..{hi}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
