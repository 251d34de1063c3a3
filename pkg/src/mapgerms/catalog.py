"""Built-in germs and the published generator lists used for cross-checks.

Vector fields are stored as strings, one per coordinate, in the coordinate
order of the germ's target (eta) or source (xi).  In source-side lists the
capital names of the germ's components (X, Y, Z, ...) stand for the component
polynomials.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .germ import MapGerm, germ_from_strings
from .poly import RingCtx, VectorField, parse_poly

F32_SRC = ["x", "y", "u1", "u2", "u3"]
F32_TGT = ["X", "Y", "U1", "U2", "U3"]
F33_SRC = ["x", "y", "u1", "u2", "u3", "u4"]
F33_TGT = ["X", "Y", "U1", "U2", "U3", "U4"]
F33P_SRC = ["x", "y", "u1", "u2", "u3", "v1", "v2", "v3", "w1", "w2"]
F33P_TGT = ["X", "Y", "Z", "U1", "U2", "U3", "V1", "V2", "V3", "W1", "W2"]
P22_SRC = ["x", "y", "z", "u1", "u2", "u3"]
P22_TGT = ["X", "Y", "U1", "U2", "U3"]


def _germ(label, src, tgt, comps, weights=None) -> MapGerm:
    return germ_from_strings(src, tgt, comps, label, weights)


def f32() -> MapGerm:
    return _germ("F32", F32_SRC, F32_TGT,
                 ["x^3 + y^2 + u1*x + u2*y + u3*x^2", "x*y", "u1", "u2", "u3"],
                 (2, 3, 4, 3, 2))


def f33() -> MapGerm:
    return _germ("F33", F33_SRC, F33_TGT,
                 ["x^3 + y^3 + u1*x + u2*y + u3*x^2 + u4*y^2", "x*y", "u1", "u2", "u3", "u4"],
                 (1, 1, 2, 2, 1, 1))


def f33prime() -> MapGerm:
    return _germ("F33prime", F33P_SRC, F33P_TGT,
                 ["x^3 + u1*x + u2*y + u3*y^2", "y^3 + v1*x + v2*y + v3*x^2",
                  "x*y + w1*x + w2*y", "u1", "u2", "u3", "v1", "v2", "v3", "w1", "w2"],
                 (1, 1, 2, 2, 1, 2, 2, 1, 1, 1))


def p22() -> MapGerm:
    return _germ("P22", P22_SRC, P22_TGT,
                 ["x^2 + y^2 + z^2 + u1*x + u2*y", "x*y + u3*z", "u1", "u2", "u3"],
                 (1, 1, 1, 1, 1, 1))


def b32_core() -> MapGerm:
    return _germ("B32", ["x", "y"], ["X", "Y"], ["x^3 + y^2", "x*y"], (2, 3))


def b33_core() -> MapGerm:
    return _germ("B33", ["x", "y"], ["X", "Y"], ["x^3 + y^3", "x*y"], (1, 1))


def b32prime_core() -> MapGerm:
    return _germ("B32prime", ["x", "y"], ["X", "Y", "Z"], ["x^3", "y^2", "x*y"], (2, 3))


def b33prime_core() -> MapGerm:
    return _germ("B33prime", ["x", "y"], ["X", "Y", "Z"], ["x^3", "y^3", "x*y"], (1, 1))


def p22_core() -> MapGerm:
    return _germ("P22core", ["x", "y", "z"], ["X", "Y"], ["x^2 + y^2 + z^2", "x*y"], (1, 1, 1))


def rieger_a() -> MapGerm:
    return _germ("rieger-x5a", ["x", "y"], ["X", "Y"], ["x^5 + y*x", "y"])


def rieger_b() -> MapGerm:
    return _germ("rieger-x5b", ["x", "y"], ["X", "Y"], ["x^5 + y*x + x^7", "y"])


def cusp() -> MapGerm:
    return _germ("cusp", ["x", "y"], ["X", "Y"], ["x^3 + x*y", "y"], (1, 2))


def fold() -> MapGerm:
    return _germ("fold", ["x"], ["X"], ["x^2"], (1,))


def identity(k: int = 1) -> MapGerm:
    src = [f"x{i}" for i in range(1, k + 1)] if k > 1 else ["x"]
    tgt = [s.upper() for s in src]
    return _germ("identity", src, tgt, src, (1,) * k)


def cod2_nonsimple(lam) -> MapGerm:
    """Corank 2 germ in (5,5) with modulus ``lam``."""
    lam = str(lam)
    return _germ(f"B33-section[{lam}]", ["x", "y", "u1", "u2", "u4"], ["X", "Y", "U1", "U2", "U4"],
                 [f"x^3 + y^3 + u1*x + u2*y + (-({lam})*u4 - u4^2)*x^2 + u4*y^2",
                  "x*y", "u1", "u2", "u4"])


def delta2_witness() -> MapGerm:
    return _germ("delta2-witness", ["x", "y", "z"], ["X", "Y", "Z"], ["x", "y", "z^6 + y*z^2 + x*z"])


def delta3_witness(sign: int = 1, alpha="0") -> MapGerm:
    c = f"({sign}) + ({alpha})"
    return _germ("delta3-witness", ["x", "y"], ["X", "Y"], ["x", f"x*y + y^6 + ({c})*y^9"])


GERMS = {
    "F32": f32, "F33": f33, "F33prime": f33prime, "P22": p22,
    "B32": b32_core, "B33": b33_core, "B32prime": b32prime_core, "B33prime": b33prime_core,
    "P22core": p22_core, "rieger-x5a": rieger_a, "rieger-x5b": rieger_b,
    "cusp": cusp, "fold": fold, "identity": identity,
    "delta2-witness": delta2_witness, "delta3-witness": delta3_witness,
}

ALIASES = {"B32core": "B32", "B33core": "B33", "F33'": "F33prime", "P22'": "P22core"}


def get(name: str) -> MapGerm:
    key = ALIASES.get(name, name)
    if key not in GERMS:
        raise KeyError(f"unknown catalog germ {name!r}; known: {', '.join(sorted(GERMS))}")
    return GERMS[key]()


# ---------------------------------------------------------------- generator lists

LIFT_F32 = [
    ["6*X", "5*Y", "4*U1", "3*U2", "2*U3"],
    ["4*U3*Y + 2*U1*U2", "X", "-5*Y - 3*U2*U3", "-3*U1", "-4*U2"],
    ["4/3*U2*Y", "-1/9*U3*Y", "X + 1/9*U1*U3", "-5/3*Y", "-2/3*U1 + 2/9*U3^2"],
    ["3/2*U1*Y", "-1/4*U2*Y", "-2*U3*Y", "X + 1/4*U2^2", "-5/2*Y"],
    ["5/3*Y^2 + 1/9*U2*U3*Y", "(-2/9*U1 + 2/27*U3^2)*Y",
     "-4/3*U2*Y + 2/9*U1^2 - 2/27*U1*U3^2", "-2/9*U3*Y", "X + 5/9*U1*U3 - 4/27*U3^3"],
]

XI_F32 = {
    2: ["y + u2", "x^2 + u1 + u3*x", "-5*x*y - 3*u2*u3", "-3*u1", "-4*u2"],
    3: ["-1/3*x^2 - 1/9*u3*x", "1/3*x*y", "x^3 + y^2 + u1*x + u2*y + u3*x^2 + 1/9*u1*u3",
        "-5/3*x*y", "-2/3*u1 + 2/9*u3^2"],
    4: ["1/2*x*y", "-1/2*y^2 - 1/4*u2*y", "-2*u3*x*y",
        "x^3 + y^2 + u1*x + u2*y + u3*x^2 + 1/4*u2^2", "-5/2*x*y"],
    5: ["-1/3*x^3 - 1/9*u3*x^2 + (-2/9*u1 + 2/27*u3^2)*x", "1/3*x^2*y + 1/9*u3*x*y",
        "-4/3*u2*x*y + 2/9*u1^2 - 2/27*u1*u3^2", "-2/9*u3*x*y",
        "x^3 + y^2 + u1*x + u2*y + u3*x^2 + 5/9*u1*u3 - 4/27*u3^3"],
}

LIFT_F33 = [
    ["3*X", "2*Y", "2*U1", "2*U2", "U3", "U4"],
    ["2*U1*U2 + 6*Y^2 + 4*U3*U4*Y", "X", "-3*U2*U3 - 5*U4*Y", "-3*U1*U4 - 5*U3*Y", "-4*U2", "-4*U1"],
    ["4/3*U2*Y", "-1/9*U3*Y", "X + 1/9*U1*U3", "-5/3*U4*Y", "-2/3*U1 + 2/9*U3^2", "-2*Y"],
    ["4/3*U1*Y", "-1/9*U4*Y", "-5/3*U3*Y", "X + 1/9*U2*U4", "-2*Y", "-2/3*U2 + 2/9*U4^2"],
    ["5/3*U4*Y^2 + 1/9*U2*U3*Y", "(-2/9*U1 + 2/27*U3^2)*Y",
     "-4/3*U2*Y + 2/9*U1^2 - 2/27*U1*U3^2", "-2*Y^2 - 2/9*U3*U4*Y",
     "X + 5/9*U1*U3 - 4/27*U3^3", "-1/3*U3*Y"],
    ["5/3*U3*Y^2 + 1/9*U1*U4*Y", "-2/9*U2*Y + 2/27*U4^2*Y", "-2*Y^2 - 2/9*U3*U4*Y",
     "-4/3*U1*Y + 2/9*U2^2 - 2/27*U4^2*U2", "-1/3*U4*Y", "X + 5/9*U2*U4 - 4/27*U4^3"],
]

_F33X = "x^3 + y^3 + u1*x + u2*y + u3*x^2 + u4*y^2"

XI_F33 = {
    2: ["u2 + y^2 + u4*y", "u1 + x^2 + u3*x", "-3*u2*u3 - 5*u4*x*y", "-3*u1*u4 - 5*u3*x*y",
        "-4*u2", "-4*u1"],
    3: ["-1/3*x^2 - 1/9*u3*x", "1/3*x*y", f"{_F33X} + 1/9*u1*u3", "-5/3*u4*x*y",
        "-2/3*u1 + 2/9*u3^2", "-2*x*y"],
    4: ["1/3*x*y", "-1/3*y^2 - 1/9*u4*y", "-5/3*u3*x*y", f"{_F33X} + 1/9*u2*u4", "-2*x*y",
        "-2/3*u2 + 2/9*u4^2"],
    5: ["-1/3*x^3 - 1/9*u3*x^2 + (-2/9*u1 + 2/27*u3^2)*x", "1/3*x^2*y + 1/9*u3*x*y",
        "-4/3*u2*x*y + 2/9*u1^2 - 2/27*u1*u3^2", "-2*x^2*y^2 - 2/9*u3*u4*x*y",
        f"{_F33X} + 5/9*u1*u3 - 4/27*u3^3", "-1/3*u3*x*y"],
    6: ["1/3*x*y^2 + 1/9*u4*x*y", "-1/3*y^3 - 2/9*u2*y - 1/9*u4*y^2 + 2/27*u4^2*y",
        "-2*x^2*y^2 - 2/9*u3*u4*x*y", "-4/3*u1*x*y + 2/9*u2^2 - 2/27*u4^2*u2", "-1/3*u4*x*y",
        f"{_F33X} + 5/9*u2*u4 - 4/27*u4^3"],
}

LIFT_P22 = [
    ["2*X", "2*Y", "U1", "U2", "U3"],
    ["6*Y*U1 - 2*U2*U3^2", "-Y*U2 + 2*U1*U3^2", "-8*Y", "4*X + U2^2 + 4*U3^2", "-U2*U3"],
    ["4*Y*U3 + 3*U1*U2*U3", "2*X*U3 + 2*U3^2", "-4*U2*U3", "-4*U1*U3", "2*Y"],
    ["6*Y*U2 - 2*U1*U3^2", "-Y*U1 + 2*U2*U3^2", "4*X + U1^2 + 4*U3^2", "-8*Y", "-U1*U3"],
    ["4*(X^2 - 12*Y^2 - 6*Y*U1*U2 + U3^2*(5*X + 3*U1^2 + 3*U2^2))",
     "-8*X*Y - 16*Y*U3^2 - 9*U1*U2*U3^2", "2*X*U1 + 36*Y*U2 - 14*U1*U3^2",
     "36*Y*U1 + 2*X*U2 - 14*U1*U3^2", "-10*X*U3 - 2*U3^3"],
]

# As printed, the third and fifth fields are not liftable; these two entries
# are the liftable versions (one exponent, one index).
LIFT_P22_CORRECTED = [list(g) for g in LIFT_P22]
LIFT_P22_CORRECTED[2][1] = "2*X*U3 + 2*U3^3"
LIFT_P22_CORRECTED[4][3] = "36*Y*U1 + 2*X*U2 - 14*U2*U3^2"

# Sparse form: {coordinate: coefficient expression}.
_F33P_LIN = [
    {"X": "3*X", "Y": "3*Y", "Z": "2*Z", "U1": "2*U1", "U2": "2*U2", "U3": "U3", "V1": "2*V1",
     "V2": "2*V2", "V3": "V3", "W1": "W1", "W2": "W2"},
    {"Z": "3*X", "V3": "-3*V2", "W1": "3*U1", "W2": "4*U2"},
    {"Z": "3*Y", "U3": "-3*U1", "W1": "4*V1", "W2": "3*V2"},
    {"U1": "9*X", "V3": "3*V1", "W1": "3*Z", "W2": "2*U1"},
    {"U1": "3*Y", "U3": "-3*Z", "W2": "V1"},
    {"U2": "3*X", "U3": "-3*U2", "W2": "Z"},
    {"U3": "X"},
    {"U3": "3*U2", "V2": "9*Y", "W1": "2*V2", "W2": "3*Z"},
    {"V1": "3*Y", "V3": "-3*V1", "W1": "Z"},
    {"V2": "3*X", "V3": "-3*Z", "W1": "U2"},
    {"V3": "3*Y", "W2": "X"},
    {"W1": "X"},
    {"W1": "Y"},
    {"W2": "Y"},
]

_F33P_XI = [
    None,
    {"x": "-u2", "y": "x^2", "v3": "-3*v2", "w1": "3*u1", "w2": "4*u2"},
    {"x": "3*y^2", "y": "-v1", "u3": "-3*u1", "w1": "4*v1", "w2": "3*v2"},
    {"x": "-3*x^2 - 2*u1", "u1": "X", "v3": "3*v1", "w1": "3*Z", "w2": "2*u1"},
    {"x": "-v1", "u1": "3*Y", "u3": "-3*Z", "w1": "v1"},
    {"x": "-x*y", "u2": "3*X", "u3": "-3*u2", "w2": "Z"},
    {"u3": "X"},
    {"y": "-3*y^2 - 2*v2", "u3": "3*u2", "v2": "9*Y", "w1": "2*v2", "w2": "3*Z"},
    {"y": "-v1*x - x*y", "v1": "3*Y", "v3": "-3*v1", "w1": "Z"},
    {"y": "-u2", "v2": "3*X", "v3": "-3*Z", "w1": "u2"},
    {"y": "-x^2*y", "v3": "3*Y", "w2": "X"},
    {"w1": "X"},
    {"w1": "Y"},
    {"w2": "Y"},
]


def _dense(sparse: Dict[str, str], names: Sequence[str]) -> List[str]:
    return [sparse.get(v, "0") for v in names]


def lift_strings(label: str) -> List[List[str]]:
    if label == "F32":
        return LIFT_F32
    if label == "F33":
        return LIFT_F33
    if label == "P22":
        return LIFT_P22
    if label == "F33prime":
        return [_dense(s, F33P_TGT) for s in _F33P_LIN]
    raise KeyError(f"no published generator list for {label!r}")


def corrected_lift(f: MapGerm, label: Optional[str] = None) -> List[VectorField]:
    """Published list with the known misprints repaired (P22 only)."""
    label = label or f.label
    if label != "P22":
        return published_lift(f, label)
    return [VectorField.parse(f.target, s) for s in LIFT_P22_CORRECTED]


def xi_strings(label: str) -> Dict[int, List[str]]:
    if label == "F32":
        return XI_F32
    if label == "F33":
        return XI_F33
    if label == "F33prime":
        return {i: _dense(s, F33P_SRC) for i, s in enumerate(_F33P_XI, start=1) if s is not None}
    raise KeyError(f"no published source-field list for {label!r}")


def published_lift(f: MapGerm, label: Optional[str] = None) -> List[VectorField]:
    """Published Lift generators (or their linear parts, for F33prime)."""
    return [VectorField.parse(f.target, s) for s in lift_strings(label or f.label)]


def published_xi(f: MapGerm, label: Optional[str] = None) -> Dict[int, VectorField]:
    """Published source fields; capital component names are expanded."""
    subs = {t: c for t, c in zip(f.target.vars, f.components) if t not in f.source.vars}
    out = {}
    for i, comps in xi_strings(label or f.label).items():
        polys = []
        for s in comps:
            polys.append(_parse_with_components(s, f, subs))
        out[i] = VectorField(f.source, tuple(polys))
    return out


def _parse_with_components(text: str, f: MapGerm, subs) -> "Poly":
    names = tuple(f.source.vars) + tuple(subs)
    big = RingCtx(names)
    p = parse_poly(text.replace("z", "Z") if "z" in text and "z" not in f.source.vars else text, big)
    assign = {v: f.source.var(v) for v in f.source.vars}
    assign.update(subs)
    return p.substitute(assign, f.source)
