import pytest
import sympy
from hypothesis import given, strategies as st

from mapgerms import catalog
from mapgerms import discriminant as D
from mapgerms import sections as S
from mapgerms.germ import identity_germ
from mapgerms.poly import VectorField


def test_f32_section():
    F = catalog.get("F32")
    rep = S.best_section_codim(F)
    assert rep.generic_rank == 5 and rep.best_codim == 1 and rep.has_codim_one_section
    assert str(rep.witness) == "U3"
    assert rep.flags == []
    assert S.vke_codim(D.discriminant(F), F.target.parse("U3")) == 1
    js = rep.to_json()
    assert js["m"] == 5 and js["witness"] == "U3"


def test_p22_has_no_low_codim_section():
    F = catalog.get("P22")
    rep = S.best_section_codim(F)
    assert rep.best_codim >= 3 and "linear-parts bound" in rep.flags


def test_vke_rejects_constant():
    F = catalog.get("F32")
    with pytest.raises(ValueError):
        S.vke_codim(D.discriminant(F), F.target.parse("1 + U3"))


def test_n_matrix_shape():
    F = catalog.get("F32")
    N = S.n_matrix(F, catalog.published_lift(F))
    assert N.shape == (5, 6)
    assert N.nonzero_columns() == list(range(6))
    with pytest.raises(ValueError):
        S.n_matrix(F, [VectorField.parse(F.target, ["X", "Y"])])


# random linear parts on an m-dimensional target

@st.composite
def linear_fields(draw):
    m = draw(st.integers(2, 4))
    F = identity_germ([f"x{i}" for i in range(m)])
    T = F.target
    g = draw(st.integers(1, 4))
    fields = []
    for _ in range(g):
        comps = []
        for _ in range(m):
            coeffs = draw(st.lists(st.integers(-2, 2), min_size=m, max_size=m))
            comps.append(" + ".join(f"({c})*{v}" for c, v in zip(coeffs, T.vars)))
        fields.append(VectorField.parse(T, comps))
    return F, fields


def sympy_rank(N):
    """Rank over QQ(a) with sympy's domain matrices."""
    from sympy.polys.matrices import DomainMatrix
    syms = sympy.symbols(list(N.ring.vars))
    K = sympy.QQ.frac_field(*syms)
    M = sympy.Matrix([[sympy.sympify(str(e).replace("^", "**"), dict(zip(N.ring.vars, syms)))
                       for e in r] for r in N.rows])
    return DomainMatrix.from_Matrix(M).convert_to(K).rank()


@given(linear_fields())
def test_generic_rank_against_sympy(data):
    F, fields = data
    N = S.n_matrix(F, fields)
    r = S.generic_rank(N)
    assert r == sympy_rank(N)


@given(linear_fields(), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_generic_rank_bounds_specialisations(data, pt):
    F, fields = data
    N = S.n_matrix(F, fields)
    assert S.numeric_rank(N, pt[: F.p]) <= S.bareiss_rank(N)


@given(linear_fields(), st.lists(st.integers(-4, 4).filter(bool), min_size=4, max_size=4))
def test_best_codim_invariant_under_scaling(data, scales):
    F, fields = data
    a = S.best_section_codim(F, fields)
    b = S.best_section_codim(F, [f * c for f, c in zip(fields, scales)])
    assert (a.generic_rank, a.best_codim) == (b.generic_rank, b.best_codim)


_F32 = catalog.get("F32")
_F32D = D.discriminant(_F32)


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5).filter(any), st.integers(-5, 5).filter(bool))
def test_vke_invariant_under_scaling(coeffs, c):
    L = _F32.target.zero()
    for a, v in zip(coeffs, _F32.target.gens()):
        L = L + v * a
    assert S.vke_codim(_F32D, L) == S.vke_codim(_F32D, L * c)
