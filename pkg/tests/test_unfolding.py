import pytest
from hypothesis import assume, given, strategies as st

from mapgerms import catalog
from mapgerms import tangent as T
from mapgerms import unfolding as U
from mapgerms.gb import INFINITY, BudgetExceeded
from mapgerms.germ import germ_from_strings
from mapgerms.poly import make_ring
from strategies import R2, polys

LIPS = germ_from_strings(["x", "y"], ["X", "Y"], ["x^3 + x*y^2", "y"])


@pytest.mark.parametrize("core,stable,size", [("B32", "F32", 3), ("B33", "F33", 4), ("P22core", "P22", 3)])
def test_stable_unfoldings_of_cores(core, stable, size):
    f0 = catalog.get(core)
    assert len(U.ke_normal_basis(f0)) == size
    Uf = U.mather_stable_unfolding(f0)
    assert U.same_up_to_parameter_permutation(Uf.total, catalog.get(stable))
    assert T.is_stable(Uf.total)
    assert U.redundant_parameters(Uf) == 0


@pytest.mark.parametrize("k", range(1, 7))
def test_a_k_needs_k_minus_1_parameters(k):
    f = germ_from_strings(["x"], ["X"], [f"x^{k + 1}"])
    Uf = U.mather_stable_unfolding(f)
    assert len(Uf.params) == k - 1
    assert T.codimension(Uf.total, "Ae").value == 0


@st.composite
def rank0_plane(draw):
    a, b = draw(st.integers(2, 4)), draw(st.integers(2, 4))
    f1 = R2.parse(f"x^{a}") + draw(polys(R2, max_deg=a + 1, max_terms=2, min_order=2))
    f2 = R2.parse(f"y^{b}") + draw(polys(R2, max_deg=b + 1, max_terms=2, min_order=2))
    return germ_from_strings(["x", "y"], ["X", "Y"], [str(f1), str(f2)])


@given(rank0_plane())
def test_normal_basis_size_is_ke_codim_minus_p(f):
    # constant fields are never in TKe of a rank 0 germ
    try:
        ke = T.codimension(f, "Ke", cap=8)
    except BudgetExceeded:
        assume(False)
    if ke.value == INFINITY:
        with pytest.raises(U.NotKFinite):
            U.ke_normal_basis(f)
        return
    assert len(U.ke_normal_basis(f)) == ke.value - f.p


def test_unfolding_rejects_submersions():
    with pytest.raises(ValueError):
        U.ke_normal_basis(catalog.get("cusp"))


def test_versal_unfolding_of_lips():
    H = U.versal_unfolding(LIPS)
    assert H.params == ("t1",)
    assert T.is_stable(H.total)
    with pytest.raises(ValueError):
        U.versal_unfolding(catalog.get("cusp"))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_augmentation_codimension(k):
    # for a codimension 1 germ the augmentation by g has Ae-codim tau(g)
    H = U.versal_unfolding(LIPS)
    A = U.augment(LIPS, H, make_ring(["z"]).parse(f"z^{k}"))
    assert A.dims == (3, 3)
    assert T.codimension(A, "Ae").value == k - 1


def test_augment_validation():
    H = U.versal_unfolding(LIPS)
    z = make_ring(["z"])
    with pytest.raises(ValueError):
        U.augment(LIPS, H, z.parse("1 + z"))
    with pytest.raises(ValueError):
        U.augment(LIPS, H, make_ring(["z", "w"]).parse("z*w"))


def test_extend_with_zero():
    base, Uz = U.extend_with_zero(catalog.get("B32"), 1)
    assert base.dims == (2, 3) and base.components[-1].is_zero()
    assert Uz.total.dims == (9, 10)
    assert T.is_stable(Uz.total)


def test_sigma_basis_ends_with_jacobian():
    # O/(x^3 + y^2, xy) has basis 1, x, y, x^2, x^3 and the socle is spanned by
    # det [[3x^2, 2y], [y, x]] = 3x^3 - 2y^2
    sig = U.sigma_basis(catalog.get("B32"))
    R = sig[0].ring
    assert sig == [R.one(), R.parse("x"), R.parse("y"), R.parse("x^2"), R.parse("3*x^3 - 2*y^2")]


@pytest.mark.parametrize("n,p", [(1, 2), (3, 4), (2, 4), (5, 7), (5, 6)])
def test_corank1_normal_forms_are_stable(n, p):
    g = U.corank1_normal_form(n, p)
    assert g.dims == (n + 1, p + 1)
    assert T.is_stable(g)
    assert T.codimension(g, "Ae").value == 0


@pytest.mark.parametrize("n,p", [(2, 3), (3, 5), (3, 3), (0, 1)])
def test_corank1_normal_form_rejects(n, p):
    with pytest.raises(ValueError):
        U.corank1_normal_form(n, p)


@given(st.permutations(["u1", "u2", "u3"]))
def test_parameter_permutation_is_detected(perm):
    F = catalog.get("F32")
    src = F.source
    ren = dict(zip(["u1", "u2", "u3"], perm))
    assign = {v: src.var(ren.get(v, v)) for v in src.vars}
    G = F.__class__(src, F.target, tuple(c.substitute(assign, src) for c in F.components))
    assert U.same_up_to_parameter_permutation(G, F)


@pytest.mark.slow
def test_projection_of_zero_extension_lift():
    r = U.projection_equality(catalog.get("B32"))
    assert r.equal
