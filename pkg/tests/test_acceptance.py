"""One test group per acceptance criterion; results are echoed as PASS/FAIL lines
at the end of the session (see conftest.pytest_terminal_summary)."""
import pytest

from conftest import record
from mapgerms import atlas, catalog
from mapgerms import discriminant as D
from mapgerms import sections as S
from mapgerms import tangent as T
from mapgerms import unfolding as U
from mapgerms.germ import weighted


def _data(label):
    F = catalog.get(label)
    return F, D.discriminant(F)


# 1 -------------------------------------------------------------------------

def test_criterion_1_lift_f32():
    F, d = _data("F32")
    pub = catalog.published_lift(F)
    eq = D.module_equal(pub, d.derlog.generators, weighted(F).target)
    saito = D.saito_check(d)
    lift = [D.is_liftable(F, g) for g in pub]
    ok = eq and saito and all(lift) and len(pub) == 5
    record(1, ok, f"Lift(F32) module-equal={eq}, Saito={saito}, liftable {sum(lift)}/5")
    assert ok


# 2 -------------------------------------------------------------------------

def test_criterion_2_lift_f33():
    F, d = _data("F33")
    pub = catalog.published_lift(F)
    eq = D.module_equal(pub, d.derlog.generators, weighted(F).target)
    saito = D.saito_check(d)
    xi = catalog.published_xi(F)
    exact = [(F.tf(v) - F.pullback_field(pub[i - 1])).is_zero() for i, v in sorted(xi.items())]
    ok = eq and saito and len(pub) == 6 and all(exact) and len(exact) == 5
    record(2, ok, f"Lift(F33) module-equal={eq}, Saito={saito}, xi_2..xi_6 exact {sum(exact)}/5")
    assert ok


# 3 -------------------------------------------------------------------------

def test_criterion_3_lift_p22():
    F, d = _data("P22")
    gens = d.derlog.generators
    nonzero = sum(1 for g in gens if any(any(r) for r in g.linear_part()))
    fixed = catalog.corrected_lift(F)
    eq = D.module_equal(fixed, gens, weighted(F).target)
    lift = all(D.is_liftable(F, g) for g in fixed)
    ok = len(gens) == 5 and nonzero == 4 and eq and lift
    record(3, ok, f"Lift(P22) has {len(gens)} generators, {nonzero} with nonzero linear part, "
                  f"equal to the repaired list={eq}")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed eta3 and eta5 carry misprints")
def test_criterion_3_printed_list():
    F, d = _data("P22")
    eq = D.module_equal(catalog.published_lift(F), d.derlog.generators, weighted(F).target)
    record(3, eq, "printed P22 list module-equal", expected_failure=True)
    assert eq


# 4 -------------------------------------------------------------------------

def test_criterion_4_linear_parts_realised():
    F = catalog.get("F33prime")
    lin = catalog.published_lift(F)
    same = 0
    for e in lin:
        r = D.lift_with_linear_part(F, e)
        if r is not None and r[1].linear_part() == e.linear_part():
            same += 1
    ok = same == len(lin) == 14
    record(4, ok, f"F33' linear parts realised by liftable fields {same}/{len(lin)}")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed xi are leading terms only")
def test_criterion_4_printed_xi_factor():
    F = catalog.get("F33prime")
    fails = 0
    xis = catalog.published_xi(F)
    for _, xi in sorted(xis.items()):
        try:
            D.pushforward_field(F, xi, graded=True)
        except D.NotInSubalgebra:
            fails += 1
    record(4, fails == 0, f"printed xi factor through F ({fails} of {len(xis)} do not)", expected_failure=True)
    assert fails == 0


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="printed xi are leading terms only")
def test_criterion_4_printed_xi_factor_by_elimination():
    F = catalog.get("F33prime")
    xi = catalog.published_xi(F)[min(catalog.published_xi(F))]
    D.pushforward_field(F, xi, graded=False)


# 5 -------------------------------------------------------------------------

def test_criterion_5_rank_certificates():
    Fp = catalog.get("F33prime")
    lin = catalog.published_lift(Fp)
    full = [D.lift_with_linear_part(Fp, e)[1] for e in lin]
    rp = S.best_section_codim(Fp, full)
    F32, d32 = _data("F32")
    r32 = S.best_section_codim(F32)
    v = S.vke_codim(d32, F32.target.parse("U3"))
    r33 = S.best_section_codim(catalog.get("F33"))
    r22 = S.best_section_codim(catalog.get("P22"))
    ok = (rp.generic_rank == 8 and rp.best_codim == 4 and r32.generic_rank == 5
          and str(r32.witness) == "U3" and v == 1 and r33.generic_rank < 6 and r22.best_codim >= 3)
    record(5, ok, f"F33' rank {rp.generic_rank} best {rp.best_codim}; F32 rank {r32.generic_rank} "
                  f"witness {r32.witness} vke {v}; F33 rank {r33.generic_rank}; P22 best {r22.best_codim}")
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_codimensions():
    got = []
    ok = True
    for name, want, orbit in (("rieger-x5a", 3, False), ("rieger-x5b", 2, True)):
        f = catalog.get(name)
        c = T.codimension(f, "Ae")
        o = T.open_orbit_test(f)
        w = T.consistency_check(f).wilson
        ok &= c.value == want and o is orbit and w is True and c.certified_degree <= 12
        got.append(f"{name} Ae={c.value} (degree {c.certified_degree}) open-orbit={o} Wilson={w}")
    record(6, ok, "; ".join(got))
    assert ok


# 7 -------------------------------------------------------------------------

def _vke(lam):
    F, d = _data("F33")
    return S.vke_codim(d, F.target.parse(f"U3 + ({lam})*U4 + U4^2"))


def test_criterion_7_generic_values():
    vals = {lam: _vke(lam) for lam in (1, 2, -2, -1)}
    ok = all(vals[l] == 2 for l in (1, 2, -2)) and vals[-1] != 2
    record(7, ok, "vke = " + ", ".join(f"{v} at {l}" for l, v in vals.items()))
    assert ok


@pytest.mark.xfail(strict=True, reason="the value at lam = 0 is also 2")
def test_criterion_7_lambda_zero_differs():
    v = _vke(0)
    record(7, v != 2, f"vke at 0 is {v}, expected to differ from 2", expected_failure=True)
    assert v != 2


# 8 -------------------------------------------------------------------------

def test_criterion_8_constructions():
    got = []
    ok = True
    for core, target, size in (("B32", "F32", 3), ("B33", "F33", 4), ("P22core", "P22", 3)):
        f0 = catalog.get(core)
        n = len(U.ke_normal_basis(f0))
        Uf = U.mather_stable_unfolding(f0)
        same = U.same_up_to_parameter_permutation(Uf.total, catalog.get(target))
        st = T.is_stable(Uf.total)
        ok &= n == size and same and st
        got.append(f"{core}->{target} basis {n} match={same} stable={st}")
    record(8, ok, "; ".join(got))
    assert ok


# 9 -------------------------------------------------------------------------

def test_criterion_9_projection():
    r = U.projection_equality(catalog.get("B32"))
    record(9, r.equal, f"forward {sum(r.forward)}/{len(r.forward)}, backward "
                       f"{sum(r.backward)}/{len(r.backward)} up to degree {r.top_degree}")
    assert r.equal


# 10 ------------------------------------------------------------------------

def test_criterion_10_atlas():
    pairs = {(4, 4): True, (5, 5): False, (8, 9): True, (9, 10): False,
             (4, 3): True, (5, 4): False, (6, 4): True, (7, 5): False}
    stated = all(atlas.classify(*k).is_extra_nice == v for k, v in pairs.items())
    line = all(atlas.classify(n, p).is_extra_nice == (5 * n - 4 * p - 5 < 0)
               for n in range(1, 21) for p in range(n, 21))
    mono = atlas.monotonicity_violations(20) == []
    rows = all([r.stable_pair for r in atlas.table_rows(l)] ==
               [(6 + 5 * l, 6 + 6 * l), (6 + 4 * l, 6 + 5 * l), (5 + 4 * l, 5 + 5 * l), (5 + 3 * l, 5 + 4 * l)]
               for l in range(1, 6))
    chain = ([atlas.delta_chain(n)["boundary_of"] for n in (9, 5, 3, 2)] == [[0], [1], [2], ["m>=3"]])
    ok = stated and line and mono and rows and chain
    record(10, ok, f"stated pairs={stated}, line rule on 1..20={line}, monotone={mono}, "
                   f"table rows={rows}, Delta chain={chain}")
    assert ok
