import pytest
import sympy as sp

from latpath import closedforms as CF
from latpath import series as S
from latpath.polyring import MultiPoly, RSeries, m, m1, q, s, u
from oracles import (
    beta_equation,
    chi_equation,
    chi_star_k_equation,
    p,
    q as Q,
    solve_series,
    to_sympy,
    zeta_equation,
)

ALL_IDS = ["chi", "chi-star", "zeta"] + [
    f"{t}({k})" for k in (1, 2, 3)
    for t in ("chi-star-k", "nu", "nu-motzkin", "xi", "kappa", "alpha", "beta")
]
PATH_IDS = ["chi", "zeta"] + [
    f"{t}({k})" for k in (1, 2, 3) for t in ("nu", "nu-motzkin", "xi", "kappa", "chi-star-k")
]


def test_parse_id():
    assert str(S.parse_id("nu(2)")) == "nu(2)"
    assert S.parse_id("xi", 3) == S.EquationId("xi", 3)
    assert S.parse_id("zeta").k == 2
    for bad in ("nu", "chi(2)", "zeta(3)", "omega"):
        with pytest.raises(ValueError):
            S.parse_id(bad)


@pytest.mark.parametrize("eq", ALL_IDS)
def test_residual_vanishes_through_order_8(eq):
    assert S.residual(eq, S.solve(eq, 8)).is_zero()


def test_residual_perturbation_is_local():
    x = S.solve("chi", 5)
    cs = list(x.coeffs)
    cs[3] = cs[3] + 1
    res = S.residual("chi", RSeries("r", cs))
    assert [n for n in range(6) if not res[n].is_zero()][0] == 3
    assert res[3] == 1


def test_residual_wrong_variable():
    with pytest.raises(ValueError):
        S.residual("chi", RSeries("p", [1]))


def test_chi_first_coefficient():
    # chi(-r) has order-1 coefficient (m'+1)(u'+1) s
    assert -S.solve("chi", 1)[1] == m * u * s


def test_zeta_3():
    z3 = S.zeta_polynomials(3)[3]
    assert z3 == m ** 3 + m ** 2 * (2 * s + 3 * s ** 2 + s ** 4) + m * (2 * s ** 3 + s ** 4 + s ** 5 + s ** 6)


def test_alpha_example():
    assert S.specialize("alpha(2)", 2, m=2, s=1, u=1)[2] == 10


def test_nu_motzkin_counts():
    for k in (1, 2, 3):
        vals = S.specialize(f"nu-motzkin({k})", 7, s=1)
        assert vals == [CF.motzkin(n, k) for n in range(8)]
    assert S.specialize("nu-motzkin(1)", 3, s=1)[3] == 4


def test_chi_against_sympy():
    ref = solve_series(chi_equation, 4)
    assert [to_sympy(c) for c in S.solve("chi", 4).coeffs] == ref


def test_zeta_against_sympy():
    ref = solve_series(zeta_equation, 3)
    assert [to_sympy(c) for c in S.solve("zeta", 3).coeffs] == ref


def test_beta_against_sympy():
    ref = solve_series(beta_equation(2), 4)
    assert [to_sympy(c) for c in S.solve("beta(2)", 4).coeffs] == ref


@pytest.mark.parametrize("k", [1, 2])
def test_chi_star_scaling_against_sympy(k):
    # the rational oracle solves the unscaled equation; rescaling must clear every denominator
    ref = solve_series(chi_star_k_equation(k), 3, var=p, shift_var=Q)
    M = sp.Symbol("m")
    for n, c in enumerate(ref):
        scaled = sp.cancel(c * (M - 1) ** ((k + 1) * n + 1))
        assert sp.fraction(scaled)[1] == 1
        assert sp.expand(scaled) == to_sympy(S.solve(f"chi-star-k({k})", 3)[n])


def test_chi_star_is_chi_star_k1():
    assert S.solve("chi-star", 5).coeffs == S.solve("chi-star-k(1)", 5).coeffs


def test_chi_star_q1_closed_form():
    x = S.solve("chi-star", 6)
    for n in range(7):
        assert x[n].eval(q=1) == CF.chi_star_q1(n)


def test_beta_is_a_family():
    for k in (1, 2, 3):
        x = S.solve(f"beta({k})", 6)
        for n in range(1, 7):
            for j in range(n + 1):
                coeff = sum(c for e, c in x[n].terms.items() if e[4] == j)
                assert coeff == CF.a_count(n, k, j)


@pytest.mark.parametrize("eq", PATH_IDS)
def test_solver_matches_path_sum(eq):
    x = S.solve(eq, 6)
    for n in range(7):
        got = S.normalized_coeff(eq, n, x)
        if eq == "zeta":
            got = got.eval(m=1)
        assert got == S.path_sum(eq, n), n


def test_path_sum_examples():
    assert S.path_sum("chi", 1) == m * u
    assert S.path_sum("zeta", 2) == 1 + s + s ** 2
    eq = S.EquationId("chi-star-k", 2)
    assert S.path_sum(eq, 2, "dyck") == S.path_sum(eq, 2, "schroeder-b")
    with pytest.raises(ValueError):
        S.path_sum("alpha(2)", 2)
    with pytest.raises(ValueError):
        S.path_sum(eq, 2, "motzkin")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_schb_duality(k):
    eq = S.EquationId("chi-star-k", k)
    for n in range(6):
        assert S.path_sum(eq, n, "dyck") == S.path_sum(eq, n, "schroeder-b")


def test_wt_star_examples():
    # lowest path: k = 2, every prime UDD has lambda_1 empty
    assert S.wt_star("UDDUDD", 2) == (m1 + q * S.F3) ** 2
    # U (UDD) D D: lambda_1 = UDD nonempty, q^{k|lambda_1|} = q^2
    assert S.wt_star("UUDDDD", 2) == q * S.F3 * q ** 2 * (m1 + q * S.F3)


def test_alpha_goldens():
    golden = {
        2: [2, 10, 70, 566, 4970, 46050, 443134, 4385790],
        3: [2, 14, 142, 1674, 21498],
        4: [2, 18, 238, 3670],
    }
    for k, seq in golden.items():
        vals = S.specialize(f"alpha({k})", len(seq), m=2, s=1, u=1)
        assert vals[1:] == seq
        assert [CF.alpha_coeff(n, k) for n in range(1, len(seq) + 1)] == seq


def test_xi_special():
    for k in (1, 2, 3):
        vals = S.specialize(f"xi({k})", 6, m=2, s=1, u=2)
        assert vals == [CF.xi_special(n, k) for n in range(7)]
    assert S.specialize("xi(1)", 7, m=2, s=1, u=2) == [4 ** n * CF.catalan(n) for n in range(8)]


def test_zeta_tree_experiment():
    z = S.zeta_polynomials(4)
    for n in range(4):
        assert S.zeta_tree_sum(n) == z[n]
    assert S.zeta_tree_sum(4) != z[4]


def test_scaled_coeffs_are_polynomials_in_m_prime():
    mp = MultiPoly.var("m")
    for k in (1, 2):
        for c in S.solve(f"chi-star-k({k})", 5).coeffs:
            shifted = c.eval(m=mp + 1, u=MultiPoly.var("u") + 1)
            assert all(isinstance(v, int) for v in shifted.terms.values())


def test_non_triangular_guard(monkeypatch):
    def bad(eq, x):
        return x * 2 - RSeries.constant(x.var, x.order)

    monkeypatch.setattr(S, "residual", bad)
    S.solve.cache_clear()
    with pytest.raises(S.NonTriangular):
        S.solve("chi", 1)
    monkeypatch.undo()
    S.solve.cache_clear()
