import pytest
import sympy as sp

from latpath import dimers as D
from latpath import recurrences as R
from latpath.polyring import RSeries, m, m1, parse_poly, q, s, u
from oracles import dimer_gf, glued_gf, r, rseries_to_sympy

S_ = sp.Symbol("s")
U_ = sp.Symbol("u")


def test_enum_configs_small():
    cfgs = D.enum_configs(1, "standard", 1)
    assert len(cfgs) == 2
    assert [c.positions() for c in cfgs] == [[], [1]]
    assert len(D.enum_configs(2, "standard", 2)) == 7


def test_enum_configs_gap_excludes_close_components():
    pos = [tuple(c.positions()) for c in D.enum_configs(3, "component-gap(2)", 1)]
    assert (1, 3) not in pos
    assert pos == [(), (1,), (2,), (3,)]


def test_config_json():
    cfg = D.enum_configs(3, "standard", 2)[-1]
    d = cfg.as_dict()
    assert set(d) == {"n", "regime", "components"}
    assert all(set(c) == {"start", "colors"} for c in d["components"])


def test_regime_parsing():
    assert str(D.parse_regime("glued(3)")) == "glued(3)"
    for bad in ("glued", "standard(2)", "component-gap(0)", "nope"):
        with pytest.raises(ValueError):
            D.parse_regime(bad)


def test_brute_gf_goldens():
    g3 = parse_poly("1")
    assert D.brute_gf(3) == RSeries("r", [
        g3,
        m * u * (s + s ** 2 + s ** 3),
        m * m1 * u * (s ** 3 + s ** 5) + m ** 2 * u ** 2 * s ** 4,
        m * m1 ** 2 * u * s ** 6,
    ])
    assert D.brute_gf(2, "same-color-dist2") == RSeries("r", [1, m * s + m * s ** 2, m * m1 * s ** 3])
    assert D.brute_gf(1, weighting="empty-dimer") == RSeries("p", [m * u, q])


def test_brute_gf_matches_word_oracle():
    # values frozen from the word enumerator in tests/oracles.py
    gap = D.brute_gf(3, "component-gap(2)").eval(m=1)
    assert rseries_to_sympy(gap) == sp.expand(1 + r * U_ * (S_ + S_ ** 2 + S_ ** 3))
    glued = D.brute_gf(4, "glued(2)").eval(m=2)
    assert rseries_to_sympy(glued) == sp.expand(
        1 + 2 * r * U_ * (S_ + S_ ** 2 + S_ ** 3 + S_ ** 4)
        + 2 * r ** 2 * U_ * (S_ ** 4 + S_ ** 6) + 4 * r ** 2 * U_ ** 2 * S_ ** 5
    )


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("M", [1, 2, 3])
def test_brute_gf_against_words(n, M):
    assert rseries_to_sympy(D.brute_gf(n).eval(m=M)) == dimer_gf(n, M)
    assert rseries_to_sympy(D.brute_gf(n, "same-color-dist2").eval(m=M)) == dimer_gf(n, M, "dist2")
    for g in (2, 3):
        assert rseries_to_sympy(D.brute_gf(n, f"component-gap({g})").eval(m=M)) == dimer_gf(n, M, "gap", g)
    for k in (2, 3):
        assert rseries_to_sympy(D.brute_gf(n, f"glued({k})").eval(m=M)) == glued_gf(n, M, k)


def test_explicit_configs_match_symbolic_count():
    for regime in ("standard", "same-color-dist2", "component-gap(2)", "glued(2)"):
        for n in range(5):
            for M in (1, 2, 3):
                total = RSeries.zero("r", n)
                for cfg in D.enum_configs(n, regime, M):
                    i, c = D.config_weight(cfg)
                    total = total + RSeries.term("r", n, i, c)
                assert total == D.brute_gf(n, regime).eval(m=M)


def test_interpolation_node_independence():
    for n in range(9):
        a = D.brute_gf(n, "same-color-dist2")
        b = D.brute_gf(n, "same-color-dist2", nodes=range(2, n + 3))
        assert a == b


def test_interpolation():
    assert D.interpolate_int_poly([(1, 1), (2, 4), (3, 9)]) == [0, 0, 1]
    with pytest.raises(ArithmeticError):
        D.interpolate_int_poly([(0, 0), (2, 1)])


def test_split_examples():
    e, c = D.split_gf(2)
    assert e == RSeries("r", [1, m * u * s ** 2, 0])
    assert c * m == RSeries("r", [0, m * u * s, m * m1 * u * s ** 3])
    for regime in ("standard", "same-color-dist2", "glued(2)", "component-gap(2)"):
        e0, c0 = D.split_gf(0, regime)
        assert e0 == RSeries.constant("r", 0) and c0.is_zero()


@pytest.mark.parametrize("regime", ["standard", "same-color-dist2", "component-gap(2)", "glued(2)"])
def test_split_sums_to_gf(regime):
    for n in range(8):
        e, c = D.split_gf(n, regime)
        assert e + c * m == D.brute_gf(n, regime)


def test_split_lemma_identities():
    for n in range(1, 9):
        e, c = D.split_gf(n)
        prev = D.brute_gf(n - 1).pad(n)
        assert e == prev.shift(1)
        pe, pc = D.split_gf(n - 1)
        rhs = pe.pad(n).shift(1).times_var(1) * (s * u) + pc.pad(n).shift(1).times_var(1) * (m1 * s)
        assert c == rhs


def test_brute_gf_satisfies_fibonacci():
    for n in range(9):
        assert D.brute_gf(n) == R.compute_G("fibonacci", n).pad(n)


def test_regime_reductions():
    for n in range(9):
        std = D.brute_gf(n)
        assert D.brute_gf(n, "glued(1)") == std
        assert D.brute_gf(n, "component-gap(1)") == std


def test_r_degree_bounded():
    for regime in ("standard", "glued(3)", "component-gap(2)"):
        assert D.brute_gf(5, regime).order == 5
