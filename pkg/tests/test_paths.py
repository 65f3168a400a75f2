from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from latpath import closedforms as CF
from latpath import paths as P
from latpath.paths import KAryTree, LatticePath


def words(family, n, k=1):
    return [p.word for p in P.enum_paths(family, n, k)]


def test_dyck_2_2_listing():
    assert sorted(words("dyck", 2, 2)) == ["UDDUDD", "UDUDDD", "UUDDDD"]


def test_schroeder_b_2_2():
    ws = words("schroeder-b", 2, 2)
    assert len(ws) == 10
    assert "HDHD" in ws and "UHDDD" in ws


def test_motzkin_listings():
    ws = words("motzkin", 5, 2)
    assert len(ws) == 11
    assert "HHHHH" in ws and "HHUDD" in ws
    assert sorted(words("motzkin", 3, 1)) == sorted(["HHH", "UDH", "UHD", "HUD"])


def test_schroeder_a_count():
    assert len(words("schroeder-a", 2, 2)) == 8


def test_size_zero_is_empty_path():
    for fam in ("dyck", "motzkin", "schroeder-a", "schroeder-b"):
        assert words(fam, 0, 2) == [""]


def test_rejects_bad_k():
    with pytest.raises(ValueError):
        P.enum_paths("dyck", 2, 0)


def test_declared_letter_order():
    # U < D < H, and u < U < d for the a-family
    assert words("dyck", 2, 2) == ["UUDDDD", "UDUDDD", "UDDUDD"]
    ws = words("schroeder-b", 2, 2)
    assert ws == sorted(ws, key=lambda w: ["UDH".index(c) for c in w])
    aw = [p.word for p in P.enum_A_paths(3, 2, 1)]
    assert aw == sorted(aw, key=lambda w: ["uUd".index(c) for c in w])


@pytest.mark.parametrize("family", ["dyck", "motzkin", "schroeder-a", "schroeder-b"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_enumeration_valid_and_strictly_ordered(family, k):
    order = {c: i for i, c in enumerate(P.LETTERS[family] if family in P.LETTERS else "UDH")}
    for n in range(5):
        ps = P.enum_paths(family, n, k)
        for p in ps:
            assert P.is_valid(p)
        keys = [[order[c] for c in p.word] for p in ps]
        assert all(a < b for a, b in zip(keys, keys[1:]))


def test_invalid_words_rejected():
    with pytest.raises(P.InvalidPath):
        P.validate(LatticePath("dyck", 2, "DUD"))
    with pytest.raises(P.InvalidPath):
        P.validate(LatticePath("dyck", 2, "UDD" + "U"))
    with pytest.raises(P.InvalidPath):
        P.path_stats(LatticePath("motzkin", 1, "DU"))


def test_stats_examples():
    st_ = P.path_stats(LatticePath("schroeder-b", 2, "UHDDD"))
    assert st_.area2 == 5
    assert st_.d_stat == 3
    for k in (1, 2, 3):
        for n in (1, 2, 3):
            low = LatticePath("dyck", k, ("U" + "D" * k) * n)
            s = P.path_stats(low)
            assert s.area2 == 0 and s.peaks_k == n
    assert P.path_stats(LatticePath("dyck", 2, "UDUDDD")).val2_k == 1
    assert P.path_stats(LatticePath("dyck", 2, "UDDUDD")).val2_k == 0


def test_empty_path_stats():
    s = P.path_stats(LatticePath("schroeder-b", 2, ""))
    assert s.as_dict() == {
        "size": 0, "area2": 0, "peaks": 0, "peaks_k": 0, "valleys": 0, "val2_k": 0, "n_h": 0, "n_u": 0
    }
    assert s.d_stat is None


def test_dyck_2_2_areas():
    areas = sorted(P.area(p) for p in P.enum_paths("dyck", 2, 2))
    assert areas == [0, 1, 2]


@pytest.mark.parametrize("family", ["dyck", "motzkin", "schroeder-a", "schroeder-b"])
def test_stat_invariants(family):
    for k in (1, 2, 3):
        for n in range(6):
            for p in P.enum_paths(family, n, k):
                s = P.path_stats(p)
                # an H=(k,1) step under U D^k encloses k/2, so Sch^A is even only for even k
                if family in ("dyck", "motzkin") or (family == "schroeder-a" and k % 2 == 0):
                    assert s.area2 % 2 == 0
                assert s.area2 >= 0
                assert 0 <= s.peaks_k <= s.peaks
                assert 0 <= s.val2_k <= s.valleys
                if family == "dyck" and k == 1 and n:
                    assert s.valleys == s.peaks - 1
                if family == "schroeder-b" and n:
                    assert isinstance(s.d_stat, int) and s.d_stat >= 0


def test_schroeder_a_half_area_for_odd_k():
    assert P.path_stats(LatticePath("schroeder-a", 1, "UD")).area2 == 1
    assert P.path_stats(LatticePath("schroeder-a", 3, "UDDD")).area2 == 3


def test_odd_area_exists_for_schroeder_b():
    assert any(P.path_stats(p).area2 % 2 for p in P.enum_paths("schroeder-b", 2, 2))
    with pytest.raises(ValueError):
        P.area(LatticePath("schroeder-b", 2, "UHDDD"))


def test_fuss_catalan_counts():
    for k in range(1, 5):
        for n in range(8 if k <= 2 else 6):
            assert len(P.enum_paths("dyck", n, k)) == CF.fuss_catalan(n, k)
    assert len(P.enum_paths("dyck", 4, 2)) == 55


def test_narayana_symmetry():
    for n in range(1, 10):
        c = Counter(P.count_peaks(p.word) for p in P.enum_paths("dyck", n, 1))
        for j in range(1, n + 1):
            assert c[j] == c[n + 1 - j]


def test_lift_preimages():
    for k in (1, 2, 3):
        for n in range(1, 5):
            by_lift = Counter(P.schb_lift(p).word for p in P.enum_paths("schroeder-b", n, k))
            for d in P.enum_paths("dyck", n, k):
                assert by_lift[d.word] == 2 ** P.count_peaks(d.word)


def test_lift_examples():
    assert P.schb_lift(LatticePath("schroeder-b", 2, "HDHD")).word == "UDDUDD"
    assert P.schb_lift(LatticePath("schroeder-b", 2, "UHDDD")).word == "UUDDDD"
    assert P.schb_lift(LatticePath("schroeder-b", 2, "UUDDDD")).word == "UUDDDD"
    for p in P.enum_paths("schroeder-b", 3, 2):
        lifted = P.schb_lift(p)
        assert P.is_valid(lifted) and lifted.size == p.size


def test_prime_decomposition_examples():
    f = P.prime_decompose(LatticePath("dyck", 2, "UDDUDD"))
    assert [x.word for x in f] == ["UDD", "UDD"]
    assert [x.word for x in P.prime_decompose(LatticePath("dyck", 2, "UDUDDD"))] == ["UDUDDD"]
    assert P.prime_decompose(LatticePath("dyck", 2, "")) == []
    assert not P.is_prime(LatticePath("dyck", 2, "UDUDDUDDDUDD"))


def test_prime_decomposition_round_trip():
    for k in (1, 2, 3):
        for n in range(6):
            for p in P.enum_paths("dyck", n, k):
                fs = P.prime_decompose(p)
                assert "".join(f.word for f in fs) == p.word
                assert all(P.is_prime(f) for f in fs)


LEAF = KAryTree((None, None, None))


def test_tree_of_figure():
    t = P.dyck_to_tree(LatticePath("dyck", 2, "UDUDDUDDDUDD"))
    assert t == KAryTree((None, KAryTree((None, None, LEAF)), LEAF))
    assert P.tree_to_dyck(t, 2).word == "UDUDDUDDDUDD"


def test_lowest_path_is_right_comb():
    t = P.dyck_to_tree(LatticePath("dyck", 2, "UDD" * 3))
    assert t == KAryTree((None, None, KAryTree((None, None, LEAF))))


def test_bijection_round_trip():
    for k in (1, 2, 3):
        for n in range(6):
            seen = set()
            for p in P.enum_paths("dyck", n, k):
                t = P.dyck_to_tree(p)
                assert P.tree_size(t) == n
                assert P.tree_to_dyck(t, k) == p
                seen.add(t)
            assert len(seen) == CF.fuss_catalan(n, k)


def test_tree_statistic():
    assert P.tree_statistic_NT(LEAF) == 1
    assert P.tree_statistic_NT(P.dyck_to_tree(LatticePath("dyck", 2, "UDDUDD"))) == 2
    with pytest.raises(ValueError):
        P.tree_statistic_NT(None)
    for n in range(1, 6):
        for p in P.enum_paths("dyck", n, 2):
            assert 1 <= P.tree_statistic_NT(P.dyck_to_tree(p)) <= n


def trees(k, depth):
    if depth == 0:
        return st.none()
    sub = trees(k, depth - 1)
    return st.one_of(st.none(), st.tuples(*[sub] * (k + 1)).map(KAryTree))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(st.just(k), trees(k, 4))))
def test_tree_round_trip_property(kt):
    k, t = kt
    p = P.tree_to_dyck(t, k)
    assert P.is_valid(p)
    assert P.dyck_to_tree(p) == t


def test_a_family():
    assert [len(P.enum_A_paths(2, 2, j)) for j in range(2)] == [3, 1]
    ws = [p.word for p in P.enum_A_paths(3, 2, 0)]
    assert len(ws) == 12 and all(set(w) <= {"U", "d"} for w in ws)
    for n in range(1, 5):
        for k in (1, 2, 3):
            assert len(P.enum_A_paths(n, k, n - 1)) == 1
            for p in P.enum_A_paths(n, k, 1):
                assert "ud" not in p.word


def test_json_record():
    rec = P.to_record(LatticePath("schroeder-b", 2, "UHDDD"))
    assert rec["word"] == "UHDDD" and rec["stats"]["area2"] == 5 and rec["stats"]["d_stat"] == 3
