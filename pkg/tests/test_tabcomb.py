from math import comb

import pytest
from hypothesis import given, strategies as st

from oracles import sst_brute
from weylhom.errors import ParameterError, UnsupportedRegime
from weylhom.tabcomb import (
    FamilyInstance,
    Shuffle,
    TableauKey,
    check_key,
    enumerate_weight_lambda_sst,
    enumerate_weight_sst,
    format_key,
    index_to_key,
    key_to_index,
    parse_key,
    shifted_weight,
    shuffles,
    tableau_from_shuffle,
)

instances = st.builds(
    lambda b, extra, d, p: FamilyInstance(b + extra, b, d, p),
    st.integers(2, 7), st.integers(0, 6), st.integers(2, 6), st.sampled_from([2, 3, 5]),
)


class TestFamilyInstance:
    def test_derived(self):
        inst = FamilyInstance(8, 4, 3, 2)
        assert inst.lam == (8, 4, 1, 1, 1)
        assert inst.mu == (11, 4)
        assert inst.r == 15
        assert inst.k == 2
        assert inst.min_bd == 3
        assert inst.l == 1  # odd integers 1, 3 in [1, 3]
        assert inst.lprime == 3
        assert FamilyInstance(9, 4, 3, 2).gamma == 5

    def test_l_counts_odd_integers(self):
        for b in range(2, 12):
            for d in range(2, 12):
                inst = FamilyInstance(b, b, d, 2)
                odd = [x for x in range(1, min(b, d) + 1) if x % 2]
                assert inst.l == len(odd) - 1

    @pytest.mark.parametrize("a,b,d,p", [(3, 4, 2, 2), (5, 3, 2, 4), (5, 3, -1, 2), (5.0, 3, 2, 2)])
    def test_invalid(self, a, b, d, p):
        with pytest.raises(ParameterError):
            FamilyInstance(a, b, d, p)

    @pytest.mark.parametrize("a,b,d", [(5, 1, 3), (5, 3, 1)])
    def test_unsupported(self, a, b, d):
        with pytest.raises(UnsupportedRegime):
            FamilyInstance(a, b, d, 2)

    def test_k_needs_even_difference(self):
        with pytest.raises(ParameterError):
            FamilyInstance(6, 3, 2, 2).k


class TestEnumeration:
    def test_d2_labels(self):
        a, b = 7, 4
        keys = enumerate_weight_lambda_sst(FamilyInstance(a, b, 2, 2))
        t1 = parse_key(f"1^({a}) 2^(2)/2^({b - 2}) 3 4", 4)
        t2 = parse_key(f"1^({a}) 3 4/2^({b})", 4)
        t3 = parse_key(f"1^({a}) 2 4/2^({b - 1}) 3", 4)
        t4 = parse_key(f"1^({a}) 2 3/2^({b - 1}) 4", 4)
        assert keys == [t2, t4, t3, t1]

    @pytest.mark.parametrize("b,d,count", [(2, 2, 4), (5, 3, 8), (3, 5, 1 + 5 + 10 + 10), (8, 8, 256)])
    def test_counts(self, b, d, count):
        assert len(enumerate_weight_lambda_sst(FamilyInstance(b + 1, b, d, 2))) == count

    @given(instances)
    def test_count_formula_and_order(self, inst):
        keys = enumerate_weight_lambda_sst(inst)
        assert len(keys) == sum(comb(inst.d, h) for h in range(inst.min_bd + 1))
        order = [(-k.b2, k.tail) for k in keys]
        assert order == sorted(order) and len(set(keys)) == len(keys)
        for key in keys:
            check_key(inst, key, inst.lam)

    @given(instances, st.data())
    def test_weight_sst_matches_brute(self, inst, data):
        if inst.d > 4:
            return
        labels = [(1, t) for t in range(1, inst.b + 1)] + [(i, 1) for i in range(2, inst.d + 2)]
        i, t = data.draw(st.sampled_from(labels))
        w = shifted_weight(inst, i, t)
        got = {(k.first_row, k.second_row) for k in enumerate_weight_sst(inst, w)}
        assert got == sst_brute(inst.a, inst.b, inst.d, w)

    def test_lambda_matches_brute(self):
        for b in range(2, 6):
            for d in range(2, 5):
                inst = FamilyInstance(b + 2, b, d, 2)
                got = {(k.first_row, k.second_row) for k in enumerate_weight_lambda_sst(inst)}
                assert got == sst_brute(inst.a, inst.b, inst.d, inst.lam)

    def test_lambda11_d2_has_three(self):
        inst = FamilyInstance(7, 4, 2, 2)
        assert len(enumerate_weight_sst(inst, shifted_weight(inst, 1, 1))) == 3

    def test_weight_validation(self):
        inst = FamilyInstance(5, 3, 2, 2)
        with pytest.raises(ParameterError):
            enumerate_weight_sst(inst, (6, 4, -1, 1))
        with pytest.raises(ParameterError):
            enumerate_weight_sst(inst, (5, 3, 1))
        with pytest.raises(ParameterError):
            enumerate_weight_sst(inst, (5, 3, 1, 2))
        assert enumerate_weight_sst(inst, inst.lam) == enumerate_weight_lambda_sst(inst)

    def test_index_roundtrip(self):
        inst = FamilyInstance(6, 4, 5, 3)
        keys = enumerate_weight_lambda_sst(inst)
        for i, key in enumerate(keys):
            assert index_to_key(inst, i) == key
            assert key_to_index(inst, key) == i
        with pytest.raises(ParameterError):
            index_to_key(inst, len(keys))
        with pytest.raises(ParameterError):
            key_to_index(inst, TableauKey((1,) * 7, (0,) * 7))


class TestShuffles:
    def test_counts(self):
        assert len(shuffles(1, 2)) == 3
        assert len(shuffles(2, 2)) == 6
        assert [s.image for s in shuffles(0, 5)] == [(1, 2, 3, 4, 5)]
        assert [s.image for s in shuffles(5, 0)] == [(1, 2, 3, 4, 5)]

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_binomial_count(self, s, t):
        if s + t == 0:
            with pytest.raises(ParameterError):
                shuffles(s, t)
            return
        out = shuffles(s, t)
        assert len(out) == comb(s + t, s) == len({x.image for x in out})

    def test_invalid_shuffle(self):
        with pytest.raises(ParameterError):
            Shuffle((2, 1, 3), 2)
        with pytest.raises(ParameterError):
            Shuffle((1, 1, 3), 1)

    def test_distinguished_tableaux(self):
        a, b, d = 9, 6, 4
        inst = FamilyInstance(a, b, d, 2)
        top = tableau_from_shuffle(inst, d, shuffles(0, d)[0])
        assert top == TableauKey((a, d, 0, 0, 0, 0), (0, b - d, 1, 1, 1, 1))
        bottom = tableau_from_shuffle(inst, 0, shuffles(d, 0)[0])
        assert bottom == TableauKey((a, 0, 1, 1, 1, 1), (0, b, 0, 0, 0, 0))
        small = FamilyInstance(7, 5, 2, 2)
        assert format_key(tableau_from_shuffle(small, 2, shuffles(0, 2)[0])) == "1^(7) 2^(2)/2^(3) 3 4"

    @given(instances)
    def test_bijection(self, inst):
        d = inst.d
        hit = [tableau_from_shuffle(inst, h, s) for h in range(inst.min_bd + 1) for s in shuffles(d - h, h)]
        assert sorted(hit, key=lambda k: (-k.b2, k.tail)) == enumerate_weight_lambda_sst(inst)

    def test_h_out_of_range(self):
        inst = FamilyInstance(5, 3, 4, 2)
        with pytest.raises(ParameterError):
            tableau_from_shuffle(inst, 4, shuffles(0, 4)[0])
        with pytest.raises(ParameterError):
            tableau_from_shuffle(inst, 1, shuffles(2, 2)[0])


def test_format_parse_roundtrip():
    inst = FamilyInstance(6, 4, 4, 2)
    for key in enumerate_weight_lambda_sst(inst):
        assert parse_key(format_key(key), inst.letters) == key
    with pytest.raises(ParameterError):
        parse_key("1 2 3", 4)
    with pytest.raises(ParameterError):
        parse_key("1^(2) 9/2", 4)


def test_check_key_rejects():
    inst = FamilyInstance(5, 3, 2, 2)
    with pytest.raises(ParameterError):
        check_key(inst, TableauKey((5, 1, 1, 0), (1, 2, 0, 1)))
    with pytest.raises(ParameterError):
        check_key(inst, TableauKey((6, 0, 1, 0), (0, 3, 0, 0)), inst.lam)
