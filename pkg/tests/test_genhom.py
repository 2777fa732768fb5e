from math import comb

import pytest

from oracles import kernel_brute
from weylhom.errors import ParameterError, UnsupportedRegime
from weylhom.genhom import (
    generator_hset,
    generator_vector,
    predicted_dimension,
    spans_kernel,
    verify_instance,
)
from weylhom.reduced import Variant
from weylhom.relsys import build_relation_system
from weylhom.tabcomb import FamilyInstance


@pytest.mark.parametrize(
    "a,b,d,p,want",
    [(8, 4, 3, 2, 1), (9, 4, 3, 2, 0), (8, 4, 3, 3, 0), (6, 3, 2, 2, 1), (7, 7, 2, 5, 0)],
)
def test_predicted_dimension(a, b, d, p, want):
    assert predicted_dimension(FamilyInstance(a, b, d, p)) == want


def test_outside_family():
    with pytest.raises(UnsupportedRegime):
        FamilyInstance(5, 1, 3, 2)
    with pytest.raises(UnsupportedRegime):
        FamilyInstance(5, 3, 1, 2)


@pytest.mark.parametrize("a,b,d,p", [(8, 4, 3, 3), (9, 4, 3, 2)])
def test_generator_needs_p2_even_a(a, b, d, p):
    with pytest.raises(ParameterError):
        generator_hset(FamilyInstance(a, b, d, p))


def second_rows(vec):
    return {k.second_row for k in vec.support()}


@pytest.mark.parametrize("a,b", [(a, b) for b in (3, 5, 7) for a in range(b + 1, 24, 2)])
def test_d2_branches(a, b):
    inst = FamilyInstance(a, b, 2, 2)
    support = second_rows(generator_vector(inst))
    t1 = (0, b - 2, 1, 1)
    everything = {(0, b, 0, 0), (0, b - 1, 0, 1), (0, b - 1, 1, 0), t1}
    assert support == (everything if comb(a - b + 4, 2) % 2 else {t1})


@pytest.mark.parametrize("a,b,d", [(10, 4, 5), (12, 6, 6), (10, 5, 4), (14, 3, 7), (6, 6, 3)])
def test_support_size(a, b, d):
    inst = FamilyInstance(a, b, d, 2)
    h = generator_hset(inst)
    vec = generator_vector(inst)
    assert len(vec.support()) == sum(comb(d, s) for s in h.slices())
    assert all(vec[k] == 1 for k in vec.support())


@pytest.mark.parametrize("a,b,d", [(8, 4, 6), (10, 6, 7), (12, 8, 8), (20, 8, 5)])
def test_even_even_uses_odd_slices(a, b, d):
    inst = FamilyInstance(a, b, d, 2)
    h = generator_hset(inst)
    assert h.variant is Variant.EVEN_EVEN
    assert all(s % 2 == 1 for s in h.slices())
    assert all((b - k.b2) % 2 == 1 for k in generator_vector(inst).support())


def test_l_zero_fallback():
    # a, b even with min(b, d) = 2: one odd slice, left unconstrained
    inst = FamilyInstance(6, 4, 2, 2)
    h = generator_hset(inst)
    assert h.members == (0,) and h.slices() == (1,)
    assert verify_instance(inst).verified


def test_k_zero():
    # a = b even: k = 0 is a 2-complement only of the targets 2^m - 1
    inst = FamilyInstance(6, 6, 6, 2)
    rep = verify_instance(inst)
    assert rep.verified and rep.computed_dim == 1
    assert rep.hset.seed == 1


@pytest.mark.parametrize(
    "a,b,d,p,dim",
    [(6, 3, 2, 2, 1), (6, 4, 4, 2, 1), (5, 5, 5, 2, 0), (6, 3, 3, 3, 0), (8, 5, 4, 2, 1)],
)
def test_verify_instance(a, b, d, p, dim):
    rep = verify_instance(FamilyInstance(a, b, d, p))
    assert rep.verified
    assert rep.computed_dim == rep.predicted_dim == dim
    rec = rep.to_record(with_support=True)
    assert rec["match"] and rec["verified"]
    assert ("support" in rec) == (dim == 1)


@pytest.mark.parametrize("a,b,d", [(6, 3, 2), (8, 4, 3), (6, 5, 3)])
def test_generator_matches_brute_kernel(a, b, d):
    inst = FamilyInstance(a, b, d, 2)
    system = build_relation_system(inst)
    brute = kernel_brute(system.rows, system.width, 2)
    gen = tuple(generator_vector(inst).to_list(system.columns))
    assert brute == [(0,) * system.width, gen]


def test_spans_kernel_rejects_wrong_vector():
    inst = FamilyInstance(8, 4, 3, 2)
    system = build_relation_system(inst)
    good = generator_vector(inst).to_list(system.columns)
    assert spans_kernel(system, good)
    wrong = [1] * system.width
    assert wrong != good
    assert not spans_kernel(system, wrong)
    assert not spans_kernel(system, [0] * system.width)


def test_zero_dimension_has_empty_kernel():
    system = build_relation_system(FamilyInstance(7, 4, 3, 2))
    assert spans_kernel(system, [0] * system.width)
