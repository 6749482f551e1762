from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ccczagreb.group import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    StructureTag,
    abelian_invariants,
    all_subgroups,
    center,
    centralizer,
    commuting_probability,
    conjugacy_data,
    cyclic_group,
    direct_product,
    distinct_centralizer_count,
    element_orders,
    frobenius_decomposition,
    generated_subgroup,
    is_abelian,
    quotient_by_center,
    recognize_structure,
    trivial_group,
)

from conftest import group, small_corpus

CORPUS = small_corpus(64)


def naive_classes(G: FiniteGroup) -> set[frozenset[int]]:
    n, mul, inv = G.order, G.mul.tolist(), G.inv.tolist()
    return {frozenset(mul[mul[g][x]][inv[g]] for g in range(n)) for x in range(n)}


def naive_center(G: FiniteGroup) -> set[int]:
    mul = G.mul.tolist()
    return {z for z in range(G.order) if all(mul[z][g] == mul[g][z] for g in range(G.order))}


@pytest.mark.parametrize("sel", CORPUS)
def test_classes_match_naive_orbits(sel):
    G = group(sel)
    data = conjugacy_data(G)
    assert {frozenset(c.members) for c in data.classes} == naive_classes(G)
    assert set(data.center) == naive_center(G) == set(center(G))
    # class equation
    assert sum(data.class_sizes) == G.order
    assert all(G.order % s == 0 for s in data.class_sizes)


@pytest.mark.parametrize("sel", CORPUS)
def test_commuting_probability_counts_pairs(sel):
    G = group(sel)
    mul = G.mul.tolist()
    pairs = sum(mul[x][y] == mul[y][x] for x in range(G.order) for y in range(G.order))
    assert commuting_probability(G) == Fraction(pairs, G.order**2)
    assert commuting_probability(G) == Fraction(len(conjugacy_data(G).classes), G.order)


@pytest.mark.parametrize("sel", CORPUS[::3])
def test_centralizer_count_against_sets(sel):
    G = group(sel)
    mul = G.mul.tolist()
    cents = {frozenset(y for y in range(G.order) if mul[x][y] == mul[y][x]) for x in range(G.order)}
    assert distinct_centralizer_count(G) == len(cents)
    for x in range(0, G.order, 5):
        assert set(centralizer(G, x)) == {y for y in range(G.order) if mul[x][y] == mul[y][x]}


def test_desk_values():
    D8, D6 = group("dihedral:4"), group("dihedral:3")
    assert commuting_probability(D8) == Fraction(5, 8)
    assert commuting_probability(D6) == Fraction(1, 2)
    assert distinct_centralizer_count(D8) == 4
    assert distinct_centralizer_count(D6) == 5
    assert recognize_structure(quotient_by_center(D8)) == StructureTag("elementary-abelian", (2, 2))
    assert recognize_structure(quotient_by_center(D6)) == StructureTag("dihedral", (3,))
    assert recognize_structure(group("dicyclic:2")) == StructureTag("other")


@pytest.mark.parametrize("sel", ["dihedral:12", "dicyclic:6", "semidihedral:4", "heisenberg:3", "product:a4;2"])
def test_quotient_by_center_is_a_group_of_right_order(sel):
    G = group(sel)
    Q = quotient_by_center(G)
    assert Q.order * len(center(G)) == G.order
    FiniteGroup.from_table("check", Q.mul)


def test_direct_product_orders_and_center():
    G = direct_product(group("dihedral:4"), cyclic_group(3))
    assert G.order == 24
    assert len(center(G)) == 6
    FiniteGroup.from_table("check", G.mul)


@pytest.mark.parametrize(
    "factors, expected",
    [((2, 4), [2, 4]), ((2, 3), [6]), ((2, 2, 2), [2, 2, 2]), ((4, 6), [2, 12]), ((9,), [9]), ((3, 3), [3, 3])],
)
def test_abelian_invariants(factors, expected):
    G = trivial_group()
    for c in factors:
        G = direct_product(G, cyclic_group(c))
    assert abelian_invariants(G) == expected


def test_recognize_dihedral_and_cyclic():
    for m in range(3, 13):
        assert recognize_structure(group(f"dihedral:{m}")) == StructureTag("dihedral", (m,))
    assert recognize_structure(cyclic_group(12)) == StructureTag("cyclic", (12,))
    assert str(recognize_structure(group("dihedral:6"))) == "D12"


def test_frobenius_detection():
    assert frobenius_decomposition(group("frobenius:7,3")) == (7, 3)
    assert frobenius_decomposition(group("a4")) == (4, 3)
    assert frobenius_decomposition(group("dihedral:5")) == (5, 2)
    assert frobenius_decomposition(group("f20style:5,4")) == (5, 4)
    assert frobenius_decomposition(group("gendihedral:3")) == (9, 2)
    # nontrivial centre or even dihedral: not Frobenius
    assert frobenius_decomposition(group("dihedral:4")) is None
    assert frobenius_decomposition(group("dihedral:6")) is None
    assert frobenius_decomposition(cyclic_group(15)) is None


def test_subgroup_budget_is_enforced():
    with pytest.raises(CapExceeded):
        all_subgroups(group("product:a4;4"), budget=3)


def test_subgroups_of_s3():
    subs = all_subgroups(group("dihedral:3"))
    assert sorted(len(H) for H in subs) == [1, 2, 2, 2, 3, 6]


@pytest.mark.parametrize(
    "table, msg",
    [
        ([[0, 1], [1, 1]], "Latin|inverse|identity"),
        ([[1, 1], [1, 1]], "identity"),
        ([[0, 1, 2], [1, 2, 0]], "square"),
    ],
)
def test_from_table_rejects_non_groups(table, msg):
    with pytest.raises(GroupError, match=msg):
        FiniteGroup.from_table("bad", table)


def test_from_table_rejects_non_associative_latin_square():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associativ"):
        FiniteGroup.from_table("loop", t)


def test_generators_must_generate():
    with pytest.raises(GroupError, match="generate"):
        FiniteGroup.from_table("Z4", cyclic_group(4).mul, generators=[2])


def test_json_round_trip():
    G = group("semidihedral:3")
    H = FiniteGroup.from_json(G.to_json())
    assert np.array_equal(G.mul, H.mul) and H.generators == G.generators and H.name == G.name
    assert G.to_json() == H.to_json()


def test_table_is_read_only():
    G = group("dihedral:4")
    with pytest.raises(ValueError):
        G.mul[0, 0] = 1


@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_abelian_products_have_full_centre(cs):
    G = trivial_group()
    for c in cs:
        G = direct_product(G, cyclic_group(c))
    assert is_abelian(G)
    assert len(conjugacy_data(G).classes) == G.order
    assert int(np.prod(abelian_invariants(G) or [1])) == G.order


@given(st.sampled_from(CORPUS), st.data())
def test_element_orders_match_powers(sel, data):
    G = group(sel)
    x = data.draw(st.integers(0, G.order - 1))
    k, y = 1, x
    while y != G.identity:
        y = int(G.mul[y, x])
        k += 1
    assert element_orders(G)[x] == k
    assert len(generated_subgroup(G, [x])) == k


@given(st.sampled_from(CORPUS), st.data())
def test_lagrange_for_generated_subgroups(sel, data):
    G = group(sel)
    gens = data.draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    H = generated_subgroup(G, gens)
    assert G.order % len(H) == 0
    Hs = set(H)
    assert all(int(G.mul[a, b]) in Hs for a, b in itertools.product(H, H))
