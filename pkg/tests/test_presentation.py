from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, strategies as st

from ccczagreb.group import center, conjugacy_data, is_abelian, recognize_structure
from ccczagreb.presentation import (
    LimitExceeded,
    Presentation,
    PresentationError,
    commutator,
    coset_enumerate,
    default_coset_limit,
    evaluate_word,
    free_reduce,
    invert,
    parse_presentation,
    power,
)

words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12).map(tuple)


def test_parse_basic_forms():
    P = parse_presentation("a, b | a^4, b^2, (ab)^2")
    assert P.generators == ("a", "b")
    assert P.relators == ((1, 1, 1, 1), (2, 2), (1, 2, 1, 2))
    # an equation l = r becomes l r^-1; juxtaposed letters keep their own exponents
    Q = parse_presentation("a,b | b a b^-1 = a^-1")
    assert Q.relators == ((2, 1, -2, 1),)
    R = parse_presentation("x, y | [x,y], x^3, y^-2")
    assert R.relators == ((-1, -2, 1, 2), (1, 1, 1), (-2, -2))


def test_parse_juxtaposed_exponent_binds_to_last_letter():
    P = parse_presentation("a,b | ab^2")
    assert P.relators == ((1, 2, 2),)


@pytest.mark.parametrize("text", ["a, b", "a, a | a", "| a", "a | b", "a | a^", "a | (a", "1x | x"])
def test_parse_errors(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_identity_relators_vanish():
    P = parse_presentation("a | a a^-1, 1, a^5")
    assert P.relators == ((1,) * 5,)
    assert str(P) == "a | a^5"


@given(words)
def test_free_reduce_idempotent_and_inverse(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
    assert free_reduce(r + invert(r)) == ()
    assert invert(invert(w)) == w


@given(words, st.integers(-4, 4))
def test_power_of_inverse(w, k):
    assert power(w, -k) == free_reduce(invert(power(w, k)))


@pytest.mark.parametrize(
    "text, order",
    [
        ("a | a^7", 7),
        ("a | a", 1),
        ("a, b | a^3, b^2, (ab)^2", 6),
        ("a, b | a^4, b^2, (ab)^2", 8),
        ("a, b | a^4, a^2 = b^2, b^-1 a b = a", 8),
        ("a, b | a^4, a^2 = b^2, b^-1 a b = a^-1", 8),
        ("a, b | a^2, b^3, (ab)^3", 12),
        ("a, b | a^2, b^3, (ab)^4", 24),
        ("a, b | a^2, b^3, (ab)^5", 60),
        ("a, b | a^3, b^3, [a,b]", 9),
        ("a, b, c | a^2, b^2, c^2, [a,b], [b,c], [a,c]", 8),
    ],
)
def test_coset_enumeration_orders(text, order):
    assert coset_enumerate(parse_presentation(text)).order == order


def test_relators_hold_on_generator_images():
    P = parse_presentation("a, b | a^2, b^3, (ab)^5")
    G = coset_enumerate(P)
    for r in P.relators:
        assert evaluate_word(G, list(G.generators), r) == G.identity
    assert not is_abelian(G) and len(center(G)) == 1
    assert sorted(conjugacy_data(G).class_sizes) == [1, 12, 12, 15, 20]


def test_quaternion_vs_dihedral():
    Q8 = coset_enumerate(parse_presentation("a, b | a^4, a^2 = b^2, b^-1 a b = a^-1"))
    D8 = coset_enumerate(parse_presentation("a, b | a^4, b^2, (ab)^2"))
    assert recognize_structure(D8).kind == "dihedral"
    assert recognize_structure(Q8).kind == "other"
    assert str(recognize_structure(coset_enumerate(parse_presentation("a,b | a^2, b^2, [a,b]")))) == "Z2xZ2"


def test_limit_exceeded_for_infinite_group():
    with pytest.raises(LimitExceeded):
        coset_enumerate(parse_presentation("a, b | a^2, b^2"), coset_limit=500)


def test_limit_env_var(monkeypatch):
    monkeypatch.setenv("CCCZ_COSET_LIMIT", "50")
    assert default_coset_limit() == 50
    with pytest.raises(LimitExceeded):
        coset_enumerate(parse_presentation("a | a^100"))
    monkeypatch.setenv("CCCZ_COSET_LIMIT", "zero")
    with pytest.raises(PresentationError):
        default_coset_limit()


def test_presentation_rejects_bad_symbols():
    with pytest.raises(PresentationError):
        Presentation(("a",), ((2,),))
    with pytest.raises(PresentationError):
        Presentation(("a",), ((1, -1),))


def test_commutator_word():
    assert commutator((1,), (2,)) == (-1, -2, 1, 2)


@given(st.integers(1, 30), st.integers(1, 30))
def test_cyclic_presentations(m, n):
    G = coset_enumerate(parse_presentation(f"a | a^{m}, a^{n}"))
    assert G.order == gcd(m, n)


@given(st.integers(3, 25))
def test_dihedral_presentation_order(m):
    G = coset_enumerate(parse_presentation(f"a, b | a^{m}, b^2, (ab)^2"))
    assert G.order == 2 * m
    assert len(conjugacy_data(G).classes) == ((m + 3) // 2 if m % 2 else (m + 6) // 2)
