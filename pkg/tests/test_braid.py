import random

import pytest
from hypothesis import given, settings, strategies as st

from pencilforge.braid import (
    BraidWord,
    FreeWord,
    artin_act,
    band_generator,
    braid_equal,
    format_braid,
    full_twist,
    full_twist_power,
    half_twist,
    identity_braid,
    parse_braid,
    point_push_check,
    sigma,
)


def word(n, *letters):
    return BraidWord(n, tuple(letters))


def test_identity_action_fixes_generators():
    w = identity_braid(3)
    x1 = FreeWord.generator(3, 1)
    assert artin_act(w, x1) == x1


def test_sigma1_on_x1_is_standard_conjugate():
    # sigma_1 in B2: x1 -> x1 x2 x1^-1, computed by hand
    img = artin_act(sigma(2, 1), FreeWord.generator(2, 1))
    assert img.letters == ((1, 1), (2, 1), (1, -1))


def test_braid_relation_oracle_all_generators():
    u = sigma(3, 1) * sigma(3, 2) * sigma(3, 1)
    v = sigma(3, 2) * sigma(3, 1) * sigma(3, 2)
    for i in range(1, 4):
        assert artin_act(u, FreeWord.generator(3, i)) == \
            artin_act(v, FreeWord.generator(3, i))


def test_braid_equal_on_relation_and_inverse():
    assert braid_equal(sigma(3, 1) * sigma(3, 2) * sigma(3, 1),
                       sigma(3, 2) * sigma(3, 1) * sigma(3, 2))
    assert not braid_equal(sigma(2, 1), sigma(2, 1).inverse())


def test_braid_equal_rejects_strand_mismatch():
    with pytest.raises(ValueError):
        braid_equal(sigma(2, 1), sigma(3, 1))


def test_s1s2s3_fourth_power_is_full_twist():
    w = (sigma(4, 1) * sigma(4, 2) * sigma(4, 3)) ** 4
    assert braid_equal(w, full_twist(4))
    assert full_twist_power(w) == 1


def test_full_twist_power_family():
    base = sigma(4, 1) * sigma(4, 2) * sigma(4, 3)
    for n in range(5):
        assert full_twist_power(base ** (4 * n)) == n


def test_full_twist_power_chain_closure():
    # (s1 ... s_{2g+1})^{2g+2} for g = 3: the full-chain braid closes with one
    # full twist on 2g+2 = 8 strands
    n = 8
    w = BraidWord(n, tuple((i, 1) for i in range(1, n))) ** n
    assert full_twist_power(w) == 1


def test_full_twist_power_rejects_non_full_twist():
    assert full_twist_power(sigma(3, 1)) is None
    assert full_twist_power(sigma(4, 1) * sigma(4, 2)) is None


def test_full_twist_power_empty_and_degenerate():
    assert full_twist_power(identity_braid(4)) == 0
    assert full_twist_power(identity_braid(1)) == 0


def test_point_push_full_twist_is_boundary_conjugation():
    g = point_push_check(full_twist(4))
    assert g is not None
    assert g.letters == ((1, 1), (2, 1), (3, 1), (4, 1))


def test_point_push_even_tail_is_middle_circle():
    # (s1 s2 s3)^2 (s3 s2 s1)^2 pushes the reference region around the circle
    # separating the two middle-adjacent pairs; the loop is supported on an
    # adjacent pair of strands (spelled from one side or the other).
    w = (sigma(4, 1) * sigma(4, 2) * sigma(4, 3)) ** 2 \
        * (sigma(4, 3) * sigma(4, 2) * sigma(4, 1)) ** 2
    g = point_push_check(w)
    assert g is not None
    assert g.support() in ({1, 2}, {2, 3}, {3, 4})
    # the rotation of the same word by three letters spells the loop on the
    # middle two strands exactly
    letters = w.letters
    rot = BraidWord(4, letters[3:] + letters[:3])
    g2 = point_push_check(rot)
    assert g2 is not None and g2.support() == {2, 3}


def test_point_push_rejects_permuting_braid():
    assert point_push_check(sigma(2, 1)) is None


def test_band_generator_is_conjugate_half_twist():
    b = band_generator(3, 1, 3)
    conj = sigma(3, 2) * sigma(3, 1) * sigma(3, 2).inverse()
    assert braid_equal(b, conj)


def test_serialization_round_trip():
    w = parse_braid(4, "s1 s2^-1 s3")
    assert w.letters == ((1, 1), (2, -1), (3, 1))
    assert format_braid(w) == "s1 s2^-1 s3"


@st.composite
def braid_words(draw, max_n=8, max_len=50):
    n = draw(st.integers(min_value=2, max_value=max_n))
    length = draw(st.integers(min_value=0, max_value=max_len))
    letters = tuple(
        (draw(st.integers(min_value=1, max_value=n - 1)),
         draw(st.sampled_from((1, -1))))
        for _ in range(length)
    )
    return BraidWord(n, letters)


@given(braid_words(max_len=30))
@settings(max_examples=60, deadline=None)
def test_artin_action_respects_far_commutation(w):
    n = w.strand_count
    if n < 4:
        return
    u = w * sigma(n, 1) * sigma(n, 3)
    v = w * sigma(n, 3) * sigma(n, 1)
    for i in range(1, n + 1):
        assert artin_act(u, FreeWord.generator(n, i)) == \
            artin_act(v, FreeWord.generator(n, i))


@given(braid_words(max_len=25))
@settings(max_examples=60, deadline=None)
def test_artin_action_respects_braid_relation(w):
    n = w.strand_count
    if n < 3:
        return
    i = random.Random(w.exponent_sum()).randint(1, n - 2)
    u = w * word(n, (i, 1), (i + 1, 1), (i, 1))
    v = w * word(n, (i + 1, 1), (i, 1), (i + 1, 1))
    assert braid_equal(u, v)


@given(braid_words(max_len=20))
@settings(max_examples=40, deadline=None)
def test_full_twist_is_central(w):
    n = w.strand_count
    ft = full_twist(n)
    assert braid_equal(ft * w, w * ft)


@given(braid_words(max_len=20))
@settings(max_examples=40, deadline=None)
def test_exponent_sum_invariant_under_free_insertion(w):
    n = w.strand_count
    i = 1
    padded = BraidWord(n, w.letters + ((i, 1), (i, -1)))
    assert padded.exponent_sum() == w.exponent_sum()
    assert braid_equal(padded, w)


def test_free_word_reduction():
    w = FreeWord.reduced(3, [(1, 1), (2, 1), (2, -1), (1, -1), (3, 1)])
    assert w.letters == ((3, 1),)


def test_half_twist_squares_to_full_twist():
    for n in (2, 3, 4, 5):
        assert braid_equal(half_twist(n) * half_twist(n), full_twist(n))
