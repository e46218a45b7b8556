"""Stack monoid: rewriting, normal forms, composition."""

import random

from hypothesis import given, strategies as st

import pytest

from graphings.errors import ValidationError
from graphings.theta import (encode_stack_op, format_theta, from_ops, is_normal,
                             is_stack_accepting, parse_theta, reduce,
                             reduce_random, split_normal, theta_mul)


def test_reduce_cancels_pop_after_push():
    # letters read right to left in time, so "c0" is push-then-pop
    assert reduce("c0") == ""
    assert reduce("0c") == "0c"
    assert reduce("cc00") == ""
    assert reduce("1c0c*") == "1"  # two cancellations cascade
    assert reduce("10cc") == "10cc"  # already normal: pushes then pops


def test_normal_form_is_pushes_then_pops():
    assert is_normal("01*")
    assert is_normal("0cc")
    assert not is_normal("c0")
    assert split_normal("01cc") == ("01", 2)


def test_theta_mul_is_after():
    # pushing 0 then popping it is the identity
    assert theta_mul("c", "0") == ""
    # popping first cannot cancel a later push
    assert theta_mul("0", "c") == "0c"
    assert theta_mul("", "1") == "1"


def test_theta_mul_associative_on_samples():
    words = ["", "0", "c", "0c", "c1", "01*", "ccc"]
    for u in words:
        for v in words:
            for w in words:
                assert theta_mul(theta_mul(u, v), w) == theta_mul(u, theta_mul(v, w))


def test_from_ops_and_encode():
    assert encode_stack_op("push_0") == "0"
    assert encode_stack_op("pop") == "c"
    assert encode_stack_op("id") == ""
    with pytest.raises(ValidationError):
        encode_stack_op("push_x")
    # ops arrive in execution order; the word is built right to left
    assert from_ops(["push_0", "pop"]) == ""
    assert from_ops(["pop", "push_1"]) == "1c"


def test_stack_accepting_means_nothing_pushed():
    assert is_stack_accepting("")
    assert is_stack_accepting("cc")  # pops only
    assert not is_stack_accepting("0")
    assert not is_stack_accepting("0c")


def test_format_roundtrip():
    assert parse_theta(format_theta("")) == ""
    assert parse_theta(format_theta("01c")) == "01c"
    assert format_theta("") == "e"


@given(st.text(alphabet="01*c", max_size=8), st.integers(0, 10_000))
def test_rewrite_order_does_not_matter(word, seed):
    assert reduce_random(word, random.Random(seed)) == reduce(word)


@given(st.text(alphabet="01*c", max_size=6), st.text(alphabet="01*c", max_size=6))
def test_product_of_reduced_words_is_reduced_product(u, v):
    assert theta_mul(reduce(u), reduce(v)) == reduce(u + v)
