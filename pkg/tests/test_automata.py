"""Configuration-level probability oracle for multihead machines."""

from fractions import Fraction as F

import pytest

from graphings.automata import (ACCEPT, REJECT, Automaton, Instruction,
                                accept_probability, format_automaton,
                                parse_automaton, read_vector, trace_enumerate,
                                validate)
from graphings.corpus import by_name, corpus
from graphings.errors import ValidationError


def p(name, word, depth=16):
    prob, exact = accept_probability(by_name(name), word, depth)
    assert exact
    return prob


def test_read_vector_marker_positions():
    assert read_vector("01", (0, 1, 2)) == "*01"
    assert read_vector("01", (3, 4)) == "*0"  # wraps mod 3
    assert read_vector("", (0, 5)) == "**"


def test_every_corpus_machine_validates():
    for a in corpus():
        assert validate(a) == [], a.name


def test_corpus_has_enough_variety():
    machines = corpus()
    assert len(machines) >= 40
    assert {a.heads for a in machines} == {1, 2, 3}
    assert any(a.stack for a in machines)
    assert any(not a.stack for a in machines)
    probabilistic = [a for a in machines
                     if any(t.prob != 1 for ts in a.delta.values() for t in ts)]
    assert len(probabilistic) >= 10


def test_deterministic_language_machines():
    assert p("accept-now", "") == 1 and p("reject-now", "") == 0
    for w in ("", "11", "0110"):
        assert p("even-ones", w) == 1
    for w in ("1", "010"):
        assert p("even-ones", w) == 0 and p("odd-ones", w) == 1
    assert p("all-zeros", "000") == 1 and p("all-zeros", "010") == 0
    assert p("contains-one", "001") == 1 and p("contains-one", "00") == 0
    assert p("length-even", "0110") == 1 and p("length-even", "011") == 0
    assert p("ends-with-one", "01") == 1 and p("ends-with-one", "10") == 0
    assert p("first-is-one", "10") == 1 and p("first-is-one", "01") == 0


def test_looping_machine_never_halts_on_ones():
    assert p("loop-on-one", "00") == 1
    assert p("loop-on-one", "01") == 0  # runs forever, accept mass zero


def test_weighted_coins():
    assert p("coin-half", "") == F(1, 2)
    assert p("coin-third", "") == F(1, 3)
    assert p("coin-quarter", "") == F(1, 4)
    assert p("coin-three-quarters", "") == F(3, 4)
    assert p("coin-five-eighths", "") == F(5, 8)


def test_retry_loops_sum_geometric_series():
    assert p("retry-half", "") == 1
    assert p("retry-quarter-reject", "") == 0


def test_per_letter_flips():
    assert p("flip-per-one", "1011") == F(1, 8)
    assert p("flip-per-one", "000") == 1
    assert p("flip-per-zero-third", "0100") == F(1, 27)
    assert p("mixed-flip", "01") == F(3, 8)
    assert p("mixed-flip", "0011") == F(9, 64)


def test_unbiased_wanderer_accepts_surely():
    assert p("lazy-scan", "010") == 1
    assert p("drunken-parity", "11") == F(5, 8)
    assert p("drunken-parity", "1") == F(1, 4)


def test_guessing_machines_positivity():
    assert p("guess-a-one", "010") == F(1, 2)
    assert p("guess-a-one", "000") == 0
    assert p("guess-two-ones", "0110") == F(1, 4)
    assert p("guess-two-ones", "0100") == 0
    assert p("guess-boundary-01", "0011") == F(3, 4)
    assert p("guess-boundary-01", "1100") == 0
    assert p("all-or-guess", "011") == F(8, 27)
    assert p("all-or-guess", "") == 1


def test_multihead_machines():
    assert p("first-equals-last", "") == 1
    assert p("first-equals-last", "1") == 1
    assert p("first-equals-last", "10") == 0
    assert p("first-equals-last", "101") == 1
    assert p("first-equals-last-prob", "00") == F(3, 4)
    assert p("first-equals-last-prob", "01") == F(1, 4)
    assert p("two-head-double-parity", "0110") == 1
    assert p("two-head-double-parity", "011") == 0
    assert p("two-head-match-shift", "00") == 1
    assert p("two-head-match-shift", "01") == 0
    assert p("two-head-flip-per-agree", "0011") == F(1, 4)
    assert p("two-head-palindrome", "010") == 1
    assert p("two-head-palindrome", "01") == 0
    assert p("two-head-guess-middle", "01101") == F(13, 31)


def test_three_head_machines():
    assert p("round-robin", "01") == 1
    assert p("rotation-parity", "110") == 1
    assert p("bookends", "101") == 1
    assert p("bookends", "100") == 0
    assert p("zigzag-parity", "0110") == 1


def test_stack_machines_languages():
    for w in ("", "01", "0011", "000111"):
        assert p("zeros-then-ones", w) == 1
    for w in ("001", "10", "0101"):
        assert p("zeros-then-ones", w) == 0
    assert p("push-all-pop-all", "010") == 1
    assert p("peek-repeat", "0101") == 1
    assert p("peek-repeat", "010") == 0
    assert p("balanced-prefix", "0101") == 1
    assert p("balanced-prefix", "0110") == 0
    assert p("stack-parity", "1010") == 1
    assert p("prob-push-walk", "01") == 1
    assert p("peek-then-flip", "0110") == F(1, 4)
    assert p("peek-then-flip", "011") == 0


def test_deep_stack_truncation_reports_inexact():
    a = by_name("biased-stack-walk")
    prob, exact = accept_probability(a, "", 16)
    assert not exact
    assert F(7, 8) - prob < F(1, 10 ** 6)
    deeper, _ = accept_probability(a, "", 24)
    assert deeper > prob  # lower bounds improve with budget


def test_accept_and_reject_outcomes_partition_halting_mass():
    a = by_name("coin-third")
    acc, _ = accept_probability(a, "", 16, outcome=ACCEPT)
    rej, _ = accept_probability(a, "", 16, outcome=REJECT)
    assert acc + rej == 1
    with pytest.raises(ValidationError):
        accept_probability(a, "", 16, outcome="maybe")


def test_trace_enumerate_counts_prefixes():
    traces = trace_enumerate(by_name("even-ones"), "1", max_len=6)
    assert [len(steps) for steps, _ in traces] == [1, 2, 3]
    assert all(w == 1 for _, w in traces)
    short = trace_enumerate(by_name("even-ones"), "1", max_len=2)
    assert [len(steps) for steps, _ in short] == [1, 2]


def test_trace_enumerate_splits_on_probability():
    traces = trace_enumerate(by_name("coin-half"), "", max_len=20)
    assert sorted(w for _, w in traces) == [F(1, 2), F(1, 2)]


def test_validation_rejects_bad_tables():
    a = Automaton("bad", 1, (ACCEPT, REJECT, "init", "s"), {
        ("0", "init", None): (Instruction(1, "o", "id", "s", F(1, 2)),
                              Instruction(1, "o", "id", ACCEPT, F(2, 3))),
    })
    assert any("probabilities" in msg or "exceed" in msg for msg in validate(a))
    b = Automaton("bad2", 1, (ACCEPT, REJECT, "init"), {
        ("*", ACCEPT, None): (Instruction(1, "o", "id", "init", F(1)),),
    })
    assert validate(b)  # final states must not move


def test_format_roundtrip_preserves_behaviour():
    for name in ("even-ones", "zeros-then-ones", "two-head-palindrome"):
        a = by_name(name)
        b = parse_automaton(format_automaton(a))
        assert b.name == a.name and b.heads == a.heads and b.stack == a.stack
        for w in ("", "01", "110"):
            assert accept_probability(a, w, 12) == accept_probability(b, w, 12)
