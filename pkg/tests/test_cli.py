"""Command line behavior: exit codes, output shape, byte stability."""

import subprocess
import sys

import pytest

from graphings import cli
from graphings.automata import parse_automaton
from graphings.compiler import compile_automaton
from graphings.corpus import by_name
from graphings.graphing import format_graphing, parse_graphing


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compile_reports_sizes(capsys):
    code, out, err = run(capsys, "compile", "even-ones")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "machine: even-ones"
    assert "heads: 1" in lines
    assert "stack: no" in lines
    assert "dialect-states: 45" in lines


def test_compile_writes_a_parseable_graphing(tmp_path, capsys):
    out_file = tmp_path / "even.graphing"
    code, out, _ = run(capsys, "compile", "even-ones", "--out", str(out_file))
    assert code == 0
    g = parse_graphing(out_file.read_text())
    assert g.equivalent(compile_automaton(by_name("even-ones")).graphing)


def test_unknown_machine_is_a_usage_error(capsys):
    code, out, err = run(capsys, "compile", "no-such-machine")
    assert code == 2
    assert err.startswith("error:")


def test_accept_agrees_on_both_routes(capsys):
    code, out, _ = run(capsys, "accept", "even-ones", "11")
    assert code == 0
    assert "oracle: 1 (exact)" in out
    assert "dialogue: 1 (exact)" in out
    assert out.rstrip().endswith("verdict: agree")


def test_accept_dash_is_the_empty_word(capsys):
    code, out, _ = run(capsys, "accept", "coin-half", "-")
    assert code == 0
    assert "word: -" in out
    assert "oracle: 1/2 (exact)" in out


def test_accept_rejects_words_off_the_alphabet(capsys):
    code, _, err = run(capsys, "accept", "even-ones", "012")
    assert code == 2 and "word must be over 01" in err


def test_membership_table_checks_against_the_oracle(capsys):
    code, out, _ = run(capsys, "membership", "even-ones", "11", "1", "-",
                       "--test", "neg")
    assert code == 0
    lines = out.splitlines()
    assert "11 orthogonal oracle=yes ok" in lines
    assert "1 crossing oracle=no ok" in lines
    assert "- orthogonal oracle=yes ok" in lines


def test_membership_prob_needs_epsilon(capsys):
    code, _, err = run(capsys, "membership", "coin-half", "-", "--test", "prob")
    assert code == 2 and "threshold" in err
    code, out, _ = run(capsys, "membership", "coin-half", "-",
                       "--test", "prob", "--epsilon", "1/4")
    assert code == 0
    assert "test: prob[1/4]" in out


def test_equiv_compares_graphing_files(tmp_path, capsys):
    left = tmp_path / "left.graphing"
    right = tmp_path / "right.graphing"
    other = tmp_path / "other.graphing"
    left.write_text(format_graphing(compile_automaton(by_name("even-ones")).graphing))
    right.write_text(format_graphing(compile_automaton(by_name("even-ones")).graphing))
    other.write_text(format_graphing(compile_automaton(by_name("coin-half")).graphing))
    code, out, _ = run(capsys, "equiv", str(left), str(right))
    assert code == 0 and "equivalent: yes" in out
    code, out, _ = run(capsys, "equiv", str(left), str(other))
    assert code == 1 and "equivalent: no" in out


def test_equiv_missing_file_is_an_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "equiv", str(tmp_path / "nope"), str(tmp_path / "nope"))
    assert code == 2 and err.startswith("error:")


def test_dump_rule_table_round_trips(capsys):
    code, out, _ = run(capsys, "dump", "even-ones")
    assert code == 0
    a = parse_automaton(out)
    assert a.name == "even-ones" and a.heads == 1


def test_dump_graphing_round_trips(capsys):
    code, out, _ = run(capsys, "dump", "coin-half", "--graphing")
    assert code == 0
    g = parse_graphing(out)
    assert g.equivalent(compile_automaton(by_name("coin-half")).graphing)


def test_dump_grid_view(capsys):
    code, out, _ = run(capsys, "dump", "even-ones", "--word", "01")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("machine: ")
    assert any(line.startswith("word: 6 nodes, 6 edges, grid 3") for line in lines)
    assert any("->" in line and "theta=" in line for line in lines)


def test_properties_suites_pass_and_stay_quiet(tmp_path, capsys):
    code, out, _ = run(capsys, "properties", "theta-confluence", "--count", "25")
    assert code == 0 and "suite theta-confluence: 25/25 pass" in out
    code, out, _ = run(capsys, "properties", "det-closure", "--count", "3",
                       "--dump-dir", str(tmp_path))
    assert code == 0 and "suite det-closure: 3/3 pass" in out
    assert list(tmp_path.iterdir()) == []  # counterexamples only on failure


def test_output_is_byte_stable(capsys):
    first = run(capsys, "accept", "coin-half", "-")
    second = run(capsys, "accept", "coin-half", "-")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "graphings.cli",
                           "compile", "even-ones"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("machine: even-ones")
