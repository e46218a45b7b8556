"""Exact affine fixpoint solver."""

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from graphings.linsolve import solve_affine, strongly_connected


def test_scc_ordering_is_dependencies_first():
    # 0 depends on 1, 1 and 2 form a cycle
    comps = strongly_connected(3, [[1], [2], [1]])
    assert sorted(map(sorted, comps)) == [[0], [1, 2]]
    order = {min(c): i for i, c in enumerate(comps)}
    assert order[1] < order[0]


def test_single_geometric_loop():
    # x = 1/2 + (1/2) x  =>  x = 1
    [x] = solve_affine([[(0, F(1, 2))]], [F(1, 2)])
    assert x == 1


def test_chain_with_cycle():
    # x0 = x1, x1 = 1/3 + (1/3) x0  =>  x1 = 1/2
    x = solve_affine([[(1, F(1))], [(0, F(1, 3))]], [F(0), F(1, 3)])
    assert x == [F(1, 2), F(1, 2)]


def test_repeated_entries_accumulate():
    # x = 1/4 + (1/4 + 1/4) x => x = 1/2
    [x] = solve_affine([[(0, F(1, 4)), (0, F(1, 4))]], [F(1, 4)])
    assert x == F(1, 2)


def test_singular_system_raises():
    with pytest.raises(ArithmeticError):
        solve_affine([[(0, F(1))]], [F(1)])  # x = 1 + x


def test_mutual_recursion_solved_exactly():
    rows = [[(1, F(1, 2))], [(0, F(2, 3))]]
    b = [F(1, 2), F(1, 3)]
    x = solve_affine(rows, b)
    assert x[0] == b[0] + F(1, 2) * x[1]
    assert x[1] == b[1] + F(2, 3) * x[0]


@given(st.lists(st.lists(st.tuples(st.integers(0, 4),
                                   st.fractions(0, F(1, 5))),
                         max_size=3),
                min_size=5, max_size=5))
def test_solution_satisfies_the_system(rows):
    rows = [[(j % 5, c) for j, c in row] for row in rows]
    b = [F(1, k + 2) for k in range(5)]
    try:
        x = solve_affine(rows, b)
    except ArithmeticError:
        return
    for i, row in enumerate(rows):
        assert x[i] == b[i] + sum((c * x[j] for j, c in row), F(0))
