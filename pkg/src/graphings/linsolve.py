"""Exact solver for the affine fixpoint ``x = b + T x`` over the rationals.

Path sums around cycles are geometric series; with finitely many nodes they
are the unique solution of a sparse affine system.  The solver decomposes the
dependency graph into strongly connected components (iterative Tarjan, safe
for deep graphs), walks them so that every dependency is solved first, and
runs dense fraction-exact Gaussian elimination inside each component.

Raises ``ArithmeticError`` when a component's system is singular, which the
callers translate into their own domain errors.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def strongly_connected(n: int, adj) -> list[list[int]]:
    """Tarjan's algorithm, iteratively; components come out dependencies-first.

    ``adj[i]`` lists the nodes that ``i`` depends on, so every component is
    emitted after all the components it can reach.
    """
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 1
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, iter(adj[root]))]
        visited[root] = True
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if not visited[child]:
                    visited[child] = True
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack[child] = True
                    work.append((child, iter(adj[child])))
                    advanced = True
                    break
                if on_stack[child]:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    v = stack.pop()
                    on_stack[v] = False
                    comp.append(v)
                    if v == node:
                        break
                out.append(comp)
    return out


def _solve_dense(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(matrix)
    for col in range(n):
        pivot = next((r for r in range(col, n) if matrix[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular linear system")
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = ONE / matrix[col][col]
        matrix[col] = [v * inv for v in matrix[col]]
        rhs[col] *= inv
        for r in range(n):
            if r == col or matrix[r][col] == 0:
                continue
            factor = matrix[r][col]
            matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[col])]
            rhs[r] -= factor * rhs[col]
    return rhs


def solve_affine(rows, b) -> list[Fraction]:
    """Solve ``x[i] = b[i] + sum(coeff * x[j] for (j, coeff) in rows[i])``.

    ``rows`` may contain repeated ``j`` entries; coefficients add up.
    """
    n = len(rows)
    adj = [[j for j, _ in row] for row in rows]
    coeff = []
    for row in rows:
        d: dict[int, Fraction] = {}
        for j, c in row:
            d[j] = d.get(j, ZERO) + c
        coeff.append(d)
    x: list[Fraction | None] = [None] * n
    for comp in strongly_connected(n, adj):
        order = {node: k for k, node in enumerate(comp)}
        matrix = [[ZERO] * len(comp) for _ in comp]
        rhs = []
        for node in comp:
            k = order[node]
            matrix[k][k] = ONE
            acc = b[node]
            for j, c in coeff[node].items():
                if j in order:
                    matrix[k][order[j]] -= c
                else:
                    acc += c * x[j]  # already solved: dependencies-first order
            rhs.append(acc)
        for node, value in zip(comp, _solve_dense(matrix, rhs)):
            x[node] = value
    return x
