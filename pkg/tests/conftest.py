"""Shared fixtures: the classic test games and small exact-arithmetic helpers."""

from __future__ import annotations

from fractions import Fraction

import pytest

from nashcycles.games import Game


@pytest.fixture
def pd() -> Game:
    """Prisoner's Dilemma; row/column 2 (Defect) strictly dominates."""
    return Game.from_rows([[3, 0], [5, 1]], [[3, 5], [0, 1]])


@pytest.fixture
def mp() -> Game:
    """Matching Pennies; unique equilibrium is uniform full support."""
    return Game.from_rows([[1, -1], [-1, 1]], [[-1, 1], [1, -1]])


@pytest.fixture
def bos() -> Game:
    """Battle of the Sexes; two pure equilibria plus one mixed."""
    return Game.from_rows([[2, 0], [0, 1]], [[1, 0], [0, 2]])


@pytest.fixture
def one_by_one() -> Game:
    return Game.from_rows([[7]], [[7]])


@pytest.fixture
def flat_top() -> Game:
    """Degenerate game A=B=[[1,1],[0,0]]: unbalanced supports ({1},{1}),
    ({1},{2}), ({1},{1,2})."""
    return Game.from_rows([[1, 1], [0, 0]], [[1, 1], [0, 0]])


def rational_rank(matrix: list[list[Fraction]]) -> int:
    """Rank over the rationals by Gaussian elimination, exact."""
    rows = [list(row) for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank][col]
        rows[rank] = [v / head for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def brute_force_cycles(n: int, adj: list[list[int]]) -> list[tuple[int, ...]]:
    """Reference elementary-cycle enumeration by plain DFS, each cycle
    anchored at its smallest vertex.  Independent of the Johnson machinery."""
    adjsets = [set(a) for a in adj]
    out: list[tuple[int, ...]] = []

    def dfs(start: int, v: int, path: list[int], used: set[int]):
        for w in adj[v]:
            if w == start and len(path) > 1:
                out.append(tuple(path))
            elif w > start and w not in used:
                used.add(w)
                path.append(w)
                dfs(start, w, path, used)
                path.pop()
                used.remove(w)

    for s in range(n):
        if s in adjsets[s]:
            out.append((s,))
        dfs(s, s, [s], {s})
    return sorted(out)
