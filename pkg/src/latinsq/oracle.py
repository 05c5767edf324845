"""Ground-truth engines: exhaustive enumeration and full state-graph search.

These are deliberately independent of the constructive machinery so they can
verify it: squares are enumerated by backtracking (two unrelated strategies
that must agree), improper squares by direct completion search, and the move
graph by breadth-first closure whose vertex set is checked against the
enumerations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    GridView,
    ImproperCell,
    LatinSquareError,
    SquareState,
    cube_from_grid,
    cyclic_square,
)
from .moves import apply_move, enumerate_valid_moves

ENUMERATION_LIMIT = 5
GRAPH_LIMIT = 4


class TooLarge(LatinSquareError):
    """Order exceeds the exhaustive-search limits."""


def canonical_key(state: SquareState) -> bytes:
    """Collision-free byte encoding used for hashing states.

    Row-major symbol list; an improper square appends its cell record
    (row, col, sorted positive pair, negative) after a 255 marker.
    """
    out = bytearray()
    rec = state.improper
    for r in range(state.n):
        for c in range(state.n):
            if rec is not None and (r, c) == (rec.row, rec.col):
                out.append(255)
            else:
                out.append(state.cube.symbol_at(r, c))
    if rec is not None:
        out.extend((255, rec.row, rec.col, *rec.positive_pair, rec.negative))
    return bytes(out)


@lru_cache(maxsize=None)
def _enumerate_grids(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All order-n Latin squares as grids, lexicographic row-major order.

    Cell-by-cell backtracking with row/column bitmasks.
    """
    full = (1 << n) - 1
    grid = [[0] * n for _ in range(n)]
    col_used = [0] * n
    out: list[tuple[tuple[int, ...], ...]] = []

    def fill(r: int, c: int, row_used: int) -> None:
        if c == n:
            if r == n - 1:
                out.append(tuple(tuple(row) for row in grid))
            else:
                fill(r + 1, 0, 0)
            return
        avail = ~(row_used | col_used[c]) & full
        while avail:
            bit = avail & -avail
            avail ^= bit
            s = bit.bit_length() - 1
            grid[r][c] = s
            col_used[c] |= bit
            fill(r, c + 1, row_used | bit)
            col_used[c] ^= bit

    fill(0, 0, 0)
    return tuple(out)


def _enumerate_grids_by_symbol(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Independent strategy: place each symbol as a full rook placement.

    Symbol s is assigned a column for every row (a permutation avoiding the
    cells already taken by smaller symbols).  Output is sorted into the same
    lexicographic order as the cell-wise strategy.
    """
    full = (1 << n) - 1
    grid = [[-1] * n for _ in range(n)]
    taken_rows = [0] * n  # per row: bitmask of occupied columns
    out: list[tuple[tuple[int, ...], ...]] = []

    def place(sym: int, r: int, cols_used: int) -> None:
        if r == n:
            if sym == n - 1:
                out.append(tuple(tuple(row) for row in grid))
            else:
                place(sym + 1, 0, 0)
            return
        avail = ~(cols_used | taken_rows[r]) & full
        while avail:
            bit = avail & -avail
            avail ^= bit
            c = bit.bit_length() - 1
            grid[r][c] = sym
            taken_rows[r] |= bit
            place(sym, r + 1, cols_used | bit)
            taken_rows[r] ^= bit
            grid[r][c] = -1

    place(0, 0, 0)
    out.sort()
    return out


def enumerate_latin_squares(n: int) -> list[GridView]:
    """All Latin squares of order n <= 5, each once, lexicographic order."""
    if n < 1:
        raise LatinSquareError("order must be at least 1")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    return [GridView(n, g) for g in _enumerate_grids(n)]


def count_latin_squares(n: int) -> int:
    if n < 1:
        raise LatinSquareError("order must be at least 1")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    return len(_enumerate_grids(n))


def enumerate_improper_squares(n: int) -> list[SquareState]:
    """All improper squares of order n, by direct completion search.

    For every choice of cell, positive pair and negative symbol, the rest of
    the grid is completed so that each row and column carries every symbol
    once, except that the negative symbol appears twice in the improper row
    and column.  Independent of the move machinery and of the graph search.
    """
    if n > GRAPH_LIMIT:
        raise TooLarge(f"improper enumeration is limited to n <= {GRAPH_LIMIT}")
    results: list[SquareState] = []
    if n < 3:
        return results  # an improper cell needs three distinct symbols
    cells = [(r, c) for r in range(n) for c in range(n)]
    for r0, c0 in cells:
        for neg in range(n):
            others = [s for s in range(n) if s != neg]
            for a_idx in range(len(others)):
                for b_idx in range(a_idx + 1, len(others)):
                    pair = (others[a_idx], others[b_idx])
                    results.extend(_complete_improper(n, r0, c0, pair, neg))
    return results


def _complete_improper(
    n: int, r0: int, c0: int, pair: tuple[int, int], neg: int
) -> list[SquareState]:
    # Remaining multiset per line: every symbol once, the negative twice in
    # the improper row and column; the improper cell consumes its pair.
    row_need = [[1] * n for _ in range(n)]
    col_need = [[1] * n for _ in range(n)]
    row_need[r0][neg] = 2
    col_need[c0][neg] = 2
    for s in pair:
        row_need[r0][s] -= 1
        col_need[c0][s] -= 1
    cells = [(r, c) for r in range(n) for c in range(n) if (r, c) != (r0, c0)]
    grid = [[0] * n for _ in range(n)]
    found: list[SquareState] = []

    def fill(idx: int) -> None:
        if idx == len(cells):
            state = cube_from_grid(grid, ImproperCell(r0, c0, pair, neg))
            found.append(state)
            return
        r, c = cells[idx]
        for s in range(n):
            if row_need[r][s] > 0 and col_need[c][s] > 0:
                row_need[r][s] -= 1
                col_need[c][s] -= 1
                grid[r][c] = s
                fill(idx + 1)
                row_need[r][s] += 1
                col_need[c][s] += 1

    fill(0)
    return found


@dataclass
class StateGraph:
    """The move graph over all proper and improper squares of one order."""

    n: int
    states: list[SquareState]
    index: dict[bytes, int]
    adjacency: list[list[int]]

    @property
    def vertex_count(self) -> int:
        return len(self.states)

    @property
    def proper_count(self) -> int:
        return sum(1 for s in self.states if s.is_proper)

    @property
    def improper_count(self) -> int:
        return sum(1 for s in self.states if not s.is_proper)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2


def build_state_graph(n: int) -> StateGraph:
    """Breadth-first closure of the move graph from the cyclic square.

    Vertices are normalized into canonical-key order before return so the
    result is independent of discovery order.
    """
    if not 2 <= n <= GRAPH_LIMIT:
        raise TooLarge(f"state graph is limited to 2 <= n <= {GRAPH_LIMIT}")
    start = cyclic_square(n)
    key0 = canonical_key(start)
    states = [start]
    index = {key0: 0}
    edges: set[tuple[int, int]] = set()
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        state = states[idx]
        for m in enumerate_valid_moves(state):
            nxt = apply_move(state, m)
            key = canonical_key(nxt)
            j = index.get(key)
            if j is None:
                j = len(states)
                index[key] = j
                states.append(nxt)
                queue.append(j)
            edges.add((min(idx, j), max(idx, j)))

    order = sorted(range(len(states)), key=lambda i: canonical_key(states[i]))
    relabel = {old: new for new, old in enumerate(order)}
    sorted_states = [states[i] for i in order]
    adjacency: list[list[int]] = [[] for _ in sorted_states]
    for u, v in edges:
        ru, rv = relabel[u], relabel[v]
        adjacency[ru].append(rv)
        adjacency[rv].append(ru)
    for nbrs in adjacency:
        nbrs.sort()
    new_index = {canonical_key(s): i for i, s in enumerate(sorted_states)}
    return StateGraph(n, sorted_states, new_index, adjacency)


def _bfs_distances(g: StateGraph, source: int) -> list[int]:
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def check_connectivity_and_diameter(
    g: StateGraph, probe_seeds: int = 32
) -> dict[str, int | bool]:
    """Connectivity plus the exact diameter (n <= 3) or a probed bound (n = 4).

    The probe runs full BFS from ``probe_seeds`` vertices spread evenly over
    the canonical vertex order; every reported eccentricity is a lower bound
    on the diameter and each must respect the 2(n-1)^3 ceiling.
    """
    v = g.vertex_count
    first = _bfs_distances(g, 0)
    connected = all(d >= 0 for d in first)
    exact = g.n <= 3
    if exact:
        seeds = range(v)
    else:
        step = max(1, v // probe_seeds)
        seeds = list(range(0, v, step))[:probe_seeds]
    diameter = 0
    for s in seeds:
        dist = _bfs_distances(g, s)
        ecc = max(dist)
        diameter = max(diameter, ecc)
    return {"connected": connected, "diameter": diameter, "exact": exact}
