"""Constructive connectivity of the +/-1-move state graph.

Everything here is built from three primitives and one driver:

* ``normalize_to_proper`` resolves an improper square with moves confined to
  two rows (at most floor((n-1)/2) of them).
* ``cycle_swap`` exchanges two rows of a proper square along one of their
  symbol cycles using exactly r-1 moves.
* ``swap_row_entries`` exchanges two entries of one row of an improper
  square (at most 2(n-1) moves), carrying the negative cell along its column.
* ``transform_path`` composes the above to turn any square into any other,
  fixing rows top-down; the emitted sequence never exceeds 2(n-1)^3 moves and
  every intermediate state is a valid proper or improper square.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import LatinSquareError, SquareState
from .moves import IntercalateMove, apply_move


class NotImproper(LatinSquareError):
    """Operation requires an improper state (or one at a specific cell)."""


class MismatchedRows(LatinSquareError):
    """The designated source row does not carry the required symbol."""


class InvalidCycle(LatinSquareError):
    """Cycle pattern does not match the state it is applied to."""


class PreconditionViolated(LatinSquareError):
    """Named precondition of the row-entry swap failed."""


class OrderMismatch(LatinSquareError):
    """The two endpoint squares have different orders."""


@dataclass(frozen=True)
class CyclePattern:
    """A two-row symbol cycle (or chain) on an ordered list of columns.

    For a closed cycle in a proper square, ``bottom_symbols`` is
    ``top_symbols`` rotated left by one: bottom[k] = top[k+1 mod r].  The
    chains produced by `find_row_cycles` on an improper square use the same
    container but terminate on the negative symbol instead of closing.
    """

    rows: tuple[int, int]
    columns: tuple[int, ...]
    top_symbols: tuple[int, ...]
    bottom_symbols: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class MoveSequence:
    """An ordered move list with its endpoint states."""

    start: SquareState
    moves: tuple[IntercalateMove, ...] = field(default_factory=tuple)
    end: SquareState = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.end is None:
            object.__setattr__(self, "end", self.start)

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self, check: bool = False) -> SquareState:
        """Re-apply the moves to ``start``; with ``check`` validate prefixes."""
        from .core import validate

        state = self.start
        for m in self.moves:
            state = apply_move(state, m)
            if check:
                problems = validate(state)
                if problems:
                    raise LatinSquareError(f"invalid intermediate state: {problems}")
        return state


def _unique_col(state: SquareState, row: int, sym: int) -> int:
    cols = state.cube.cols_with(row, sym)
    if len(cols) != 1:
        raise LatinSquareError(
            f"symbol {sym} appears {len(cols)} times positively in row {row}"
        )
    return cols[0]


def _chase(state: SquareState, improper_row: int, helper_row: int, chased: int) -> CyclePattern:
    """Walk the two-row chain that starts at ``chased``.

    From the improper cell, repeatedly jump to the column where the helper
    row holds the current symbol and read the improper row's symbol there;
    the walk ends on the column where the improper row yields the negative
    symbol.  Columns listed in walk order; top = improper row, bottom =
    helper row.
    """
    rec = state.improper
    if rec is None or rec.row != improper_row:
        raise NotImproper(f"state has no improper cell in row {improper_row}")
    target = rec.negative
    cols: list[int] = []
    tops: list[int] = []
    bottoms: list[int] = []
    sym = chased
    for _ in range(state.n):
        c = _unique_col(state, helper_row, sym)
        cols.append(c)
        bottoms.append(sym)
        top = state.cube.symbol_at(improper_row, c)
        tops.append(top)
        if top == target:
            return CyclePattern(
                (improper_row, helper_row), tuple(cols), tuple(tops), tuple(bottoms)
            )
        sym = top
    raise LatinSquareError("chain did not terminate; state is corrupt")


def find_row_cycles(
    state: SquareState, improper_row: int, source_row: int, column: int
) -> tuple[CyclePattern, CyclePattern]:
    """The two chains rooted at the improper cell, chased from each positive.

    Returns (chain through the larger positive, chain through the smaller);
    the two share no column and the shorter has length <= floor((n-1)/2).
    """
    rec = state.improper
    if rec is None or (rec.row, rec.col) != (improper_row, column):
        raise NotImproper(
            f"state has no improper cell at ({improper_row},{column})"
        )
    if state.cube.entry(source_row, column, rec.negative) != 1:
        raise MismatchedRows(
            f"row {source_row} does not hold symbol {rec.negative} at column {column}"
        )
    lo, hi = rec.positive_pair
    return (
        _chase(state, improper_row, source_row, hi),
        _chase(state, improper_row, source_row, lo),
    )


def _resolve_improper(
    state: SquareState, helper_row: int
) -> tuple[SquareState, list[IntercalateMove]]:
    """Drive an improper state proper with moves confined to two rows.

    The working pair is (improper row, helper row); after each move the
    negative cell hops to the other row of the pair, so the pair is fixed
    while the roles alternate.  Each step picks the shorter of the two
    current chains (ties go to the larger positive), which makes the total
    number of moves at most the first minimum, i.e. floor((n-1)/2).
    """
    moves: list[IntercalateMove] = []
    if state.improper is None:
        return state, moves
    pair = (state.improper.row, helper_row)
    while state.improper is not None:
        rec = state.improper
        current = rec.row
        helper = pair[0] if current == pair[1] else pair[1]
        if state.cube.entry(helper, rec.col, rec.negative) != 1:
            raise MismatchedRows(
                f"helper row {helper} lost symbol {rec.negative} at column {rec.col}"
            )
        lo, hi = rec.positive_pair
        chain_hi = _chase(state, current, helper, hi)
        chain_lo = _chase(state, current, helper, lo)
        chain = chain_lo if chain_lo.length < chain_hi.length else chain_hi
        m = IntercalateMove.from_anchors(
            current, rec.col, rec.negative,
            helper, chain.columns[-1], chain.bottom_symbols[0],
        )
        state = apply_move(state, m)
        moves.append(m)
    return state, moves


def normalize_to_proper(state: SquareState) -> tuple[SquareState, MoveSequence]:
    """Resolve an improper square into a proper one (identity on proper input).

    The helper row is the smallest row other than the improper one holding
    the negative symbol in the improper column (a valid improper state always
    has exactly two such rows).  The emitted sequence touches only those two
    rows and has length at most floor((n-1)/2).
    """
    if state.improper is None:
        return state, MoveSequence(state)
    rec = state.improper
    candidates = [r for r in state.cube.rows_with(rec.col, rec.negative) if r != rec.row]
    if not candidates:
        raise NotImproper(
            f"no row holds symbol {rec.negative} in column {rec.col}; state is corrupt"
        )
    end, moves = _resolve_improper(state, candidates[0])
    return end, MoveSequence(state, tuple(moves), end)


def proper_row_cycles(state: SquareState, row_a: int, row_b: int) -> list[CyclePattern]:
    """Decompose the columns of a proper square into the cycles of two rows.

    Cycles are reported with rows (row_a, row_b), each starting at its
    smallest column, ordered by that column.  Every cycle has length >= 2.
    """
    if state.improper is not None or row_a == row_b:
        raise InvalidCycle("cycle decomposition needs a proper state and two distinct rows")
    n = state.n
    seen: set[int] = set()
    cycles: list[CyclePattern] = []
    for c0 in range(n):
        if c0 in seen:
            continue
        cols = [c0]
        seen.add(c0)
        while True:
            bottom = state.cube.symbol_at(row_b, cols[-1])
            nxt = _unique_col(state, row_a, bottom)
            if nxt == c0:
                break
            cols.append(nxt)
            seen.add(nxt)
        tops = tuple(state.cube.symbol_at(row_a, c) for c in cols)
        bottoms = tuple(state.cube.symbol_at(row_b, c) for c in cols)
        cycles.append(CyclePattern((row_a, row_b), tuple(cols), tops, bottoms))
    return cycles


def _check_cycle(state: SquareState, cycle: CyclePattern) -> None:
    i1, i2 = cycle.rows
    r = cycle.length
    if i1 == i2:
        raise InvalidCycle("cycle rows must differ")
    if r < 2:
        raise InvalidCycle("a genuine cycle spans at least two columns")
    if len(set(cycle.columns)) != r:
        raise InvalidCycle("cycle columns must be distinct")
    if len(cycle.top_symbols) != r or len(cycle.bottom_symbols) != r:
        raise InvalidCycle("symbol lists must match the column count")
    for k, c in enumerate(cycle.columns):
        if state.cube.entry(i1, c, cycle.top_symbols[k]) != 1:
            raise InvalidCycle(f"row {i1} does not hold {cycle.top_symbols[k]} at column {c}")
        if state.cube.entry(i2, c, cycle.bottom_symbols[k]) != 1:
            raise InvalidCycle(f"row {i2} does not hold {cycle.bottom_symbols[k]} at column {c}")
        if cycle.bottom_symbols[k] != cycle.top_symbols[(k + 1) % r]:
            raise InvalidCycle("bottom symbols are not the top symbols rotated by one")


def cycle_swap(state: SquareState, cycle: CyclePattern) -> tuple[SquareState, MoveSequence]:
    """Exchange the two rows of a proper square along a closed cycle.

    Emits exactly r-1 moves: the first opens the cycle (making the state
    improper for r >= 3), and each later move walks the negative cell one
    column further until it closes.  No cell outside the cycle changes.
    """
    if state.improper is not None:
        raise InvalidCycle("cycle swap requires a proper state")
    _check_cycle(state, cycle)
    i1, i2 = cycle.rows
    cols = cycle.columns
    top = cycle.top_symbols
    r = cycle.length
    ms = [IntercalateMove.from_anchors(i1, cols[0], top[1], i2, cols[1], top[0])]
    for k in range(1, r - 1):
        ms.append(
            IntercalateMove.from_anchors(i2, cols[k], top[0], i1, cols[k + 1], top[k + 1])
        )
    end = state
    for m in ms:
        end = apply_move(end, m)
    return end, MoveSequence(state, tuple(ms), end)


def swap_row_entries(
    state: SquareState, i1: int, j1: int, j2: int
) -> tuple[SquareState, MoveSequence]:
    """Swap the symbols of row ``i1`` at columns ``j1`` and ``j2``.

    Preconditions (each violation is named): the state is improper with its
    negative cell in column ``j1`` at some row i2 != i1; cell (i1, j1) holds
    that cell's negative symbol s; and (always true for valid states) some
    row i3 holds s at column ``j2``.

    The result holds t = old (i1, j2) symbol at (i1, j1) and s at (i1, j2),
    is proper or improper with the negative cell at (i2 or i3, j1) carrying
    negative symbol t, and differs from the input only at those two cells
    and within rows i2 and i3.  At most 2(n-1) moves are emitted.
    """
    rec = state.improper
    if rec is None:
        raise PreconditionViolated("state is proper; an improper cell in column j1 is required")
    if rec.col != j1:
        raise PreconditionViolated(
            f"improper cell sits in column {rec.col}, not in j1={j1}"
        )
    i2 = rec.row
    if i2 == i1:
        raise PreconditionViolated("the improper cell must lie in a row other than i1")
    if j1 == j2:
        raise PreconditionViolated("j1 and j2 must differ")
    s = rec.negative
    if state.cube.entry(i1, j1, s) != 1:
        raise PreconditionViolated(
            f"cell ({i1},{j1}) does not hold the negative symbol {s}"
        )
    t = state.cube.symbol_at(i1, j2)
    i3_rows = state.cube.rows_with(j2, s)
    if len(i3_rows) != 1:
        raise PreconditionViolated(f"column {j2} does not hold symbol {s} exactly once")
    i3 = i3_rows[0]

    start = state
    moves: list[IntercalateMove] = []

    def push(st: SquareState, m: IntercalateMove) -> SquareState:
        moves.append(m)
        return apply_move(st, m)

    if i3 == i2:
        # The negative row itself holds s at j2: one move does it all.
        state = push(state, IntercalateMove.from_anchors(i1, j1, t, i2, j2, s))
        return state, MoveSequence(start, tuple(moves), state)

    # General case.  Chase the chain of rows (i2, i3) from each of the two
    # columns where row i2 holds s; a usable chain ends on a column where
    # row i3 yields one of the improper cell's positives and never touches
    # j2 (row i3 holding s there would derail the closing steps).
    p_lo, p_hi = rec.positive_pair
    starts = [c for c in state.cube.cols_with(i2, s) if c != j1]
    chains: list[tuple[list[int], int]] = []
    for c_start in sorted(starts):
        cols = [c_start]
        terminal = -1
        while True:
            sym3 = state.cube.symbol_at(i3, cols[-1])
            if sym3 in (p_lo, p_hi):
                terminal = sym3
                break
            if sym3 == s:
                break  # ran into column j2; chain unusable
            nxt = _unique_col(state, i2, sym3)
            if nxt in cols or nxt in starts:
                break  # closed on itself; chain unusable
            cols.append(nxt)
        if terminal >= 0:
            chains.append((cols, terminal))
    if not chains:
        raise LatinSquareError("no usable chain found; state is corrupt")
    chain, b_sym = min(chains, key=lambda cb: (len(cb[0]), cb[0][0]))
    c1 = chain[0]

    state = push(state, IntercalateMove.from_anchors(i2, j1, s, i1, c1, b_sym))

    undo: list[IntercalateMove] = []
    if state.improper is not None and len(chain) >= 2:
        # Park the new negative cell (i1, c1) with moves on rows i1 and a
        # spare row, keeping rows i2 and i3 untouched for the cycle swap.
        spare = [
            r for r in state.cube.rows_with(c1, b_sym) if r not in (i1, i2, i3)
        ]
        if not spare:
            raise LatinSquareError("no spare row for the detour; state is corrupt")
        state, undo = _resolve_improper(state, spare[0])
        moves.extend(undo)

    if len(chain) >= 2:
        tops = tuple(state.cube.symbol_at(i2, c) for c in chain)
        bottoms = tuple(state.cube.symbol_at(i3, c) for c in chain)
        pattern = CyclePattern((i2, i3), tuple(chain), tops, bottoms)
        state, swap_seq = cycle_swap(state, pattern)
        moves.extend(swap_seq.moves)

    for m in reversed(undo):
        state = push(state, m.inverted())

    state = push(state, IntercalateMove.from_anchors(i3, j1, b_sym, i1, c1, s))
    state = push(state, IntercalateMove.from_anchors(i1, j1, t, i3, j2, s))
    return state, MoveSequence(start, tuple(moves), state)


def fix_row(
    state: SquareState, target: SquareState, k: int
) -> tuple[SquareState, list[IntercalateMove]]:
    """Make row ``k`` of a proper square equal to row ``k`` of ``target``.

    Assumes rows above ``k`` already agree; no move ever touches them.  Each
    round places the target symbol of the smallest mismatched column, then
    chains row-entry swaps while a negative cell persists in the working
    column, resolving it within rows below ``k`` once the displaced symbol
    reaches its own target column.  Costs at most 2(n-1)^2 moves.
    """
    n = state.n
    target_row = [target.cube.symbol_at(k, c) for c in range(n)]
    moves: list[IntercalateMove] = []
    while True:
        row = [state.cube.symbol_at(k, c) for c in range(n)]
        mismatched = [c for c in range(n) if row[c] != target_row[c]]
        if not mismatched:
            return state, moves
        j2 = mismatched[0]
        s = target_row[j2]
        t = row[j2]
        j1 = row.index(s)
        i1 = _unique_row_below(state, k, j2, s)
        m = IntercalateMove.from_anchors(k, j2, s, i1, j1, t)
        state = apply_move(state, m)
        moves.append(m)
        while state.improper is not None:
            rec = state.improper
            tau = rec.negative
            if target_row[rec.col] == tau:
                # tau landed on its own target column: close out the round
                # with a two-row resolution below row k.
                helpers = [
                    r for r in state.cube.rows_with(rec.col, tau) if r != k
                ]
                if not helpers or min(helpers) <= k:
                    raise LatinSquareError("no helper row below k; state is corrupt")
                state, cleanup = _resolve_improper(state, helpers[0])
                moves.extend(cleanup)
                break
            jt = target_row.index(tau)
            state, seq = swap_row_entries(state, k, rec.col, jt)
            moves.extend(seq.moves)


def _unique_row_below(state: SquareState, k: int, col: int, sym: int) -> int:
    rows = state.cube.rows_with(col, sym)
    if len(rows) != 1:
        raise LatinSquareError(f"column {col} does not hold {sym} exactly once")
    if rows[0] <= k:
        raise LatinSquareError(f"symbol {sym} of column {col} is not below row {k}")
    return rows[0]


def transform_path(a: SquareState, b: SquareState) -> MoveSequence:
    """An explicit move sequence transferring ``a`` into ``b``.

    Improper endpoints are first driven proper (and the suffix replayed in
    reverse for ``b``); rows are then fixed top-down, the last row being
    forced.  The sequence length is at most 2(n-1)^3 and every intermediate
    state is a valid proper or improper square.
    """
    if a.n != b.n:
        raise OrderMismatch(f"orders differ: {a.n} vs {b.n}")
    if a == b:
        return MoveSequence(a, (), b)
    state, seq_a = normalize_to_proper(a)
    b_proper, seq_b = normalize_to_proper(b)
    moves = list(seq_a.moves)
    for k in range(a.n - 1):
        state, row_moves = fix_row(state, b_proper, k)
        moves.extend(row_moves)
    if state != b_proper:
        raise LatinSquareError("row fixing did not converge; internal error")
    for m in reversed(seq_b.moves):
        inv = m.inverted()
        state = apply_move(state, inv)
        moves.append(inv)
    if state != b:
        raise LatinSquareError("endpoint mismatch after replay; internal error")
    return MoveSequence(a, tuple(moves), b)
