"""Exact rank and kernel computation over any field of the scalar tower.

Matrices over a function field are eliminated fraction-free: rows are cleared
to parameter-polynomial entries, elimination uses two-term cross products
(Bareiss-style) and strips the full content of every updated row, which keeps
entry degrees linear in the pivot count.  Base-field matrices use ordinary
Gaussian elimination.  Pivoting is deterministic: first row with a nonzero
entry in the current column, columns left to right.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnexpectedNullity
from .poly import clear_row_denominators
from .scalars import (
    FunctionField,
    pp_const,
    pp_divexact,
    pp_gcd,
    pp_lcm,
    pp_leading,
    pp_mul,
    pp_neg,
    pp_scale,
    pp_sub,
)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable rectangular matrix of field scalars with optional row tags."""

    field: object
    rows: tuple
    ncols: int
    row_tags: tuple | None = None

    @property
    def nrows(self):
        return len(self.rows)

    def entry(self, i, j):
        return self.rows[i][j]


def _strip_row_content(row, char, r):
    one = pp_const(1, r, char)
    g = {}
    for e in row:
        g = pp_gcd(g, e, char)
        if g == one:
            return
    if g and g != one:
        for j, e in enumerate(row):
            if e:
                row[j] = pp_divexact(e, g, char)


def _cleared_grid(M):
    return [clear_row_denominators(M.field, row) for row in M.rows]


def _eliminate_ff(grid, ncols, char, r):
    pivots = []
    rank_row = 0
    for c in range(ncols):
        pr = next((i for i in range(rank_row, len(grid)) if grid[i][c]), None)
        if pr is None:
            continue
        grid[rank_row], grid[pr] = grid[pr], grid[rank_row]
        prow = grid[rank_row]
        piv = prow[c]
        for i in range(rank_row + 1, len(grid)):
            a = grid[i][c]
            if not a:
                continue
            row = grid[i]
            new = [
                pp_sub(pp_mul(piv, row[j], char), pp_mul(a, prow[j], char), char)
                if (row[j] or prow[j])
                else {}
                for j in range(ncols)
            ]
            new[c] = {}
            _strip_row_content(new, char, r)
            grid[i] = new
        pivots.append((rank_row, c))
        rank_row += 1
        if rank_row == len(grid):
            break
    return pivots


def _eliminate_generic(rows, ncols, field):
    pivots = []
    rank_row = 0
    zero = field.zero()
    for c in range(ncols):
        pr = next((i for i in range(rank_row, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[rank_row], rows[pr] = rows[pr], rows[rank_row]
        prow = rows[rank_row]
        piv = prow[c]
        for i in range(rank_row + 1, len(rows)):
            a = rows[i][c]
            if not a:
                continue
            f = a / piv
            row = rows[i]
            row[c] = zero
            for j in range(c + 1, ncols):
                if prow[j]:
                    row[j] = row[j] - f * prow[j]
        pivots.append((rank_row, c))
        rank_row += 1
        if rank_row == len(rows):
            break
    return pivots


def _canonical_vector_ff(ff, fracs):
    """Clear denominators, divide by content, fix the sign of the first entry."""
    char = ff.char
    r = len(ff.params)
    one = pp_const(1, r, char)
    lcm = one
    for a in fracs:
        if a:
            lcm = pp_lcm(lcm, a.den, char)
    nums = [
        pp_mul(a.num, pp_divexact(lcm, a.den, char), char) if a else {} for a in fracs
    ]
    g = {}
    for nm in nums:
        g = pp_gcd(g, nm, char)
        if g == one:
            break
    if g and g != one:
        nums = [pp_divexact(nm, g, char) if nm else {} for nm in nums]
    first = next(nm for nm in nums if nm)
    _, lc = pp_leading(first)
    if char:
        if lc != 1:
            inv = pow(lc, char - 2, char)
            nums = [pp_scale(nm, inv, char) for nm in nums]
    elif lc < 0:
        nums = [pp_neg(nm, 0) for nm in nums]
    return tuple(ff.from_ppoly(nm) for nm in nums)


def kernel(M):
    """Trivial kernel -> None; one-dimensional kernel -> its canonical vector.

    Raises UnexpectedNullity when the nullity exceeds 1 (the composition-series
    context guarantees it cannot, so this signals a degenerate input).
    """
    if M.ncols < 1:
        raise ValueError("kernel of a matrix with no columns")
    field = M.field
    if isinstance(field, FunctionField):
        char = field.char
        r = len(field.params)
        grid = _cleared_grid(M)
        pivots = _eliminate_ff(grid, M.ncols, char, r)
        free = [c for c in range(M.ncols) if c not in {c for _, c in pivots}]
        if not free:
            return None
        if len(free) > 1:
            raise UnexpectedNullity(len(free))
        v = [field.zero()] * M.ncols
        v[free[0]] = field.one()
        for pr, pc in reversed(pivots):
            s = field.zero()
            for j in range(pc + 1, M.ncols):
                if grid[pr][j] and v[j]:
                    s = s + field.from_ppoly(grid[pr][j]) * v[j]
            v[pc] = -(s / field.from_ppoly(grid[pr][pc]))
        return _canonical_vector_ff(field, v)
    rows = [list(row) for row in M.rows]
    pivots = _eliminate_generic(rows, M.ncols, field)
    free = [c for c in range(M.ncols) if c not in {c for _, c in pivots}]
    if not free:
        return None
    if len(free) > 1:
        raise UnexpectedNullity(len(free))
    v = [field.zero()] * M.ncols
    v[free[0]] = field.one()
    for pr, pc in reversed(pivots):
        s = field.zero()
        for j in range(pc + 1, M.ncols):
            if rows[pr][j] and v[j]:
                s = s + rows[pr][j] * v[j]
        v[pc] = -(s / rows[pr][pc])
    first = next(a for a in v if a)
    inv = field.one() / first
    return tuple(a * inv for a in v)


def rank(M):
    """Exact rank over the entry field."""
    field = M.field
    if isinstance(field, FunctionField):
        grid = _cleared_grid(M)
        return len(_eliminate_ff(grid, M.ncols, field.char, len(field.params)))
    rows = [list(row) for row in M.rows]
    return len(_eliminate_generic(rows, M.ncols, field))


def matvec(M, v):
    out = []
    for row in M.rows:
        s = M.field.zero()
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def specialize_matrix(M, assignment):
    """Entry-wise evaluation of a function-field matrix at a parameter point."""
    ff = M.field
    values = tuple(assignment[name] for name in ff.params)
    base = ff.base
    rows = tuple(
        tuple(a.evaluate(values) if a else base.zero() for a in row) for row in M.rows
    )
    return ExactMatrix(base, rows, M.ncols)


def nonsingular_at(M, assignment):
    """True iff M keeps full column rank after substituting the parameter point."""
    return rank(specialize_matrix(M, assignment)) == M.ncols
