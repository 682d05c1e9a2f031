import random
from fractions import Fraction

import pytest

from hsmult import (
    QQ,
    ExactMatrix,
    FunctionField,
    UnexpectedNullity,
    kernel,
    nonsingular_at,
    rank,
)
from hsmult.linalg import matvec, specialize_matrix


@pytest.fixture
def ff():
    return FunctionField(QQ, ("a", "b"))


def test_kernel_spec_examples(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    assert kernel(M) == (a, -one, b)
    M2 = ExactMatrix(ff, ((a, zero), (b, one)), 2)
    assert kernel(M2) is None
    M3 = ExactMatrix(QQ, ((Fraction(0),),), 1)
    assert kernel(M3) == (Fraction(1),)


def test_rank_spec_examples(ff):
    a, b = ff.param("a"), ff.param("b")
    I3 = ExactMatrix(
        QQ,
        tuple(
            tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)
        ),
        3,
    )
    assert rank(I3) == 3
    Z = ExactMatrix(QQ, ((Fraction(0),) * 3, (Fraction(0),) * 3), 3)
    assert rank(Z) == 0
    M = ExactMatrix(ff, ((a, ff.zero()), (b, ff.one())), 2)
    assert rank(M) == 2


def test_nonsingular_at_spec_examples(ff):
    a, b = ff.param("a"), ff.param("b")
    M = ExactMatrix(ff, ((a, ff.zero()), (b, ff.one())), 2)
    assert nonsingular_at(M, {"a": Fraction(1), "b": Fraction(0)}) is True
    assert nonsingular_at(M, {"a": Fraction(0), "b": Fraction(1)}) is False
    one1 = ExactMatrix(ff, ((ff.one(),),), 1)
    assert nonsingular_at(one1, {"a": Fraction(3), "b": Fraction(11)}) is True


def test_kernel_vector_is_annihilated_and_rank_stable(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    v = kernel(M)
    assert all(not s for s in matvec(M, v))
    widened = ExactMatrix(
        ff, tuple(row + (s,) for row, s in zip(M.rows, matvec(M, v))), 4
    )
    assert rank(widened) == rank(M)


def test_unexpected_nullity(ff):
    zero = ff.zero()
    M = ExactMatrix(ff, ((zero, zero),), 2)
    with pytest.raises(UnexpectedNullity):
        kernel(M)


def test_no_columns_rejected(ff):
    with pytest.raises(ValueError):
        kernel(ExactMatrix(ff, ((),), 0))


def _random_ff_matrix(ff, rng, nrows, ncols):
    a, b = ff.param("a"), ff.param("b")
    pool = [
        ff.zero(),
        ff.one(),
        -ff.one(),
        a,
        b,
        a + b,
        a - ff.one(),
        ff.from_int(2),
        a * b,
    ]
    return ExactMatrix(
        ff,
        tuple(tuple(rng.choice(pool) for _ in range(ncols)) for _ in range(nrows)),
        ncols,
    )


def _naive_fraction_kernel(M):
    """Plain elimination in the fraction field, for cross-checking."""
    field = M.field
    rows = [list(r) for r in M.rows]
    ncols = M.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / piv
                for j in range(c, ncols):
                    rows[i][j] = rows[i][j] - f * rows[r][j]
        pivots.append((r, c))
        r += 1
    free = [c for c in range(ncols) if c not in {c for _, c in pivots}]
    if len(free) != 1:
        return len(free)
    v = [field.zero()] * ncols
    v[free[0]] = field.one()
    for pr, pc in reversed(pivots):
        s = field.zero()
        for j in range(pc + 1, ncols):
            if rows[pr][j] and v[j]:
                s = s + rows[pr][j] * v[j]
        v[pc] = -(s / rows[pr][pc])
    return v


def test_fraction_free_agrees_with_naive_elimination(ff):
    rng = random.Random(7)
    checked_vectors = 0
    for _ in range(60):
        M = _random_ff_matrix(ff, rng, rng.randint(1, 4), rng.randint(1, 4))
        naive = _naive_fraction_kernel(M)
        if isinstance(naive, int):  # nullity count
            if naive == 0:
                assert kernel(M) is None
            else:
                with pytest.raises(UnexpectedNullity):
                    kernel(M)
            assert rank(M) == M.ncols - naive
        else:
            v = kernel(M)
            assert v is not None
            assert all(not s for s in matvec(M, v))
            # same one-dimensional space: cross-multiplication proportionality
            k = next(i for i, s in enumerate(naive) if s)
            for i in range(M.ncols):
                assert naive[k] * v[i] == v[k] * naive[i]
            assert rank(M) == M.ncols - 1
            checked_vectors += 1
    assert checked_vectors >= 5


def test_specialize_matrix(ff):
    a, b = ff.param("a"), ff.param("b")
    M = ExactMatrix(ff, ((a, b),), 2)
    S = specialize_matrix(M, {"a": Fraction(2), "b": Fraction(-1)})
    assert S.rows == ((Fraction(2), Fraction(-1)),)
    assert S.field == QQ
