from fractions import Fraction

import pytest

from hsmult import (
    GF,
    QQ,
    ExactMatrix,
    FunctionField,
    ModpConfig,
    ModpPolicy,
    ModpStats,
    SpecPoint,
    kernel,
    kernel_via_modp,
    multiplicity,
    solve_dispatch,
    specialize,
)


@pytest.fixture
def ff():
    return FunctionField(QQ, ("a", "b"))


def test_specialize_spec_examples(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    M2 = ExactMatrix(ff, ((a, zero), (b, one)), 2)
    S = specialize(M2, SpecPoint(5, (2, 3)))
    assert [[e.v for e in row] for row in S.rows] == [[2, 0], [3, 1]]
    M3 = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    S3 = specialize(M3, SpecPoint(5, (2, 3)))
    assert [[e.v for e in row] for row in S3.rows] == [[1, 2, 0], [0, 3, 1]]
    Z = ExactMatrix(ff, ((zero, zero),), 2)
    SZ = specialize(Z, SpecPoint(7, (1, 1)))
    assert all(not e for row in SZ.rows for e in row)


def test_kernel_via_modp_spec_examples(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    assert kernel_via_modp(ExactMatrix(ff, ((a, zero), (b, one)), 2)) is None
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    assert kernel_via_modp(M) == (a, -one, b)
    M0 = ExactMatrix(ff, ((zero,),), 1)
    assert kernel_via_modp(M0) == (one,)


def test_forced_bad_points_recover(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    # trivial-kernel matrix, bad point (a=0) makes the image singular
    M2 = ExactMatrix(ff, ((a, zero), (b, one)), 2)
    stats = ModpStats()
    policy = ModpPolicy(forced_points=((5, (0, 3)),))
    assert kernel_via_modp(M2, policy, stats) is None
    assert stats.retries >= 1
    # kernel matrix, bad point truncates the support
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    stats2 = ModpStats()
    assert kernel_via_modp(M, ModpPolicy(forced_points=((5, (0, 3)),)), stats2) == (
        a,
        -one,
        b,
    )
    assert stats2.retries >= 1


def test_exact_fallback_after_all_retries(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    bad = (5, (0, 0))
    stats = ModpStats()
    policy = ModpPolicy(forced_points=(bad, bad, bad), max_retries=3)
    assert kernel_via_modp(M, policy, stats) == (a, -one, b)
    assert stats.fallbacks == 1


def test_determinism(ff):
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    policy = ModpPolicy()
    p1 = policy.point(b"serial", 0, 2, 0)
    p2 = policy.point(b"serial", 0, 2, 0)
    assert p1 == p2
    assert policy.point(b"serial", 1, 2, 0) != p1
    assert kernel_via_modp(M, policy) == kernel_via_modp(M, policy)


def test_dispatch_rules(ff):
    one = ff.one()
    stats = ModpStats()
    tiny = ExactMatrix(ff, ((one,),), 1)
    assert solve_dispatch(tiny, ModpConfig(mode="auto"), stats) is None
    assert stats.direct == 1  # below threshold
    MQ = ExactMatrix(QQ, ((Fraction(1), Fraction(2)),), 2)
    stats2 = ModpStats()
    solve_dispatch(MQ, ModpConfig(mode="on"), stats2)
    assert stats2.direct == 1  # no parameters: always direct
    a = ff.param("a")
    zero = ff.zero()
    wide = ExactMatrix(
        ff,
        tuple(
            tuple(one if i == j else (a if j > i else zero) for j in range(5))
            for i in range(5)
        ),
        5,
    )
    stats3 = ModpStats()
    assert solve_dispatch(wide, ModpConfig(mode="auto", threshold=4), stats3) is None
    assert stats3.direct == 0
    stats4 = ModpStats()
    assert solve_dispatch(wide, ModpConfig(mode="off"), stats4) is None
    assert stats4.direct == 1


def test_modp_over_prime_base_field():
    F = GF(32003)
    ff = FunctionField(F, ("a", "b"))
    a, b = ff.param("a"), ff.param("b")
    one, zero = ff.one(), ff.zero()
    M = ExactMatrix(ff, ((one, a, zero), (zero, b, one)), 3)
    assert kernel_via_modp(M) == (a, -one, b)


def test_modp_agrees_with_exact_on_fixture_matlists(
    example1, example2, example3, example4
):
    for inst in (example1, example2, example3, example4):
        res = multiplicity(inst)
        for M in res.matlist:
            exact = kernel(M)
            modular = kernel_via_modp(M)
            assert exact is None and modular is None or exact == modular
            # forced-bad-point injection still converges
            policy = ModpPolicy(forced_points=((5, (0,) * len(M.field.params)),))
            assert kernel_via_modp(M, policy) == exact


def test_config_validation():
    with pytest.raises(ValueError):
        ModpPolicy(max_retries=0)
    with pytest.raises(ValueError):
        ModpConfig(mode="sometimes")
