"""Modular acceleration of kernel decisions for parameter-polynomial matrices.

Specializing the parameters at a point of a large prime field can only lower
the rank, so a full-column-rank image certifies a trivial exact kernel
outright.  When the image does have a kernel vector, its support is used to
restrict the exact solve to few columns; the result is confirmed exactly, and
a failed confirmation costs only a retry with the next deterministic point
(falling back to the full exact kernel after that).  Correctness therefore
never depends on the specialization point being generic.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .errors import UnexpectedNullity
from .linalg import ExactMatrix, kernel, matvec, rank
from .poly import clear_row_denominators
from .scalars import FunctionField, pp_to_str

# largest primes below 2^31, descending
DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563)


@dataclass(frozen=True)
class SpecPoint:
    """A specialization target: reduce mod p after evaluating t at the values."""

    prime: int
    values: tuple
    retry: int = 0


@dataclass(frozen=True)
class ModpPolicy:
    """Deterministic point selection: counter-based hashing, never randomness."""

    primes: tuple = DEFAULT_PRIMES
    max_retries: int = 3
    forced_points: tuple = ()

    def __post_init__(self):
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")

    def point(self, serial, retry, nparams, char):
        """The retry-th specialization point for a matrix with this serialization."""
        if retry < len(self.forced_points):
            p, values = self.forced_points[retry]
            return SpecPoint(p, tuple(v % p for v in values), retry)
        p = char if char else self.primes[retry % len(self.primes)]
        values = []
        counter = 0
        while len(values) < nparams:
            h = hashlib.sha256(
                serial + b"|" + str(retry).encode() + b"|" + str(counter).encode()
            ).digest()
            for k in range(0, len(h) - 7, 8):
                if len(values) == nparams:
                    break
                values.append(int.from_bytes(h[k : k + 8], "big") % p)
            counter += 1
        return SpecPoint(p, tuple(values), retry)


@dataclass
class ModpStats:
    dispatched: int = 0
    direct: int = 0
    trivial_by_modp: int = 0
    accepted_by_support: int = 0
    retries: int = 0
    fallbacks: int = 0

    def as_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True)
class ModpConfig:
    mode: str = "auto"  # on | off | auto
    threshold: int = 4  # minimum column count for the modular path in auto mode
    policy: ModpPolicy = field(default_factory=ModpPolicy)

    def __post_init__(self):
        if self.mode not in ("on", "off", "auto"):
            raise ValueError(f"unknown modp mode {self.mode!r}")


def _integer_grid(M):
    """Rows as parameter polynomials with integer coefficients, plus a serial."""
    ff = M.field
    grid = [clear_row_denominators(ff, row) for row in M.rows]
    serial = ";".join(
        ",".join(pp_to_str(e, ff.params) for e in row) for row in grid
    ).encode()
    return grid, serial


def specialize(M, pt):
    """Entry-wise evaluation at pt.values followed by reduction mod pt.prime."""
    from .scalars import GF

    ff = M.field
    base = GF(pt.prime)
    grid, _ = _integer_grid(M)
    rows = []
    for row in grid:
        out = []
        for e in row:
            acc = 0
            for expo, c in e.items():
                term = c % pt.prime
                for v, d in zip(pt.values, expo):
                    term = term * pow(v, d, pt.prime) % pt.prime
                acc = (acc + term) % pt.prime
            out.append(base.from_int(acc))
        rows.append(tuple(out))
    return ExactMatrix(base, tuple(rows), M.ncols)


def _restricted_solve(M, support):
    """Exact kernel on the column-restricted system, embedded back with zeros."""
    cols = sorted(support)
    sub = ExactMatrix(
        M.field,
        tuple(tuple(row[j] for j in cols) for row in M.rows),
        len(cols),
    )
    try:
        v = kernel(sub)
    except UnexpectedNullity:
        return None
    if v is None:
        return None
    zero = M.field.zero()
    full = [zero] * M.ncols
    for j, a in zip(cols, v):
        full[j] = a
    return tuple(full)


def _modp_kernel_vector(Mp):
    """One kernel vector of the mod-p image, or None/'many'."""
    from .linalg import _eliminate_generic

    rows = [list(r) for r in Mp.rows]
    pivots = _eliminate_generic(rows, Mp.ncols, Mp.field)
    free = [c for c in range(Mp.ncols) if c not in {c for _, c in pivots}]
    if not free:
        return None
    if len(free) > 1:
        return "many"
    v = [Mp.field.zero()] * Mp.ncols
    v[free[0]] = Mp.field.one()
    for pr, pc in reversed(pivots):
        s = Mp.field.zero()
        for j in range(pc + 1, Mp.ncols):
            if rows[pr][j] and v[j]:
                s = s + rows[pr][j] * v[j]
        v[pc] = -(s / rows[pr][pc])
    return tuple(v)


def kernel_via_modp(M, policy=None, stats=None):
    """Exact kernel of a parameter matrix, decided through mod-p images.

    A trivial mod-p kernel is conclusive.  A nontrivial one proposes a column
    support for the exact solve; the candidate vector is confirmed against the
    full matrix, and on failure the next point is tried, then the exact path.
    """
    policy = policy or ModpPolicy()
    ff = M.field
    _, serial = _integer_grid(M)
    nparams = len(ff.params)
    for retry in range(policy.max_retries):
        if retry and stats is not None:
            stats.retries += 1
        pt = policy.point(serial, retry, nparams, ff.char)
        Mp = specialize(M, pt)
        vp = _modp_kernel_vector(Mp)
        if vp is None:
            if stats is not None:
                stats.trivial_by_modp += 1
            return None
        if vp == "many":
            continue
        support = {j for j, a in enumerate(vp) if a}
        v = _restricted_solve(M, support)
        if v is not None and not any(matvec(M, v)):
            if stats is not None:
                stats.accepted_by_support += 1
            return v
    if stats is not None:
        stats.fallbacks += 1
    return kernel(M)


def solve_dispatch(M, config=None, stats=None):
    """Route to the modular path for parameter matrices past the size threshold."""
    config = config or ModpConfig()
    if stats is not None:
        stats.dispatched += 1
    use_modp = (
        isinstance(M.field, FunctionField)
        and bool(M.field.params)
        and config.mode != "off"
        and (config.mode == "on" or M.ncols > config.threshold)
    )
    if not use_modp:
        if stats is not None:
            stats.direct += 1
        return kernel(M)
    return kernel_via_modp(M, config.policy, stats)


def make_solver(config=None, stats=None):
    """A kernel callable suitable for the composition-series engine."""
    config = config or ModpConfig()

    def solver(M):
        return solve_dispatch(M, config, stats)

    return solver
