"""Multiplicity over a generic parameter field, reductions, and membership.

The first d ideal generators are combined with the remaining ones through
fresh parameters t_i_j; the colength of the combined ideal over K(t) is the
Hilbert-Samuel multiplicity, and the run leaves behind an explicit genericity
certificate: PolyList (polynomials that must not vanish at a specialization)
and MatList (matrices that must keep full column rank).  A coefficient matrix
passing both checks yields a reduction with those coefficients; an exhaustive
small-coefficient search and an independent length-recomputation check are
built on top, and equality of multiplicities decides integral-closure
membership.
"""

from __future__ import annotations

import dataclasses
import itertools
import threading
from dataclasses import dataclass

from .errors import CapExceeded, NotZeroDimensional, SearchExhausted
from .linalg import nonsingular_at
from .matlis import DEFAULT_CAPS, compute_dual_basis
from .modp import ModpConfig, ModpStats, make_solver
from .orders import MonomialOrder
from .poly import SparsePoly, lift_poly
from .scalars import FunctionField, pp_eval, pp_to_str
from .series import LinearCombination, SeriesOracle, as_oracle


def generator_to_str(gen, names):
    from .series import PolySeries, RationalSeries

    if isinstance(gen, SparsePoly):
        return gen.to_str(names)
    if isinstance(gen, PolySeries):
        return gen.poly.to_str(names)
    if isinstance(gen, RationalSeries):
        return f"({gen.num.to_str(names)})/({gen.den.to_str(names)})"
    raise TypeError(f"cannot serialize generator {gen!r}")


@dataclass(frozen=True)
class ProblemInstance:
    """One computation setup: R = S/I, J inside R, with dim R supplied."""

    base: object
    nvars: int
    var_names: tuple
    i_gens: tuple
    j_gens: tuple
    d: int
    order: MonomialOrder = MonomialOrder("glex")
    caps: object = DEFAULT_CAPS

    def __post_init__(self):
        if len(self.var_names) != self.nvars:
            raise ValueError("variable name count does not match nvars")
        if not (0 <= self.d <= self.nvars):
            raise ValueError("dim must satisfy 0 <= dim <= variable count")
        if not self.j_gens:
            raise ValueError("the ideal needs at least one generator")
        if self.d > 0 and len(self.j_gens) < self.d:
            raise ValueError("need at least dim generators")

    @property
    def m(self):
        return len(self.j_gens)

    def with_extra_generator(self, h):
        return dataclasses.replace(self, j_gens=self.j_gens + (h,))

    def canonical_key(self):
        order = self.order
        prec = "" if order.precedence is None else ",".join(map(str, order.precedence))
        parts = [
            f"char={self.base.char}",
            "vars=" + ",".join(self.var_names),
            f"order={order.kind}[{prec}]",
            f"dim={self.d}",
            "I=" + ";".join(generator_to_str(g, self.var_names) for g in self.i_gens),
            "J=" + ";".join(generator_to_str(g, self.var_names) for g in self.j_gens),
        ]
        return "|".join(parts)


def param_names(d, m):
    """t_i_j for row i <= d and source generator j in d+1..m."""
    return tuple(f"t_{i}_{j}" for i in range(1, d + 1) for j in range(d + 1, m + 1))


def _combine(ff, head, tail_scaled):
    """head + sum(scalar * gen) in the function field, lazily when needed."""
    parts = [(ff.one(), as_oracle(head))] + [
        (s, as_oracle(g)) for s, g in tail_scaled
    ]
    if all(o.is_polynomial() for _, o in parts):
        total = SparsePoly.zero(ff, parts[0][1].nvars)
        for s, o in parts:
            total = total + lift_poly(o.exact_poly(), ff).scale(s)
        return total
    return LinearCombination(ff, parts)


def _lift_gen(g, ff):
    if isinstance(g, SparsePoly):
        return lift_poly(g, ff)
    if isinstance(g, SeriesOracle) and g.is_polynomial():
        return lift_poly(g.exact_poly(), ff)
    return LinearCombination(ff, [(ff.one(), g)])


def generic_generators(inst):
    """(generator list, working field): d parameter combinations plus I.

    With m == d no parameters are introduced and the base field is kept.
    """
    d, m = inst.d, inst.m
    if m < d:
        raise ValueError("fewer generators than dim")
    if m == d:
        return list(inst.j_gens) + list(inst.i_gens), inst.base
    ff = FunctionField(inst.base, param_names(d, m))
    gens = []
    for i in range(d):
        tail = [
            (ff.param(f"t_{i + 1}_{j + 1}"), inst.j_gens[j]) for j in range(d, m)
        ]
        gens.append(_combine(ff, inst.j_gens[i], tail))
    for g in inst.i_gens:
        gens.append(_lift_gen(g, ff))
    return gens, ff


@dataclass
class MultiplicityResult:
    """e plus the certificate data from the generic run."""

    e: int
    d: int
    m: int
    params: tuple
    field: object
    base: object
    t1_size: int
    xi_count: int
    polylist: list
    matlist: list
    dual: object
    instance: ProblemInstance
    modp_stats: dict

    def polylist_strings(self):
        return [pp_to_str(p, self.params) for p in self.polylist]

    def matlist_grids(self):
        grids = []
        for M in self.matlist:
            grids.append(
                [[pp_to_str(a.num, self.params) for a in row] for row in M.rows]
            )
        return grids


_MULT_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def multiplicity(inst, modp=None, use_cache=True, initial_truncation=None):
    """Hilbert-Samuel multiplicity of J in R = S/I, with certificates.

    R must be Cohen-Macaulay of the supplied dimension and J primary for the
    maximal ideal; neither is decidable from the input, so the resource caps
    are the safety net for bad inputs.
    """
    key = inst.canonical_key()
    if use_cache:
        with _CACHE_LOCK:
            if key in _MULT_CACHE:
                return _MULT_CACHE[key]
    if inst.d == 0:
        res = _multiplicity_dim_zero(inst, modp)
    else:
        gens, ff = generic_generators(inst)
        stats = ModpStats()
        solver = make_solver(modp or ModpConfig(), stats)
        dual = compute_dual_basis(
            gens,
            inst.order,
            inst.caps,
            solver=solver,
            initial_truncation=initial_truncation,
        )
        params = ff.params if isinstance(ff, FunctionField) else ()
        res = MultiplicityResult(
            e=dual.length,
            d=inst.d,
            m=inst.m,
            params=params,
            field=ff,
            base=inst.base,
            t1_size=len(dual.t1_points),
            xi_count=len(dual.xis),
            polylist=list(dual.polylist),
            matlist=list(dual.matlist),
            dual=dual,
            instance=inst,
            modp_stats=stats.as_dict(),
        )
    if use_cache:
        with _CACHE_LOCK:
            _MULT_CACHE[key] = res
    return res


def _multiplicity_dim_zero(inst, modp):
    """dim 0: J must contain a unit, and e equals the length of R itself."""
    has_unit = False
    for g in inst.j_gens:
        p = g if isinstance(g, SparsePoly) else g.truncate(0)
        if p.constant_term():
            has_unit = True
            break
    if not has_unit:
        raise ValueError("dim 0 requires the ideal to contain a unit")
    if not inst.i_gens:
        raise ValueError("dim 0 with R = S has infinite length")
    stats = ModpStats()
    solver = make_solver(modp or ModpConfig(), stats)
    dual = compute_dual_basis(list(inst.i_gens), inst.order, inst.caps, solver=solver)
    return MultiplicityResult(
        e=dual.length,
        d=0,
        m=inst.m,
        params=(),
        field=inst.base,
        base=inst.base,
        t1_size=len(dual.t1_points),
        xi_count=len(dual.xis),
        polylist=[],
        matlist=[],
        dual=dual,
        instance=inst,
        modp_stats=stats.as_dict(),
    )


def _coerce_matrix(res, a):
    """Normalize a to a d x (m-d) tuple of base scalars (ints accepted)."""
    base = res.base
    rows = []
    for row in a:
        rows.append(
            tuple(base.from_int(v) if isinstance(v, int) else v for v in row)
        )
    rows = tuple(rows)
    if len(rows) != res.d or any(len(r) != res.m - res.d for r in rows):
        raise ValueError(f"coefficient matrix must be {res.d} x {res.m - res.d}")
    return rows


def _assignment(res, rows):
    values = {}
    k = 0
    for i in range(1, res.d + 1):
        for j in range(res.d + 1, res.m + 1):
            values[f"t_{i}_{j}"] = rows[i - 1][j - res.d - 1]
            k += 1
    return values


def certify(a, res):
    """Check conditions (a) and (b) of the genericity certificate at a.

    True guarantees the combination with coefficients a generates a reduction
    (hence has colength e).  False proves nothing: the conditions are
    sufficient only, and verify_reduction_by_length stays the decisive test.
    """
    rows = _coerce_matrix(res, a)
    if not res.params:
        return True
    assignment = _assignment(res, rows)
    values = tuple(assignment[name] for name in res.params)
    for poly in res.polylist:
        if not pp_eval(poly, values, res.base):
            return False
    for M in res.matlist:
        if not nonsingular_at(M, assignment):
            return False
    return True


def _shell_values(s):
    """0, 1, -1, 2, -2, ... up to magnitude s."""
    out = [0]
    for v in range(1, s + 1):
        out.extend((v, -v))
    return out


def _shell_matrices(d, cols, s):
    """Integer matrices with max-norm exactly s, lexicographic in shell order."""
    values = _shell_values(s)
    size = d * cols
    for flat in itertools.product(values, repeat=size):
        if max((abs(v) for v in flat), default=0) != s:
            continue
        yield tuple(tuple(flat[i * cols : (i + 1) * cols]) for i in range(d))


@dataclass(frozen=True)
class ReductionCertificate:
    """Coefficients a, how they were validated, and the reduction generators."""

    a: tuple
    mode: str  # "symbolic" | "length-verified"
    generators: tuple
    e: int


def reduction_generators(inst, rows):
    """The d combined generators f_i + sum_j a_ij f_j over the base field."""
    d, m = inst.d, inst.m
    base = inst.base
    gens = []
    for i in range(d):
        tail = [(rows[i][j - d], inst.j_gens[j]) for j in range(d, m)]
        parts = [(base.one(), as_oracle(inst.j_gens[i]))] + [
            (s, as_oracle(g)) for s, g in tail
        ]
        if all(o.is_polynomial() for _, o in parts):
            total = SparsePoly.zero(base, inst.nvars)
            for s, o in parts:
                total = total + o.exact_poly().scale(s)
            gens.append(total)
        else:
            gens.append(LinearCombination(base, parts))
    return tuple(gens)


def find_reduction(res, bound=5):
    """First certified coefficient matrix in the deterministic shell order.

    Integer entries are enumerated by max-norm shells starting at the all-zero
    matrix, ordering values 0, 1, -1, 2, -2, ... and tuples lexicographically
    within a shell.  Over a small finite field the search can exhaust the
    schedule, which raises SearchExhausted.
    """
    inst = res.instance
    cols = res.m - res.d
    if cols == 0 or res.d == 0:
        rows = tuple(() for _ in range(res.d))
        return ReductionCertificate(
            a=rows,
            mode="symbolic",
            generators=reduction_generators(inst, rows),
            e=res.e,
        )
    for s in range(bound + 1):
        for flat in _shell_matrices(res.d, cols, s):
            rows = _coerce_matrix(res, flat)
            if certify(rows, res):
                return ReductionCertificate(
                    a=rows,
                    mode="symbolic",
                    generators=reduction_generators(inst, rows),
                    e=res.e,
                )
    raise SearchExhausted(bound)


def length_verified_certificate(inst, a, res=None, modp=None):
    """Certificate for a user-chosen a, validated by length recomputation.

    Use when the symbolic conditions fail (they are sufficient only) but a is
    still expected to generate a reduction.  Raises ValueError when the
    recomputed colength differs from e.
    """
    if res is None:
        res = multiplicity(inst, modp=modp)
    rows = _coerce_matrix(res, a)
    if not verify_reduction_by_length(inst, rows, res, modp=modp):
        raise ValueError("coefficients do not generate a reduction (length differs)")
    return ReductionCertificate(
        a=rows,
        mode="length-verified",
        generators=reduction_generators(inst, rows),
        e=res.e,
    )


def verify_reduction_by_length(inst, a, res=None, modp=None):
    """Decisive reduction test: recompute the colength at the specialized point.

    Independent of the symbolic certificate.  A degenerate point can make the
    specialized ideal lose m-primarity or blow past the caps; when that happens
    at a point already failing certify, the answer is False.
    """
    if res is None:
        res = multiplicity(inst, modp=modp)
    rows = _coerce_matrix(res, a)
    gens = list(reduction_generators(inst, rows)) + list(inst.i_gens)
    stats = ModpStats()
    solver = make_solver(modp or ModpConfig(), stats)
    try:
        dual = compute_dual_basis(gens, inst.order, inst.caps, solver=solver)
    except (CapExceeded, NotZeroDimensional):
        if not certify(rows, res):
            return False
        raise
    return dual.length == res.e


def is_in_integral_closure(inst, h, modp=None):
    """Membership in the integral closure of J, by multiplicity comparison.

    Requires R equidimensional (implied by Cohen-Macaulay).  h is integral
    over J exactly when adjoining it leaves the multiplicity unchanged.
    """
    e1 = multiplicity(inst, modp=modp).e
    e2 = multiplicity(inst.with_extra_generator(h), modp=modp).e
    return e1 == e2


def clear_multiplicity_cache():
    with _CACHE_LOCK:
        _MULT_CACHE.clear()
