"""Dual-basis computation: composition series of (S/<F>)^vee by term order.

Starting from the staircase dual of the support monomial ideal, the engine
repeatedly picks the smallest candidate leading term tau0 not yet settled,
assembles the annihilation matrix over the colon candidates below tau0, and
either accepts a new basis element xi (one-dimensional kernel) or records the
rejection.  The accepted xi's and staircase terms together form a K-basis of
the dual module, so the basis size is the colength of <F>.

On a parameter field, the leading-coefficient numerators of accepted xi's and
the rejected matrices are retained: they are the genericity certificate used
by the reduction engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dual import (
    DualElement,
    Staircase,
    act,
    gamma_candidates,
    initial_staircase,
    socle_candidates,
)
from .errors import CapExceeded, InternalInconsistency, NotZeroDimensional
from .linalg import ExactMatrix, kernel
from .poly import SparsePoly
from .scalars import FunctionField, pp_leading, pp_primitive
from .series import SeriesOracle


@dataclass(frozen=True)
class ResourceCaps:
    """Termination safety net; m-primality itself is not decidable."""

    max_terms: int = 5000
    max_degree: int = 64
    max_iterations: int = 10000

    def __post_init__(self):
        if min(self.max_terms, self.max_degree, self.max_iterations) <= 0:
            raise ValueError("resource caps must be positive")


DEFAULT_CAPS = ResourceCaps()


def _gen_field(g):
    return g.field


def _gen_exact_poly(g):
    if isinstance(g, SparsePoly):
        return g
    if isinstance(g, SeriesOracle) and g.is_polynomial():
        return g.exact_poly()
    return None


def _gen_act(g, tau, nvars):
    p = _gen_exact_poly(g)
    if p is None:
        p = g.truncate(sum(tau) + nvars)
    return act(p, tau)


def build_matrix(gens, gamma, order, nvars):
    """Annihilation matrix: block rows per generator, columns indexed by gamma.

    Within a block, rows are indexed by the dual terms appearing in the images
    of the gamma terms, sorted descending; entry (s, k) is the coefficient of
    s in generator . gamma_k.  All-zero rows never appear.
    """
    field = _gen_field(gens[0])
    zero = field.zero()
    rows = []
    tags = []
    for gi, g in enumerate(gens):
        images = [_gen_act(g, tau, nvars) for tau in gamma]
        terms = set()
        for img in images:
            terms.update(img.coeffs)
        for s in sorted(terms, key=order.key, reverse=True):
            rows.append(tuple(img.coeffs.get(s, zero) for img in images))
            tags.append((gi, s))
    return ExactMatrix(field, tuple(rows), len(gamma), tuple(tags))


def canonical_cleared_matrix(M):
    """Clear denominators row-wise into K[t] entries, canonically scaled.

    Only constant row scalings are applied beyond the clearing (integer
    content and sign in characteristic 0, a leading-coefficient unit in
    characteristic p): scaling a row by a polynomial would move the locus
    where the specialized matrix drops rank, breaking condition (b) checks.
    """
    import math

    from .poly import clear_row_denominators
    from .scalars import pp_scale

    ff = M.field
    char = ff.char
    out = []
    for row in M.rows:
        nums = clear_row_denominators(ff, row)
        first = next((nm for nm in nums if nm), None)
        if first is not None:
            if char:
                _, lc = pp_leading(first)
                if lc != 1:
                    inv = pow(lc, char - 2, char)
                    nums = [pp_scale(nm, inv, char) for nm in nums]
            else:
                g = 0
                for nm in nums:
                    for c in nm.values():
                        g = math.gcd(g, abs(c))
                    if g == 1:
                        break
                _, lc = pp_leading(first)
                if lc < 0:
                    g = -g
                if g not in (0, 1):
                    nums = [{e: c // g for e, c in nm.items()} for nm in nums]
        out.append(tuple(ff.from_ppoly(nm) for nm in nums))
    return ExactMatrix(ff, tuple(out), M.ncols, M.row_tags)


class DualBasisState:
    """Single-owner state of one composition-series run."""

    def __init__(self, gens, order, caps, solver=None, initial_truncation=None):
        if not gens:
            raise ValueError("empty generator list")
        field = _gen_field(gens[0])
        nvars = gens[0].nvars
        for g in gens:
            if _gen_field(g) != field or g.nvars != nvars:
                raise ValueError("generators live in different rings")
        self.gens = list(gens)
        self.order = order
        self.caps = caps
        self.field = field
        self.nvars = nvars
        self.solver = solver or kernel
        self.track_certificates = isinstance(field, FunctionField) and bool(
            field.params
        )
        t1, pts = _initial_data(self.gens, nvars, caps, initial_truncation)
        self.t1 = t1
        self.t1_points = pts
        self.ltn = t1
        self.t2 = t1
        self.l1 = set()
        self.l2 = set(socle_candidates(t1))
        self.xis = []
        self.accepted_lts = []
        self.polylist = []
        self._polyset = set()
        self.matlist = []
        self.iterations = 0

    @property
    def length(self):
        return len(self.t1_points) + len(self.xis)

    def done(self):
        return self.l1 == self.l2

    def basis(self):
        """T1 terms ascending in the order, then xi's in acceptance order."""
        out = [
            DualElement.term(self.field, e)
            for e in sorted(self.t1_points, key=self.order.key)
        ]
        out.extend(self.xis)
        return out


def _initial_data(gens, nvars, caps, initial_truncation=None):
    """T1 staircase; oracle generators are truncated until the result is certified.

    A point survives only while no generator monomial of degree <= its own
    degree divides it, so once every staircase point has degree <= the
    truncation degree the staircase is exact.
    """
    exact = [_gen_exact_poly(g) for g in gens]
    if all(p is not None for p in exact):
        return initial_staircase([p.support() for p in exact], nvars, caps.max_terms)
    degree = max(
        [initial_truncation or 4]
        + [p.total_degree() for p in exact if p is not None]
    )
    last_error = None
    while degree <= caps.max_degree:
        sups = []
        for g, p in zip(gens, exact):
            sups.append(p.support() if p is not None else g.support_upto(degree))
        try:
            st, pts = initial_staircase(sups, nvars, caps.max_terms)
        except NotZeroDimensional as err:
            last_error = err
            degree = degree * 2
            continue
        maxdeg = max((sum(q) for q in pts), default=0)
        if maxdeg <= degree:
            return st, pts
        degree = maxdeg
    if last_error is not None:
        raise last_error
    raise CapExceeded("truncation degree", caps.max_degree)


def step(state):
    """One loop iteration: accept a xi or move tau0 to the rejected set."""
    if state.done():
        raise ValueError("step called on a finished state")
    order = state.order
    caps = state.caps
    tau0 = min(state.l2 - state.l1, key=order.key)
    if sum(tau0) > caps.max_degree:
        raise CapExceeded("candidate degree", caps.max_degree)
    cands = gamma_candidates(state.t2, state.ltn, order, tau0, limit=caps.max_terms)
    gamma = [tau0] + cands
    M = build_matrix(state.gens, gamma, order, state.nvars)
    vec = state.solver(M)
    if vec is None:
        state.l1.add(tau0)
        if state.track_certificates:
            state.matlist.append(canonical_cleared_matrix(M))
        return False
    c0 = vec[0]
    if not c0:
        raise InternalInconsistency(
            "kernel vector with vanishing leading coefficient"
        )
    xi = DualElement(state.field, state.nvars, dict(zip(gamma, vec)))
    inv = state.field.one() / c0
    xi = xi.scale(inv)
    if state.accepted_lts and order.key(tau0) <= order.key(state.accepted_lts[-1]):
        raise InternalInconsistency("leading terms of accepted elements not increasing")
    state.xis.append(xi)
    state.accepted_lts.append(tau0)
    if state.track_certificates:
        entry = pp_primitive(c0.num, state.field.char)
        key = frozenset(entry.items())
        if key not in state._polyset:
            state._polyset.add(key)
            state.polylist.append(entry)
    state.ltn = state.ltn.with_corner(tau0)
    state.t2 = Staircase(state.nvars, set(state.t2.corners) | set(xi.terms()))
    state.l2 = set(socle_candidates(state.ltn))
    return True


@dataclass
class DualBasisResult:
    field: object
    nvars: int
    order: object
    t1_points: list
    xis: list
    length: int
    polylist: list
    matlist: list
    iterations: int

    def basis(self):
        out = [
            DualElement.term(self.field, e)
            for e in sorted(self.t1_points, key=self.order.key)
        ]
        out.extend(self.xis)
        return out

    def export_basis(self):
        return [eta.to_pairs(self.order) for eta in self.basis()]


def compute_dual_basis(gens, order, caps=None, solver=None, initial_truncation=None):
    """Run the full composition-series loop; the basis size is the colength."""
    caps = caps or DEFAULT_CAPS
    state = DualBasisState(
        gens, order, caps, solver=solver, initial_truncation=initial_truncation
    )
    while not state.done():
        state.iterations += 1
        if state.iterations > caps.max_iterations:
            raise CapExceeded("loop iterations", caps.max_iterations)
        step(state)
    return DualBasisResult(
        field=state.field,
        nvars=state.nvars,
        order=order,
        t1_points=list(state.t1_points),
        xis=list(state.xis),
        length=state.length,
        polylist=list(state.polylist),
        matlist=list(state.matlist),
        iterations=state.iterations,
    )
