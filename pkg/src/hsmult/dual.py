"""Inverse-monomial dual space and its staircase combinatorics.

A dual term is the exponent alpha of 1/x^(alpha+1); dual elements are finite
scalar combinations of dual terms.  The contraction action is

    x^gamma . 1/x^(beta+1) = 1/x^(beta-gamma+1)   if beta - gamma >= 0,
                             0                    otherwise,

extended bilinearly.  Finite order ideals of exponents ("staircases") are kept
by their corners (pairwise incomparable maxima); every colon or membership
query reduces to componentwise comparisons against corners.
"""

from __future__ import annotations

import itertools

from .errors import CapExceeded, NotZeroDimensional, RingMismatch, ZeroElement
from .poly import exp_leq, exp_sub_nonneg


class DualElement:
    """Finite scalar combination of dual terms, keyed by exponent."""

    __slots__ = ("field", "nvars", "coeffs")

    def __init__(self, field, nvars, coeffs):
        self.field = field
        self.nvars = nvars
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    @classmethod
    def term(cls, field, alpha, scalar=None):
        return cls(field, len(alpha), {tuple(alpha): scalar or field.one()})

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise RingMismatch("dual elements live in different modules")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return DualElement(self.field, self.nvars, out)

    def __neg__(self):
        return DualElement(self.field, self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        if not scalar:
            return DualElement(self.field, self.nvars, {})
        return DualElement(
            self.field, self.nvars, {e: c * scalar for e, c in self.coeffs.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, DualElement)
            and other.field == self.field
            and other.nvars == self.nvars
            and other.coeffs == self.coeffs
        )

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        return set(self.coeffs)

    def to_pairs(self, order=None):
        """Serialization form: [(exponent list, coefficient string), ...]."""
        keys = list(self.coeffs)
        if order is not None:
            keys.sort(key=order.key, reverse=True)
        else:
            keys.sort(key=lambda e: (sum(e), e), reverse=True)
        return [(list(e), self.field.to_str(self.coeffs[e])) for e in keys]

    def __repr__(self):
        return " + ".join(
            f"({self.field.to_str(c)})/x^{tuple(x + 1 for x in e)}"
            for e, c in self.coeffs.items()
        ) or "0"


def act(f, eta):
    """Contraction action of a polynomial on a dual element (exact, bilinear)."""
    if isinstance(eta, tuple):
        eta = DualElement.term(f.field, eta)
    if f.nvars != eta.nvars or f.field != eta.field:
        raise RingMismatch("action across different rings")
    out = {}
    for gamma, c in f.coeffs.items():
        for beta, d in eta.coeffs.items():
            rest = exp_sub_nonneg(beta, gamma)
            if rest is None:
                continue
            s = out.get(rest)
            prod = c * d
            if s is None:
                if prod:
                    out[rest] = prod
            else:
                s = s + prod
                if s:
                    out[rest] = s
                else:
                    del out[rest]
    return DualElement(f.field, f.nvars, out)


def leading(eta, order):
    """(leading term, leading coefficient) of a nonzero dual element."""
    if not eta:
        raise ZeroElement("zero element has no leading term")
    lt = max(eta.coeffs, key=order.key)
    return lt, eta.coeffs[lt]


class Staircase:
    """A finite order ideal of Z_{>=0}^n given by its corners."""

    __slots__ = ("nvars", "corners", "_size", "_points")

    def __init__(self, nvars, corners=()):
        corners = {tuple(c) for c in corners}
        # drop dominated corners so the stored set is pairwise incomparable
        maxima = {
            c
            for c in corners
            if not any(c != d and exp_leq(c, d) for d in corners)
        }
        self.nvars = nvars
        self.corners = frozenset(maxima)
        self._size = None
        self._points = None

    def is_empty(self):
        return not self.corners

    def contains(self, beta):
        return any(exp_leq(beta, c) for c in self.corners)

    def with_corner(self, beta):
        return Staircase(self.nvars, set(self.corners) | {tuple(beta)})

    def points(self, limit=None):
        """All members, sorted canonically.  Raises CapExceeded past limit."""
        if self._points is None:
            seen = set()
            stack = []
            for c in self.corners:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
            while stack:
                p = stack.pop()
                for i in range(self.nvars):
                    if p[i]:
                        q = p[:i] + (p[i] - 1,) + p[i + 1 :]
                        if q not in seen:
                            seen.add(q)
                            stack.append(q)
                if limit is not None and len(seen) > limit:
                    raise CapExceeded("staircase size", limit)
            self._points = sorted(seen, key=lambda e: (sum(e), e))
        if limit is not None and len(self._points) > limit:
            raise CapExceeded("staircase size", limit)
        return self._points

    def size(self, limit=None):
        if self._size is None:
            self._size = len(self.points(limit))
        return self._size

    def min_generators(self):
        """Minimal monomial generators of the complementary monomial ideal.

        Each coordinate of a minimal generator is 0 or corner_i + 1 for some
        corner, so scanning that finite grid is exhaustive.
        """
        if not self.corners:
            return [(0,) * self.nvars]
        coord_cands = []
        for i in range(self.nvars):
            vals = {0}
            vals.update(c[i] + 1 for c in self.corners)
            coord_cands.append(sorted(vals))
        gens = []
        for beta in itertools.product(*coord_cands):
            if self.contains(beta):
                continue
            ok = True
            for i in range(self.nvars):
                if beta[i]:
                    down = beta[:i] + (beta[i] - 1,) + beta[i + 1 :]
                    if not self.contains(down):
                        ok = False
                        break
            if ok:
                gens.append(beta)
        return sorted(gens, key=lambda e: (sum(e), e))

    def __eq__(self, other):
        return (
            isinstance(other, Staircase)
            and other.nvars == self.nvars
            and other.corners == self.corners
        )

    def __hash__(self):
        return hash((self.nvars, self.corners))

    def __repr__(self):
        return f"Staircase({sorted(self.corners)})"


def initial_staircase(supports, nvars, max_size=None):
    """Standard-monomial staircase of the monomial ideal spanned by supports.

    ``supports`` is an iterable of exponent sets (one per generator).  Returns
    (staircase, points) where points is the full dual-term enumeration.
    Raises NotZeroDimensional when some variable has no pure-power bound.
    """
    gens = set()
    for sup in supports:
        gens.update(tuple(e) for e in sup)
    zero = (0,) * nvars
    if zero in gens:
        return Staircase(nvars, ()), []
    # minimal generators only
    gens = {g for g in gens if not any(g != h and exp_leq(h, g) for h in gens)}
    bounds = []
    for i in range(nvars):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(nvars) if j != i)]
        if not pure:
            raise NotZeroDimensional(i)
        bounds.append(min(pure))
    # the staircase contains every axis point below its pure-power bound
    if max_size is not None and any(b > max_size for b in bounds):
        raise CapExceeded("staircase size", max_size)
    box = 1
    for b in bounds:
        box *= b
    if box > 20_000_000:
        raise CapExceeded("staircase bounding box", 20_000_000)
    pts = []
    for alpha in itertools.product(*(range(b) for b in bounds)):
        if not any(exp_leq(g, alpha) for g in gens):
            pts.append(alpha)
            if max_size is not None and len(pts) > max_size:
                raise CapExceeded("staircase size", max_size)
    pts.sort(key=lambda e: (sum(e), e))
    ptset = set(pts)
    corners = [
        p
        for p in pts
        if all(p[:i] + (p[i] + 1,) + p[i + 1 :] not in ptset for i in range(nvars))
    ]
    st = Staircase(nvars, corners)
    st._points = pts
    st._size = len(pts)
    return st, pts


def socle_candidates(st):
    """Dual terms of the minimal generators of the staircase's monomial ideal.

    Exactly the terms of (N :_E m) \\ N when N is the staircase's term module.
    """
    return st.min_generators()


def span_of_terms(elements, nvars=None):
    """Smallest staircase containing every term appearing in the elements."""
    exps = set()
    for eta in elements:
        nvars = eta.nvars
        exps.update(eta.coeffs)
    if nvars is None:
        raise ValueError("cannot infer variable count from an empty family")
    return Staircase(nvars, exps)


def gamma_candidates(t2, ltn, order, tau0, limit=None):
    """Dual terms in (T2 :_E m) outside LT(N) and strictly below tau0, descending.

    The colon of a term module adds exactly the minimal generators of the
    complementary monomial ideal to the staircase itself.
    """
    if ltn.contains(tau0):
        raise ValueError("tau0 must lie outside the LT staircase")
    k0 = order.key(tau0)
    out = [p for p in t2.points(limit) if order.key(p) < k0 and not ltn.contains(p)]
    out.extend(
        g
        for g in t2.min_generators()
        if order.key(g) < k0 and not ltn.contains(g)
    )
    out.sort(key=order.key, reverse=True)
    return out
