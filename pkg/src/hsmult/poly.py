"""Sparse multivariate polynomials over an exact scalar field.

Exponents are plain tuples of non-negative ints.  Coefficient maps never store
zeros and iterate in a fixed canonical order (graded-lex descending), so equal
polynomials print and serialize identically.
"""

from __future__ import annotations

from .errors import DenominatorVanishes, RingMismatch
from .scalars import FunctionField, RationalFunction


def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_sub_nonneg(a, b):
    """a - b componentwise, or None if any entry would go negative."""
    out = []
    for x, y in zip(a, b):
        d = x - y
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


def exp_leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _canon_key(e):
    return (sum(e), e)


class SparsePoly:
    """Immutable sparse polynomial with exact scalar coefficients."""

    __slots__ = ("field", "nvars", "coeffs")

    def __init__(self, field, nvars, coeffs):
        clean = {e: c for e, c in coeffs.items() if c}
        ordered = {}
        for e in sorted(clean, key=_canon_key, reverse=True):
            if len(e) != nvars:
                raise RingMismatch("exponent length does not match variable count")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            ordered[e] = clean[e]
        self.field = field
        self.nvars = nvars
        self.coeffs = ordered

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, scalar):
        return cls(field, nvars, {(0,) * nvars: scalar})

    @classmethod
    def variable(cls, field, nvars, i):
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(field, nvars, {e: field.one()})

    @classmethod
    def monomial(cls, field, exponent, scalar=None):
        return cls(
            field, len(exponent), {tuple(exponent): scalar or field.one()}
        )

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise RingMismatch("polynomials live in different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return SparsePoly(self.field, self.nvars, out)

    def __neg__(self):
        return SparsePoly(self.field, self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = exp_add(ea, eb)
                if e in out:
                    s = out[e] + ca * cb
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                else:
                    out[e] = ca * cb
        return SparsePoly(self.field, self.nvars, out)

    def scale(self, scalar):
        if not scalar:
            return SparsePoly.zero(self.field, self.nvars)
        return SparsePoly(
            self.field, self.nvars, {e: c * scalar for e, c in self.coeffs.items()}
        )

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(self.field, self.nvars, self.field.one())
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and other.field == self.field
            and other.nvars == self.nvars
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, tuple(self.coeffs.keys())))

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return set(self.coeffs)

    def total_degree(self):
        return max((sum(e) for e in self.coeffs), default=-1)

    def min_degree(self):
        return min((sum(e) for e in self.coeffs), default=-1)

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, self.field.zero())

    def truncated(self, degree):
        """Terms of total degree <= degree."""
        return SparsePoly(
            self.field,
            self.nvars,
            {e: c for e, c in self.coeffs.items() if sum(e) <= degree},
        )

    def map_coefficients(self, fn, field):
        return SparsePoly(self.field if field is None else field, self.nvars,
                          {e: fn(c) for e, c in self.coeffs.items()})

    def to_str(self, names):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs.items():
            factors = [
                names[i] if d == 1 else f"{names[i]}^{d}" for i, d in enumerate(e) if d
            ]
            cs = self.field.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                if "/" in cs or " " in cs or "+" in cs or "-" in cs:
                    cs = f"({cs})"
                body = "*".join([cs] + factors)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return self.to_str([f"x{i}" for i in range(self.nvars)])


def lift_poly(p, ff):
    """Lift a base-field polynomial into a function field over the same base."""
    if p.field == ff:
        return p
    if p.field != ff.base:
        raise RingMismatch("polynomial base field does not match function field")
    return p.map_coefficients(ff.lift, ff)


def substitute_params(p, assignment):
    """Evaluate each K(t)-coefficient of p at a parameter point.

    ``assignment`` maps parameter names to base-field scalars and must cover
    every parameter of the coefficient field.  Raises DenominatorVanishes when
    the point is non-generic for some coefficient.
    """
    ff = p.field
    if not isinstance(ff, FunctionField):
        raise RingMismatch("polynomial has no parameters to substitute")
    missing = [name for name in ff.params if name not in assignment]
    if missing:
        raise ValueError(f"assignment misses parameters {missing}")
    values = tuple(assignment[name] for name in ff.params)
    base = ff.base
    out = {}
    for e, c in p.coeffs.items():
        v = c.evaluate(values)
        if v:
            out[e] = v
    return SparsePoly(base, p.nvars, out)


def clear_row_denominators(field, row):
    """Scale a row of function-field scalars to polynomial (denominator 1) form.

    Returns the list of numerator ppoly dicts after multiplying the row by the
    lcm of the denominators.  Kernels and ranks are invariant under this.
    """
    from .scalars import pp_const, pp_divexact, pp_lcm, pp_mul

    char = field.char
    r = len(field.params)
    lcm = pp_const(1, r, char)
    for a in row:
        if isinstance(a, RationalFunction) and a:
            lcm = pp_lcm(lcm, a.den, char)
    out = []
    for a in row:
        if not a:
            out.append({})
        else:
            out.append(pp_mul(a.num, pp_divexact(lcm, a.den, char), char))
    return out
