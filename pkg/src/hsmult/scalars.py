"""Exact scalar tower: rationals, prime fields, and rational functions in parameters.

Coefficient fields come in three layers:

* ``QQ`` -- exact rationals, elements are ``fractions.Fraction``;
* ``GF(p)`` -- prime fields, elements are ``GFElement``;
* ``FunctionField(base, params)`` -- rational functions in a fixed tuple of
  parameter names over either base, elements are ``RationalFunction``.

Parameter polynomials are plain dicts ``{exponent tuple: coefficient}`` with
integer coefficients (reduced to ``[1, p-1]`` in characteristic p) and no zero
entries.  Rational functions are kept canonical: numerator and denominator
coprime (multivariate gcd, integer content included), denominator with a
positive leading coefficient in characteristic 0 and monic in characteristic p.
This makes equality a dict comparison and certificate output reproducible.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DenominatorVanishes, RingMismatch

# ---------------------------------------------------------------------------
# parameter polynomials (internal representation)
# ---------------------------------------------------------------------------

PPoly = dict  # {tuple[int, ...]: int}, no zero coefficients


def pp_key(expo):
    """Canonical (graded, then lex) sort key for parameter exponents."""
    return (sum(expo), expo)


def pp_zero():
    return {}


def pp_const(c, r, char):
    if char:
        c %= char
    return {} if c == 0 else {(0,) * r: c}


def pp_is_const(a):
    return all(all(e == 0 for e in expo) for expo in a)


def pp_add(a, b, char):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if char:
            v %= char
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pp_neg(a, char):
    if char:
        return {e: (char - c) % char for e, c in a.items()}
    return {e: -c for e, c in a.items()}


def pp_sub(a, b, char):
    return pp_add(a, pp_neg(b, char), char)


def pp_mul(a, b, char):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if char:
                v %= char
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pp_scale(a, c, char):
    if char:
        c %= char
    if c == 0:
        return {}
    out = {}
    for e, v in a.items():
        w = v * c
        if char:
            w %= char
        if w:
            out[e] = w
    return out


def pp_leading(a):
    """(exponent, coefficient) of the canonical leading term."""
    e = max(a, key=pp_key)
    return e, a[e]


def pp_total_degree(a):
    return max((sum(e) for e in a), default=-1)


def pp_divexact(a, b, char):
    """Exact multivariate division a / b; raises ArithmeticError when not exact."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    eb, cb = pp_leading(b)
    cb_inv = _modinv(cb, char) if char else None
    q = {}
    r = dict(a)
    while r:
        er, cr = pp_leading(r)
        de = tuple(x - y for x, y in zip(er, eb))
        if any(d < 0 for d in de):
            raise ArithmeticError("division not exact")
        if char:
            qc = (cr * cb_inv) % char
        else:
            if cr % cb:
                raise ArithmeticError("division not exact")
            qc = cr // cb
        q[de] = qc
        r = pp_sub(r, pp_mul({de: qc}, b, char), char)
    return q


def _modinv(c, p):
    return pow(c % p, p - 2, p)


def pp_int_content(a):
    g = 0
    for c in a.values():
        g = math.gcd(g, abs(c))
        if g == 1:
            break
    return g


def _pp_unit_normalize(a, char):
    """Scale by a unit: monic in char p, positive leading coefficient in char 0."""
    if not a:
        return {}
    if char:
        _, lc = pp_leading(a)
        return pp_scale(a, _modinv(lc, char), char) if lc != 1 else a
    _, lc = pp_leading(a)
    return pp_neg(a, 0) if lc < 0 else a


def pp_primitive(a, char):
    """Primitive part: integer content removed (char 0) or monic (char p)."""
    if not a:
        return {}
    if char:
        return _pp_unit_normalize(a, char)
    g = pp_int_content(a)
    _, lc = pp_leading(a)
    if lc < 0:
        g = -g
    if g != 1:
        a = {e: c // g for e, c in a.items()}
    return a


def _as_uni(a, v):
    """View a as univariate in parameter #v with parameter-poly coefficients."""
    out = {}
    for e, c in a.items():
        d = e[v]
        e0 = e[:v] + (0,) + e[v + 1 :]
        out.setdefault(d, {})[e0] = c
    return out


def _from_uni(u, v):
    out = {}
    for d, poly in u.items():
        for e, c in poly.items():
            out[e[:v] + (d,) + e[v + 1 :]] = c
    return out


def _uni_content(u, char):
    c = {}
    one = None
    for poly in u.values():
        c = pp_gcd(c, poly, char)
        if one is None:
            one = pp_const(1, len(next(iter(c))), char) if c else None
        if c == one:
            break
    return c


def _uni_prem(A, B, v, char):
    """Pseudo-remainder of A by B (both univariate views in #v)."""
    dB = max(B)
    lb = B[dB]
    R = dict(A)
    while R and max(R) >= dB:
        dR = max(R)
        lr = R[dR]
        newR = {}
        for d, c in R.items():
            if d != dR:
                newR[d] = pp_mul(lb, c, char)
        for d, c in B.items():
            if d == dB:
                continue
            nd = d + dR - dB
            t = pp_mul(lr, c, char)
            acc = pp_sub(newR.get(nd, {}), t, char)
            if acc:
                newR[nd] = acc
            else:
                newR.pop(nd, None)
        R = {d: c for d, c in newR.items() if c}
    return R


def pp_gcd(a, b, char):
    """Multivariate gcd, unit-normalized (positive lead over Z, monic over F_p)."""
    if not a:
        return _pp_unit_normalize(b, char)
    if not b:
        return _pp_unit_normalize(a, char)
    active = set()
    for e in a:
        active.update(i for i, d in enumerate(e) if d)
    for e in b:
        active.update(i for i, d in enumerate(e) if d)
    r = len(next(iter(a)))
    if not active:
        if char:
            return pp_const(1, r, char)
        ca = next(iter(a.values()))
        cb = next(iter(b.values()))
        return pp_const(math.gcd(abs(ca), abs(cb)), r, 0)
    v = max(active)
    A = _as_uni(a, v)
    B = _as_uni(b, v)
    if max(A) < max(B):
        A, B = B, A
    ca = _uni_content(A, char)
    cb = _uni_content(B, char)
    cont = pp_gcd(ca, cb, char)
    A = {d: pp_divexact(c, ca, char) for d, c in A.items()}
    B = {d: pp_divexact(c, cb, char) for d, c in B.items()}
    while True:
        R = _uni_prem(A, B, v, char)
        if not R:
            g_uni = B
            break
        if max(R) == 0:
            # primitive parts coprime in #v: only the content survives
            return _pp_unit_normalize(cont, char)
        cr = _uni_content(R, char)
        A, B = B, {d: pp_divexact(c, cr, char) for d, c in R.items()}
    g = pp_mul(cont, _from_uni(g_uni, v), char)
    return _pp_unit_normalize(g, char)


def pp_lcm(a, b, char):
    if not a or not b:
        return {}
    g = pp_gcd(a, b, char)
    return pp_mul(a, pp_divexact(b, g, char), char)


def pp_eval(a, values, base):
    """Evaluate at a tuple of base-field scalars (one per parameter)."""
    acc = base.zero()
    for e, c in a.items():
        term = base.from_int(c)
        for val, d in zip(values, e):
            for _ in range(d):
                term = term * val
        acc = acc + term
    return acc


def pp_to_str(a, names):
    """Canonical human-readable form: terms descending in (degree, lex)."""
    if not a:
        return "0"
    parts = []
    for e in sorted(a, key=pp_key, reverse=True):
        c = a[e]
        factors = [
            names[i] if d == 1 else f"{names[i]}^{d}" for i, d in enumerate(e) if d
        ]
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# base fields
# ---------------------------------------------------------------------------


class RationalField:
    """The field of exact rationals; elements are fractions.Fraction."""

    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def to_str(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class GFElement:
    """Element of a prime field, stored reduced to [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _check(self, other):
        if not isinstance(other, GFElement) or other.p != self.p:
            raise RingMismatch("mixed prime-field arithmetic")

    def __add__(self, other):
        self._check(other)
        return GFElement(self.v + other.v, self.p)

    def __sub__(self, other):
        self._check(other)
        return GFElement(self.v - other.v, self.p)

    def __mul__(self, other):
        self._check(other)
        return GFElement(self.v * other.v, self.p)

    def __truediv__(self, other):
        self._check(other)
        if other.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GFElement(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.v, self.p)

    def __eq__(self, other):
        return isinstance(other, GFElement) and other.p == self.p and other.v == self.v

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"{self.v}"


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def zero(self):
        return GFElement(0, self.p)

    def one(self):
        return GFElement(1, self.p)

    def from_int(self, n):
        return GFElement(n, self.p)

    def to_str(self, a):
        return str(a.v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Canonical fraction num/den of parameter polynomials over a base field."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, _canonical=False):
        if _canonical:
            self.field = field
            self.num = num
            self.den = den
            return
        if not den:
            raise ZeroDivisionError("zero denominator")
        char = field.char
        r = len(field.params)
        if not num:
            self.field = field
            self.num = {}
            self.den = pp_const(1, r, char)
            return
        g = pp_gcd(num, den, char)
        if g != pp_const(1, r, char):
            num = pp_divexact(num, g, char)
            den = pp_divexact(den, g, char)
        if char:
            _, lc = pp_leading(den)
            if lc != 1:
                inv = _modinv(lc, char)
                num = pp_scale(num, inv, char)
                den = pp_scale(den, inv, char)
        else:
            _, lc = pp_leading(den)
            if lc < 0:
                num = pp_neg(num, 0)
                den = pp_neg(den, 0)
        self.field = field
        self.num = num
        self.den = den

    def _check(self, other):
        if not isinstance(other, RationalFunction) or other.field != self.field:
            raise RingMismatch("mixed function-field arithmetic")

    def __add__(self, other):
        self._check(other)
        ch = self.field.char
        num = pp_add(
            pp_mul(self.num, other.den, ch), pp_mul(other.num, self.den, ch), ch
        )
        return RationalFunction(self.field, num, pp_mul(self.den, other.den, ch))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        ch = self.field.char
        return RationalFunction(
            self.field,
            pp_mul(self.num, other.num, ch),
            pp_mul(self.den, other.den, ch),
        )

    def __truediv__(self, other):
        self._check(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        ch = self.field.char
        return RationalFunction(
            self.field,
            pp_mul(self.num, other.den, ch),
            pp_mul(self.den, other.num, ch),
        )

    def __neg__(self):
        return RationalFunction(
            self.field, pp_neg(self.num, self.field.char), self.den, _canonical=True
        )

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and other.field == self.field
            and other.num == self.num
            and other.den == self.den
        )

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        return hash(
            (self.field, frozenset(self.num.items()), frozenset(self.den.items()))
        )

    def is_polynomial(self):
        return pp_is_const(self.den)

    def evaluate(self, values):
        """Evaluate at base-field scalars, one per parameter of the field."""
        base = self.field.base
        dval = pp_eval(self.den, values, base)
        if not dval:
            raise DenominatorVanishes(str(self), values)
        return pp_eval(self.num, values, base) / dval

    def __repr__(self):
        return self.field.to_str(self)


class FunctionField:
    """Rational functions in a fixed ordered tuple of parameter names."""

    def __init__(self, base, params):
        self.base = base
        self.params = tuple(params)
        self.char = base.char

    def zero(self):
        return RationalFunction(self, {}, pp_const(1, len(self.params), self.char))

    def one(self):
        return RationalFunction(
            self,
            pp_const(1, len(self.params), self.char),
            pp_const(1, len(self.params), self.char),
        )

    def from_int(self, n):
        return self.lift(self.base.from_int(n))

    def lift(self, a):
        """Embed a base-field scalar."""
        r = len(self.params)
        if self.char:
            return RationalFunction(
                self, pp_const(a.v, r, self.char), pp_const(1, r, self.char)
            )
        return RationalFunction(
            self,
            pp_const(a.numerator, r, 0),
            pp_const(a.denominator, r, 0),
            _canonical=True,
        )

    def param(self, name):
        i = self.params.index(name)
        r = len(self.params)
        e = tuple(1 if j == i else 0 for j in range(r))
        return RationalFunction(self, {e: 1}, pp_const(1, r, self.char))

    def from_ppoly(self, num, den=None):
        r = len(self.params)
        return RationalFunction(self, num, den or pp_const(1, r, self.char))

    def to_str(self, a):
        num = pp_to_str(a.num, self.params)
        if pp_is_const(a.den):
            if a.den == pp_const(1, len(self.params), self.char):
                return num
            return f"({num})/({pp_to_str(a.den, self.params)})"
        return f"({num})/({pp_to_str(a.den, self.params)})"

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.base == self.base
            and other.params == self.params
        )

    def __hash__(self):
        return hash(("FF", self.base, self.params))

    def __repr__(self):
        return f"{self.base}({', '.join(self.params)})"


def scalar_to_str(field, a):
    return field.to_str(a)
