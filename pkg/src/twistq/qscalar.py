"""Exact ground-field arithmetic.

All coefficients of the engine live in the field Q(w)(s), where w is a
primitive r-th root of unity (r = 1, 2, 3) and s stands for the square
root of the deformation parameter: q = s^2.  Everything is exact; there
is no floating point anywhere.

Three layers:

* ``CycRational``  -- an element of Q(w) = Q[t]/Phi_r(t), stored as a
  short tuple of rationals (length 1 for r <= 2, length 2 for r = 3).
* ``LaurentScalar`` -- a Laurent polynomial in s with CycRational
  coefficients, stored as a sparse dict {exponent: coefficient}.
* ``Scalar``       -- a reduced fraction of two LaurentScalars.  The
  denominator is kept monic with lowest exponent 0; equality is decided
  by cross multiplication.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a hard dep, Fraction is a safety net
    from fractions import Fraction as QQ

__all__ = [
    "QQ",
    "CycRational",
    "LaurentScalar",
    "Scalar",
    "qint",
    "qfactorial",
    "qbinomial",
    "evaluate",
    "scalar_to_json",
    "scalar_from_json",
]

_Q0 = QQ(0)
_Q1 = QQ(1)

# degree of the cyclotomic field over Q for the supported twist orders
_DEG = {1: 1, 2: 1, 3: 2}


# ---------------------------------------------------------------------------
# raw cyclotomic coefficients: tuples of QQ of length _DEG[r]
# ---------------------------------------------------------------------------

def _cyc_zero(r):
    return (_Q0,) * _DEG[r]


def _cyc_one(r):
    return (_Q1,) + (_Q0,) * (_DEG[r] - 1)


def _cyc_from_rat(r, a):
    return (QQ(a),) + (_Q0,) * (_DEG[r] - 1)


def _cyc_is_zero(v):
    for a in v:
        if a:
            return False
    return True


def _cyc_add(u, v):
    if len(u) == 1:
        return (u[0] + v[0],)
    return (u[0] + v[0], u[1] + v[1])


def _cyc_sub(u, v):
    if len(u) == 1:
        return (u[0] - v[0],)
    return (u[0] - v[0], u[1] - v[1])


def _cyc_neg(u):
    if len(u) == 1:
        return (-u[0],)
    return (-u[0], -u[1])


def _cyc_mul(u, v):
    # r = 3 multiplies modulo w^2 = -1 - w
    if len(u) == 1:
        return (u[0] * v[0],)
    a, b = u
    c, d = v
    bd = b * d
    return (a * c - bd, a * d + b * c - bd)


def _cyc_inv(u):
    if len(u) == 1:
        if not u[0]:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return (1 / QQ(u[0]),)
    a, b = u
    n = a * a - a * b + b * b  # norm of a + b*w over Q
    if not n:
        raise ZeroDivisionError("inverse of zero in Q(w)")
    return ((a - b) / n, -b / n)


def _cyc_omega(r, k):
    """w^k as a raw coefficient tuple."""
    k %= r
    if r == 1:
        return (_Q1,)
    if r == 2:
        return (_Q1,) if k == 0 else (-_Q1,)
    if k == 0:
        return (_Q1, _Q0)
    if k == 1:
        return (_Q0, _Q1)
    return (-_Q1, -_Q1)  # w^2 = -1 - w


class CycRational:
    """An element of the cyclotomic field Q(w), w = exp(2*pi*i/r), r <= 3.

    For r <= 2 the vector has length 1 and the field degenerates to Q;
    the same code path serves all supported twist orders.
    """

    __slots__ = ("r", "vec")

    def __init__(self, r, vec):
        self.r = r
        self.vec = tuple(QQ(a) for a in vec)
        if len(self.vec) != _DEG[r]:
            raise ValueError(f"coefficient vector must have length {_DEG[r]} for r={r}")

    @classmethod
    def from_rational(cls, r, a):
        return cls(r, _cyc_from_rat(r, a))

    @classmethod
    def omega(cls, r, k=1):
        return cls(r, _cyc_omega(r, k))

    @classmethod
    def omega0(cls, r, k=1):
        """(w0)^k where w0 = (-1)^r * w."""
        v = _cyc_omega(r, k)
        if r % 2 and k % 2:
            v = _cyc_neg(v)
        return cls(r, v)

    def is_zero(self):
        return _cyc_is_zero(self.vec)

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, CycRational):
            if other.r != self.r:
                raise ValueError("mixed cyclotomic orders")
            return other.vec
        return _cyc_from_rat(self.r, other)

    def __add__(self, other):
        return CycRational(self.r, _cyc_add(self.vec, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return CycRational(self.r, _cyc_sub(self.vec, self._coerce(other)))

    def __rsub__(self, other):
        return CycRational(self.r, _cyc_sub(self._coerce(other), self.vec))

    def __neg__(self):
        return CycRational(self.r, _cyc_neg(self.vec))

    def __mul__(self, other):
        return CycRational(self.r, _cyc_mul(self.vec, self._coerce(other)))

    __rmul__ = __mul__

    def inverse(self):
        return CycRational(self.r, _cyc_inv(self.vec))

    def __truediv__(self, other):
        if not isinstance(other, CycRational):
            other = CycRational.from_rational(self.r, other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, CycRational):
            return self.r == other.r and self.vec == other.vec
        return self.vec == _cyc_from_rat(self.r, other)

    def __hash__(self):
        return hash((self.r, self.vec))

    def __repr__(self):
        if len(self.vec) == 1:
            return str(self.vec[0])
        a, b = self.vec
        if not b:
            return str(a)
        if not a:
            return f"{b}*w"
        return f"({a} + {b}*w)"


# ---------------------------------------------------------------------------
# raw Laurent polynomials in s: dict {int exponent: cyc tuple}
# ---------------------------------------------------------------------------

def _lp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        u = out.get(e)
        if u is None:
            out[e] = c
        else:
            v = _cyc_add(u, c)
            if _cyc_is_zero(v):
                del out[e]
            else:
                out[e] = v
    return out


def _lp_neg(a):
    return {e: _cyc_neg(c) for e, c in a.items()}


def _lp_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            c = _cyc_mul(ca, cb)
            u = out.get(e)
            if u is None:
                out[e] = c
            else:
                v = _cyc_add(u, c)
                if _cyc_is_zero(v):
                    del out[e]
                else:
                    out[e] = v
    return out


def _lp_scale(a, c):
    if _cyc_is_zero(c):
        return {}
    return {e: _cyc_mul(v, c) for e, v in a.items()}


def _lp_shift(a, k):
    if k == 0:
        return a
    return {e + k: c for e, c in a.items()}


def _lp_min(a):
    return min(a) if a else 0


def _lp_max(a):
    return max(a) if a else 0


def _lp_divmod(a, b):
    """Polynomial division for dicts with min exponent >= 0, b != 0."""
    db = _lp_max(b)
    da = _lp_max(a) if a else 0
    if not a or da < db:
        return {}, dict(a)
    r = len(next(iter(b.values())))
    zero = (_Q0,) * r
    A = [zero] * (da + 1)
    for e, c in a.items():
        A[e] = c
    B = [zero] * (db + 1)
    for e, c in b.items():
        B[e] = c
    lb = _cyc_inv(B[db])
    quo = {}
    for top in range(da, db - 1, -1):
        lead = A[top]
        if _cyc_is_zero(lead):
            continue
        f = _cyc_mul(lead, lb)
        quo[top - db] = f
        off = top - db
        for e in range(db + 1):
            c = B[e]
            if not _cyc_is_zero(c):
                A[e + off] = _cyc_sub(A[e + off], _cyc_mul(c, f))
    rem = {e: c for e, c in enumerate(A[:db]) if not _cyc_is_zero(c)}
    return quo, rem


def _lp_gcd(a, b):
    """Monic gcd of two nonzero polynomial dicts (min exponent >= 0)."""
    while b:
        _, r = _lp_divmod(a, b)
        a, b = b, r
    lead = _cyc_inv(a[_lp_max(a)])
    return {e: _cyc_mul(c, lead) for e, c in a.items()}


# denominators are reduced lazily: only once they grow past this size
# (keeps memory bounded without a gcd pass on every ring operation)
_REDUCE_AT = 24


class LaurentScalar:
    """Laurent polynomial in s = q^(1/2) over Q(w); sparse, no zero terms."""

    __slots__ = ("r", "c")

    def __init__(self, r, coeffs=None):
        self.r = r
        if coeffs is None:
            self.c = {}
        elif isinstance(coeffs, dict):
            self.c = {}
            for e, v in coeffs.items():
                if isinstance(v, CycRational):
                    v = v.vec
                elif not isinstance(v, tuple):
                    v = _cyc_from_rat(r, v)
                if not _cyc_is_zero(v):
                    self.c[int(e)] = v
        else:
            raise TypeError("coeffs must be a dict")

    @classmethod
    def _raw(cls, r, c):
        obj = cls.__new__(cls)
        obj.r = r
        obj.c = c
        return obj

    @classmethod
    def zero(cls, r):
        return cls._raw(r, {})

    @classmethod
    def one(cls, r):
        return cls._raw(r, {0: _cyc_one(r)})

    @classmethod
    def s_power(cls, r, n, coeff=1):
        v = coeff.vec if isinstance(coeff, CycRational) else _cyc_from_rat(r, coeff)
        if _cyc_is_zero(v):
            return cls.zero(r)
        return cls._raw(r, {int(n): v})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.r != self.r:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, CycRational)) or type(other) is QQ:
            return LaurentScalar(self.r, {0: other})
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentScalar._raw(self.r, _lp_add(self.c, o.c))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentScalar._raw(self.r, _lp_add(self.c, _lp_neg(o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        return LaurentScalar._raw(self.r, _lp_add(o.c, _lp_neg(self.c)))

    def __neg__(self):
        return LaurentScalar._raw(self.r, _lp_neg(self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentScalar._raw(self.r, _lp_mul(self.c, o.c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return self.r == other.r and self.c == other.c
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.c == o.c

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.c.items()))))

    def min_exp(self):
        return _lp_min(self.c)

    def max_exp(self):
        return _lp_max(self.c)

    def substitute(self, s0):
        """Evaluate at s = s0 (a nonzero rational); returns CycRational."""
        s0 = QQ(s0)
        if not s0:
            raise ValueError("s0 must be nonzero")
        acc = _cyc_zero(self.r)
        for e, c in self.c.items():
            acc = _cyc_add(acc, _cyc_mul(c, _cyc_from_rat(self.r, s0 ** e)))
        return CycRational(self.r, acc)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            c = CycRational(self.r, self.c[e])
            if e == 0:
                parts.append(f"{c!r}")
            else:
                parts.append(f"{c!r}*s^{e}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Scalar: reduced fractions of Laurent polynomials
# ---------------------------------------------------------------------------

def _normalize(r, num, den):
    """Reduce num/den; den becomes monic with min exponent 0."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {0: _cyc_one(r)}
    if len(den) == 1:
        # monomial denominator: fold into num entirely
        (e, c), = den.items()
        inv = _cyc_inv(c)
        num = _lp_scale(_lp_shift(num, -e), inv)
        return num, {0: _cyc_one(r)}
    dmin = _lp_min(den)
    nmin = _lp_min(num)
    # shift so both are honest polynomials before taking the gcd
    npoly = _lp_shift(num, -nmin)
    dpoly = _lp_shift(den, -dmin)
    g = _lp_gcd(dict(npoly), dict(dpoly))
    if len(g) > 1 or _lp_min(g) != 0:
        npoly, _ = _lp_divmod(npoly, g)
        dpoly, _ = _lp_divmod(dpoly, g)
    shift = nmin - dmin
    if len(dpoly) == 1:
        (e, c), = dpoly.items()
        inv = _cyc_inv(c)
        return _lp_scale(_lp_shift(npoly, shift - e), inv), {0: _cyc_one(r)}
    dm = _lp_min(dpoly)
    lead = _cyc_inv(dpoly[_lp_max(dpoly)])
    den2 = {e - dm: _cyc_mul(c, lead) for e, c in dpoly.items()}
    num2 = _lp_scale(_lp_shift(npoly, shift - dm), lead)
    return num2, den2


class Scalar:
    """A rational function in s over Q(w).

    The denominator is kept monic with lowest exponent 0; gcd reduction
    happens lazily (on growth, inversion, serialization, or when a
    polynomial-form query needs it).  Equality is decided by cross
    multiplication, which is insensitive to the reduction state.
    """

    __slots__ = ("r", "num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentScalar):
            raise TypeError("num must be a LaurentScalar")
        self.r = num.r
        if den is None:
            self.num = num.c
            self.den = {0: _cyc_one(self.r)}
        else:
            if den.r != num.r:
                raise ValueError("mixed cyclotomic orders")
            n, d = _normalize(self.r, num.c, den.c)
            self.num = n
            self.den = d

    @classmethod
    def _raw(cls, r, num, den):
        obj = cls.__new__(cls)
        obj.r = r
        obj.num = num
        obj.den = den
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, r):
        return cls._raw(r, {}, {0: _cyc_one(r)})

    @classmethod
    def one(cls, r):
        return cls._raw(r, {0: _cyc_one(r)}, {0: _cyc_one(r)})

    @classmethod
    def from_rational(cls, r, a):
        v = _cyc_from_rat(r, a)
        if _cyc_is_zero(v):
            return cls.zero(r)
        return cls._raw(r, {0: v}, {0: _cyc_one(r)})

    @classmethod
    def from_cyc(cls, c):
        if c.is_zero():
            return cls.zero(c.r)
        return cls._raw(c.r, {0: c.vec}, {0: _cyc_one(c.r)})

    @classmethod
    def s_power(cls, r, n, coeff=1):
        """coeff * s^n (n integer, s = q^(1/2))."""
        v = coeff.vec if isinstance(coeff, CycRational) else _cyc_from_rat(r, coeff)
        if _cyc_is_zero(v):
            return cls.zero(r)
        return cls._raw(r, {int(n): v}, {0: _cyc_one(r)})

    @classmethod
    def q_power(cls, r, n, coeff=1):
        """coeff * q^n where n may be a half integer (2n must be integral)."""
        two_n = QQ(n) * 2
        if two_n.denominator != 1:
            raise ValueError("q exponent must be a half integer")
        return cls.s_power(r, int(two_n), coeff)

    @classmethod
    def omega(cls, r, k=1):
        return cls.from_cyc(CycRational.omega(r, k))

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _reduce_inplace(self):
        """Bring to fully reduced form (same value; safe on shared objects)."""
        if self.den != {0: _cyc_one(self.r)}:
            n, d = _normalize(self.r, self.num, self.den)
            self.num = n
            self.den = d
        return self

    def is_polynomial(self):
        self._reduce_inplace()
        return self.den == {0: _cyc_one(self.r)}

    def is_monomial(self):
        return self.is_polynomial() and len(self.num) == 1

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.r != self.r:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, CycRational)) or type(other) is QQ:
            return Scalar.from_rational(self.r, other) if not isinstance(other, CycRational) \
                else Scalar.from_cyc(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        one = {0: _cyc_one(self.r)}
        sden1 = self.den == one
        oden1 = o.den == one
        if sden1 and oden1:
            return Scalar._raw(self.r, _lp_add(self.num, o.num), one)
        # a + c/d = (a d + c)/d stays reduced when gcd(c, d) = 1
        if sden1:
            num = _lp_add(_lp_mul(self.num, o.den), o.num)
            if not num:
                return Scalar.zero(self.r)
            return Scalar._raw(self.r, num, o.den)
        if oden1:
            num = _lp_add(self.num, _lp_mul(o.num, self.den))
            if not num:
                return Scalar.zero(self.r)
            return Scalar._raw(self.r, num, self.den)
        if self.den == o.den:
            num = _lp_add(self.num, o.num)
            if not num:
                return Scalar.zero(self.r)
            return Scalar._raw(self.r, num, self.den)
        num = _lp_add(_lp_mul(self.num, o.den), _lp_mul(o.num, self.den))
        if not num:
            return Scalar.zero(self.r)
        den = _lp_mul(self.den, o.den)
        if len(den) > _REDUCE_AT:
            n, d = _normalize(self.r, num, den)
            return Scalar._raw(self.r, n, d)
        return Scalar._raw(self.r, num, den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Scalar._raw(self.r, _lp_neg(self.num), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        one = {0: _cyc_one(self.r)}
        sden1 = self.den == one
        oden1 = o.den == one
        if sden1 and oden1:
            return Scalar._raw(self.r, _lp_mul(self.num, o.num), one)
        # monomial factors never share a divisor with a reduced denominator
        # (den is monic with nonzero constant term), so skip the gcd pass
        if oden1 and len(o.num) == 1:
            return Scalar._raw(self.r, _lp_mul(self.num, o.num), self.den)
        if sden1 and len(self.num) == 1:
            return Scalar._raw(self.r, _lp_mul(self.num, o.num), o.den)
        num = _lp_mul(self.num, o.num)
        den = _lp_mul(self.den, o.den)
        if not num:
            return Scalar.zero(self.r)
        if len(den) > _REDUCE_AT:
            n, d = _normalize(self.r, num, den)
            return Scalar._raw(self.r, n, d)
        # dens are monic with nonzero constant term, so the product already
        # is; defer the gcd until the denominator actually grows
        return Scalar._raw(self.r, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        n, d = _normalize(self.r, self.den, self.num)
        return Scalar._raw(self.r, n, d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k == 0:
            return Scalar.one(self.r)
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return self.num == o.num
        # cross multiplication is the canonical equality oracle
        return _lp_mul(self.num, o.den) == _lp_mul(o.num, self.den)

    def __hash__(self):
        raise TypeError("Scalar is not hashable; compare via ==")

    def numerator(self):
        self._reduce_inplace()
        return LaurentScalar._raw(self.r, dict(self.num))

    def denominator(self):
        self._reduce_inplace()
        return LaurentScalar._raw(self.r, dict(self.den))

    def substitute(self, s0):
        den = LaurentScalar._raw(self.r, self.den).substitute(s0)
        if den.is_zero():
            self._reduce_inplace()
            den = LaurentScalar._raw(self.r, self.den).substitute(s0)
            if den.is_zero():
                raise ZeroDivisionError(f"denominator vanishes at s0={s0}")
        num = LaurentScalar._raw(self.r, self.num).substitute(s0)
        return num / den

    def __repr__(self):
        n = repr(LaurentScalar._raw(self.r, self.num))
        if self.is_polynomial():
            return n
        return f"({n}) / ({LaurentScalar._raw(self.r, self.den)!r})"


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

def _check_d(d):
    d = QQ(d)
    if d <= 0 or (2 * d).denominator != 1:
        raise ValueError(f"d must be a positive half integer, got {d}")
    return d


def qint(k, d=1, r=2):
    """The q-integer [k] in base q^d, as a Laurent polynomial in s.

    [k] = (q^(dk) - q^(-dk)) / (q^d - q^(-d)) = sum_j q^(d(k-1-2j)),
    with [0] = 0 and [-k] = -[k].
    """
    d = _check_d(d)
    k = int(k)
    if k == 0:
        return Scalar.zero(r)
    sign = 1
    if k < 0:
        k, sign = -k, -1
    two_d = int(2 * d)
    c = {}
    for j in range(k):
        e = two_d * (k - 1 - 2 * j)
        v = c.get(e)
        c[e] = _cyc_add(v, _cyc_from_rat(r, sign)) if v is not None else _cyc_from_rat(r, sign)
    c = {e: v for e, v in c.items() if not _cyc_is_zero(v)}
    return Scalar._raw(r, c, {0: _cyc_one(r)})


def qfactorial(m, d=1, r=2):
    """[m]! = [1][2]...[m] in base q^d."""
    m = int(m)
    if m < 0:
        raise ValueError("qfactorial of a negative integer")
    out = Scalar.one(r)
    for k in range(2, m + 1):
        out = out * qint(k, d, r)
    return out


def qbinomial(m, s, d=1, r=2):
    """Gaussian binomial [m choose s] in base q^d; a Laurent polynomial."""
    m, s = int(m), int(s)
    if s < 0 or s > m:
        raise ValueError(f"qbinomial requires 0 <= s <= m, got ({m}, {s})")
    s = min(s, m - s)
    num = Scalar.one(r)
    den = Scalar.one(r)
    for j in range(1, s + 1):
        num = num * qint(m - s + j, d, r)
        den = den * qint(j, d, r)
    out = num / den
    if not out.is_polynomial():
        raise AssertionError("qbinomial did not reduce to a Laurent polynomial")
    return out


def evaluate(x, s0):
    """Exact evaluation homomorphism Scalar -> Q(w) at s = s0."""
    if isinstance(x, LaurentScalar):
        return x.substitute(s0)
    return x.substitute(s0)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _lp_to_json(r, c):
    return {str(e): [str(a) for a in v] for e, v in sorted(c.items())}


def _lp_from_json(r, obj):
    c = {}
    for e, vec in obj.items():
        c[int(e)] = tuple(QQ(a) for a in vec)
    return c


def scalar_to_json(x):
    x._reduce_inplace()
    return {"r": x.r, "num": _lp_to_json(x.r, x.num), "den": _lp_to_json(x.r, x.den)}


def scalar_from_json(obj):
    r = int(obj["r"])
    num = LaurentScalar._raw(r, _lp_from_json(r, obj["num"]))
    den = LaurentScalar._raw(r, _lp_from_json(r, obj["den"]))
    return Scalar(num, den)
