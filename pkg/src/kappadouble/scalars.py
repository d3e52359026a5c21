"""Exact coefficients: Gaussian rationals times hbar^a * lam^b.

``lam`` stands for 1/kappa and is the series variable.  Every product is
truncated above ``lam^N``; small negative ``lam`` powers (down to ``-L``) are
tolerated for intermediates.  Both bounds live in a module-level setting that
can be changed with :func:`truncation`.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

DEFAULT_ORDER = 6
DEFAULT_FLOOR = 1

_settings = {"order": DEFAULT_ORDER, "floor": DEFAULT_FLOOR}


class ConfigurationError(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    pass


def get_order():
    return _settings["order"]


def get_floor():
    return _settings["floor"]


def set_truncation(order, floor=None):
    if order < 0:
        raise ConfigurationError("truncation order must be >= 0, got %r" % (order,))
    _settings["order"] = int(order)
    if floor is not None:
        if floor < 0:
            raise ConfigurationError("lambda floor must be >= 0, got %r" % (floor,))
        _settings["floor"] = int(floor)


@contextmanager
def truncation(order, floor=None):
    """Temporarily change the lam truncation order (and optionally the floor)."""
    saved = dict(_settings)
    set_truncation(order, floor)
    try:
        yield
    finally:
        _settings.update(saved)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("exact rational expected, got %r" % (x,))


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Scalar:
    """Immutable element of Q(i)[hbar, 1/hbar][lam] / (lam^(N+1)).

    ``terms`` maps ``(hbar_power, lam_power)`` to a pair ``(re, im)`` of
    Fractions.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None, *, _trusted=False):
        if _trusted:
            self._terms = terms
        else:
            order, floor = get_order(), get_floor()
            clean = {}
            for (a, b), (re, im) in (terms or {}).items():
                re, im = _frac(re), _frac(im)
                if re == 0 and im == 0:
                    continue
                if b < -floor:
                    raise ConfigurationError(
                        "lam^%d is below the configured floor lam^-%d" % (b, floor))
                if b > order:
                    continue
                clean[(int(a), int(b))] = (re, im)
            self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, re=0, im=0):
        return cls({(0, 0): (re, im)})

    @classmethod
    def monomial(cls, re=1, im=0, hbar=0, lam=0):
        return cls({(hbar, lam): (re, im)})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floats are not exact; use Scalar.const(re, im)")
        return cls.const(_frac(x))

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, hbar=0, lam=0):
        return self._terms.get((hbar, lam), (_ZERO, _ZERO))

    def lam_orders(self):
        return sorted({b for (_, b) in self._terms})

    def min_lam(self):
        return min((b for (_, b) in self._terms), default=None)

    def lowest_lam(self):
        return self.min_lam()

    def is_real_constant(self):
        return set(self._terms) <= {(0, 0)} and self.coefficient()[1] == 0

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, (re, im) in other._terms.items():
            if k in out:
                r0, i0 = out[k]
                re, im = r0 + re, i0 + im
                if re == 0 and im == 0:
                    del out[k]
                    continue
            out[k] = (re, im)
        return Scalar(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: (-re, -im) for k, (re, im) in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        order = get_order()
        out = {}
        for (a1, b1), (r1, i1) in self._terms.items():
            for (a2, b2), (r2, i2) in other._terms.items():
                b = b1 + b2
                if b > order:
                    continue
                k = (a1 + a2, b)
                if i1 == 0 and i2 == 0:
                    re, im = r1 * r2, _ZERO
                else:
                    re, im = r1 * r2 - i1 * i2, r1 * i2 + i1 * r2
                if k in out:
                    r0, i0 = out[k]
                    re, im = r0 + re, i0 + im
                out[k] = (re, im)
        return Scalar({k: v for k, v in out.items() if v[0] or v[1]}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, re, im=0):
        return self * Scalar.const(re, im)

    def truncate(self, order):
        """Drop every term above lam^order."""
        return Scalar({k: v for k, v in self._terms.items() if k[1] <= order}, _trusted=True)

    def classical_part(self):
        """The lam^0 component (kappa -> infinity limit)."""
        return Scalar({k: v for k, v in self._terms.items() if k[1] == 0}, _trusted=True)

    def divide_by_lambda(self):
        """Exact division by lam; the lam^0 component must vanish."""
        if any(b == 0 for (_, b) in self._terms):
            raise NotDivisible("lam^0 component is nonzero: %s" % (self,))
        return Scalar({(a, b - 1): v for (a, b), v in self._terms.items()})

    def multiply_by_lambda(self, n=1):
        return Scalar({(a, b + n): v for (a, b), v in self._terms.items()})

    def inverse(self):
        """Series inverse; needs a single-monomial lowest lam component."""
        if not self._terms:
            raise ZeroDivisionError("inverse of zero scalar")
        lowest = self.min_lam()
        lead = [(k, v) for k, v in self._terms.items() if k[1] == lowest]
        if len(lead) != 1:
            raise NotInvertible("leading lam^%d part is not a monomial: %s" % (lowest, self))
        (a, b), (re, im) = lead[0]
        norm = re * re + im * im
        lead_inv = Scalar({(-a, -b): (re / norm, -im / norm)})
        # self = lead * (1 + rest) with rest of positive lam order
        rest = self * lead_inv - ONE
        result = ONE
        power = ONE
        for _ in range(get_order() + get_floor() + 1):
            power = power * (-rest)
            if not power:
                break
            result = result + power
        return result * lead_inv

    def substitute_numeric(self, hbar, lam):
        """Evaluate as a complex float."""
        total = 0j
        for (a, b), (re, im) in self._terms.items():
            total += complex(float(re), float(im)) * (hbar ** a) * (lam ** b)
        return total

    def conjugate(self):
        return Scalar({k: (re, -im) for k, (re, im) in self._terms.items()}, _trusted=True)

    # -- text ---------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __str__(self):
        from .text import render_scalar
        return render_scalar(self)

    def __repr__(self):
        return "Scalar(%s)" % (self,)


def _coerce_or_none(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    return None


ZERO = Scalar({}, _trusted=True)
ONE = Scalar({(0, 0): (_ONE, _ZERO)}, _trusted=True)
I = Scalar({(0, 0): (_ZERO, _ONE)}, _trusted=True)
HBAR = Scalar({(1, 0): (_ONE, _ZERO)}, _trusted=True)
LAM = Scalar({(0, 1): (_ONE, _ZERO)}, _trusted=True)


def hbar(n=1):
    return Scalar.monomial(hbar=n)


def lam(n=1):
    return Scalar.monomial(lam=n)


def gaussian(re, im=0):
    return Scalar.const(re, im)


def divide_by_lambda(s):
    return s.divide_by_lambda()


def scalar_arith(lhs, rhs, op):
    """Dispatch helper: ``op`` is one of add, mul, neg, eq."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "neg":
        return -lhs
    if op == "eq":
        return lhs == rhs
    raise ValueError("unknown scalar operation %r" % (op,))
