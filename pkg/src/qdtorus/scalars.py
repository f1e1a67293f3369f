"""Exact scalar arithmetic for the deformation coefficient ring.

Every symbolic coefficient in the package is a Laurent polynomial in the
deformation parameter q with rational coefficients.  The unit-circle
constraint on q makes the star operation an exponent flip (q* = q^-1);
numeric checks specialise q to exp(2*pi*i*theta).

Roots of unity are handled by :class:`CyclotomicMode`.  Plain mode reduces
exponents modulo the order M (the quotient ring Q[q]/(q^M - 1)); primitive
mode additionally reduces modulo the M-th cyclotomic polynomial, i.e. works
in the field generated by a primitive M-th root.  The finite quotients need
the primitive field (for order 2 the root condition forces q = -1, which is
not an identity of the plain quotient ring).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Rat = Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class QScalar:
    """Laurent polynomial sum(c_k * q^k) with Fraction coefficients.

    Instances are immutable and canonical: no stored coefficient is zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        canon = {}
        if terms:
            for k, c in terms.items():
                c = _as_fraction(c)
                if c:
                    canon[int(k)] = c
        self._terms = canon
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "QScalar":
        return _ZERO

    @staticmethod
    def one() -> "QScalar":
        return _ONE

    @staticmethod
    def of(value) -> "QScalar":
        """Coerce an int, Fraction or QScalar."""
        if isinstance(value, QScalar):
            return value
        return QScalar({0: _as_fraction(value)})

    @staticmethod
    def q_power(k: int, coeff=1) -> "QScalar":
        return QScalar({k: _as_fraction(coeff)})

    # -- inspection ---------------------------------------------------

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        """The value when no q appears; raises if q-dependent."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {0}:
            raise ValueError(f"not a constant: {self}")
        return self._terms[0]

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(other) -> "QScalar | None":
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return QScalar({0: _as_fraction(other)})
        return None

    def __add__(self, other):
        other = QScalar._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, _F0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return _wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = QScalar._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QScalar":
        return QScalar.of(other) + (-self)

    def __mul__(self, other):
        other = QScalar._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        out: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                s = out.get(k, _F0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "QScalar":
        """Inverse of a single-term scalar c*q^k; raises otherwise."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"not an invertible monomial scalar: {self}")
        ((k, c),) = self._terms.items()
        return QScalar({-k: Fraction(1) / c})

    # -- the *-structure and specialisations ---------------------------

    def star(self) -> "QScalar":
        """The involution q -> q^-1 with rational coefficients fixed."""
        return _wrap({-k: c for k, c in self._terms.items()})

    def eval_unit(self, theta: float) -> complex:
        """Evaluate at q = exp(2*pi*i*theta)."""
        total = 0j
        for k, c in self._terms.items():
            total += float(c) * cmath.exp(2j * cmath.pi * theta * k)
        return total

    def reduce_exponents(self, order: int) -> "QScalar":
        """Reduce all exponents modulo ``order`` (the ring Q[q]/(q^M - 1))."""
        if order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        out: dict[int, Fraction] = {}
        for k, c in self._terms.items():
            k = k % order
            s = out.get(k, _F0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _wrap(out)

    def reduce_mod_poly(self, poly: tuple[Fraction, ...]) -> "QScalar":
        """Remainder modulo a monic-led polynomial given as ascending coeffs."""
        if min(self._terms, default=0) < 0:
            raise ValueError("reduce exponents first; negative powers present")
        deg = len(poly) - 1
        coeffs = [Fraction(0)] * (max(self._terms, default=0) + 1)
        for k, c in self._terms.items():
            coeffs[k] = c
        lead = poly[-1]
        for i in range(len(coeffs) - 1, deg - 1, -1):
            if coeffs[i]:
                factor = coeffs[i] / lead
                for j, p in enumerate(poly):
                    coeffs[i - deg + j] -= factor * p
        return _wrap({k: c for k, c in enumerate(coeffs[:deg]) if c})

    # -- equality / hashing / display ----------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QScalar.of(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"QScalar({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items()):
            parts.append(_format_term(k, c, first=not parts))
        return "".join(parts)


_F0 = Fraction(0)
_ZERO = QScalar()
_ONE = QScalar({0: Fraction(1)})
Q = QScalar.q_power(1)
QINV = QScalar.q_power(-1)


def _wrap(terms: dict[int, Fraction]) -> QScalar:
    s = QScalar.__new__(QScalar)
    s._terms = terms
    s._hash = None
    return s


def _format_term(k: int, c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if k == 0:
        body = str(mag)
    else:
        qpart = "q" if k == 1 else f"q^{k}"
        body = qpart if mag == 1 else f"{mag}*{qpart}"
    return sign + body if first else f" {sign or '+'} {body}"


# ---------------------------------------------------------------------------
# Cyclotomic reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicMode:
    """Root-of-unity scalar mode: exponents of q are reduced modulo ``order``.

    With ``primitive`` set, coefficients are further reduced modulo the
    cyclotomic polynomial of the order, so q acts as a primitive root (a
    field).  The finite quotient construction uses primitive mode.
    """

    order: int
    primitive: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("cyclotomic order must be >= 1")

    def canon(self, s: QScalar) -> QScalar:
        s = s.reduce_exponents(self.order)
        if self.primitive:
            s = s.reduce_mod_poly(cyclotomic_polynomial(self.order))
        return s


def star_scalar(s: QScalar) -> QScalar:
    return s.star()


def eval_scalar(s: QScalar, theta: float) -> complex:
    return s.eval_unit(theta)


def reduce_cyclotomic(s: QScalar, mode: CyclotomicMode) -> QScalar:
    """Exponent reduction modulo the order; a ring homomorphism onto
    Q[q]/(q^M - 1)."""
    return s.reduce_exponents(mode.order)


# -- polynomial helpers (ascending coefficient tuples over Q) ----------------


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        factor = num[i + len(den) - 1] / lead
        if factor:
            q[i] = factor
            for j, d in enumerate(den):
                num[i + j] -= factor * d
    return _poly_trim(q), _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> tuple[Fraction, ...]:
    """Ascending coefficients of the cyclotomic polynomial of given order."""
    p = [Fraction(-1)] + [Fraction(0)] * (order - 1) + [Fraction(1)]
    for d in range(1, order):
        if order % d == 0:
            q, r = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            if r:
                raise ArithmeticError("cyclotomic division must be exact")
            p = q
    return tuple(p)


def invert_in_cyclotomic_field(s: QScalar, mode: CyclotomicMode) -> QScalar:
    """Inverse of a nonzero scalar in Q[q]/Phi_M via the extended Euclid."""
    if not mode.primitive:
        raise CyclotomicInversionError("inversion needs the primitive field")
    s = mode.canon(s)
    if s.is_zero():
        raise ZeroDivisionError("zero in cyclotomic field")
    phi = list(cyclotomic_polynomial(mode.order))
    a = [Fraction(0)] * (max(s._terms) + 1) if s._terms else [Fraction(0)]
    for k, c in s._terms.items():
        a[k] = c
    # extended Euclid over Q[x]: find u with u*a = gcd mod phi
    r0, r1 = phi, _poly_trim(a)
    u0, u1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _poly_sub(u0, _poly_mul(q, u1))
    if len(r0) != 1:
        raise ZeroDivisionError(f"not invertible modulo the cyclotomic polynomial: {s}")
    inv = [c / r0[0] for c in u0]
    return mode.canon(_wrap({k: c for k, c in enumerate(inv) if c}))


class CyclotomicInversionError(ArithmeticError):
    pass


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


def scalars_product(scalars: Iterable[QScalar]) -> QScalar:
    out = _ONE
    for s in scalars:
        out = out * s
    return out
