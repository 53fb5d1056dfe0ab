"""Exact multivariate Laurent polynomials and torus points of finite order.

Polynomials live in Z[i][t_1^{±1}, ..., t_mu^{±1}]: coefficients are Gaussian
integers stored as (re, im) pairs, exponents are integer vectors.  The bar
involution sends t_i to t_i^{-1} and conjugates coefficients.  Torus points
are stored as exact rational rotation numbers a/b (meaning e^{2*pi*i*a/b}),
so order and coprimality predicates are exact; complex values are materialized
on demand, either as hardware doubles or as mpmath numbers at a requested
binary precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

Gauss = tuple[int, int]

_ZERO: Gauss = (0, 0)
_ONE: Gauss = (1, 0)


def _gauss(c) -> Gauss:
    if isinstance(c, tuple):
        a, b = c
        return (int(a), int(b))
    if isinstance(c, int):
        return (c, 0)
    if isinstance(c, complex):
        a, b = c.real, c.imag
        if a != int(a) or b != int(b):
            raise ValueError(f"coefficient {c!r} is not a Gaussian integer")
        return (int(a), int(b))
    raise TypeError(f"cannot coerce {c!r} to a Gaussian integer")


def _gadd(x: Gauss, y: Gauss) -> Gauss:
    return (x[0] + y[0], x[1] + y[1])


def _gmul(x: Gauss, y: Gauss) -> Gauss:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gstr(c: Gauss) -> str:
    a, b = c
    if b == 0:
        return str(a)
    if a == 0:
        return {1: "i", -1: "-i"}.get(b, f"{b}i")
    sign = "+" if b > 0 else "-"
    bb = abs(b)
    istr = "i" if bb == 1 else f"{bb}i"
    return f"({a}{sign}{istr})"


class LaurentPoly:
    """Sparse Laurent polynomial over the Gaussian integers.

    ``terms`` maps exponent tuples of length ``num_vars`` to nonzero (re, im)
    coefficient pairs.  Instances are immutable; all operations return new
    polynomials with zero coefficients dropped.
    """

    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms=None):
        self.num_vars = int(num_vars)
        clean = {}
        for expo, coeff in (terms or {}).items():
            coeff = _gauss(coeff)
            if coeff == _ZERO:
                continue
            expo = tuple(int(e) for e in expo)
            if len(expo) != self.num_vars:
                raise ValueError(
                    f"exponent vector {expo} has length {len(expo)}, expected {self.num_vars}"
                )
            clean[expo] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "LaurentPoly":
        return cls(num_vars, {})

    @classmethod
    def one(cls, num_vars: int) -> "LaurentPoly":
        return cls.const(num_vars, 1)

    @classmethod
    def const(cls, num_vars: int, c) -> "LaurentPoly":
        return cls(num_vars, {(0,) * num_vars: _gauss(c)})

    @classmethod
    def gen(cls, num_vars: int, index: int, power: int = 1) -> "LaurentPoly":
        """The monomial t_index^power (index is 1-based)."""
        if not 1 <= index <= num_vars:
            raise ValueError(f"variable index {index} out of range 1..{num_vars}")
        expo = [0] * num_vars
        expo[index - 1] = int(power)
        return cls(num_vars, {tuple(expo): _ONE})

    @classmethod
    def monomial(cls, num_vars: int, expo, coeff=1) -> "LaurentPoly":
        return cls(num_vars, {tuple(expo): _gauss(coeff)})

    # -- ring operations ----------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.num_vars != self.num_vars:
            raise ValueError(
                f"mismatched variable counts: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.num_vars, other)
        self._check(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            terms[expo] = _gadd(terms.get(expo, _ZERO), coeff)
        return LaurentPoly(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(
            self.num_vars, {e: (-a, -b) for e, (a, b) in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.num_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, tuple)):
            c = _gauss(other)
            return LaurentPoly(
                self.num_vars, {e: _gmul(v, c) for e, v in self.terms.items()}
            )
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                terms[expo] = _gadd(terms.get(expo, _ZERO), _gmul(c1, c2))
        return LaurentPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((expo, coeff),) = self.terms.items()
            if coeff not in ((1, 0), (-1, 0)):
                raise ValueError("only unit monomials can be inverted")
            inv = LaurentPoly(
                self.num_vars, {tuple(-e for e in expo): coeff}
            )
            return inv ** (-n)
        result = LaurentPoly.one(self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def bar(self) -> "LaurentPoly":
        """Involution t_i -> t_i^{-1} with conjugated coefficients."""
        return LaurentPoly(
            self.num_vars,
            {tuple(-e for e in expo): (a, -b) for expo, (a, b) in self.terms.items()},
        )

    # -- predicates and comparisons -------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(self.num_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation ------------------------------------------------------

    def evaluate(self, point: "TorusPoint", prec: int | None = None):
        """Substitute t_i = omega_i.

        With ``prec=None`` the result is a Python complex; otherwise an mpmath
        mpc at the given binary precision.  Each monomial is evaluated from
        its exact rational total angle, so bar/conjugation symmetry holds to
        the last bit of the working precision.
        """
        if point.num_vars != self.num_vars:
            raise ValueError(
                f"point has {point.num_vars} coordinates, polynomial has {self.num_vars}"
            )
        if prec is None:
            total = 0j
            for expo, (a, b) in self.terms.items():
                theta = point.monomial_angle(expo)
                total += complex(a, b) * _cis_float(theta)
            return total
        with mpmath.workprec(prec):
            total = mpmath.mpc(0)
            for expo, (a, b) in self.terms.items():
                theta = point.monomial_angle(expo)
                total += mpmath.mpc(a, b) * _cis_mp(theta)
            return total

    # -- formatting --------------------------------------------------------

    def _monomial_str(self, expo) -> str:
        parts = []
        for i, e in enumerate(expo):
            if e == 0:
                continue
            name = "t" if self.num_vars == 1 else f"t{i + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for expo in sorted(self.terms):
            coeff = self.terms[expo]
            mono = self._monomial_str(expo)
            if not mono:
                piece = _gstr(coeff)
            elif coeff == (1, 0):
                piece = mono
            elif coeff == (-1, 0):
                piece = f"-{mono}"
            else:
                piece = f"{_gstr(coeff)}*{mono}"
            pieces.append(piece)
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


def t_power(num_vars: int, index: int, power: int) -> LaurentPoly:
    """t_index^power as a Laurent monomial (index 1-based, power any integer)."""
    expo = [0] * num_vars
    expo[index - 1] = power
    return LaurentPoly.monomial(num_vars, expo)


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cis_float_reduced(num: int, den: int) -> complex:
    # exact values on the axes keep tests at i, -1 free of rounding fuzz
    if num == 0:
        return 1 + 0j
    quarter = {(1, 4): 1j, (1, 2): -1 + 0j, (3, 4): -1j}
    if (num, den) in quarter:
        return quarter[(num, den)]
    frac = Fraction(num, den)
    if frac > Fraction(1, 2):
        return _cis_float_reduced(*(1 - frac).as_integer_ratio()).conjugate()
    return cmath.exp(2j * math.pi * (num / den))


def _cis_float(theta: Fraction) -> complex:
    theta %= 1
    return _cis_float_reduced(theta.numerator, theta.denominator)


def _cis_mp(theta: Fraction):
    theta %= 1
    if theta == 0:
        return mpmath.mpc(1)
    if theta > Fraction(1, 2):
        return mpmath.conj(_cis_mp(1 - theta))
    return mpmath.expjpi(2 * mpmath.mpf(theta.numerator) / theta.denominator)


# ---------------------------------------------------------------------------
# torus points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoint:
    """A point (omega_1, ..., omega_mu) on the mu-torus with rational angles.

    Coordinate i is e^{2*pi*i*rotations[i]} with rotations[i] in [0, 1).
    """

    rotations: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "rotations", tuple(Fraction(r) % 1 for r in self.rotations)
        )

    @classmethod
    def parse(cls, text: str) -> "TorusPoint":
        """Parse the comma-separated fraction format, e.g. "1/3,2/5"."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError(f"empty torus point {text!r}")
        return cls(tuple(Fraction(p) for p in parts))

    @property
    def num_vars(self) -> int:
        return len(self.rotations)

    @property
    def orders(self) -> tuple[int, ...]:
        """Multiplicative order of each coordinate (1 for the trivial angle)."""
        return tuple(1 if r == 0 else r.denominator for r in self.rotations)

    def monomial_angle(self, expo) -> Fraction:
        """Exact angle of the monomial prod omega_i^{e_i}, as a fraction mod 1."""
        theta = Fraction(0)
        for r, e in zip(self.rotations, expo):
            if e:
                theta += r * e
        return theta % 1

    def values(self, prec: int | None = None):
        """Coordinate values, as Python complex or mpmath mpc at ``prec`` bits."""
        if prec is None:
            return tuple(_cis_float(r) for r in self.rotations)
        with mpmath.workprec(prec):
            return tuple(_cis_mp(r) for r in self.rotations)

    def coordinate_power(self, index: int, power: int, prec: int | None = None):
        """omega_index^power from the exact angle (index 1-based)."""
        theta = (self.rotations[index - 1] * power) % 1
        return _cis_float(theta) if prec is None else _cis_mp(theta)

    def monomial_value(self, expo, prec: int | None = None):
        """Value of prod omega_i^{e_i} from the exact total angle."""
        theta = self.monomial_angle(expo)
        return _cis_float(theta) if prec is None else _cis_mp(theta)

    def is_in_TP(self) -> bool:
        """True iff every order exceeds 1 and the orders are pairwise coprime."""
        ks = self.orders
        if any(k <= 1 for k in ks):
            return False
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                if math.gcd(ks[i], ks[j]) != 1:
                    return False
        return True

    def __str__(self):
        return ",".join(f"{r.numerator}/{r.denominator}" for r in self.rotations)


def is_admissible(point: TorusPoint, ell) -> bool:
    """True iff every ell_i is nonzero and coprime to the order of omega_i."""
    ell = tuple(int(x) for x in ell)
    if len(ell) != point.num_vars:
        raise ValueError(
            f"ell has length {len(ell)}, point has {point.num_vars} coordinates"
        )
    return all(
        l != 0 and math.gcd(k, abs(l)) == 1 for k, l in zip(point.orders, ell)
    )
