"""Exact arithmetic in Q(zeta_e), the value domain of all characters.

Elements are stored in the power basis 1, z, ..., z^(phi(e)-1) of the e-th
cyclotomic field, reduced modulo the e-th cyclotomic polynomial, with an
optional positive integer denominator for inner-product results.  Equality
is coefficient equality after reduction (plus a conductor lift when the
two sides disagree on e).

Hashing is representation-based: only values known to share a conductor
(e.g. entries of one character table) should be used as dict keys.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from .arith import euler_phi
from .errors import ConductorOverflow

CONDUCTOR_BOUND = 1_000_000


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple:
    """Monic coefficient tuple (low degree first) of Phi_e."""
    # x^e - 1 = prod over d | e of Phi_d; divide out the proper divisors
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            phi_d = cyclotomic_polynomial(d)
            poly = _polydiv_exact(poly, list(phi_d))
    return tuple(poly)


def _polydiv_exact(num, den):
    """Exact division of integer polynomials (den monic, low degree first)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for j, dj in enumerate(den):
                num[i - dd + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def _powers_table(e: int) -> np.ndarray:
    """Row i is z^i mod Phi_e in the power basis, for i = 0..e-1."""
    phi = euler_phi(e)
    rows = np.zeros((e, phi), dtype=np.int64)
    mod = cyclotomic_polynomial(e)
    for i in range(min(e, phi)):
        rows[i, i] = 1
    # z^phi = -(mod[0] + mod[1] z + ...) since Phi_e is monic
    cur = [-c for c in mod[:phi]]
    for i in range(phi, e):
        rows[i] = np.array(cur, dtype=np.int64)
        # multiply by z: shift and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * mod[j]
    return rows


@lru_cache(maxsize=None)
def _lift_table(e: int, big: int) -> np.ndarray:
    """Matrix sending the basis of Q(zeta_e) into Q(zeta_big), e | big."""
    step = big // e
    pows = _powers_table(big)
    phi = euler_phi(e)
    return pows[[(i * step) % big for i in range(phi)]]


def _normalize(num, den: int):
    if den < 0:
        num = tuple(-c for c in num)
        den = -den
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = tuple(c // g for c in num)
        den //= g
    return num, den


class Cyclotomic:
    """An element of Q(zeta_e) with exact integer/rational coefficients."""

    __slots__ = ("e", "num", "den")

    def __init__(self, e: int, num, den: int = 1, reduce: bool = False):
        if e > CONDUCTOR_BOUND:
            raise ConductorOverflow(f"conductor {e} above bound {CONDUCTOR_BOUND}")
        self.e = e
        if reduce:
            num = _reduce(np.asarray(num, dtype=np.int64), e)
        num = tuple(int(c) for c in num)
        phi = euler_phi(e)
        if len(num) != phi:
            raise ValueError(f"need {phi} coefficients at conductor {e}, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _normalize(num, den)

    # --- constructors -----------------------------------------------------

    @classmethod
    def from_int(cls, n, e: int = 1) -> "Cyclotomic":
        if isinstance(n, Fraction):
            vec = [n.numerator] + [0] * (euler_phi(e) - 1)
            return cls(e, vec, n.denominator)
        vec = [int(n)] + [0] * (euler_phi(e) - 1)
        return cls(e, vec)

    @classmethod
    def zero(cls, e: int = 1) -> "Cyclotomic":
        return cls(e, [0] * euler_phi(e))

    # --- structure --------------------------------------------------------

    def lift(self, big: int) -> "Cyclotomic":
        if big == self.e:
            return self
        if big % self.e:
            raise ValueError(f"cannot lift conductor {self.e} into {big}")
        if big > CONDUCTOR_BOUND:
            raise ConductorOverflow(f"conductor {big} above bound {CONDUCTOR_BOUND}")
        vec = np.asarray(self.num, dtype=np.int64) @ _lift_table(self.e, big)
        return Cyclotomic(big, vec, self.den)

    def _common(self, other: "Cyclotomic"):
        e = lcm(self.e, other.e)
        return self.lift(e), other.lift(e)

    # --- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_int(other, 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        num = tuple(x * b.den + y * a.den for x, y in zip(a.num, b.num))
        return Cyclotomic(a.e, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        if a.e == 1:
            return Cyclotomic(1, (a.num[0] * b.num[0],), a.den * b.den)
        conv = np.convolve(np.asarray(a.num, np.int64), np.asarray(b.num, np.int64))
        return Cyclotomic(a.e, _reduce(conv, a.e), a.den * b.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.e == other.e:
            return self.num == other.num and self.den == other.den
        a, b = self._common(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash((self.e, self.num, self.den))

    def conj(self) -> "Cyclotomic":
        """Complex conjugation, zeta -> zeta^-1."""
        e = self.e
        if e <= 2:
            return self
        folded = np.zeros(e, dtype=np.int64)
        for i, c in enumerate(self.num):
            folded[(e - i) % e] += c
        vec = folded @ _powers_table(e)
        return Cyclotomic(e, vec, self.den)

    # --- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.num)

    def as_fraction(self):
        """The value as a Fraction if it is rational, else None."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def as_int(self):
        """The value as an int if it is a rational integer, else None."""
        f = self.as_fraction()
        if f is None or f.denominator != 1:
            return None
        return int(f)

    def order_as_root(self):
        """Least t >= 1 with self^t = 1, or None if not a root of unity."""
        if self.den != 1:
            return None
        norm = self * self.conj()
        if norm.as_int() != 1:
            return None
        limit = lcm(2, self.e)
        power = self
        one = Cyclotomic.from_int(1, self.e)
        for t in range(1, limit + 1):
            if power == one:
                return t
            power = power * self
        return None

    # --- rendering ------------------------------------------------------------

    def render(self) -> str:
        """Deterministic text form "c0 + c1*z(e)^1 + ..." used in reports."""
        terms = []
        for i, c in enumerate(self.num):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"z({self.e})^{i}")
            elif c == -1:
                terms.append(f"-z({self.e})^{i}")
            else:
                terms.append(f"{c}*z({self.e})^{i}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if self.den != 1:
            return f"({body})/{self.den}"
        return body

    def __repr__(self):
        return f"Cyclotomic({self.render()})"


def _reduce(vec: np.ndarray, e: int) -> np.ndarray:
    """Reduce an arbitrary-length coefficient vector mod Phi_e."""
    phi = euler_phi(e)
    if len(vec) <= phi:
        out = np.zeros(phi, dtype=np.int64)
        out[: len(vec)] = vec
        return out
    folded = np.zeros(e, dtype=np.int64)
    for i, c in enumerate(vec):
        folded[i % e] += int(c)
    return folded @ _powers_table(e)


def root_of_unity(e: int, k: int = 1) -> Cyclotomic:
    """zeta_e^k as an exact element of Q(zeta_e)."""
    if e > CONDUCTOR_BOUND:
        raise ConductorOverflow(f"conductor {e} above bound {CONDUCTOR_BOUND}")
    k %= e
    vec = _powers_table(e)[k]
    return Cyclotomic(e, vec)


def is_rational_integer(a: Cyclotomic):
    return a.as_int()


def order_as_root(a: Cyclotomic):
    return a.order_as_root()


def cyclo_sum(values, e: int = 1) -> Cyclotomic:
    """Sum of values at the least common conductor (at least e)."""
    values = list(values)
    big = e
    for v in values:
        big = lcm(big, v.e)
    total = np.zeros(euler_phi(big), dtype=np.int64)
    den = 1
    for v in values:
        if v.e != big:
            v = v.lift(big)
        if v.den != den:
            g = lcm(den, v.den)
            total *= g // den
            den = g
            total += np.asarray(v.num, np.int64) * (den // v.den)
        else:
            total += np.asarray(v.num, np.int64)
    return Cyclotomic(big, total, den)
