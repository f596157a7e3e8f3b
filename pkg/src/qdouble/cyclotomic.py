"""Exact arithmetic in Z[zeta]/sqrt(2)-powers, zeta = e^{i pi/4}.

Every entry of the braid generator matrices has the form

    (c0 + c1*zeta + c2*zeta^2 + c3*zeta^3) / sqrt(2)^k

with integer coefficients.  This ring is closed under +, *, and complex
conjugation, and equality is decidable exactly, so braid words, gate
identities, and the computational-subspace search can all be carried out
with no floating point at all.

Reduction rules: zeta^4 = -1, and sqrt(2) = zeta - zeta^3, which lets a
common sqrt(2) factor be cancelled against the denominator.
"""

from __future__ import annotations

from math import sqrt

import numpy as np

_SQRT2 = sqrt(2.0)
_ZETA = complex(_SQRT2 / 2, _SQRT2 / 2)


def _times_sqrt2(c: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    a, b, cc, d = c
    return (b - d, a + cc, b + d, cc - a)


class Cyclo:
    """One exact scalar.  Immutable; canonical form is maintained so that
    == and hash agree with numeric equality."""

    __slots__ = ("c", "k")

    def __init__(self, coeffs, k: int = 0):
        c = tuple(int(x) for x in coeffs)
        if len(c) != 4:
            raise ValueError("need 4 coefficients")
        k = int(k)
        while k < 0:  # sqrt(2) powers in the numerator fold into the coefficients
            c = _times_sqrt2(c)
            k += 1
        if not any(c):
            k = 0
        else:
            # cancel common sqrt(2) factors: (a,b,c,d)/sqrt2 is integral
            # iff a=c (mod 2) and b=d (mod 2)
            while k > 0 and (c[0] - c[2]) % 2 == 0 and (c[1] - c[3]) % 2 == 0:
                c = ((c[1] - c[3]) // 2, (c[0] + c[2]) // 2, (c[1] + c[3]) // 2, (c[2] - c[0]) // 2)
                k -= 1
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "k", k)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Cyclo is immutable")

    # -- constructors ------------------------------------------------
    @staticmethod
    def zero() -> "Cyclo":
        return Cyclo((0, 0, 0, 0))

    @staticmethod
    def one() -> "Cyclo":
        return Cyclo((1, 0, 0, 0))

    @staticmethod
    def from_int(n: int) -> "Cyclo":
        return Cyclo((n, 0, 0, 0))

    @staticmethod
    def zeta(m: int, sqrt2_denom: int = 0) -> "Cyclo":
        """zeta^m / sqrt(2)^sqrt2_denom."""
        m %= 8
        sign = 1 if m < 4 else -1
        coeffs = [0, 0, 0, 0]
        coeffs[m % 4] = sign
        return Cyclo(coeffs, sqrt2_denom)

    # -- ring operations ---------------------------------------------
    def _aligned(self, other: "Cyclo") -> tuple[tuple, tuple, int]:
        k = max(self.k, other.k)
        a, b = self.c, other.c
        for _ in range(k - self.k):
            a = _times_sqrt2(a)
        for _ in range(k - other.k):
            b = _times_sqrt2(b)
        return a, b, k

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, k = self._aligned(other)
        return Cyclo(tuple(x + y for x, y in zip(a, b)), k)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(tuple(-x for x in self.c), self.k)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.c, other.c
        out = [0, 0, 0, 0]
        for m, am in enumerate(a):
            if not am:
                continue
            for n, bn in enumerate(b):
                if not bn:
                    continue
                p = m + n
                if p < 4:
                    out[p] += am * bn
                else:
                    out[p - 4] -= am * bn
        return Cyclo(out, self.k + other.k)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        r = Cyclo.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def conj(self) -> "Cyclo":
        a, b, cc, d = self.c
        return Cyclo((a, -d, -cc, -b), self.k)

    def abs2(self) -> "Cyclo":
        return self * self.conj()

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.c[2] == 0 and self.c[1] == -self.c[3]

    def monomial(self):
        """If the value is zeta^m * sqrt(2)^r, return (m, r); else None."""
        nz = [(i, v) for i, v in enumerate(self.c) if v]
        if len(nz) != 1:
            return None
        i, v = nz[0]
        s = 1 if v > 0 else -1
        v = abs(v)
        if v & (v - 1):
            return None  # |coefficient| must be a power of two
        t = v.bit_length() - 1
        m = i if s > 0 else i + 4
        return m % 8, 2 * t - self.k

    def inv(self) -> "Cyclo":
        mono = self.monomial()
        if mono is None:
            raise ZeroDivisionError("exact inverse only available for zeta-monomials")
        m, r = mono
        return Cyclo.zeta(-m % 8) * Cyclo((1, 0, 0, 0), r)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    # -- comparisons / conversions ------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.c == other.c and self.k == other.k

    def __hash__(self):
        return hash((self.c, self.k))

    def to_complex(self) -> complex:
        val = sum(co * _ZETA**m for m, co in enumerate(self.c))
        return val / _SQRT2**self.k

    def __complex__(self):
        return self.to_complex()

    def __repr__(self):
        mono = self.monomial()
        if self.is_zero():
            return "Cyclo(0)"
        if mono is not None:
            m, r = mono
            s = f"zeta^{m}" if m else "1"
            if r:
                s += f"*sqrt2^{r}"
            return f"Cyclo({s})"
        return f"Cyclo({self.c}, k={self.k})"

    def phase_form(self) -> dict:
        """JSON-friendly rendering: coefficients plus, when the value is a
        pure phase over sqrt(2) powers, the (k*pi/4, sqrt2 power) pair."""
        out: dict = {"coeffs": list(self.c), "sqrt2_denom": self.k}
        mono = self.monomial()
        if mono is not None:
            m, r = mono
            out["phase_pi_over_4"] = m
            out["sqrt2_power"] = r
        z = self.to_complex()
        out["complex"] = [z.real, z.imag]
        return out


def _coerce(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, np.integer)):
        return Cyclo.from_int(int(x))
    return NotImplemented


ZERO = Cyclo.zero()
ONE = Cyclo.one()


# -- exact matrices (numpy object arrays of Cyclo) ---------------------

def cmat(rows) -> np.ndarray:
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = v if isinstance(v, Cyclo) else Cyclo.from_int(v)
    return out


def ceye(n: int) -> np.ndarray:
    out = czeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def czeros(n: int, m: int) -> np.ndarray:
    out = np.empty((n, m), dtype=object)
    out[:] = ZERO
    return out


def dagger(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.T.shape, dtype=object)
    for i in range(out.shape[0]):
        for j in range(out.shape[1]):
            out[i, j] = a[j, i].conj()
    return out


def mat_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(
        a[i, j] == b[i, j] for i in range(a.shape[0]) for j in range(a.shape[1])
    )


def is_unitary(a: np.ndarray) -> bool:
    return mat_equal(a @ dagger(a), ceye(a.shape[0]))


def to_complex(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i, j] = a[i, j].to_complex()
    return out


def scalar_multiple(a: np.ndarray, b: np.ndarray):
    """Return lam with a == lam*b (exact), or None.  Requires the first
    nonzero entry of b to be a zeta-monomial so lam is exactly computable."""
    if a.shape != b.shape:
        return None
    lam = None
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if b[i, j].is_zero():
                if not a[i, j].is_zero():
                    return None
            elif lam is None:
                try:
                    lam = a[i, j] / b[i, j]
                except ZeroDivisionError:
                    return None
    if lam is None or lam.is_zero():
        return None
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if not (a[i, j] == lam * b[i, j]):
                return None
    return lam
