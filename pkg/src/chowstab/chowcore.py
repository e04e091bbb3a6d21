"""Chow weight and higher Futaki invariants from a pair of polynomials.

A one-parameter subgroup acting on an n-dimensional polarized variety
determines two polynomials of the tensor power k: the Hilbert polynomial

    chi(k) = a_0 k^n + a_1 k^{n-1} + ... + a_n,          a_0 != 0,

and the total weight of the induced action on the top exterior power of
the space of sections,

    w(k) = b_0 k^{n+1} + b_1 k^n + ... + b_{n+1}.

The normalized Chow weight of the power-k polarization is
w(k)/chi(k) - (b_0/a_0) k, a rational function of k that expands as

    b_{n+1}/chi(k) + (a_0/chi(k)) * sum_{l=1}^{n} F_l k^{n+1-l},

with F_l = (a_0 b_l - b_0 a_l) / a_0^2.  The F_l are independent of the
choice of linearization (which can only shift w by c*k*chi) and are the
obstructions to asymptotic Chow semistability computed by the rest of the
package.  This module works purely with the coefficient lists; geometric
families enter through the modules that produce their chi and w.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CrossCheckError
from .exactalg import Poly, RatFn

__all__ = [
    "HilbertData",
    "WeightData",
    "InvariantReport",
    "chow_weight_fn",
    "futaki_invariants",
    "shift_linearization",
    "report",
]


@dataclass(frozen=True)
class HilbertData:
    """Hilbert polynomial chi(k) = sum_l a[l] k^{n-l} of an n-dimensional family."""

    n: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be non-negative")
        object.__setattr__(self, "a", tuple(Fraction(c) for c in self.a))
        if len(self.a) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coefficients, got {len(self.a)}")
        if self.a[0] == 0:
            raise ValueError("leading Hilbert coefficient a_0 must be nonzero")

    @classmethod
    def from_poly(cls, chi: Poly, n: int | None = None) -> "HilbertData":
        if chi.is_zero:
            raise ValueError("the Hilbert polynomial cannot be zero")
        if n is None:
            n = chi.degree
        return cls(n, chi.descending(n + 1))

    def poly(self) -> Poly:
        return Poly.from_descending(self.a)

    def evaluate(self, k) -> Fraction:
        return self.poly().evaluate(k)


@dataclass(frozen=True)
class WeightData:
    """Weight polynomial w(k) = sum_l b[l] k^{n+1-l}, including the constant b_{n+1}."""

    n: int
    b: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be non-negative")
        object.__setattr__(self, "b", tuple(Fraction(c) for c in self.b))
        if len(self.b) != self.n + 2:
            raise ValueError(f"expected {self.n + 2} coefficients, got {len(self.b)}")

    @classmethod
    def from_poly(cls, w: Poly, n: int) -> "WeightData":
        if not w.is_zero and w.degree > n + 1:
            raise ValueError("weight polynomial degree exceeds n + 1")
        return cls(n, w.descending(n + 2))

    @classmethod
    def zero(cls, n: int) -> "WeightData":
        return cls(n, (Fraction(0),) * (n + 2))

    def poly(self) -> Poly:
        return Poly.from_descending(self.b)

    @property
    def b_top(self) -> Fraction:
        """The constant coefficient b_{n+1}; zero whenever the family is smooth."""
        return self.b[-1]


@dataclass(frozen=True)
class InvariantReport:
    """Chow weight function together with its expansion data."""

    chow: RatFn
    futaki: tuple[Fraction, ...]
    b_top: Fraction


def _check_dims(h: HilbertData, w: WeightData) -> None:
    if h.n != w.n:
        raise ValueError(f"dimension mismatch: chi has n={h.n}, w has n={w.n}")


def chow_weight_fn(h: HilbertData, w: WeightData) -> RatFn:
    """Normalized Chow weight w(k)/chi(k) - (b_0/a_0) k as a reduced rational function."""
    _check_dims(h, w)
    chi = h.poly()
    shift = w.b[0] / h.a[0]
    num = w.poly() - Poly((0, shift)) * chi
    return RatFn(num, chi)


def futaki_invariants(h: HilbertData, w: WeightData) -> list[Fraction]:
    """The invariants F_l = (a_0 b_l - b_0 a_l)/a_0^2 for l = 1..n."""
    _check_dims(h, w)
    a0, b0 = h.a[0], w.b[0]
    return [(a0 * w.b[ell] - b0 * h.a[ell]) / a0**2 for ell in range(1, h.n + 1)]


def shift_linearization(w: WeightData, h: HilbertData, c: Fraction | int) -> WeightData:
    """Change of linearization: replace w(k) by w(k) + c*k*chi(k).

    Shifts b_l to b_l + c*a_l for l = 0..n and leaves b_{n+1} alone; the
    Chow weight function and every F_l are unchanged.
    """
    _check_dims(h, w)
    c = Fraction(c)
    shifted = [w.b[ell] + c * h.a[ell] for ell in range(h.n + 1)]
    shifted.append(w.b_top)
    return WeightData(w.n, tuple(shifted))


def report(h: HilbertData, w: WeightData) -> InvariantReport:
    """Bundle the Chow function, the F_l and b_{n+1}, verifying their relation.

    The expansion identity chow == b_{n+1}/chi + (a_0/chi) sum_l F_l k^{n+1-l}
    is asserted before returning; a failure means the two computation paths
    disagree and is raised as a cross-check error.
    """
    chow = chow_weight_fn(h, w)
    futaki = futaki_invariants(h, w)
    expansion = Poly((w.b_top,))
    for ell, f in enumerate(futaki, start=1):
        expansion = expansion + Poly.monomial(h.n + 1 - ell, h.a[0] * f)
    if chow != RatFn(expansion, h.poly()):
        raise CrossCheckError("Chow expansion does not match the invariants F_l")
    return InvariantReport(chow=chow, futaki=tuple(futaki), b_top=w.b_top)
