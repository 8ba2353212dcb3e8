"""Exact numbers: gamma at half-integers and truncated multivariate series.

Series are sparse dicts from exponent tuples to int/Fraction coefficients.
Laurent factors such as 1/(1 - x_i/x_j) are handled by callers through a
change of variables that makes every exponent nonnegative, so everything
here works with nonnegative exponents bounded by a cap vector.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ArityError, NonInvertibleError, PoleError

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class HalfGamma:
    """A number of the form rational_part * sqrt(pi)**sqrt_pi_power.

    gamma_half always returns power 0 or 1; products and quotients may carry
    any integer power.
    """

    rational_part: Fraction
    sqrt_pi_power: int = 0

    def __mul__(self, other: "HalfGamma") -> "HalfGamma":
        return HalfGamma(self.rational_part * other.rational_part,
                         self.sqrt_pi_power + other.sqrt_pi_power)

    def __truediv__(self, other: "HalfGamma") -> "HalfGamma":
        return HalfGamma(self.rational_part / other.rational_part,
                         self.sqrt_pi_power - other.sqrt_pi_power)

    def is_rational(self) -> bool:
        return self.sqrt_pi_power == 0 or self.rational_part == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"value carries sqrt(pi)^{self.sqrt_pi_power}")
        return Fraction(self.rational_part)


def gamma_half(two_k: int) -> HalfGamma:
    """Gamma(two_k / 2) for a positive integer two_k."""
    if two_k <= 0:
        raise PoleError(f"gamma({two_k}/2) is a pole or out of range")
    if two_k % 2 == 0:
        return HalfGamma(Fraction(math.factorial(two_k // 2 - 1)), 0)
    r = Fraction(1)
    # Gamma(1/2) = sqrt(pi); Gamma(x + 1) = x Gamma(x)
    for odd in range(1, two_k - 1, 2):
        r *= Fraction(odd, 2)
    return HalfGamma(r, 1)


@dataclass
class TruncatedPoly:
    """Multivariate polynomial with coefficients dropped above a cap.

    ``cap[k] is None`` means variable k is uncapped.
    """

    nvars: int
    cap: tuple[int | None, ...]
    coeffs: dict[Exponent, int | Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.cap = tuple(self.cap)
        if len(self.cap) != self.nvars:
            raise ArityError("cap length differs from variable count")
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise ArityError(f"exponent {e} has wrong length")
            if c != 0 and self._fits(e):
                clean[e] = c
        self.coeffs = clean

    def _fits(self, e: Exponent) -> bool:
        return all(c is None or x <= c for x, c in zip(e, self.cap))

    @classmethod
    def one(cls, nvars: int, cap) -> "TruncatedPoly":
        return cls(nvars, tuple(cap), {(0,) * nvars: 1})

    @classmethod
    def from_terms(cls, nvars: int, cap, terms: Mapping) -> "TruncatedPoly":
        return cls(nvars, tuple(cap), dict(terms))

    def coefficient(self, e: Sequence[int]):
        return self.coeffs.get(tuple(e), 0)

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)


def _common_cap(cap_a, cap_b):
    return tuple(b if a is None else a if b is None else min(a, b) for a, b in zip(cap_a, cap_b))


def poly_mul_truncated(p: TruncatedPoly, q: TruncatedPoly, cap=None) -> TruncatedPoly:
    if p.nvars != q.nvars:
        raise ArityError(f"{p.nvars} variables vs {q.nvars}")
    if cap is None:
        cap = _common_cap(p.cap, q.cap)
    cap = tuple(cap)
    if len(cap) != p.nvars:
        raise ArityError("cap length differs from variable count")
    out: dict[Exponent, int | Fraction] = {}
    for e1, c1 in p.coeffs.items():
        for e2, c2 in q.coeffs.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if all(c is None or x <= c for x, c in zip(e, cap)):
                out[e] = out.get(e, 0) + c1 * c2
    return TruncatedPoly(p.nvars, cap, out)


def _divide_one_minus(p: dict, linear: list[tuple[Exponent, int | Fraction]], cap) -> dict:
    """p / (1 - L) truncated at cap, with L = sum of c * y^m.

    Exponents are visited in lexicographic order so every e - m is final
    before e is computed.
    """
    q: dict[Exponent, int | Fraction] = {}
    heap = list(p)
    heapq.heapify(heap)
    seen = set(heap)
    while heap:
        e = heapq.heappop(heap)
        v = p.get(e, 0)
        for m, c in linear:
            prev = tuple(x - y for x, y in zip(e, m))
            w = q.get(prev)
            if w is not None:
                v += c * w
        if v != 0:
            q[e] = v
        for m, _ in linear:
            nxt = tuple(x + y for x, y in zip(e, m))
            if nxt not in seen and all(c is None or x <= c for x, c in zip(nxt, cap)):
                seen.add(nxt)
                heapq.heappush(heap, nxt)
    return q


def _check_linear(linear, nvars):
    for m, _ in linear:
        if len(m) != nvars:
            raise ArityError("monomial arity mismatch")
        if any(x < 0 for x in m):
            raise ValueError("linear form needs nonnegative exponents; substitute first")
        if all(x == 0 for x in m):
            raise NonInvertibleError("1 - L with a constant term in L")


def geometric_inverse(linear: Iterable[tuple[Sequence[int], int | Fraction]], cap,
                      nvars: int | None = None) -> TruncatedPoly:
    """Sum of L^k, k >= 0, truncated at cap, where L = sum c * y^m."""
    cap = tuple(cap)
    nvars = len(cap) if nvars is None else nvars
    linear = [(tuple(m), c) for m, c in linear if c != 0]
    _check_linear(linear, nvars)
    q = _divide_one_minus({(0,) * nvars: 1}, linear, cap)
    return TruncatedPoly(nvars, cap, q)


def divide_one_minus(p: TruncatedPoly, linear, power: int = 1) -> TruncatedPoly:
    """p / (1 - L)^power within p's cap."""
    linear = [(tuple(m), c) for m, c in linear if c != 0]
    _check_linear(linear, p.nvars)
    coeffs = dict(p.coeffs)
    for _ in range(power):
        coeffs = _divide_one_minus(coeffs, linear, p.cap)
    return TruncatedPoly(p.nvars, p.cap, coeffs)


def series_coefficient(factors: Sequence[tuple[list, int]], target: Sequence[int]):
    """Coefficient of y^target in prod (1 - L_f)^(-power_f).

    ``factors`` is a list of (linear form, power) with each linear form a
    list of (exponent, coefficient). Coordinates that no later factor can
    raise are pinned to their target value as soon as possible, which keeps
    the working set small without changing the result.
    """
    target = tuple(target)
    nvars = len(target)
    if any(t < 0 for t in target):
        return 0
    last_touch = [-1] * nvars
    for idx, (linear, _) in enumerate(factors):
        _check_linear(linear, nvars)
        for m, _ in linear:
            for k, x in enumerate(m):
                if x:
                    last_touch[k] = idx
    coeffs: dict = {(0,) * nvars: 1}
    pinned = [k for k in range(nvars) if last_touch[k] == -1]
    coeffs = _pin(coeffs, pinned, target)
    for idx, (linear, power) in enumerate(factors):
        for _ in range(power):
            coeffs = _divide_one_minus(coeffs, linear, target)
        closing = [k for k in range(nvars) if last_touch[k] == idx]
        if closing:
            coeffs = _pin(coeffs, closing, target)
        if not coeffs:
            return 0
    return coeffs.get(target, 0)


def _pin(coeffs: dict, coords: list[int], target) -> dict:
    if not coords:
        return coeffs
    return {e: c for e, c in coeffs.items() if all(e[k] == target[k] for k in coords)}


def prefix_sums(a: Sequence[int]) -> tuple[int, ...]:
    out, s = [], 0
    for x in a:
        s += x
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class RationalPolynomial:
    """Univariate polynomial, coefficients listed from the constant term up."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                term = mono
            elif mono:
                term = f"{c}*{mono}"
            else:
                term = str(c)
            parts.append(term)
        return " + ".join(parts)


def interpolate(points: Sequence[tuple[int, int | Fraction]]) -> RationalPolynomial:
    """Unique polynomial of degree < len(points) through the given points."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    # Newton divided differences, then expand to the monomial basis
    dd = [Fraction(y) for _, y in points]
    n = len(dd)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (t - xs[i]) + dd[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * p for s, p in zip(shifted, poly)]
        poly[0] += dd[i]
    return RationalPolynomial(tuple(poly))
