"""Mahler functional equations of digit sets and the radial growth of M_f.

The generating function ``M_f(z) = sum f(n) z^n`` of a digit-set sequence
factors as ``prod_j p_f(z^(q^j))`` with ``p_f(z) = sum_{a in A} z^a``, and
so satisfies the degree-one equation ``M(z) - p_f(z) M(z^q) = 0``.  Reading
the coefficient polynomials at ``z = 1`` gives the characteristic polynomial,
whose root is the Mahler eigenvalue ``p_f(1) = m``.

Polynomial work is exact (integer coefficients, sparse exponent maps).  Only
the radial probe uses floating point.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .digitset import DigitSet
from .errors import (
    DegenerateLeadingCoefficient,
    DegenerateLeadingCoefficientWarning,
    UnsupportedDegree,
)

# Product truncation: stop once z^(q^J) drops below this.
TRUNCATION_EPS = 1e-15


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial in one variable, stored as ``exponent -> coefficient``."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> Polynomial:
        return cls(tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    def __call__(self, z):
        total = 0
        for e, c in self.terms:
            total = total + c * z**e
        return total

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple((e, -c) for e, c in self.terms))

    def __add__(self, other: Polynomial) -> Polynomial:
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return Polynomial.from_dict(out)

    def __mul__(self, other: Polynomial) -> Polynomial:
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Polynomial.from_dict(out)

    def compose_power(self, q: int) -> Polynomial:
        """Return ``p(z^q)``."""
        return Polynomial(tuple((e * q, c) for e, c in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "1" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if e == 0:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class DigitPolynomial(Polynomial):
    """``p_f(z) = sum_{a in A} z^a``; every coefficient is 1."""

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)


@dataclass(frozen=True)
class MahlerEquation:
    """``p_0(z) M(z) + p_1(z) M(z^q) + ... + p_d(z) M(z^(q^d)) = 0``."""

    base: int
    coefficients: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.coefficients) < 2:
            raise ValueError("a Mahler equation needs at least p_0 and p_1")
        if self.coefficients[0].is_zero or self.coefficients[-1].is_zero:
            raise ValueError("p_0 and p_d must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def residual(self, series: list[int]) -> list[int]:
        """Apply the operator to a truncated power series.

        ``series[n]`` is the coefficient of ``z^n``; the returned list holds
        the coefficients of the result below ``z^len(series)``, which are all
        zero when the series solves the equation to that order.
        """
        N = len(series)
        out = [0] * N
        for i, p in enumerate(self.coefficients):
            step = self.base**i
            for n, s in enumerate(series):
                if not s or n * step >= N:
                    continue
                for e, c in p.terms:
                    idx = n * step + e
                    if idx < N:
                        out[idx] += c * s
        return out

    def __str__(self) -> str:
        pieces = []
        for i, p in enumerate(self.coefficients):
            arg = "z" if i == 0 else f"z^{self.base ** i}"
            pieces.append(f"({p})M({arg})")
        text = " + ".join(pieces)
        # Tidy the common degree-one digit-set form.
        if self.degree == 1 and self.coefficients[0].terms == ((0, 1),):
            neg = -self.coefficients[1]
            text = f"M(z) - ({neg})M(z^{self.base})"
        return text + " = 0"


@dataclass(frozen=True)
class CharacteristicPolynomial:
    """``chi(lam) = p_0(1) lam^d + p_1(1) lam^(d-1) + ... + p_d(1)``."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        for i, c in enumerate(self.coefficients):
            if c:
                return len(self.coefficients) - 1 - i
        return -1

    def __call__(self, lam):
        total = 0
        for c in self.coefficients:
            total = total * lam + c
        return total

    def __str__(self) -> str:
        d = len(self.coefficients) - 1
        text = ""
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            e = d - i
            mono = "" if e == 0 else ("λ" if e == 1 else f"λ^{e}")
            body = mono if abs(c) == 1 and e else f"{abs(c)}{mono}"
            if not text:
                text = ("-" if c < 0 else "") + body
            else:
                text += f" {'-' if c < 0 else '+'} {body}"
        return text or "0"


@dataclass(frozen=True)
class MahlerEigenvalue:
    value: int | Fraction


@dataclass(frozen=True)
class ProbeSample:
    t: float
    z: float
    J: int
    G: float


@dataclass(frozen=True)
class AsymptoticProbeReport:
    q: int
    digits: tuple[int, ...]
    samples: tuple[ProbeSample, ...]

    @property
    def bounds(self) -> tuple[float, float]:
        values = [s.G for s in self.samples]
        return min(values), max(values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "z", "J", "G"])
        for s in self.samples:
            writer.writerow([f"{s.t:.17g}", f"{s.z:.17g}", s.J, f"{s.G:.17g}"])
        return buf.getvalue()


def digit_polynomial(ds: DigitSet) -> DigitPolynomial:
    return DigitPolynomial(tuple((a, 1) for a in ds.digits))


def mahler_equation(ds: DigitSet) -> MahlerEquation:
    """The degree-one equation ``M(z) - p_f(z) M(z^q) = 0``."""
    one = Polynomial(((0, 1),))
    return MahlerEquation(ds.q, (one, -digit_polynomial(ds)))


def characteristic_polynomial(eq: MahlerEquation) -> CharacteristicPolynomial:
    coeffs = tuple(p(1) for p in eq.coefficients)
    if coeffs[0] == 0:
        warnings.warn(
            "p_0(1) = 0: the characteristic polynomial drops degree",
            DegenerateLeadingCoefficientWarning,
            stacklevel=2,
        )
    return CharacteristicPolynomial(coeffs)


def mahler_eigenvalue(eq: MahlerEquation) -> MahlerEigenvalue:
    """Root of the linear characteristic polynomial of a degree-one equation.

    Eigenvalue selection for higher degree is not implemented.
    """
    if eq.degree != 1:
        raise UnsupportedDegree(f"eigenvalue selection needs degree 1, got {eq.degree}")
    p0, p1 = (p(1) for p in eq.coefficients)
    if p0 == 0:
        raise DegenerateLeadingCoefficient("p_0(1) = 0")
    value = Fraction(-p1, p0)
    return MahlerEigenvalue(value.numerator if value.denominator == 1 else value)


def _log_product(ds: DigitSet, log_z: float, J: int) -> float:
    # p_f(z^(q^j)) = sum_a exp(a * q^j * log z); working from log z keeps
    # precision when 1 - z is far below machine epsilon relative to 1.
    total = 0.0
    for j in range(J):
        s = ds.q**j * log_z
        total += math.log(math.fsum(math.exp(a * s) for a in ds.digits))
    return total


def truncation_depth(ds: DigitSet, z: float, *, one_minus_z: float | None = None) -> int:
    """Least ``J >= 1`` with ``z^(q^J) < 1e-15``."""
    if one_minus_z is None:
        one_minus_z = 1.0 - z
    if one_minus_z >= 1.0:
        return 1
    rate = -math.log1p(-one_minus_z)
    J = 1
    while ds.q**J * rate <= -math.log(TRUNCATION_EPS):
        J += 1
    return J


def evaluate_truncated_product(ds: DigitSet, z: float, J: int) -> float:
    """``prod_{j<J} p_f(z^(q^j))`` for ``0 <= z < 1``."""
    if not 0 <= z < 1:
        raise ValueError("z must lie in [0, 1)")
    if J < 1:
        raise ValueError("J must be at least 1")
    if z == 0:
        return 1.0
    return math.exp(_log_product(ds, math.log(z), J))


def asymptotic_probe(
    ds: DigitSet, t_min: float, t_max: float, step: float = 0.05
) -> AsymptoticProbeReport:
    """Sample ``G = (1-z)^(log_q m) M(z)`` along ``z = 1 - q^(-t)``.

    ``t`` runs over ``t_min, t_min + step, ...`` up to ``t_max``.  Each
    sample uses the product truncated at :func:`truncation_depth`.
    """
    if not 1 <= t_min < t_max:
        raise ValueError("need 1 <= t_min < t_max")
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(math.floor((t_max - t_min) / step + 1e-9)) + 1
    log_q = math.log(ds.q)
    samples = []
    for i in range(count):
        t = t_min + i * step
        u = math.exp(-t * log_q)
        J = truncation_depth(ds, 1.0 - u, one_minus_z=u)
        # (1 - z)^(log_q m) = q^(-t log_q m) = m^(-t)
        log_G = -t * math.log(ds.m) + _log_product(ds, math.log1p(-u), J)
        samples.append(ProbeSample(t, 1.0 - u, J, math.exp(log_G)))
    return AsymptoticProbeReport(ds.q, ds.digits, tuple(samples))
