"""Level measures, ghost measures, distribution functions and Fourier coefficients.

Two families of measures converge to the same limit:

* ``nu_k``: normalized Lebesgue measure on the level set ``E_k``, the union
  of the ``m^k`` intervals ``[j/q^k, (j+1)/q^k]`` with admissible ``j``;
* ``mu_k``: mass ``m^-k`` at each point ``j/q^k`` with ``f(j) = 1``.

All Fourier coefficients use ``hat(mu)(n) = integral exp(-2 pi i n x) dmu``.
Supports and weights are exact; only the exponentials are floating point.
Phases ``n*a/q^l`` are reduced modulo 1 in integer arithmetic before
evaluation, so large frequencies lose no accuracy.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from .digitset import DigitSet, build_substitution, check_budget, iterate_substitution

Route = Literal["direct", "finite_product", "level_measure", "truncated_limit"]
ROUTES: tuple[str, ...] = ("direct", "finite_product", "level_measure", "truncated_limit")

LIMIT_EXTRA_DEPTH = 40
_N_CHUNK = 64


@dataclass(frozen=True)
class DyadicPoint:
    """The exact point ``numerator / q**level``."""

    numerator: int
    level: int
    q: int

    def __post_init__(self):
        if not 0 <= self.numerator <= self.q**self.level:
            raise ValueError("numerator out of range")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.q**self.level)

    def __float__(self) -> float:
        return self.numerator / self.q**self.level


@dataclass(frozen=True)
class LevelSet:
    q: int
    level: int
    intervals: np.ndarray  # left-endpoint numerators j, sorted

    def __len__(self) -> int:
        return len(self.intervals)

    def bounds(self) -> list[tuple[Fraction, Fraction]]:
        Q = self.q**self.level
        return [(Fraction(int(j), Q), Fraction(int(j) + 1, Q)) for j in self.intervals]


@dataclass(frozen=True)
class GhostLevelMeasure:
    q: int
    level: int
    numerators: np.ndarray  # atoms at numerators / q**level
    weight_per_point: Fraction

    @property
    def support(self) -> list[DyadicPoint]:
        return [DyadicPoint(int(j), self.level, self.q) for j in self.numerators]

    @property
    def total_mass(self) -> Fraction:
        return self.weight_per_point * len(self.numerators)


@dataclass(frozen=True)
class FourierCoefficient:
    n: int
    value: complex
    route: str
    param: int  # k for the finite routes, L for the truncated limit


@dataclass(frozen=True)
class CdfSample:
    x: Fraction
    value: float


# ---------------------------------------------------------------------------
# supports


def level_set(ds: DigitSet, k: int, *, budget: int | None = None) -> LevelSet:
    """Intervals of ``E_k = S^k([0, 1])``, generated by applying the maps ``S_i``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    check_budget(ds.q**k, budget)
    js = np.zeros(1, dtype=np.int64)
    digits = np.array(ds.digits, dtype=np.int64)
    for level in range(k):
        # S_i([j/q^l, (j+1)/q^l]) = [(a_i q^l + j)/q^(l+1), ...]
        js = (digits[:, None] * ds.q**level + js[None, :]).ravel()
    js.sort()
    js.setflags(write=False)
    return LevelSet(ds.q, k, js)


@lru_cache(maxsize=16)
def _ghost_numerators(ds: DigitSet, k: int, budget: int | None) -> np.ndarray:
    prefix = iterate_substitution(build_substitution(ds), k, budget=budget)
    js = prefix.ones().astype(np.int64)
    js.setflags(write=False)
    return js


def ghost_level_measure(ds: DigitSet, k: int, *, budget: int | None = None) -> GhostLevelMeasure:
    """``mu_k``, read off the materialized prefix ``rho^k(1)``."""
    js = _ghost_numerators(ds, k, budget)
    return GhostLevelMeasure(ds.q, k, js, Fraction(1, ds.m**k))


# ---------------------------------------------------------------------------
# distribution functions


def _rank(ds: DigitSet, N: int, k: int) -> tuple[int, bool]:
    """Count admissible ``j < N`` among ``k``-digit strings, and whether ``N`` is admissible."""
    if N >= ds.q**k:
        return ds.m**k, False
    less = [sum(a < d for a in ds.digits) for d in range(ds.q)]
    allowed = set(ds.digits)
    count = 0
    for i in range(k - 1, -1, -1):
        d = N // ds.q**i % ds.q
        count += less[d] * ds.m**i
        if d not in allowed:
            return count, False
    return count, True


def _rank_array(ds: DigitSet, N: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    less = np.array([sum(a < d for a in ds.digits) for d in range(ds.q)], dtype=np.int64)
    mask = ds.mask()
    top = N >= ds.q**k
    N = np.where(top, 0, N)
    count = np.zeros(N.shape, dtype=np.int64)
    alive = np.ones(N.shape, dtype=bool)
    for i in range(k - 1, -1, -1):
        d = N // ds.q**i % ds.q
        count += np.where(alive, less[d] * ds.m**i, 0)
        alive &= mask[d]
    count = np.where(top, ds.m**k, count)
    return count, alive & ~top


def level_cdf(ds: DigitSet, k: int, x):
    """``nu_k([0, x])``.

    Scalars (int, float, :class:`~fractions.Fraction`) are handled exactly
    through their rational value; numpy arrays are evaluated in floating
    point.  The result is a float (or float array).  Nothing is materialized,
    so there is no budget check.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if isinstance(x, np.ndarray):
        x = np.clip(x.astype(float), 0.0, 1.0)
        y = x * float(ds.q**k)
        N = np.floor(y).astype(np.int64)
        count, alive = _rank_array(ds, N, k)
        return (count + alive * (y - N)) / float(ds.m**k)
    x = Fraction(x)
    if x <= 0:
        return 0.0
    if x >= 1:
        return 1.0
    y = x * ds.q**k
    N = math.floor(y)
    count, alive = _rank(ds, N, k)
    return float((count + (y - N if alive else 0)) / ds.m**k)


def limit_cdf(ds: DigitSet, x, depth: int) -> float:
    """``nu([0, x])`` for the limit measure, accurate to ``m**-depth``.

    Scans the first ``depth`` base-q digits of ``x``, adding
    ``#{a in A : a < d_i} * m**-i`` for each digit until one falls outside
    the digit set.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    x = Fraction(x)
    if x <= 0:
        return 0.0
    if x >= 1:
        return 1.0
    allowed = set(ds.digits)
    less = [sum(a < d for a in ds.digits) for d in range(ds.q)]
    # x = num/den; the result is total / m**depth, accumulated in integers
    num, den = x.numerator, x.denominator
    total = 0
    for i in range(1, depth + 1):
        d, num = divmod(num * ds.q, den)
        total += less[d] * ds.m ** (depth - i)
        if d not in allowed:
            break
    return total / ds.m**depth


def staircase_samples(
    ds: DigitSet, k: int, grid_size: int, *, budget: int | None = None
) -> list[CdfSample]:
    """``grid_size`` samples of ``nu_k``'s distribution function at ``i/(grid_size-1)``."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    check_budget(ds.q**k, budget)
    return [
        CdfSample(x, level_cdf(ds, k, x))
        for x in (Fraction(i, grid_size - 1) for i in range(grid_size))
    ]


def staircase_csv(samples: Sequence[CdfSample]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "F"])
    for s in samples:
        writer.writerow([f"{float(s.x):.17g}", f"{s.value:.17g}"])
    return buf.getvalue()


def staircase_svg(samples: Sequence[CdfSample], width: int = 600, height: int = 300) -> str:
    pad = 10
    pts = " ".join(
        f"{pad + float(s.x) * (width - 2 * pad):.3f},{height - pad - s.value * (height - 2 * pad):.3f}"
        for s in samples
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="1" points="{pts}"/>\n'
        "</svg>\n"
    )


# ---------------------------------------------------------------------------
# Fourier coefficients


def _turns(numer: np.ndarray, Q: int) -> np.ndarray:
    """``numer / Q`` modulo 1, as float turns."""
    if np.abs(numer).max(initial=0) < Q:
        return numer / float(Q)
    if Q < 2**62:
        return (numer % Q) / float(Q)
    return np.array([(int(v) % Q) / Q for v in numer])


def _expi(turns: np.ndarray) -> np.ndarray:
    return np.exp(-2j * np.pi * turns)


def _as_ns(n) -> np.ndarray:
    return np.atleast_1d(np.asarray(n, dtype=np.int64))


def ghost_direct_values(ds: DigitSet, k: int, ns, *, budget: int | None = None) -> np.ndarray:
    """``m^-k sum_j f(j) exp(-2 pi i n j / q^k)`` for every ``n`` in ``ns``."""
    ns = _as_ns(ns)
    js = _ghost_numerators(ds, k, budget)
    Q = ds.q**k
    reduced = ns % Q
    out = np.empty(len(ns), dtype=complex)
    overflow = Q > 0 and Q * Q >= 2**63
    for start in range(0, len(ns), _N_CHUNK):
        block = reduced[start : start + _N_CHUNK]
        if overflow:
            phase = np.array([[(int(n) * int(j)) % Q / Q for j in js] for n in block])
        else:
            phase = (block[:, None] * js[None, :]) % Q / float(Q)
        out[start : start + _N_CHUNK] = _expi(phase).sum(axis=1)
    return out / ds.m**k


def product_values(ds: DigitSet, ns, levels: range) -> np.ndarray:
    """``prod_{l in levels} p_f(exp(-2 pi i n / q^l)) / m`` for every ``n`` in ``ns``."""
    ns = _as_ns(ns)
    out = np.ones(len(ns), dtype=complex)
    for level in levels:
        Q = ds.q**level
        factor = np.zeros(len(ns), dtype=complex)
        for a in ds.digits:
            factor += _expi(_turns(ns * a, Q))
        out *= factor / ds.m
    return out


def interval_factor(ds: DigitSet, k: int, ns) -> np.ndarray:
    """``c_k(n) = integral_0^1 exp(-2 pi i (n/q^k) x) dx``."""
    theta = _as_ns(ns) / float(ds.q**k)
    # (1 - e^{-2 pi i theta}) / (2 pi i theta) = e^{-i pi theta} sinc(theta)
    return np.exp(-1j * np.pi * theta) * np.sinc(theta)


def default_depth(ds: DigitSet, n: int) -> int:
    """``ceil(log_q max(|n|, 1)) + 40``, computed in integers."""
    target = max(abs(int(n)), 1)
    L = 0
    while ds.q**L < target:
        L += 1
    return L + LIMIT_EXTRA_DEPTH


def fourier_ghost_direct(ds: DigitSet, k: int, n: int, *, budget: int | None = None) -> FourierCoefficient:
    value = ghost_direct_values(ds, k, [n], budget=budget)[0]
    return FourierCoefficient(n, complex(value), "direct", k)


def fourier_ghost_product(ds: DigitSet, k: int, n: int) -> FourierCoefficient:
    """``hat(mu_k)(n)`` from the product form, without materializing the sequence."""
    if k < 0:
        raise ValueError("k must be non-negative")
    value = product_values(ds, [n], range(1, k + 1))[0]
    return FourierCoefficient(n, complex(value), "finite_product", k)


def fourier_level_measure(ds: DigitSet, k: int, n: int) -> FourierCoefficient:
    """``hat(nu_k)(n)``: the ghost product times the interval factor ``c_k(n)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    value = product_values(ds, [n], range(1, k + 1))[0] * interval_factor(ds, k, [n])[0]
    return FourierCoefficient(n, complex(value), "level_measure", k)


def fourier_limit(ds: DigitSet, n: int, L: int | None = None) -> FourierCoefficient:
    """``hat(nu)(n)`` truncated after ``L`` factors (default :func:`default_depth`)."""
    if L is None:
        L = default_depth(ds, n)
    if L < 1:
        raise ValueError("L must be at least 1")
    value = product_values(ds, [n], range(1, L + 1))[0]
    return FourierCoefficient(n, complex(value), "truncated_limit", L)


def fourier_table(
    ds: DigitSet,
    ns: Sequence[int],
    routes: Sequence[str] = ROUTES,
    *,
    k: int = 8,
    L: int | None = None,
    budget: int | None = None,
) -> list[FourierCoefficient]:
    """Coefficients for every ``n`` and route, ordered by ``n`` then route."""
    unknown = set(routes) - set(ROUTES)
    if unknown:
        raise ValueError(f"unknown routes {sorted(unknown)}")
    ns = list(ns)
    values: dict[str, np.ndarray] = {}
    params: dict[str, list[int]] = {}
    if "direct" in routes:
        values["direct"] = ghost_direct_values(ds, k, ns, budget=budget)
        params["direct"] = [k] * len(ns)
    if "finite_product" in routes or "level_measure" in routes:
        prod = product_values(ds, ns, range(1, k + 1))
        values["finite_product"] = prod
        values["level_measure"] = prod * interval_factor(ds, k, ns)
        params["finite_product"] = params["level_measure"] = [k] * len(ns)
    if "truncated_limit" in routes:
        depths = [default_depth(ds, n) if L is None else L for n in ns]
        values["truncated_limit"] = np.array(
            [product_values(ds, [n], range(1, d + 1))[0] for n, d in zip(ns, depths)]
        )
        params["truncated_limit"] = depths
    return [
        FourierCoefficient(n, complex(values[r][i]), r, params[r][i])
        for i, n in enumerate(ns)
        for r in routes
    ]


def fourier_csv(rows: Sequence[FourierCoefficient]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "route", "k_or_L", "re", "im"])
    for c in rows:
        writer.writerow([c.n, c.route, c.param, f"{c.value.real:.17g}", f"{c.value.imag:.17g}"])
    return buf.getvalue()
