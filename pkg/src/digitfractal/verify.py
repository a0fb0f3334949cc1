"""Built-in invariant suites run by ``digitfractal verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .digitset import (
    DigitSet,
    build_substitution,
    hausdorff_dimension,
    iterate_substitution,
    membership_prefix,
    new_digit_set,
)
from .mahler import asymptotic_probe, characteristic_polynomial, mahler_eigenvalue, mahler_equation
from .measures import (
    ghost_direct_values,
    interval_factor,
    level_cdf,
    level_set,
    limit_cdf,
    product_values,
)

FAMILY: tuple[DigitSet, ...] = tuple(
    new_digit_set(q, a)
    for q, a in [
        (3, [0, 2]),
        (2, [0, 1]),
        (4, [0, 1, 3]),
        (5, [0, 4]),
        (10, [0, 2, 5, 8]),
        (7, [0]),
        (3, [0, 1, 2]),
    ]
)
CANTOR = FAMILY[0]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}:{self.name} worst={self.worst:.3e} tol={self.tol:.1e}"


def dimension_suite(family=FAMILY, k: int = 6) -> list[Check]:
    checks = []
    for ds in family:
        eq = mahler_equation(ds)
        lam = mahler_eigenvalue(eq).value
        via_mahler = math.log(lam) / math.log(ds.q)
        checks.append(Check("dimension", f"{ds} ifs-vs-mahler", abs(hausdorff_dimension(ds) - via_mahler), 1e-12))
        checks.append(Check("dimension", f"{ds} chi(lambda)", abs(characteristic_polynomial(eq)(lam)), 1e-12))
        boxes = len(level_set(ds, k))
        box_dim = math.log(boxes) / math.log(ds.q**k)
        checks.append(Check("dimension", f"{ds} box-count k={k}", abs(hausdorff_dimension(ds) - box_dim), 1e-12))
    return checks


def oracle_suite(family=FAMILY, k: int = 8) -> list[Check]:
    checks = []
    for ds in family:
        a = iterate_substitution(build_substitution(ds), k)
        b = membership_prefix(ds, k)
        mismatches = int(np.count_nonzero(a.bits() != b.bits()))
        checks.append(Check("oracle", f"{ds} k={k} mismatches", mismatches, 0))
        checks.append(Check("oracle", f"{ds} k={k} ones=m^k", abs(a.count_ones() - ds.m**k), 0))
    return checks


def fourier_suite(family=FAMILY, k_max: int = 8, n_max: int = 50) -> list[Check]:
    ns = np.arange(-n_max, n_max + 1)
    checks = []
    for ds in family:
        worst_direct = worst_level = worst_conj = 0.0
        for k in range(1, k_max + 1):
            direct = ghost_direct_values(ds, k, ns)
            prod = product_values(ds, ns, range(1, k + 1))
            level = prod * interval_factor(ds, k, ns)
            worst_direct = max(worst_direct, float(np.abs(direct - prod).max()))
            excess = np.abs(level - prod) - np.pi * np.abs(ns) / ds.q**k
            worst_level = max(worst_level, float(excess.max()))
            worst_conj = max(worst_conj, float(np.abs(prod[::-1] - np.conj(prod)).max()))
        checks.append(Check("fourier", f"{ds} |direct-product|", worst_direct, 1e-9))
        checks.append(Check("fourier", f"{ds} |level-product|-pi|n|/q^k", max(worst_level, 0.0), 0.0))
        checks.append(Check("fourier", f"{ds} conjugate symmetry", worst_conj, 1e-12))
    return checks


def cdf_suite(family=FAMILY, k_max: int = 10, grid: int = 10**4) -> list[Check]:
    xs = np.linspace(0.0, 1.0, grid)
    checks = []
    for ds in family:
        worst = 0.0
        prev = level_cdf(ds, 1, xs)
        for k in range(1, k_max + 1):
            nxt = level_cdf(ds, k + 1, xs)
            worst = max(worst, float(np.abs(nxt - prev).max()) * ds.m**k)
            prev = nxt
        checks.append(Check("cdf", f"{ds} m^k*sup|F_k-F_(k+1)|", worst, 1.0 + 1e-9))
        # exact agreement of the limit CDF with the level CDF at q-adic points
        Q = ds.q**6
        worst_lim = max(
            abs(limit_cdf(ds, Fraction(j, Q), 40) - level_cdf(ds, 6, Fraction(j, Q)))
            for j in range(0, Q + 1, max(1, Q // 2000))
        )
        checks.append(Check("cdf", f"{ds} limit-vs-level q-adic", worst_lim, float(ds.m) ** -40 + float(ds.m) ** -6))
    return checks


def asymptotic_suite() -> list[Check]:
    report = asymptotic_probe(CANTOR, 10, 30, 0.05)
    G = np.array([s.G for s in report.samples])
    t = np.array([s.t for s in report.samples])
    lo, hi = report.bounds
    shift = 20  # one unit of t at step 0.05
    late = t[:-shift] >= 20 - 1e-9
    drift = float(np.abs(G[shift:] - G[:-shift])[late].max())
    checks = [
        Check("asymptotic", f"{CANTOR} G positive (min={lo:.6f}, max={hi:.6f})", 0.0 if lo > 0 and math.isfinite(hi) else 1.0, 0.0),
        Check("asymptotic", f"{CANTOR} |G(t)-G(t+1)| t>=20", drift, 1e-3),
    ]
    for ds in FAMILY:
        if ds.is_full:
            full = asymptotic_probe(ds, 10, 30, 0.05)
            worst = max(abs(s.G - 1.0) for s in full.samples)
            checks.append(Check("asymptotic", f"{ds} |G-1|", worst, 1e-6))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "dimension": dimension_suite,
    "oracle": oracle_suite,
    "fourier": fourier_suite,
    "cdf": cdf_suite,
    "asymptotic": asymptotic_suite,
}
