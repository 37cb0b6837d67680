"""Root counts and character sums attached to the rho- and mu-line families.

Every quantity has two routes: a brute-force count by direct evaluation
over the field (the oracle) and the closed form predicted for it.  The
two are compared in the verification suite, never silently trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldElement, FieldSpec, abs_trace, eta, is_cube, sqrt


def _trace_array(F: FieldSpec) -> np.ndarray:
    return np.array([abs_trace(F.from_code(c)) for c in range(F.q)], dtype=np.int64)


# -- the quartic counting tangents meeting a rho-line -------------------------


def n_rho_bruteforce(F: FieldSpec, rho: FieldElement) -> int:
    """Number of t in F_q with t^4 + 2*rho*t = 0, counted by evaluation."""
    if F.p == 3:
        raise ValueError("defined for q != 0 (mod 3)")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    two_rho = F(2) * rho
    return sum(1 for t in F.elements() if (t**4 + two_rho * t).code == 0)


def n_rho_closed(F: FieldSpec, rho: FieldElement) -> int:
    """Case split: 1 (q even or -2*rho non-cube), else 2 (q=-1 mod 3) or 4."""
    if F.p == 3:
        raise ValueError("defined for q != 0 (mod 3)")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    if F.p == 2:
        return 1
    m2rho = F(-2) * rho
    if not is_cube(m2rho):
        return 1
    return 4 if F.q % 3 == 1 else 2


# -- the mu-line count --------------------------------------------------------


def mu_domain(F: FieldSpec) -> list[FieldElement]:
    """Admissible mu values: F_q^* minus {1}, and minus {1/9} for odd q != 0 mod 3."""
    excluded = {0, 1}
    if F.p not in (2, 3):
        excluded.add((F.one / F(9)).code)
    return [F.from_code(c) for c in range(F.q) if c not in excluded]


def _check_mu(F: FieldSpec, mu: FieldElement):
    if mu.code in {0, 1}:
        raise ValueError("mu must avoid 0 and 1")
    if F.p not in (2, 3) and mu == F.one / F(9):
        raise ValueError("mu = 1/9 is excluded for odd q != 0 (mod 3)")


def n_mu_bruteforce(F: FieldSpec, mu: FieldElement) -> int:
    """Literal evaluation of the nested-radical root description (odd q).

    Collects every t of the form +-sqrt((3*mu - 1 +- sqrt(S)) / 2) with
    S = (mu-1)(9*mu-1) and counts the distinct values.
    """
    if F.p == 2 or F.p == 3:
        raise ValueError("the radical description needs odd q != 0 (mod 3)")
    _check_mu(F, mu)
    S = (mu - F.one) * (F(9) * mu - F.one)
    seen = set()
    for s in sqrt(S):
        A = (F(3) * mu - F.one + s) / F(2)
        for r in sqrt(A):
            seen.add(r.code)
            seen.add((-r).code)
    return len(seen)


def n_mu_quartic_roots(F: FieldSpec, mu: FieldElement) -> int:
    """Roots of t^4 - (3*mu - 1)*t^2 + mu: the tangent-pairing quartic.

    Independent geometric route, valid for every characteristic.
    """
    _check_mu(F, mu)
    b = F(3) * mu - F.one
    return sum(1 for t in F.elements() if (t**4 - b * t * t + mu).code == 0)


def n_mu_closed(F: FieldSpec, mu: FieldElement) -> int:
    """Quadratic-character case table for odd q; the constant 2 for even q."""
    _check_mu(F, mu)
    if F.p == 2:
        return 2
    if F.p == 3:
        raise ValueError("defined for q != 0 (mod 3)")
    S = (mu - F.one) * (F(9) * mu - F.one)
    if eta(S) == -1:
        return 0
    s = sqrt(S)[0]
    A_plus = (F(3) * mu - F.one + s) / F(2)
    A_minus = (F(3) * mu - F.one - s) / F(2)
    assert A_plus.code != 0 and A_minus.code != 0
    return 2 * sum(1 for A in (A_plus, A_minus) if eta(A) == 1)


# -- trace count and cubic exponential sum, even q ----------------------------


def w_tilde_bruteforce(F: FieldSpec, rho: FieldElement) -> int:
    """#{gamma : Tr_2(gamma^3 / rho + 1) = 1}, by evaluation (even q)."""
    if F.p != 2:
        raise ValueError("defined for even q")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    inv_rho = F.one / rho
    return sum(
        1 for g in F.elements() if abs_trace(g * g * g * inv_rho + F.one) == 1
    )


def w_tilde_closed(F: FieldSpec, rho: FieldElement) -> int:
    """q/2 for q = 2^(2m-1); q/2 +- a 2-power correction by cube class for q = 2^(2m)."""
    if F.p != 2:
        raise ValueError("defined for even q")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    c = F.m
    if c % 2 == 1:
        return F.q // 2
    m = c // 2
    if is_cube(rho):
        return 2 ** (2 * m - 1) + (-2) ** m
    return 2 ** (2 * m - 1) + (-2) ** (m - 1)


def carlitz_sum_bruteforce(F: FieldSpec, a: FieldElement) -> int:
    """S(a,0) = sum over x of (-1)^Tr_2(a x^3), by evaluation (q = 2^(2m))."""
    if F.p != 2 or F.m % 2 != 0:
        raise ValueError("defined for q = 2^(2m)")
    if a.code == 0:
        raise ValueError("a must be nonzero")
    return sum((-1) ** abs_trace(a * x * x * x) for x in F.elements())


def carlitz_sum_closed(F: FieldSpec, a: FieldElement) -> int:
    """(-1)^(m+1) 2^(m+1) on cubes, (-1)^m 2^m on non-cubes (q = 2^(2m))."""
    if F.p != 2 or F.m % 2 != 0:
        raise ValueError("defined for q = 2^(2m)")
    if a.code == 0:
        raise ValueError("a must be nonzero")
    m = F.m // 2
    if is_cube(a):
        return (-1) ** (m + 1) * 2 ** (m + 1)
    return (-1) ** m * 2**m


def w_tilde_from_carlitz(F: FieldSpec, rho: FieldElement) -> int:
    """Reconstruction W = 2^(2m-1) - S(1/rho, 0)/2 (q = 2^(2m))."""
    s = carlitz_sum_bruteforce(F, F.one / rho)
    assert s % 2 == 0
    return F.q // 2 - s // 2


# -- cubic root censuses ------------------------------------------------------


@dataclass
class RootCensus:
    """Distinct-root counts of a parametric cubic, per parameter value."""

    q: int
    by_gamma: dict[int, int]  # gamma code -> number of distinct roots

    def n(self, m: int) -> int:
        """Number of parameter values with exactly m distinct roots."""
        return sum(1 for v in self.by_gamma.values() if v == m)


def root_census_even(F: FieldSpec, rho: FieldElement) -> RootCensus:
    """Roots of t^3 + gamma t^2 + rho over gamma in F_q (even q)."""
    if F.p != 2:
        raise ValueError("defined for even q")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    by_gamma = {}
    for g in F.elements():
        by_gamma[g.code] = sum(
            1 for t in F.elements() if (t**3 + g * t * t + rho).code == 0
        )
    return RootCensus(F.q, by_gamma)


def root_census_odd(F: FieldSpec, rho: FieldElement) -> RootCensus:
    """Roots of t^3 - 3 gamma t^2 - rho over gamma in F_q^* (odd q, q != 0 mod 3)."""
    if F.p in (2, 3):
        raise ValueError("defined for odd q != 0 (mod 3)")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    three = F(3)
    by_gamma = {}
    for g in F.nonzero_elements():
        by_gamma[g.code] = sum(
            1 for t in F.elements() if (t**3 - three * g * t * t - rho).code == 0
        )
    return RootCensus(F.q, by_gamma)


def n_capital(F: FieldSpec, rho: FieldElement) -> int:
    """#{gamma in F_q^* : eta(1 + 4 gamma^3 / rho) = -1} (odd q = 1 mod 3)."""
    if F.p == 2 or F.q % 3 != 1:
        raise ValueError("defined for odd q = 1 (mod 3)")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    four_over_rho = F(4) / rho
    return sum(
        1
        for g in F.nonzero_elements()
        if eta(F.one + four_over_rho * g * g * g) == -1
    )


def n1_closed_odd(F: FieldSpec, rho: FieldElement) -> int:
    """Closed form for the number of single-root parameters of the odd cubic."""
    if F.q % 3 == 2:
        return (F.q - 3) // 2
    return n_capital(F, rho)
