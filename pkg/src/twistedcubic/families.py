"""The parametric line families and their predicted orbit data.

Two families of external lines are tracked: the rho-family through
(rho,0,0,1) and (0,0,1,0) with key (0,rho,0,0,0,-1), and the mu-family
through (0,mu,0,1) and (1,0,1,0).  The rho=1 line is the special line
shared by both earlier constructions.

Predictions (orbit sizes, stabilizer orders, how the rho-lines split
into orbits, and when a rho-orbit coincides with the mu = -1/3 orbit)
are closed-form; the verification layer checks each one against the
brute-force orbit machinery.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import pg3
from .gf import FieldElement, FieldSpec, dlog, is_cube, is_fourth_power, r_class


@dataclass(frozen=True)
class LRhoSpec:
    rho: FieldElement
    line: pg3.ProjLine
    r_class: int
    minus2rho_is_cube: bool | None  # None for even q, where -2*rho = 0


@dataclass(frozen=True)
class EllMuSpec:
    mu: FieldElement
    line: pg3.ProjLine
    upsilon: bool


def l_rho(F: FieldSpec, rho) -> LRhoSpec:
    """The line {(rho, 0, gamma, 1)} + (0,0,1,0); rho must be nonzero.

    At rho = 0 the construction degenerates to the tangent at parameter 0,
    so it is rejected.
    """
    rho = F(rho)
    if rho.code == 0:
        raise ValueError("rho = 0 gives the tangent at 0, not a family line")
    line = pg3.line_through(
        pg3.point(F, (rho, 0, 0, 1)), pg3.ProjPoint(F, (0, 0, 1, 0))
    )
    m2rho = F(-2) * rho
    return LRhoSpec(
        rho=rho,
        line=line,
        r_class=r_class(rho),
        minus2rho_is_cube=None if m2rho.code == 0 else is_cube(m2rho),
    )


def l_script(F: FieldSpec) -> pg3.ProjLine:
    """The special line through (1,0,0,1) and (0,0,1,0): the rho = 1 case."""
    return l_rho(F, F.one).line


def ell_mu(F: FieldSpec, mu) -> EllMuSpec:
    """The line {(gamma, mu, gamma, 1)} + (1,0,1,0) for admissible mu."""
    mu = F(mu)
    if mu.code in (0, 1):
        raise ValueError("mu must avoid 0 and 1")
    if F.p not in (2, 3) and mu == F.one / F(9):
        raise ValueError("mu = 1/9 is excluded for odd q != 0 (mod 3)")
    line = pg3.line_through(
        pg3.point(F, (0, mu, 0, 1)), pg3.ProjPoint(F, (1, 0, 1, 0))
    )
    return EllMuSpec(mu=mu, line=line, upsilon=upsilon_holds(F, mu))


def upsilon_holds(F: FieldSpec, mu) -> bool:
    """mu = -1/3, q = 1 (mod 12) and -1/3 a fourth power (odd q only)."""
    if F.p in (2, 3):
        return False
    mu = F(mu)
    minus_third = F(-1) / F(3)
    return mu == minus_third and F.q % 12 == 1 and is_fourth_power(minus_third)


# -- closed-form orbit predictions --------------------------------------------


def _check_q(F: FieldSpec):
    if F.p == 3:
        raise ValueError("predictions hold for q != 0 (mod 3)")


def predicted_stab_lrho(F: FieldSpec, rho) -> tuple[int, str]:
    """(stabilizer order, structure tag) for the orbit of a rho-line."""
    _check_q(F)
    spec = l_rho(F, rho)
    if F.q % 3 == 1:
        if F.p == 2 or not spec.minus2rho_is_cube:
            return 3, "C3"
        return 12, "A4"
    if F.p == 2:
        return 1, "trivial"
    return 2, "C2"


def predicted_orbit_size_lrho(F: FieldSpec, rho) -> int:
    order, _ = predicted_stab_lrho(F, rho)
    return (F.q**3 - F.q) // order


def predicted_orbit_size_lscript(F: FieldSpec) -> int:
    """Size of the special line's orbit, via the cube status of 2."""
    _check_q(F)
    n = F.q**3 - F.q
    if F.q % 3 == 1:
        if F.p == 2 or not is_cube(F(2)):
            return n // 3
        return n // 12
    return n if F.p == 2 else n // 2


def predicted_orbit_size_ellmu(F: FieldSpec, mu) -> int:
    """Four-case size of a mu-line orbit (domain: q >= 5)."""
    mu = F(mu)
    if F.q < 5:
        raise ValueError("the mu-orbit size predictions assume q >= 5")
    n = F.q**3 - F.q
    if F.p == 2:
        return n // 2
    square = dlog(mu) % 2 == 0
    if not square:
        return n // 2
    if F.p == 3:
        return n // 4
    if upsilon_holds(F, mu):
        return n // 12
    return n // 4


@dataclass(frozen=True)
class PartitionPrediction:
    """How the rho-lines split into orbits for one field."""

    q: int
    num_orbits: int
    size_by_class: dict[int, int]      # discrete-log class mod 3 -> orbit size
    stab_by_class: dict[int, int]
    cube_class: int | None             # class with -2*rho a cube (odd q = 1 mod 3)
    lines_per_orbit: int               # rho-lines contained in each orbit
    mu_coincidence: bool               # distinguished orbit equals the mu=-1/3 orbit


def orbit_partition_prediction(F: FieldSpec) -> PartitionPrediction:
    _check_q(F)
    q = F.q
    n = q**3 - q
    if q % 3 == 1:
        if F.p == 2:
            return PartitionPrediction(
                q=q,
                num_orbits=3,
                size_by_class={m: n // 3 for m in range(3)},
                stab_by_class={m: 3 for m in range(3)},
                cube_class=None,
                lines_per_orbit=(q - 1) // 3,
                mu_coincidence=False,
            )
        psi = dlog(F(-2)) % 3
        cube_class = (-psi) % 3
        sizes = {m: (n // 12 if m == cube_class else n // 3) for m in range(3)}
        stabs = {m: (12 if m == cube_class else 3) for m in range(3)}
        minus_third = F(-1) / F(3)
        return PartitionPrediction(
            q=q,
            num_orbits=3,
            size_by_class=sizes,
            stab_by_class=stabs,
            cube_class=cube_class,
            lines_per_orbit=(q - 1) // 3,
            mu_coincidence=q % 12 == 1 and is_fourth_power(minus_third),
        )
    size = n if F.p == 2 else n // 2
    stab = 1 if F.p == 2 else 2
    return PartitionPrediction(
        q=q,
        num_orbits=1,
        size_by_class={m: size for m in range(3)},
        stab_by_class={m: stab for m in range(3)},
        cube_class=None,
        lines_per_orbit=q - 1,
        mu_coincidence=F.p != 2 and q % 12 == 11,
    )
