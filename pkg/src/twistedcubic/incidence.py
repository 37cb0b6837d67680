"""Incidence submatrix parameters for the orbits of rho-lines.

For one orbit the profile records, per point type, how many points of
that type lie on an orbit line (pb) and how many orbit lines pass
through a point of that type (lb), plus the plane-side twins (pi:
planes of each type through an orbit line; lam: orbit lines inside a
plane of each type).  All entries are exact integers; any division that
fails to come out exact is an error, not a rounding.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import pg3
from .counts import n_capital, w_tilde_closed
from .gf import FieldElement, FieldSpec, is_cube
from .group import Orbit
from .twisted import (
    DUAL_PLANE_TYPE,
    CubicModel,
    PlaneType,
    PointType,
    classify_plane,
    classify_point,
    expected_plane_counts,
    expected_point_counts,
    planes_of_type,
    points_of_type,
)

POINT_TYPES = (PointType.CUBIC, PointType.TANGENT, PointType.ZERO_G,
               PointType.ONE_G, PointType.THREE_G)
PLANE_TYPES = (PlaneType.GAMMA, PlaneType.TWO_C, PlaneType.THREE_C,
               PlaneType.ONE_C_BAR, PlaneType.ZERO_C)


@dataclass
class IncidenceProfile:
    q: int
    orbit_size: int
    pb: dict[PointType, int]   # points of each type on one orbit line
    lb: dict[PointType, int]   # orbit lines through one point of each type
    pi: dict[PlaneType, int]   # planes of each type through one orbit line
    lam: dict[PlaneType, int]  # orbit lines inside one plane of each type

    def as_dict(self) -> dict:
        return {
            "orbit_size": self.orbit_size,
            "points_on_line": {t.value: self.pb[t] for t in POINT_TYPES},
            "lines_through_point": {t.value: self.lb[t] for t in POINT_TYPES},
            "planes_through_line": {t.value: self.pi[t] for t in PLANE_TYPES},
            "lines_in_plane": {t.value: self.lam[t] for t in PLANE_TYPES},
        }


def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise ValueError(f"{num} is not divisible by {den}")
    return num // den


def _lb_from_pb(q: int, pb: dict[PointType, int], orbit_size: int) -> dict:
    sizes = expected_point_counts(q)
    return {t: _exact_div(pb[t] * orbit_size, sizes[t]) for t in POINT_TYPES}


def _dualize(prof_pb: dict, prof_lb: dict) -> tuple[dict, dict]:
    pi = {DUAL_PLANE_TYPE[t]: v for t, v in prof_pb.items()}
    lam = {DUAL_PLANE_TYPE[t]: v for t, v in prof_lb.items()}
    return pi, lam


def derive_from_partial(q: int, pb_t: int, pb_1g: int, orbit_size: int) -> IncidenceProfile:
    """Complete a profile from (points-on-tangents, one-plane points, size).

    Uses the two linear relations fixing the three- and zero-plane counts,
    then the orbit/point-class division for the line counts, then duality
    for the plane side.
    """
    pb3 = _exact_div(q + 1 - pb_1g - 2 * pb_t, 3)
    pb = {
        PointType.CUBIC: 0,
        PointType.TANGENT: pb_t,
        PointType.ONE_G: pb_1g,
        PointType.THREE_G: pb3,
        PointType.ZERO_G: pb_t + 2 * pb3,
    }
    lb = _lb_from_pb(q, pb, orbit_size)
    pi, lam = _dualize(pb, lb)
    return IncidenceProfile(q, orbit_size, pb, lb, pi, lam)


def profile_closed_even(F: FieldSpec, rho) -> IncidenceProfile:
    """Closed-form profile for even q, split on the parity of log2(q)."""
    if F.p != 2:
        raise ValueError("defined for even q")
    rho = F(rho) if not isinstance(rho, FieldElement) else rho
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    q = F.q
    n = q**3 - q
    if F.m % 2 == 1:
        return derive_from_partial(q, 1, q // 2, n)
    return derive_from_partial(q, 1, w_tilde_closed(F, rho), n // 3)


def profile_closed_odd(F: FieldSpec, rho) -> IncidenceProfile:
    """Closed-form profile for odd q != 0 (mod 3), by the cube status of -2*rho."""
    if F.p in (2, 3):
        raise ValueError("defined for odd q != 0 (mod 3)")
    rho = F(rho) if not isinstance(rho, FieldElement) else rho
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    q = F.q
    n = q**3 - q
    if q % 3 == 2:
        return derive_from_partial(q, 2, (q - 1) // 2, n // 2)
    N = n_capital(F, rho)
    if not is_cube(F(-2) * rho):
        return derive_from_partial(q, 1, N, n // 3)
    return derive_from_partial(q, 4, N, n // 12)


def _count_orbit_lines(orbit: Orbit, lines: list[pg3.ProjLine]) -> int:
    keys = np.array(sorted(l.packed() for l in lines), dtype=np.uint64)
    pos = np.searchsorted(orbit.keys, keys)
    pos = np.minimum(pos, len(orbit.keys) - 1)
    return int((orbit.keys[pos] == keys).sum())


def _point_side(model: CubicModel, line: pg3.ProjLine) -> dict[PointType, int]:
    c = Counter(classify_point(model, P) for P in pg3.points_on_line(line))
    return {t: c.get(t, 0) for t in POINT_TYPES}


def _plane_side(model: CubicModel, line: pg3.ProjLine) -> dict[PlaneType, int]:
    c = Counter(classify_plane(model, pl) for pl in pg3.planes_through_line(line))
    return {t: c.get(t, 0) for t in PLANE_TYPES}


def profile_bruteforce(
    orbit: Orbit, model: CubicModel, check_second: bool = True
) -> IncidenceProfile:
    """Profile of an orbit by direct classification and key-set scans.

    Point and plane counts come from the seed line; through-counts from
    the first representative of each type in canonical order.  With
    check_second=True everything is recomputed from a second orbit line
    and second representatives, and any disagreement raises.
    """
    F = model.field
    q = F.q
    pb = _point_side(model, orbit.seed)
    pi = _plane_side(model, orbit.seed)

    lb: dict[PointType, int] = {}
    lam: dict[PlaneType, int] = {}
    reps_pt: dict[PointType, list] = {}
    reps_pl: dict[PlaneType, list] = {}
    for t in POINT_TYPES:
        reps_pt[t] = points_of_type(model, t, 2 if check_second else 1)
        lb[t] = _count_orbit_lines(orbit, pg3.lines_through_point(reps_pt[t][0]))
    for t in PLANE_TYPES:
        reps_pl[t] = planes_of_type(model, t, 2 if check_second else 1)
        lam[t] = _count_orbit_lines(orbit, pg3.lines_in_plane(reps_pl[t][0]))

    if check_second:
        other_key = orbit.keys[len(orbit.keys) // 2]
        if int(other_key) == orbit.seed.packed() and len(orbit.keys) > 1:
            other_key = orbit.keys[0]
        other = pg3.line_from_key(F, _unpack_key(F, int(other_key)))
        if _point_side(model, other) != pb or _plane_side(model, other) != pi:
            raise AssertionError("profile differs between two orbit lines")
        for t in POINT_TYPES:
            if len(reps_pt[t]) > 1:
                n2 = _count_orbit_lines(orbit, pg3.lines_through_point(reps_pt[t][1]))
                if n2 != lb[t]:
                    raise AssertionError(f"through-count differs between {t} points")
        for t in PLANE_TYPES:
            if len(reps_pl[t]) > 1:
                n2 = _count_orbit_lines(orbit, pg3.lines_in_plane(reps_pl[t][1]))
                if n2 != lam[t]:
                    raise AssertionError(f"in-plane count differs between {t} planes")

    return IncidenceProfile(q, orbit.size, pb, lb, pi, lam)


def _unpack_key(F: FieldSpec, packed: int) -> tuple:
    bits = (F.q - 1).bit_length()
    mask = (1 << bits) - 1
    return tuple((packed >> (s * bits)) & mask for s in range(6))


def check_profile_relations(prof: IncidenceProfile) -> None:
    """Raise unless every structural relation holds on the profile."""
    q = prof.q
    if sum(prof.pb.values()) != q + 1:
        raise AssertionError("point counts on a line must sum to q+1")
    if sum(prof.pi.values()) != q + 1:
        raise AssertionError("plane counts through a line must sum to q+1")
    for v in (prof.pb[PointType.CUBIC], prof.lb[PointType.CUBIC],
              prof.pi[PlaneType.GAMMA], prof.lam[PlaneType.GAMMA]):
        if v != 0:
            raise AssertionError("curve points and osculating planes must not occur")
    pb_t, pb_1g = prof.pb[PointType.TANGENT], prof.pb[PointType.ONE_G]
    if prof.pb[PointType.THREE_G] != _exact_div(q + 1 - pb_1g - 2 * pb_t, 3):
        raise AssertionError("three-plane point count relation failed")
    if prof.pb[PointType.ZERO_G] != pb_t + 2 * prof.pb[PointType.THREE_G]:
        raise AssertionError("zero-plane point count relation failed")
    if prof.lb != _lb_from_pb(q, prof.pb, prof.orbit_size):
        raise AssertionError("line-through-point counts break the orbit division")
    pi, lam = _dualize(prof.pb, prof.lb)
    if prof.pi != pi or prof.lam != lam:
        raise AssertionError("plane side is not the dual of the point side")
    msizes = expected_point_counts(q)
    total = sum(prof.lb[t] * msizes[t] for t in POINT_TYPES)
    if total != prof.orbit_size * (q + 1):
        raise AssertionError("global double counting failed")
    nsizes = expected_plane_counts(q)
    total = sum(prof.lam[t] * nsizes[t] for t in PLANE_TYPES)
    if total != prof.orbit_size * (q + 1):
        raise AssertionError("plane-side double counting failed")
