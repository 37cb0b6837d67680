"""The twisted cubic, its tangents, osculating planes, chords and axes.

A CubicModel materializes, for one field, the q+1 curve points
(t^3, t^2, t, 1) plus (1,0,0,0), the tangent lines, the osculating
planes, and the canonical-key sets of all chords and (away from
characteristic 3) all axes.  On top of it sit the point and plane
classifiers and the membership test for the line class consisting of
external non-chord non-axis lines avoiding every osculating plane
(class O6 in Hirschfeld's taxonomy).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np

from . import pg3
from .gf import FieldElement, FieldSpec, cube_roots, num_quadratic_roots


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


class PlaneType(Enum):
    GAMMA = "gamma"      # osculating plane
    TWO_C = "2C"         # exactly two curve points
    THREE_C = "3C"       # exactly three curve points
    ONE_C_BAR = "1C~"    # one curve point, not osculating
    ZERO_C = "0C"        # no curve point


class PointType(Enum):
    CUBIC = "C"          # on the curve
    TANGENT = "T"        # off the curve, on a tangent
    ZERO_G = "0G"        # on no osculating plane
    ONE_G = "1G"         # on exactly one osculating plane
    THREE_G = "3G"       # on exactly three osculating planes


# point type <-> plane type under the null polarity
DUAL_PLANE_TYPE = {
    PointType.CUBIC: PlaneType.GAMMA,
    PointType.TANGENT: PlaneType.TWO_C,
    PointType.ZERO_G: PlaneType.ZERO_C,
    PointType.ONE_G: PlaneType.ONE_C_BAR,
    PointType.THREE_G: PlaneType.THREE_C,
}


def cubic_params(F: FieldSpec) -> list:
    """The q+1 parameter values: every field code plus INF."""
    return [*range(F.q), INF]


def cubic_point(F: FieldSpec, t) -> pg3.ProjPoint:
    """The curve point (t^3, t^2, t, 1), or (1,0,0,0) at t = INF."""
    if t is INF:
        return pg3.ProjPoint(F, (1, 0, 0, 0))
    t = int(t)
    t2 = F.mul_codes(t, t)
    t3 = F.mul_codes(t2, t)
    return pg3.ProjPoint(F, pg3.canonicalize(F, (t3, t2, t, 1)))


def tangent_line(F: FieldSpec, t) -> pg3.ProjLine:
    """Tangent at the parameter-t point.

    Spanned by the point and the derivative direction (3t^2, 2t, 1, 0);
    at INF by (1,0,0,0) and (0,1,0,0).
    """
    if t is INF:
        return pg3.line_through(
            pg3.ProjPoint(F, (1, 0, 0, 0)), pg3.ProjPoint(F, (0, 1, 0, 0))
        )
    t = int(t)
    three, two = 3 % F.p, 2 % F.p
    d = (
        F.mul_codes(three, F.mul_codes(t, t)),
        F.mul_codes(two, t),
        1,
        0,
    )
    return pg3.line_through(cubic_point(F, t), pg3.ProjPoint(F, pg3.canonicalize(F, d)))


def osculating_plane(F: FieldSpec, t) -> pg3.ProjPlane:
    """Osculating plane [1, -3t, 3t^2, -t^3]; [0,0,0,1] at t = INF.

    Evaluated in the field, so the characteristic-2 collapse to
    [1, t, t^2, t^3] happens automatically.
    """
    if t is INF:
        return pg3.ProjPlane(F, (0, 0, 0, 1))
    t = int(t)
    three = 3 % F.p
    t2 = F.mul_codes(t, t)
    t3 = F.mul_codes(t2, t)
    coeffs = (
        1,
        int(F.neg[F.mul_codes(three, t)]),
        F.mul_codes(three, t2),
        int(F.neg[t3]),
    )
    return pg3.ProjPlane(F, pg3.canonicalize(F, coeffs))


def chord_key(F: FieldSpec, a1: int, a2: int) -> tuple:
    """Canonical key of the chord with parameter-sum a1 and product a2."""
    sq = F.mul_codes(a2, a2)
    key = (
        sq,
        F.mul_codes(a1, a2),
        F.sub_codes(F.mul_codes(a1, a1), a2),
        a2,
        int(F.neg[a1]),
        1,
    )
    return pg3.canonicalize(F, key)


class CubicModel:
    """All per-field curve data, built once and then immutable."""

    def __init__(self, F: FieldSpec):
        self.field = F
        q = F.q
        self.params = cubic_params(F)
        self.points = [cubic_point(F, t) for t in self.params]
        self.point_set = frozenset(P.packed() for P in self.points)

        self.tangents = {t: tangent_line(F, t) for t in self.params}
        self.tangent_keys = frozenset(l.packed() for l in self.tangents.values())

        self.osc_planes = {t: osculating_plane(F, t) for t in self.params}
        self.osc_plane_set = frozenset(p.packed() for p in self.osc_planes.values())

        tpts = set()
        for l in self.tangents.values():
            for P in pg3.points_on_line(l):
                pk = P.packed()
                if pk not in self.point_set:
                    tpts.add(pk)
        self.tangent_point_set = frozenset(tpts)

        # chords: all (a1, a2) pairs cover lines through two finite (possibly
        # conjugate) curve parameters; the pencil through (1,0,0,0) is added
        # separately, with the tangent at INF as its coincident case.
        tags: dict[int, str] = {}
        for a1 in range(q):
            for a2 in range(q):
                k = pg3.pack_codes(F, chord_key(F, a1, a2))
                nroots = num_quadratic_roots(F, F.from_code(a1), F.from_code(a2))
                tags[k] = ("imaginary", "tangent", "real")[nroots]
        p_inf = self.points[-1]
        for t in range(q):
            k = pg3.line_through(p_inf, cubic_point(F, t)).packed()
            tags[k] = "real"
        tags[self.tangents[INF].packed()] = "tangent"
        self.chord_tags = tags
        self.chord_keys = frozenset(tags)

        self._axis_keys: frozenset[int] | None = None
        self._meeting_keys: np.ndarray | None = None
        self._in_osc_keys: np.ndarray | None = None

    @property
    def axis_keys(self) -> frozenset[int]:
        """Keys of all axes: the null-polarity images of the chords."""
        if self.field.p == 3:
            raise ValueError("axes are undefined for q = 0 (mod 3)")
        if self._axis_keys is None:
            F = self.field
            keys = set()
            for k in self.chord_keys:
                line = pg3.line_from_key(F, _unpack(F, k, 6))
                keys.add(pg3.null_polarity_line(line).packed())
            self._axis_keys = frozenset(keys)
        return self._axis_keys

    # -- bulk key sets used by the line-class filter ----------------------

    def lines_meeting_cubic(self) -> np.ndarray:
        """Sorted packed keys of every line through a curve point."""
        if self._meeting_keys is None:
            keys = set()
            for P in self.points:
                for l in pg3.lines_through_point(P):
                    keys.add(l.packed())
            self._meeting_keys = np.array(sorted(keys), dtype=np.uint64)
        return self._meeting_keys

    def lines_in_osc_planes(self) -> np.ndarray:
        """Sorted packed keys of every line inside an osculating plane."""
        if self._in_osc_keys is None:
            keys = set()
            for pl in self.osc_planes.values():
                for l in pg3.lines_in_plane(pl):
                    keys.add(l.packed())
            self._in_osc_keys = np.array(sorted(keys), dtype=np.uint64)
        return self._in_osc_keys


def _unpack(F: FieldSpec, packed: int, n: int) -> tuple:
    bits = (F.q - 1).bit_length()
    mask = (1 << bits) - 1
    return tuple((packed >> (s * bits)) & mask for s in range(n))


_model_cache: dict[int, CubicModel] = {}


def cubic_model(F: FieldSpec) -> CubicModel:
    model = _model_cache.get(F.q)
    if model is None:
        model = CubicModel(F)
        _model_cache[F.q] = model
    return model


# -- classification -----------------------------------------------------------


def classify_plane(model: CubicModel, pl: pg3.ProjPlane) -> PlaneType:
    if pl.packed() in model.osc_plane_set:
        return PlaneType.GAMMA
    n = sum(pg3.point_on_plane(P, pl) for P in model.points)
    if n > 3:
        raise AssertionError("a non-osculating plane meets the curve in <= 3 points")
    return {0: PlaneType.ZERO_C, 1: PlaneType.ONE_C_BAR, 2: PlaneType.TWO_C,
            3: PlaneType.THREE_C}[n]


def classify_point(model: CubicModel, pt: pg3.ProjPoint) -> PointType:
    """Point type; the tangent test takes precedence over the plane count."""
    F = model.field
    if F.p == 3:
        raise ValueError("point types are undefined for q = 0 (mod 3)")
    pk = pt.packed()
    if pk in model.point_set:
        return PointType.CUBIC
    if pk in model.tangent_point_set:
        return PointType.TANGENT
    n = sum(pg3.point_on_plane(pt, pl) for pl in model.osc_planes.values())
    try:
        return {0: PointType.ZERO_G, 1: PointType.ONE_G, 3: PointType.THREE_G}[n]
    except KeyError:
        raise AssertionError(f"point off tangents on {n} osculating planes") from None


def expected_plane_counts(q: int) -> dict[PlaneType, int]:
    n = q**3 - q
    return {
        PlaneType.GAMMA: q + 1,
        PlaneType.TWO_C: q**2 + q,
        PlaneType.THREE_C: n // 6,
        PlaneType.ONE_C_BAR: n // 2,
        PlaneType.ZERO_C: n // 3,
    }


def expected_point_counts(q: int) -> dict[PointType, int]:
    plane_counts = expected_plane_counts(q)
    return {pk: plane_counts[pi] for pk, pi in DUAL_PLANE_TYPE.items()}


def _pg3_code_array(q: int) -> np.ndarray:
    """All canonical PG(3,q) 4-tuples as an (N, 4) int32 array."""
    blocks = []
    for lead in range(4):
        nfree = 3 - lead
        n = q**nfree
        arr = np.zeros((n, 4), dtype=np.int32)
        arr[:, lead] = 1
        idx = np.arange(n)
        for k in range(nfree):
            arr[:, lead + 1 + k] = (idx // q**k) % q
        blocks.append(arr)
    return np.concatenate(blocks)


def _incidence_counts(F: FieldSpec, arr: np.ndarray, others: np.ndarray) -> np.ndarray:
    """Number of rows of `others` orthogonal to each row of `arr` (GF dot)."""
    add, mul = F.dense_tables()
    counts = np.zeros(len(arr), dtype=np.int64)
    for row in others:
        acc = np.zeros(len(arr), dtype=np.int32)
        for k in range(4):
            acc = add[acc, mul[arr[:, k], row[k]]]
        counts += acc == 0
    return counts


def plane_type_counts(model: CubicModel) -> dict[PlaneType, int]:
    """Census of all planes by type (vectorized over the whole space)."""
    F = model.field
    arr = _pg3_code_array(F.q)
    packed = _pack_array(F, arr)
    is_osc = np.isin(packed, np.array(sorted(model.osc_plane_set), dtype=np.uint64))
    cub = np.array([P.codes for P in model.points], dtype=np.int32)
    ncub = _incidence_counts(F, arr, cub)
    out = {PlaneType.GAMMA: int(is_osc.sum())}
    rest = ~is_osc
    assert ncub[rest].max() <= 3
    for n, ptype in ((0, PlaneType.ZERO_C), (1, PlaneType.ONE_C_BAR),
                     (2, PlaneType.TWO_C), (3, PlaneType.THREE_C)):
        out[ptype] = int((rest & (ncub == n)).sum())
    return out


def point_type_counts(model: CubicModel) -> dict[PointType, int]:
    """Census of all points by type (vectorized over the whole space)."""
    F = model.field
    if F.p == 3:
        raise ValueError("point types are undefined for q = 0 (mod 3)")
    arr = _pg3_code_array(F.q)
    packed = _pack_array(F, arr)
    on_curve = np.isin(packed, np.array(sorted(model.point_set), dtype=np.uint64))
    on_tangent = np.isin(
        packed, np.array(sorted(model.tangent_point_set), dtype=np.uint64)
    )
    osc = np.array([pl.coeffs for pl in model.osc_planes.values()], dtype=np.int32)
    nosc = _incidence_counts(F, arr, osc)
    rest = ~(on_curve | on_tangent)
    out = {
        PointType.CUBIC: int(on_curve.sum()),
        PointType.TANGENT: int(on_tangent.sum()),
    }
    assert set(np.unique(nosc[rest])) <= {0, 1, 3}
    for n, ptype in ((0, PointType.ZERO_G), (1, PointType.ONE_G),
                     (3, PointType.THREE_G)):
        out[ptype] = int((rest & (nosc == n)).sum())
    return out


def _pack_array(F: FieldSpec, arr: np.ndarray) -> np.ndarray:
    bits = (F.q - 1).bit_length()
    key = np.zeros(len(arr), dtype=np.uint64)
    for s in range(arr.shape[1]):
        key |= arr[:, s].astype(np.uint64) << np.uint64(s * bits)
    return key


def points_of_type(model: CubicModel, ptype: PointType, limit: int):
    """The first `limit` points of a type, in canonical enumeration order."""
    out = []
    for P in pg3.all_points(model.field):
        if classify_point(model, P) is ptype:
            out.append(P)
            if len(out) == limit:
                break
    return out


def planes_of_type(model: CubicModel, ptype: PlaneType, limit: int):
    out = []
    for pl in pg3.all_planes(model.field):
        if classify_plane(model, pl) is ptype:
            out.append(pl)
            if len(out) == limit:
                break
    return out


# -- the external-line class --------------------------------------------------


def o6_class_size(q: int) -> int:
    """Number of external non-chord non-axis lines avoiding all osculating planes."""
    return (q**2 - q) * (q**2 - 1)


def is_o6_line(model: CubicModel, l: pg3.ProjLine) -> bool:
    """Membership test for the class described by o6_class_size.

    Rejects q = 0 (mod 3), where the axis side of the taxonomy differs.
    """
    F = model.field
    if F.p == 3:
        raise ValueError("line class test unsupported for q = 0 (mod 3)")
    pk = l.packed()
    if pk in model.chord_keys or pk in model.axis_keys:
        return False
    if any(P.packed() in model.point_set for P in pg3.points_on_line(l)):
        return False
    for pl in model.osc_planes.values():
        if pg3.point_on_plane(l.p1, pl) and pg3.point_on_plane(l.p2, pl):
            return False
    return True


def lies_in_osc_plane_char3(F: FieldSpec, rho: FieldElement) -> FieldElement:
    """For q = 0 (mod 3): the t with the whole rho-line inside osc plane t.

    The line through (rho,0,0,1) and (0,0,1,0) degenerates into the
    osculating plane at the unique cube root of rho; the containment is
    verified pointwise before returning.
    """
    if F.p != 3:
        raise ValueError("this degeneration only occurs for q = 0 (mod 3)")
    if rho.code == 0:
        raise ValueError("rho must be nonzero")
    (t,) = cube_roots(rho)
    plane = osculating_plane(F, t.code)
    line = pg3.line_through(
        pg3.ProjPoint(F, pg3.canonicalize(F, (rho.code, 0, 0, 1))),
        pg3.ProjPoint(F, (0, 0, 1, 0)),
    )
    for P in pg3.points_on_line(line):
        assert pg3.point_on_plane(P, plane), "containment failed"
    return t
