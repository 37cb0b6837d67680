"""The projectivity group fixing the twisted cubic, and its line orbits.

Group elements are fractional-linear parameter maps t -> (at+b)/(ct+d),
stored as canonical (a,b,c,d) tuples with ad - bc != 0 and the first
nonzero entry scaled to 1; there are exactly q^3 - q of them.  Each
element induces a 4x4 matrix acting on points by row-vector
multiplication (permuting the curve points by the parameter map), a
contragredient action on planes, and a 6x6 exterior-square matrix
acting directly on Pluecker keys.

Orbits of lines are computed by breadth-first closure under the three
generators t -> t+1, t -> alpha*t, t -> 1/t; stabilizers by a full scan
of the group.  Both run on the selected kernel backend.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import pg3
from ._core import kernels
from ._tables import kernel_tables
from .gf import FieldElement, FieldSpec

_SLOT_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))


@dataclass(frozen=True)
class GroupElement:
    """Canonical (a,b,c,d) tuple of field codes with ad - bc != 0."""

    field: FieldSpec
    a: int
    b: int
    c: int
    d: int

    @property
    def tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return f"g{self.tuple}"


def group_element(F: FieldSpec, a, b, c, d) -> GroupElement:
    """Build a canonical group element from FieldElements or codes."""
    codes = []
    for v in (a, b, c, d):
        if isinstance(v, FieldElement):
            codes.append(v.code)
        else:
            v = int(v)
            if not 0 <= v < F.q:
                raise ValueError(f"{v} is not a code in GF({F.q})")
            codes.append(v)
    det = F.sub_codes(F.mul_codes(codes[0], codes[3]), F.mul_codes(codes[1], codes[2]))
    if det == 0:
        raise ValueError("degenerate map: ad - bc = 0")
    codes = pg3.canonicalize(F, codes)
    return GroupElement(F, *codes)


def identity(F: FieldSpec) -> GroupElement:
    return GroupElement(F, 1, 0, 0, 1)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The map 'g then h'; mat4(compose(g,h)) = mat4(g) mat4(h) projectively."""
    F = g.field
    m, ad = F.mul_codes, F.add_codes
    a = ad(m(g.a, h.a), m(g.c, h.b))
    b = ad(m(g.b, h.a), m(g.d, h.b))
    c = ad(m(g.a, h.c), m(g.c, h.d))
    d = ad(m(g.b, h.c), m(g.d, h.d))
    return GroupElement(F, *pg3.canonicalize(F, (a, b, c, d)))


def inverse(g: GroupElement) -> GroupElement:
    F = g.field
    return GroupElement(
        F, *pg3.canonicalize(F, (g.d, int(F.neg[g.b]), int(F.neg[g.c]), g.a))
    )


def element_order(g: GroupElement) -> int:
    e = identity(g.field)
    x, n = g, 1
    while x != e:
        x = compose(x, g)
        n += 1
    return n


def mat4(g: GroupElement) -> tuple:
    """The induced 4x4 point-action matrix (rows act from the left)."""
    F = g.field
    m, ad = F.mul_codes, F.add_codes
    a, b, c, d = g.tuple
    c2, c3 = 2 % F.p, 3 % F.p
    aa, bb, cc, dd = m(a, a), m(b, b), m(c, c), m(d, d)

    def two(x):
        return m(c2, x)

    def three(x):
        return m(c3, x)

    return (
        (m(aa, a), m(aa, c), m(a, cc), m(cc, c)),
        (
            three(m(aa, b)),
            ad(m(aa, d), two(m(a, m(b, c)))),
            ad(m(b, cc), two(m(a, m(c, d)))),
            three(m(cc, d)),
        ),
        (
            three(m(a, bb)),
            ad(m(bb, c), two(m(a, m(b, d)))),
            ad(m(a, dd), two(m(b, m(c, d)))),
            three(m(c, dd)),
        ),
        (m(bb, b), m(bb, d), m(b, dd), m(dd, d)),
    )


def mat6_from_mat4(F: FieldSpec, M) -> np.ndarray:
    """Exterior-square 6x6 matrix acting on Pluecker keys (row action)."""
    W = np.zeros((6, 6), dtype=np.int32)
    for s, (i1, i2) in enumerate(_SLOT_PAIRS):
        for t, (j1, j2) in enumerate(_SLOT_PAIRS):
            W[s, t] = F.sub_codes(
                F.mul_codes(M[i1][j1], M[i2][j2]), F.mul_codes(M[i1][j2], M[i2][j1])
            )
    return W


def act_point(g: GroupElement, P: pg3.ProjPoint) -> pg3.ProjPoint:
    F = g.field
    M = mat4(g)
    out = []
    for j in range(4):
        acc = 0
        for i in range(4):
            acc = F.add_codes(acc, F.mul_codes(P.codes[i], M[i][j]))
        out.append(acc)
    return pg3.ProjPoint(F, pg3.canonicalize(F, out))


def act_plane(g: GroupElement, pl: pg3.ProjPlane) -> pg3.ProjPlane:
    """Contragredient action: coefficients map through the inverse matrix."""
    F = g.field
    Minv = mat4(inverse(g))
    out = []
    for i in range(4):
        acc = 0
        for j in range(4):
            acc = F.add_codes(acc, F.mul_codes(Minv[i][j], pl.coeffs[j]))
        out.append(acc)
    return pg3.ProjPlane(F, pg3.canonicalize(F, out))


def act_line(g: GroupElement, l: pg3.ProjLine) -> pg3.ProjLine:
    return pg3.line_through(act_point(g, l.p1), act_point(g, l.p2))


def generators(F: FieldSpec) -> list[GroupElement]:
    """t -> t+1, t -> alpha*t, t -> 1/t: a generating set of the group."""
    return [
        GroupElement(F, 1, 1, 0, 1),
        GroupElement(F, *pg3.canonicalize(F, (F.primitive, 0, 0, 1))),
        GroupElement(F, 0, 1, 1, 0),
    ]


class GroupEnumeration:
    """The full group as canonical-tuple arrays plus cached action matrices."""

    def __init__(self, F: FieldSpec):
        self.field = F
        q = F.q
        T = kernel_tables(F)
        b, c, d = np.meshgrid(
            np.arange(q, dtype=np.int32),
            np.arange(q, dtype=np.int32),
            np.arange(q, dtype=np.int32),
            indexing="ij",
        )
        b, c, d = b.ravel(), c.ravel(), d.ravel()
        keep = T.mul[b, c] != d  # det = d - bc != 0 when a = 1
        block1 = np.stack(
            [np.ones(keep.sum(), dtype=np.int32), b[keep], c[keep], d[keep]], axis=1
        )
        c2, d2 = np.meshgrid(
            np.arange(1, q, dtype=np.int32), np.arange(q, dtype=np.int32), indexing="ij"
        )
        n2 = c2.size
        block2 = np.stack(
            [
                np.zeros(n2, dtype=np.int32),
                np.ones(n2, dtype=np.int32),
                c2.ravel(),
                d2.ravel(),
            ],
            axis=1,
        )
        self.tuples = np.concatenate([block1, block2])
        assert len(self.tuples) == q**3 - q
        self._mats4: np.ndarray | None = None
        self._mats6: np.ndarray | None = None

    def __len__(self):
        return len(self.tuples)

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.field, *(int(v) for v in self.tuples[i]))

    @property
    def mats4(self) -> np.ndarray:
        if self._mats4 is None:
            F = self.field
            T = kernel_tables(F)
            add, mul, neg = T.add, T.mul, T.neg
            a, b, c, d = (self.tuples[:, k] for k in range(4))
            c2, c3 = 2 % F.p, 3 % F.p
            aa, bb, cc, dd = mul[a, a], mul[b, b], mul[c, c], mul[d, d]
            M = np.empty((len(self.tuples), 4, 4), dtype=np.int32)
            M[:, 0, 0] = mul[aa, a]
            M[:, 0, 1] = mul[aa, c]
            M[:, 0, 2] = mul[a, cc]
            M[:, 0, 3] = mul[cc, c]
            M[:, 1, 0] = mul[c3, mul[aa, b]]
            M[:, 1, 1] = add[mul[aa, d], mul[c2, mul[a, mul[b, c]]]]
            M[:, 1, 2] = add[mul[b, cc], mul[c2, mul[a, mul[c, d]]]]
            M[:, 1, 3] = mul[c3, mul[cc, d]]
            M[:, 2, 0] = mul[c3, mul[a, bb]]
            M[:, 2, 1] = add[mul[bb, c], mul[c2, mul[a, mul[b, d]]]]
            M[:, 2, 2] = add[mul[a, dd], mul[c2, mul[b, mul[c, d]]]]
            M[:, 2, 3] = mul[c3, mul[c, dd]]
            M[:, 3, 0] = mul[bb, b]
            M[:, 3, 1] = mul[bb, d]
            M[:, 3, 2] = mul[b, dd]
            M[:, 3, 3] = mul[dd, d]
            self._mats4 = M
        return self._mats4

    @property
    def mats6(self) -> np.ndarray:
        if self._mats6 is None:
            T = kernel_tables(self.field)
            add, mul, neg = T.add, T.mul, T.neg
            M = self.mats4
            W = np.empty((len(M), 6, 6), dtype=np.int32)
            for s, (i1, i2) in enumerate(_SLOT_PAIRS):
                for t, (j1, j2) in enumerate(_SLOT_PAIRS):
                    W[:, s, t] = add[
                        mul[M[:, i1, j1], M[:, i2, j2]],
                        neg[mul[M[:, i1, j2], M[:, i2, j1]]],
                    ]
            self._mats6 = W
        return self._mats6


_enum_cache: dict[int, GroupEnumeration] = {}


def enumerate_group(F: FieldSpec) -> GroupEnumeration:
    enum = _enum_cache.get(F.q)
    if enum is None:
        enum = GroupEnumeration(F)
        _enum_cache[F.q] = enum
    return enum


def generator_mats6(F: FieldSpec) -> np.ndarray:
    return np.stack([mat6_from_mat4(F, mat4(g)) for g in generators(F)])


@dataclass
class Orbit:
    """A line orbit: canonical key set plus the seed's stabilizer."""

    field: FieldSpec
    seed: pg3.ProjLine
    keys: np.ndarray  # sorted packed uint64
    stab_elements: list[GroupElement]
    order_census: dict[int, int]

    @property
    def size(self) -> int:
        return len(self.keys)

    @property
    def stab_order(self) -> int:
        return len(self.stab_elements)

    def contains_key(self, packed: int) -> bool:
        i = int(np.searchsorted(self.keys, np.uint64(packed)))
        return i < len(self.keys) and int(self.keys[i]) == packed

    def contains(self, l: pg3.ProjLine) -> bool:
        return self.contains_key(l.packed())


# per-field list of computed key sets, so lines of an already-explored orbit
# reuse it instead of rerunning the closure
_key_sets: dict[int, list[np.ndarray]] = {}
_orbit_cache: dict[tuple[int, tuple], Orbit] = {}


def orbit_of_line(line: pg3.ProjLine) -> Orbit:
    F = line.field
    cached = _orbit_cache.get((F.q, line.key))
    if cached is not None:
        return cached
    T = kernel_tables(F)
    seed6 = np.array(line.key, dtype=np.int32)
    packed = line.packed()
    keys = None
    for ks in _key_sets.setdefault(F.q, []):
        i = int(np.searchsorted(ks, np.uint64(packed)))
        if i < len(ks) and int(ks[i]) == packed:
            keys = ks
            break
    if keys is None:
        keys = kernels.orbit_closure(seed6, generator_mats6(F), T)
        _key_sets[F.q].append(keys)
    enum = enumerate_group(F)
    stab_idx = kernels.scan_fixing(seed6, enum.mats6, T)
    stab = [enum.element(int(i)) for i in stab_idx]
    census = dict(Counter(element_order(g) for g in stab))
    orbit = Orbit(F, line, keys, stab, census)
    assert orbit.size * orbit.stab_order == F.q**3 - F.q, "orbit-stabilizer mismatch"
    _orbit_cache[(F.q, line.key)] = orbit
    return orbit


def same_orbit(l1: pg3.ProjLine, l2: pg3.ProjLine) -> bool:
    return orbit_of_line(l1).contains(l2)


def stabilizer_structure(orbit: Orbit) -> str:
    """Isomorphism tag of the stabilizer, from its element-order census."""
    n = orbit.stab_order
    census = orbit.order_census
    if n == 1:
        return "trivial"
    if n in (2, 3):
        return f"C{n}"
    if n == 4:
        return "C2xC2" if census.get(2) == 3 else "C4"
    if n == 6:
        return "C6" if census.get(6) else "S3"
    if n == 12:
        if census.get(2) == 3 and census.get(3) == 8:
            return "A4"
        raise ValueError(f"order-12 stabilizer with unexpected census {census}")
    raise ValueError(f"unexpected stabilizer order {n} (census {census})")
