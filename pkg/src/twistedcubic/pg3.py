"""PG(3,q) primitives: points, planes, lines and the line pairing.

Homogeneous 4-tuples are canonicalized by scaling the first nonzero
coordinate to 1; equality and hashing act on the canonical form.  Lines
carry a canonical Pluecker 6-tuple in the slot order

    (l01, l02, l03, l12, l31, l23),   l_ij = x_i y_j - x_j y_i,

which satisfies l01*l23 + l02*l31 + l03*l12 = 0.  The pairing of two
keys, sum_s l[s]*m[5-s], vanishes exactly when the lines meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .gf import FieldElement, FieldSpec

# ordered index pairs defining the six Pluecker slots
_SLOT_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (3, 1), (2, 3))


def _to_codes(F: FieldSpec, values) -> tuple[int, ...]:
    """Coerce coordinates to element codes.

    Plain ints are taken as codes (so 0 and 1 always mean zero and one);
    anything outside [0, q) must be passed as a FieldElement, e.g. F(-3).
    """
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            if v.owner is not F:
                raise ValueError("coordinate from a different field")
            out.append(v.code)
        else:
            v = int(v)
            if not 0 <= v < F.q:
                raise ValueError(
                    f"integer coordinate {v} is not a code in GF({F.q}); "
                    "pass a FieldElement for formula values"
                )
            out.append(v)
    return tuple(out)


def canonicalize(F: FieldSpec, codes: Iterable[int]) -> tuple[int, ...]:
    """Scale a nonzero tuple so its first nonzero entry is 1."""
    codes = tuple(codes)
    for c in codes:
        if c:
            if c == 1:
                return codes
            f = F.inv_code(c)
            return tuple(F.mul_codes(f, x) for x in codes)
    raise ValueError("all coordinates are zero")


def pack_codes(F: FieldSpec, codes: Iterable[int]) -> int:
    """Pack a code tuple into one integer key (bits(q-1) bits per slot)."""
    bits = (F.q - 1).bit_length()
    key = 0
    for s, c in enumerate(codes):
        key |= c << (s * bits)
    return key


@dataclass(frozen=True)
class ProjPoint:
    field: FieldSpec
    codes: tuple[int, int, int, int]

    @property
    def coords(self) -> tuple[FieldElement, ...]:
        return tuple(self.field.from_code(c) for c in self.codes)

    def packed(self) -> int:
        return pack_codes(self.field, self.codes)

    def __repr__(self):
        return f"Pt{self.codes}"


@dataclass(frozen=True)
class ProjPlane:
    field: FieldSpec
    coeffs: tuple[int, int, int, int]

    def packed(self) -> int:
        return pack_codes(self.field, self.coeffs)

    def __repr__(self):
        return f"Pl{self.coeffs}"


@dataclass(frozen=True, eq=False)
class ProjLine:
    field: FieldSpec
    p1: ProjPoint
    p2: ProjPoint
    key: tuple[int, int, int, int, int, int]

    def packed(self) -> int:
        return pack_codes(self.field, self.key)

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.field is other.field and self.key == other.key

    def __hash__(self):
        return hash((id(self.field), self.key))

    def __repr__(self):
        return f"Line{self.key}"


def point(F: FieldSpec, values) -> ProjPoint:
    """Canonical point from four coordinates (FieldElements or codes)."""
    return ProjPoint(F, canonicalize(F, _to_codes(F, values)))


def plane(F: FieldSpec, values) -> ProjPlane:
    """Canonical plane c0 x0 + c1 x1 + c2 x2 + c3 x3 = 0."""
    return ProjPlane(F, canonicalize(F, _to_codes(F, values)))


def plucker(F: FieldSpec, a: tuple, b: tuple) -> tuple[int, ...]:
    """Canonical Pluecker key of the line through two point code tuples."""
    key = tuple(
        F.sub_codes(F.mul_codes(a[i], b[j]), F.mul_codes(a[j], b[i]))
        for i, j in _SLOT_PAIRS
    )
    return canonicalize(F, key)


def line_through(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if P == Q:
        raise ValueError("two distinct points are required to span a line")
    return ProjLine(P.field, P, Q, plucker(P.field, P.codes, Q.codes))


def line_from_key(F: FieldSpec, key) -> ProjLine:
    """Rebuild a line (with a spanning point pair) from its Pluecker key.

    The antisymmetric matrix L with L[i][j] = l_ij has rank 2 and its
    columns span the line.
    """
    key = canonicalize(F, key)
    L = [[0] * 4 for _ in range(4)]
    for s, (i, j) in enumerate(_SLOT_PAIRS):
        L[i][j] = key[s]
        L[j][i] = int(F.neg[key[s]])
    cols = [tuple(L[i][j] for i in range(4)) for j in range(4)]
    cols = [c for c in cols if any(c)]
    P = point(F, cols[0])
    for c in cols[1:]:
        Q = point(F, c)
        if Q != P:
            line = ProjLine(F, P, Q, plucker(F, P.codes, Q.codes))
            assert line.key == key, "key reconstruction mismatch"
            return line
    raise ValueError("degenerate Pluecker key")


def points_on_line(l: ProjLine) -> list[ProjPoint]:
    """All q+1 points of a line: p1 + t*p2 over t in F_q, plus p2."""
    F = l.field
    out = []
    for t in range(F.q):
        codes = tuple(
            F.add_codes(a, F.mul_codes(t, b)) for a, b in zip(l.p1.codes, l.p2.codes)
        )
        out.append(point(F, codes))
    out.append(l.p2)
    return out


def point_on_plane(P: ProjPoint, pl: ProjPlane) -> bool:
    F = P.field
    acc = 0
    for x, c in zip(P.codes, pl.coeffs):
        acc = F.add_codes(acc, F.mul_codes(x, c))
    return acc == 0


def point_on_line(P: ProjPoint, l: ProjLine) -> bool:
    if P == l.p1:
        return True
    return plucker(P.field, P.codes, l.p1.codes) == l.key


def pairing(F: FieldSpec, k1, k2) -> FieldElement:
    """Bilinear pairing sum_s k1[s]*k2[5-s] of two raw Pluecker 6-tuples.

    Bilinear, so it scales with the chosen representatives; its vanishing
    (the lines meet) does not.
    """
    c1, c2 = _to_codes(F, k1), _to_codes(F, k2)
    acc = 0
    for s in range(6):
        acc = F.add_codes(acc, F.mul_codes(c1[s], c2[5 - s]))
    return F.from_code(acc)


def mutual_invariant(l1: ProjLine, l2: ProjLine) -> FieldElement:
    """Pairing of two lines' canonical keys; zero iff the lines meet."""
    F = l1.field
    acc = 0
    for s in range(6):
        acc = F.add_codes(acc, F.mul_codes(l1.key[s], l2.key[5 - s]))
    return F.from_code(acc)


def lines_meet(l1: ProjLine, l2: ProjLine) -> bool:
    return mutual_invariant(l1, l2).code == 0


# -- linear algebra helpers -------------------------------------------------


def nullspace(F: FieldSpec, rows: list[tuple], width: int = 4) -> list[tuple]:
    """Basis of the right nullspace of a small matrix of field codes."""
    M = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        f = F.inv_code(M[r][col])
        M[r] = [F.mul_codes(f, v) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                g = M[i][col]
                M[i] = [F.sub_codes(a, F.mul_codes(g, b)) for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * width
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int(F.neg[M[i][fc]])
        basis.append(tuple(v))
    return basis


def planes_through_line(l: ProjLine) -> list[ProjPlane]:
    """The pencil of q+1 planes containing a line."""
    F = l.field
    c1, c2 = nullspace(F, [l.p1.codes, l.p2.codes])
    out = [plane(F, c2)]
    for t in range(F.q):
        coeffs = tuple(F.add_codes(a, F.mul_codes(t, b)) for a, b in zip(c1, c2))
        out.append(plane(F, coeffs))
    return out


def plane_points_basis(pl: ProjPlane) -> list[ProjPoint]:
    """Three independent points spanning a plane."""
    F = pl.field
    return [point(F, v) for v in nullspace(F, [pl.coeffs])]


def plane_intersection(pl1: ProjPlane, pl2: ProjPlane) -> ProjLine:
    """The line common to two distinct planes."""
    if pl1 == pl2:
        raise ValueError("planes coincide")
    F = pl1.field
    a, b = nullspace(F, [pl1.coeffs, pl2.coeffs])
    return line_through(point(F, a), point(F, b))


# -- null polarity ----------------------------------------------------------


def _require_char_not3(F: FieldSpec):
    if F.p == 3:
        raise ValueError("null polarity is undefined for q = 0 (mod 3)")


def null_polarity_point(P: ProjPoint) -> ProjPlane:
    """Polar plane of a point: (x0,x1,x2,x3) -> [x3, -3x2, 3x1, -x0]."""
    F = P.field
    _require_char_not3(F)
    x0, x1, x2, x3 = P.codes
    three = 3 % F.p
    return plane(
        F,
        (
            x3,
            int(F.neg[F.mul_codes(three, x2)]),
            F.mul_codes(three, x1),
            int(F.neg[x0]),
        ),
    )


def null_polarity_plane(pl: ProjPlane) -> ProjPoint:
    """Inverse of null_polarity_point (plane -> pole)."""
    F = pl.field
    _require_char_not3(F)
    c0, c1, c2, c3 = pl.coeffs
    three = 3 % F.p
    # solve codes so that the polar of the result is pl
    return point(
        F,
        (
            int(F.neg[F.mul_codes(three, c3)]),
            c2,
            int(F.neg[c1]),
            F.mul_codes(three, c0),
        ),
    )


def null_polarity_line(l: ProjLine) -> ProjLine:
    """Image of a line: intersection of the polar planes of two of its points."""
    pl1 = null_polarity_point(l.p1)
    pl2 = null_polarity_point(l.p2)
    assert pl1 != pl2, "polar planes of distinct points cannot coincide"
    return plane_intersection(pl1, pl2)


# -- canonical enumerators ---------------------------------------------------


def _pg3_tuples(q: int) -> Iterator[tuple[int, int, int, int]]:
    for lead in range(4):
        head = (0,) * lead + (1,)
        nfree = 3 - lead
        for n in range(q**nfree):
            tail = []
            t = n
            for _ in range(nfree):
                tail.append(t % q)
                t //= q
            yield head + tuple(tail)


def all_points(F: FieldSpec) -> Iterator[ProjPoint]:
    """Canonical enumeration of the q^3+q^2+q+1 points."""
    for codes in _pg3_tuples(F.q):
        yield ProjPoint(F, codes)


def all_planes(F: FieldSpec) -> Iterator[ProjPlane]:
    """Canonical enumeration of the q^3+q^2+q+1 planes."""
    for codes in _pg3_tuples(F.q):
        yield ProjPlane(F, codes)


# 2x4 reduced-row-echelon pivot patterns and their free columns
_RREF_PATTERNS = tuple(
    (i, j) for i in range(4) for j in range(i + 1, 4)
)


def all_lines(F: FieldSpec) -> Iterator[ProjLine]:
    """Canonical enumeration of the (q^2+1)(q^2+q+1) lines.

    Each line appears exactly once, as the row space of a 2x4 matrix in
    reduced row echelon form.
    """
    q = F.q
    for i, j in _RREF_PATTERNS:
        free1 = [k for k in range(i + 1, 4) if k != j]
        free2 = [k for k in range(j + 1, 4)]
        nf = len(free1) + len(free2)
        for n in range(q**nf):
            vals = []
            t = n
            for _ in range(nf):
                vals.append(t % q)
                t //= q
            r1 = [0, 0, 0, 0]
            r2 = [0, 0, 0, 0]
            r1[i] = 1
            r2[j] = 1
            for k, v in zip(free1, vals[: len(free1)]):
                r1[k] = v
            for k, v in zip(free2, vals[len(free1):]):
                r2[k] = v
            P = ProjPoint(F, canonicalize(F, r1))
            Q = ProjPoint(F, canonicalize(F, r2))
            yield ProjLine(F, P, Q, plucker(F, P.codes, Q.codes))


def lines_through_point(P: ProjPoint) -> list[ProjLine]:
    """The q^2+q+1 lines through a point.

    Uses a plane missing P: every line through P meets it exactly once.
    """
    F = P.field
    i = next(k for k in range(4) if P.codes[k])
    others = [k for k in range(4) if k != i]
    out = []
    for y in _pg2_tuples(F.q):
        codes = [0, 0, 0, 0]
        for k, v in zip(others, y):
            codes[k] = v
        out.append(line_through(P, ProjPoint(F, canonicalize(F, codes))))
    return out


def _pg2_tuples(q: int) -> Iterator[tuple[int, int, int]]:
    for lead in range(3):
        head = (0,) * lead + (1,)
        nfree = 2 - lead
        for n in range(q**nfree):
            tail = []
            t = n
            for _ in range(nfree):
                tail.append(t % q)
                t //= q
            yield head + tuple(tail)


def lines_in_plane(pl: ProjPlane) -> list[ProjLine]:
    """The q^2+q+1 lines contained in a plane."""
    F = pl.field
    q = F.q
    B = [b.codes for b in plane_points_basis(pl)]

    def embed(y):
        codes = [0, 0, 0, 0]
        for coeff, bvec in zip(y, B):
            for k in range(4):
                codes[k] = F.add_codes(codes[k], F.mul_codes(coeff, bvec[k]))
        return ProjPoint(F, canonicalize(F, tuple(codes)))

    out = []
    # 2x3 RREF enumeration of the lines of the quotient PG(2,q)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        free1 = [k for k in range(i + 1, 3) if k != j]
        free2 = [k for k in range(j + 1, 3)]
        nf = len(free1) + len(free2)
        for n in range(q**nf):
            vals = []
            t = n
            for _ in range(nf):
                vals.append(t % q)
                t //= q
            r1 = [0, 0, 0]
            r2 = [0, 0, 0]
            r1[i] = 1
            r2[j] = 1
            for k, v in zip(free1, vals[: len(free1)]):
                r1[k] = v
            for k, v in zip(free2, vals[len(free1):]):
                r2[k] = v
            out.append(line_through(embed(r1), embed(r2)))
    return out


def num_points(q: int) -> int:
    return q**3 + q**2 + q + 1


def num_planes(q: int) -> int:
    return q**3 + q**2 + q + 1


def num_lines(q: int) -> int:
    return (q**2 + 1) * (q**2 + q + 1)
