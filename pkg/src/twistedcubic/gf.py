"""Finite fields GF(p^m) with table-backed arithmetic.

Elements are identified by an integer code in [0, q): the polynomial
c_0 + c_1 x + ... + c_{m-1} x^{m-1} over GF(p) is coded as
c_0 + c_1 p + ... + c_{m-1} p^{m-1}, so code 0 is the zero element and
codes below p form the prime subfield.

Construction is deterministic: the modulus is the lexicographically
smallest monic irreducible of degree m over GF(p) (coefficients compared
from the constant term up) and the designated primitive element is the
generator of F_q^* with the smallest code.  Multiplication runs on
discrete-log tables and addition on a Zech-logarithm table, so all
scalar operations are O(1) after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_Q = 1 << 16


def _prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, m) with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power (q must be >= 2)")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    n, m = q, 0
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, m


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    """Product of coefficient tuples modulo a monic modulus over GF(p)."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    m = len(modulus) - 1
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(m):
                prod[k - m + j] = (prod[k - m + j] - c * modulus[j]) % p
    out = prod[:m]
    while len(out) < m:
        out.append(0)
    return tuple(out)


def _poly_divisible(f: list[int], g: list[int], p: int) -> bool:
    """True if monic g divides f over GF(p)."""
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg:
        c = r[-1]
        if c:
            off = len(r) - 1 - dg
            for j in range(dg + 1):
                r[off + j] = (r[off + j] - c * g[j]) % p
        r.pop()
    return all(c == 0 for c in r)


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for n in range(p**d):
            g = [0] * (d + 1)
            t = n
            for j in range(d):
                g[j] = t % p
                t //= p
            g[d] = 1
            if _poly_divisible(f, g, p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree m over GF(p)."""
    if m == 1:
        return (0, 1)
    for n in range(p**m):
        coeffs = []
        t = n
        for _ in range(m):
            coeffs.append(t % p)
            t //= p
        if coeffs[0] == 0:
            continue  # divisible by x
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """An immutable description of GF(q) plus its arithmetic tables."""

    def __init__(self, q: int):
        if q > MAX_Q:
            raise ValueError(f"q={q} exceeds the supported maximum {MAX_Q}")
        p, m = _prime_power(q)
        self.q = q
        self.p = p
        self.m = m
        self.modulus = _smallest_irreducible(p, m)

        self._powers = tuple(p**i for i in range(m))
        self.exp = np.zeros(q - 1, dtype=np.int64)
        self.log = np.zeros(q, dtype=np.int64)
        self.primitive = self._find_primitive()
        self._fill_log_tables()

        self.neg = np.array([self._neg_digits(x) for x in range(q)], dtype=np.int64)
        self._fill_zech()
        self.inv = np.zeros(q, dtype=np.int64)
        self.inv[1:] = self.exp[(-self.log[1:]) % (q - 1)]

        self._dense: tuple[np.ndarray, np.ndarray] | None = None

    # -- construction helpers -------------------------------------------

    def _code_to_coeffs(self, code: int) -> tuple:
        return tuple((code // pw) % self.p for pw in self._powers)

    def _coeffs_to_code(self, coeffs) -> int:
        return sum(int(c) * pw for c, pw in zip(coeffs, self._powers))

    def _mul_codes_slow(self, x: int, y: int) -> int:
        cx, cy = self._code_to_coeffs(x), self._code_to_coeffs(y)
        return self._coeffs_to_code(_poly_mul_mod(cx, cy, self.modulus, self.p))

    def _pow_codes_slow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_codes_slow(r, x)
            x = self._mul_codes_slow(x, x)
            e >>= 1
        return r

    def _find_primitive(self) -> int:
        n = self.q - 1
        factors = _prime_factors(n)
        for g in range(2, self.q):
            if all(self._pow_codes_slow(g, n // r) != 1 for r in factors):
                return g
        if self.q == 2:
            return 1
        raise AssertionError("no primitive element found")  # unreachable

    def _fill_log_tables(self):
        x = 1
        for k in range(self.q - 1):
            self.exp[k] = x
            self.log[x] = k
            x = self._mul_codes_slow(x, self.primitive)
        assert x == 1, "primitive element order mismatch"
        self.log[0] = -1

    def _neg_digits(self, x: int) -> int:
        if self.p == 2:
            return x
        return self._coeffs_to_code(
            tuple((-c) % self.p for c in self._code_to_coeffs(x))
        )

    def _add_digits(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        cx, cy = self._code_to_coeffs(x), self._code_to_coeffs(y)
        return self._coeffs_to_code(tuple((a + b) % self.p for a, b in zip(cx, cy)))

    def _fill_zech(self):
        # zech[n] = log(1 + alpha^n), with -1 marking 1 + alpha^n = 0.
        q = self.q
        self.zech = np.zeros(q - 1, dtype=np.int64)
        for n in range(q - 1):
            s = self._add_digits(1, int(self.exp[n]))
            self.zech[n] = -1 if s == 0 else self.log[s]

    # -- scalar arithmetic on codes --------------------------------------

    def add_codes(self, x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0:
            return x
        i, j = int(self.log[x]), int(self.log[y])
        z = int(self.zech[(j - i) % (self.q - 1)])
        if z < 0:
            return 0
        return int(self.exp[(i + z) % (self.q - 1)])

    def sub_codes(self, x: int, y: int) -> int:
        return self.add_codes(x, int(self.neg[y]))

    def mul_codes(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(int(self.log[x]) + int(self.log[y])) % (self.q - 1)])

    def inv_code(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv[x])

    def pow_code(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    # -- element factory --------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Coerce an integer (or element of this field) to a FieldElement.

        Integers are taken mod p and mapped into the prime subfield, so
        e.g. F(-1) is the field's minus-one for any characteristic.
        """
        if isinstance(value, FieldElement):
            if value.owner is not self:
                raise ValueError("element belongs to a different field")
            return value
        return FieldElement(int(value) % self.p, self)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for GF({self.q})")
        return FieldElement(code, self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    @property
    def alpha(self) -> "FieldElement":
        return FieldElement(self.primitive, self)

    def elements(self):
        return (FieldElement(c, self) for c in range(self.q))

    def nonzero_elements(self):
        return (FieldElement(c, self) for c in range(1, self.q))

    # -- dense tables for the bulk kernels --------------------------------

    def dense_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Full q-by-q addition and multiplication tables (int32).

        Only built for q <= 1024; the bulk kernels never run beyond that.
        """
        if self._dense is None:
            q, p = self.q, self.p
            if q > 1024:
                raise ValueError(f"dense tables unsupported for q={q} > 1024")
            if p == 2:
                codes = np.arange(q, dtype=np.int32)
                add = codes[:, None] ^ codes[None, :]
            else:
                digits = np.zeros((q, self.m), dtype=np.int64)
                for i, pw in enumerate(self._powers):
                    digits[:, i] = (np.arange(q) // pw) % p
                s = (digits[:, None, :] + digits[None, :, :]) % p
                add = (s * np.array(self._powers)).sum(axis=2).astype(np.int32)
            mul = np.zeros((q, q), dtype=np.int32)
            lg = self.log[1:]
            mul[1:, 1:] = self.exp[(lg[:, None] + lg[None, :]) % (q - 1)]
            self._dense = (np.ascontiguousarray(add), mul)
        return self._dense

    def __repr__(self):
        return f"FieldSpec(GF({self.q}))"


@dataclass(frozen=True)
class FieldElement:
    """A field scalar: an integer code bound to its owning FieldSpec."""

    code: int
    owner: FieldSpec

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.owner(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.owner is not self.owner:
            raise ValueError("cannot mix elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.owner.add_codes(self.code, other.code), self.owner)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.owner.sub_codes(self.code, other.code), self.owner)

    def __rsub__(self, other):
        return self.owner(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.owner.mul_codes(self.code, other.code), self.owner)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * FieldElement(self.owner.inv_code(other.code), self.owner)

    def __rtruediv__(self, other):
        return self.owner(other) / self

    def __neg__(self):
        return FieldElement(int(self.owner.neg[self.code]), self.owner)

    def __pow__(self, e: int):
        return FieldElement(self.owner.pow_code(self.code, e), self.owner)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other % self.owner.p
        if isinstance(other, FieldElement):
            return self.owner is other.owner and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((id(self.owner), self.code))

    def __repr__(self):
        return f"GF({self.owner.q}).{self.code}"


_field_cache: dict[int, FieldSpec] = {}


def make_field(q: int) -> FieldSpec:
    """Build (or fetch the cached) GF(q) for a prime power 2 <= q <= 2^16."""
    spec = _field_cache.get(q)
    if spec is None:
        spec = FieldSpec(q)
        _field_cache[q] = spec
    return spec


def dlog(x: FieldElement) -> int:
    """Discrete log base the field's primitive element; x must be nonzero."""
    if x.code == 0:
        raise ValueError("discrete log of zero")
    return int(x.owner.log[x.code])


def r_class(rho: FieldElement) -> int:
    """Residue of the discrete log of rho modulo 3 (one of 0, 1, 2)."""
    return dlog(rho) % 3


def is_cube(x: FieldElement) -> bool:
    """True iff nonzero x is a cube in F_q^*.

    For q = 1 (mod 3) this is the log criterion (3 | log x); otherwise
    cubing is a bijection on F_q^* and every element qualifies.
    """
    if x.code == 0:
        raise ValueError("cube test is defined on F_q^*")
    if x.owner.q % 3 == 1:
        return dlog(x) % 3 == 0
    return True


def cube_roots(c: FieldElement) -> list[FieldElement]:
    """All y with y^3 = c, for nonzero c.

    One root when gcd(3, q-1) = 1 (computed as c^r with 3r = 1 mod q-1),
    zero or three roots when q = 1 (mod 3).
    """
    F = c.owner
    if c.code == 0:
        raise ValueError("cube roots of zero")
    n = F.q - 1
    k = dlog(c)
    if n % 3 != 0:
        r = pow(3, -1, n)
        return [F.from_code(F.pow_code(c.code, r))]
    if k % 3 != 0:
        return []
    base = k // 3
    step = n // 3
    return [F.from_code(int(F.exp[(base + j * step) % n])) for j in range(3)]


def eta(beta: FieldElement) -> int:
    """Quadratic character of F_q^* extended by eta(0) = 0; q must be odd."""
    F = beta.owner
    if F.p == 2:
        raise ValueError("quadratic character requires odd q")
    if beta.code == 0:
        return 0
    return 1 if dlog(beta) % 2 == 0 else -1


def sqrt(beta: FieldElement) -> list[FieldElement]:
    """Square roots of beta in odd characteristic.

    Returns both roots for a nonzero square, [0] for zero, [] for a
    non-square.  For even q use sqrt_even.
    """
    F = beta.owner
    if F.p == 2:
        raise ValueError("use sqrt_even for even q")
    if beta.code == 0:
        return [F.zero]
    k = dlog(beta)
    if k % 2 != 0:
        return []
    r = F.from_code(int(F.exp[k // 2]))
    return [r, -r]


def sqrt_even(x: FieldElement) -> FieldElement:
    """The unique square root in characteristic 2 (x -> x^(q/2))."""
    F = x.owner
    if F.p != 2:
        raise ValueError("sqrt_even requires even q")
    return F.from_code(F.pow_code(x.code, F.q // 2))


def abs_trace(x: FieldElement) -> int:
    """Absolute trace Tr_p(x) = x + x^p + ... + x^(p^(m-1)), as an integer."""
    F = x.owner
    acc = 0
    c = x.code
    for _ in range(F.m):
        acc = F.add_codes(acc, c)
        c = F.pow_code(c, F.p)
    assert acc < F.p, "trace must land in the prime subfield"
    return acc


def is_fourth_power(x: FieldElement) -> bool:
    """True iff nonzero x is a fourth power in F_q^* (odd q)."""
    if x.code == 0:
        raise ValueError("fourth-power test is defined on F_q^*")
    g = math.gcd(4, x.owner.q - 1)
    return dlog(x) % g == 0


def num_quadratic_roots(F: FieldSpec, b: FieldElement, c: FieldElement) -> int:
    """Number of distinct roots of x^2 - b x + c in F_q (0, 1 or 2)."""
    if F.p == 2:
        if b.code == 0:
            return 1  # double root sqrt(c)
        return 2 if abs_trace(c / (b * b)) == 0 else 0
    return eta(b * b - 4 * c) + 1
