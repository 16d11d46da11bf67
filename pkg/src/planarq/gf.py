"""Arithmetic for the tower F_p < F_q = F_{p^m} < F_{q^3}.

Every field element is identified by a canonical integer code.  An element of
a degree-d extension over a base field of order s has a coordinate vector
(c_0, ..., c_{d-1}) over the base (c_i multiplying t^i, t the residue class of
the generator) and its code is the little-endian packing sum(code(c_i) * s^i).
Consequences used throughout the package:

  * codes are reproducible across runs and machines once the moduli are fixed,
  * embedding a subfield element into the extension is the identity on codes,
  * ``code < s`` tests membership in the base field.

Moduli are chosen deterministically (lexicographically smallest monic
irreducible, see :func:`find_irreducible`) unless explicit moduli are passed
for cross-checking against external tables.

Scalar arithmetic works on plain Python ints.  The ``*_vec`` methods operate
on numpy integer arrays and back all exhaustive sweeps; they accept anything
``np.asarray`` handles and broadcast like ordinary numpy ufuncs.

Fields are immutable after construction apart from monotone internal caches,
so a tower can be shared freely across worker processes or threads.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, LevelMismatch, NotOddPrime, SizeLimit

DEFAULT_MAX_Q3 = 2 ** 24
MAX_Q3_ENV = "PLANARQ_MAX_Q3"

# Largest field order that gets a dense order x order addition-index table.
_PAIR_TABLE_MAX = 2500


def max_enumeration_order(override: int | None = None) -> int:
    """Effective bound for operations that enumerate a whole field."""
    if override is not None:
        return int(override)
    return int(os.environ.get(MAX_Q3_ENV, DEFAULT_MAX_Q3))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomials over an arbitrary coefficient field (little-endian lists)
# ---------------------------------------------------------------------------

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mul(field, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    return _poly_trim(out)


def _poly_divmod(field, a, b):
    a = list(a)
    b = _poly_trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = field.inv(b[-1])
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 0)
    rem = list(a)
    for i in range(len(rem) - 1, db - 1, -1):
        coeff = rem[i]
        if coeff == 0:
            continue
        factor = field.mul(coeff, inv_lead)
        quo[i - db] = factor
        for j in range(db + 1):
            rem[i - db + j] = field.sub(rem[i - db + j], field.mul(factor, b[j]))
    return _poly_trim(quo), _poly_trim(rem)


def _poly_invmod(field, a, mod):
    # extended Euclid; mod is irreducible so any nonzero a is invertible
    r0, r1 = list(mod), _poly_trim(list(a))
    s0, s1 = [], [1]
    if not r1:
        raise DivisionByZero("0 has no inverse")
    while r1:
        q, r = _poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul(field, q, s1)
        new_s = [0] * max(len(s0), len(qs))
        for i in range(len(new_s)):
            x = s0[i] if i < len(s0) else 0
            y = qs[i] if i < len(qs) else 0
            new_s[i] = field.sub(x, y)
        s0, s1 = s1, _poly_trim(new_s)
    # r0 is the gcd, a nonzero constant
    scale = field.inv(r0[0])
    return _poly_trim([field.mul(scale, c) for c in s0])


def is_irreducible(base, poly) -> bool:
    """Exhaustive factor check: no monic divisor of degree <= deg/2."""
    poly = _poly_trim(list(poly))
    d = len(poly) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for e in range(1, d // 2 + 1):
        for k in range(base.order ** e):
            cand = [0] * (e + 1)
            kk = k
            for i in range(e):
                cand[i] = kk % base.order
                kk //= base.order
            cand[e] = 1
            _, rem = _poly_divmod(base, poly, cand)
            if not rem:
                return False
    return True


def find_irreducible(base, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of the given degree.

    Candidates are ordered by the integer k whose base-|F| digits give the
    non-leading coefficients, digit i being the coefficient of t^i; this is
    ascending lexicographic order on (c_{d-1}, ..., c_0).
    """
    degree = int(degree)
    if degree < 1:
        raise ValueError("degree must be positive")
    for k in range(base.order ** degree):
        coeffs = [0] * (degree + 1)
        kk = k
        for i in range(degree):
            coeffs[i] = kk % base.order
            kk //= base.order
        coeffs[degree] = 1
        if is_irreducible(base, coeffs):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

class Field:
    """Common scalar/vector machinery; elements are integer codes."""

    order: int
    char: int
    degree: int
    _max_override: int | None = None

    def enum_bound(self) -> int:
        """Enumeration bound for this field (tower override, env, or default)."""
        return max_enumeration_order(self._max_override)

    # -- derived scalar ops --------------------------------------------------
    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, k: int) -> int:
        """Code of the constant k * 1 (an F_p multiple of the identity)."""
        return int(k) % self.char

    def elements(self):
        """All field elements in canonical code order."""
        return (Elt(self, c) for c in range(self.order))

    # -- derived vector ops ----------------------------------------------------
    def sub_vec(self, a, b):
        return self.add_vec(a, self.neg_vec(b))

    def pow_vec(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        if e < 0:
            a, e = self.inv_vec(a), -e
        result = np.ones_like(a)
        while e:
            if e & 1:
                result = self.mul_vec(result, a)
            a = self.mul_vec(a, a)
            e >>= 1
        return result

    def inv_vec(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("0 has no inverse")
        return self.pow_vec(a, self.order - 2)

    # -- cached tables ---------------------------------------------------------
    def sqrt_code(self, a: int) -> int | None:
        """Smaller square root by code, or None when a is a non-square."""
        tab = self._cache.get("sqrt")
        if tab is None:
            if self.order > self.enum_bound():
                raise SizeLimit(f"square-root table needs |F| <= bound, got {self.order}")
            tab = {}
            for c in range(self.order):
                tab.setdefault(self.mul(c, c), c)
            self._cache["sqrt"] = tab
        return tab.get(a)

    def add_index_table(self):
        """Dense table T[a, b] = code(a + b), or None if the field is too big."""
        if self.order > _PAIR_TABLE_MAX:
            return None
        tab = self._cache.get("addtab")
        if tab is None:
            codes = np.arange(self.order, dtype=np.int64)
            rows = []
            step = max(1, (1 << 22) // max(self.order, 1))
            for lo in range(0, self.order, step):
                block = self.add_vec(codes[lo:lo + step, None], codes[None, :])
                rows.append(block.astype(np.int32))
            tab = np.concatenate(rows, axis=0)
            self._cache["addtab"] = tab
        return tab


class PrimeField(Field):
    """F_p for an odd prime p; codes are the residues 0..p-1."""

    degree = 1

    def __init__(self, p: int):
        p = int(p)
        if p == 2 or not _is_prime(p):
            raise NotOddPrime(f"p must be an odd prime, got {p}")
        self.p = p
        self.order = p
        self.char = p
        self._cache: dict = {}

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __reduce__(self):
        return (PrimeField, (self.p,))

    # scalar
    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        e = int(e)
        if e < 0:
            a, e = self.inv(a), -e
        return pow(a, e, self.p)

    def coords(self, a):
        return (a % self.p,)

    def encode(self, coords):
        return coords[0] % self.p

    # vector
    def add_vec(self, a, b):
        return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p

    def neg_vec(self, a):
        return (-np.asarray(a, dtype=np.int64)) % self.p

    def mul_vec(self, a, b):
        return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p

    def inv_vec(self, a):
        a = np.asarray(a, dtype=np.int64) % self.p
        if np.any(a == 0):
            raise DivisionByZero("0 has no inverse")
        inv = self._cache.get("invtab")
        if inv is None:
            inv = np.array([0] + [pow(x, self.p - 2, self.p) for x in range(1, self.p)],
                           dtype=np.int64)
            self._cache["invtab"] = inv
        return inv[a]

    def decode_vec(self, codes):
        return np.asarray(codes, dtype=np.int64)[None, ...] % self.p

    def encode_vec(self, coords):
        return coords[0] % self.p

    # Frobenius x -> x^p is the identity on the prime field.
    def frob(self, a, k=1):
        return a % self.p

    def frob_vec(self, codes, k=1):
        return np.asarray(codes, dtype=np.int64) % self.p


class ExtensionField(Field):
    """Degree-d extension of an existing field by a monic irreducible modulus."""

    def __init__(self, base: Field, modulus):
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) < 3:
            raise ValueError("extension degree must be >= 2")
        if any(not 0 <= c < base.order for c in modulus):
            raise ValueError("modulus coefficients out of range")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not is_irreducible(base, modulus):
            raise ValueError(f"modulus {modulus} is reducible over {base!r}")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = base.order ** self.degree
        self.char = base.char
        self._cache = {}
        # rows[k] = coordinates of t^(degree+k), enough to reduce products
        d = self.degree
        rows = [tuple(base.neg(c) for c in modulus[:-1])]
        for _ in range(d - 2):
            prev = rows[-1]
            top = prev[-1]
            new = [0] + list(prev[:-1])
            if top:
                r0 = rows[0]
                new = [base.add(new[j], base.mul(top, r0[j])) for j in range(d)]
            rows.append(tuple(new))
        self._red_rows = tuple(rows)

    def __repr__(self):
        return f"F{self.order}"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField)
                and other.base == self.base and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("ExtensionField", hash(self.base), self.modulus))

    def __reduce__(self):
        return (ExtensionField, (self.base, self.modulus))

    # -- scalar ----------------------------------------------------------------
    def coords(self, a):
        s = self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, s)
            out.append(r)
        return tuple(out)

    def encode(self, coords):
        s = self.base.order
        acc = 0
        for c in reversed(coords):
            acc = acc * s + c
        return acc

    def add(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        return self.encode([self.base.add(x, y) for x, y in zip(ca, cb)])

    def sub(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        return self.encode([self.base.sub(x, y) for x, y in zip(ca, cb)])

    def neg(self, a):
        return self.encode([self.base.neg(x) for x in self.coords(a)])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        base, d = self.base, self.degree
        ca, cb = self.coords(a), self.coords(b)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for j, y in enumerate(cb):
                if y:
                    conv[i + j] = base.add(conv[i + j], base.mul(x, y))
        res = list(conv[:d])
        for k in range(d - 1):
            hi = conv[d + k]
            if hi:
                row = self._red_rows[k]
                for j in range(d):
                    if row[j]:
                        res[j] = base.add(res[j], base.mul(hi, row[j]))
        return self.encode(res)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        poly = _poly_trim(list(self.coords(a)))
        inv = _poly_invmod(self.base, poly, list(self.modulus))
        inv = list(inv) + [0] * (self.degree - len(inv))
        return self.encode(inv)

    # -- vector ------------------------------------------------------------------
    def decode_vec(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        s = self.base.order
        out = np.empty((self.degree,) + codes.shape, dtype=np.int64)
        rem = codes
        for i in range(self.degree):
            out[i] = rem % s
            rem = rem // s
        return out

    def encode_vec(self, coords):
        s = self.base.order
        acc = np.zeros_like(np.asarray(coords[-1]))
        for i in range(self.degree - 1, -1, -1):
            acc = acc * s + coords[i]
        return acc

    @staticmethod
    def _pair(a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape != b.shape:
            a, b = np.broadcast_arrays(a, b)
        return a, b

    def add_vec(self, a, b):
        a, b = self._pair(a, b)
        return self.encode_vec(self.base.add_vec(self.decode_vec(a), self.decode_vec(b)))

    def neg_vec(self, a):
        return self.encode_vec(self.base.neg_vec(self.decode_vec(a)))

    def mul_vec(self, a, b):
        a, b = self._pair(a, b)
        base, d = self.base, self.degree
        ca, cb = self.decode_vec(a), self.decode_vec(b)
        conv = [None] * (2 * d - 1)
        for i in range(d):
            for j in range(d):
                term = base.mul_vec(ca[i], cb[j])
                k = i + j
                conv[k] = term if conv[k] is None else base.add_vec(conv[k], term)
        res = conv[:d]
        for k in range(d - 1):
            hi = conv[d + k]
            row = self._red_rows[k]
            for j in range(d):
                if row[j]:
                    res[j] = base.add_vec(res[j], base.mul_vec(hi, row[j]))
        return self.encode_vec(res)

    # -- Frobenius x -> x^(|base|^k), |base|-linear over the base field ----------
    def frob_matrix(self, k: int):
        """Coordinates of (t^i)^(s^k) for each i, s the base order."""
        k %= self.degree
        mats = self._cache.setdefault("frobmat", {})
        if k not in mats:
            s = self.base.order
            cols = []
            for i in range(self.degree):
                image = self.pow(s ** i, s ** k)  # code of t^i is s^i
                cols.append(self.coords(image))
            mats[k] = tuple(cols)
        return mats[k]

    def frob(self, a: int, k: int = 1) -> int:
        k %= self.degree
        if k == 0:
            return a
        cols = self.frob_matrix(k)
        ca = self.coords(a)
        out = [0] * self.degree
        for i, ci in enumerate(ca):
            if ci == 0:
                continue
            for j in range(self.degree):
                if cols[i][j]:
                    out[j] = self.base.add(out[j], self.base.mul(ci, cols[i][j]))
        return self.encode(out)

    def frob_vec(self, codes, k: int = 1):
        k %= self.degree
        codes = np.asarray(codes, dtype=np.int64)
        if k == 0:
            return codes
        cols = self.frob_matrix(k)
        ca = self.decode_vec(codes)
        out = [None] * self.degree
        for i in range(self.degree):
            for j in range(self.degree):
                if cols[i][j]:
                    term = self.base.mul_vec(ca[i], cols[i][j])
                    out[j] = term if out[j] is None else self.base.add_vec(out[j], term)
        zeros = np.zeros_like(codes)
        out = [zeros if o is None else o for o in out]
        return self.encode_vec(out)

    def frob_table(self, k: int = 1):
        """Permutation array code -> code^(s^k) over the whole field."""
        k %= self.degree
        tabs = self._cache.setdefault("frobtab", {})
        if k not in tabs:
            if self.order > self.enum_bound():
                raise SizeLimit(f"Frobenius table needs |F| <= bound, got {self.order}")
            tabs[k] = self.frob_vec(np.arange(self.order, dtype=np.int64), k)
        return tabs[k]


def prime_ext_field(p: int, n: int) -> Field:
    """F_{p^n} over the prime field, with the deterministic modulus."""
    fp = PrimeField(p)
    if n == 1:
        return fp
    if p ** n > 2 ** 48:
        raise SizeLimit(f"field order {p}^{n} too large to construct")
    return ExtensionField(fp, find_irreducible(fp, n))


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Elt:
    """A field element: its field plus the canonical integer code."""

    field: Field
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.field.order:
            raise ValueError(f"code {self.code} out of range for {self.field!r}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coordinate vector over the immediate base field."""
        return self.field.coords(self.code)

    def _check(self, other) -> "Elt":
        if not isinstance(other, Elt):
            raise TypeError(f"expected Elt, got {type(other).__name__}")
        if other.field != self.field:
            raise LevelMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        return Elt(self.field, self.field.add(self.code, self._check(other).code))

    def __sub__(self, other):
        return Elt(self.field, self.field.sub(self.code, self._check(other).code))

    def __mul__(self, other):
        return Elt(self.field, self.field.mul(self.code, self._check(other).code))

    def __truediv__(self, other):
        return Elt(self.field, self.field.div(self.code, self._check(other).code))

    def __neg__(self):
        return Elt(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return Elt(self.field, self.field.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other
        return (isinstance(other, Elt) and other.field == self.field
                and other.code == self.code)

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        return f"{self.field!r}({self.code})"


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------

class FieldTower:
    """Immutable description of F_p < F_q = F_{p^m} < F_{q^3}."""

    def __init__(self, p, m, fp, fq, fq3, mid_modulus, top_modulus, max_q3):
        self.p = p
        self.m = m
        self.q = p ** m
        self.order_top = self.q ** 3
        self.fp = fp
        self.fq = fq
        self.fq3 = fq3
        self.mid_modulus = mid_modulus
        self.top_modulus = top_modulus
        self.max_q3 = max_q3

    def __repr__(self):
        return f"FieldTower(p={self.p}, m={self.m}, q={self.q})"

    def __eq__(self, other):
        return (isinstance(other, FieldTower) and other.p == self.p and other.m == self.m
                and other.mid_modulus == self.mid_modulus
                and other.top_modulus == self.top_modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.mid_modulus, self.top_modulus))

    def __reduce__(self):
        return (build_tower, (self.p, self.m, self.mid_modulus, self.top_modulus,
                              self.max_q3))

    # -- element constructors -------------------------------------------------
    def eq(self, code: int) -> Elt:
        """Element of F_q from its canonical code."""
        return Elt(self.fq, int(code))

    def eq3(self, code: int) -> Elt:
        """Element of F_{q^3} from its canonical code."""
        return Elt(self.fq3, int(code))

    def embed(self, x: Elt) -> Elt:
        """Embed an F_q element into F_{q^3} (identity on codes)."""
        if x.field != self.fq:
            raise LevelMismatch(f"expected an F_q element, got {x.field!r}")
        return Elt(self.fq3, x.code)


def build_tower(p: int, m: int = 1, mid_modulus=None, top_modulus=None,
                max_q3: int | None = None) -> FieldTower:
    """Construct the tower with deterministic (or explicitly supplied) moduli."""
    p, m = int(p), int(m)
    if m < 1:
        raise ValueError("m must be >= 1")
    fp = PrimeField(p)  # rejects p = 2 and composites
    limit = max_enumeration_order(max_q3)
    if p ** (3 * m) > limit:
        raise SizeLimit(f"q^3 = {p}^{3 * m} exceeds the enumeration bound {limit}")
    if m == 1:
        fq = fp
        if mid_modulus is None:
            mid_modulus = (0, 1)
        mid_modulus = tuple(int(c) % p for c in mid_modulus)
        if len(mid_modulus) != 2 or mid_modulus[1] != 1:
            raise ValueError("mid modulus must be monic of degree 1 when m = 1")
    else:
        if mid_modulus is None:
            mid_modulus = find_irreducible(fp, m)
        mid_modulus = tuple(int(c) for c in mid_modulus)
        if len(mid_modulus) != m + 1:
            raise ValueError(f"mid modulus must have degree {m}")
        fq = ExtensionField(fp, mid_modulus)
    if top_modulus is None:
        top_modulus = find_irreducible(fq, 3)
    top_modulus = tuple(int(c) for c in top_modulus)
    if len(top_modulus) != 4:
        raise ValueError("top modulus must have degree 3")
    fq3 = ExtensionField(fq, top_modulus)
    for field in (fp, fq, fq3):
        field._max_override = max_q3
    return FieldTower(p, m, fp, fq, fq3, mid_modulus, top_modulus, max_q3)


def frobenius_q(tower: FieldTower, x: Elt, k: int = 1) -> Elt:
    """x^(q^k) for x in F_{q^3}, via the precomputed linear action."""
    if x.field != tower.fq3:
        raise LevelMismatch("frobenius_q expects an F_{q^3} element")
    return Elt(tower.fq3, tower.fq3.frob(x.code, k))


def find_normal_element(tower: FieldTower) -> Elt:
    """First xi in code order whose conjugates {xi, xi^q, xi^(q^2)} form a basis."""
    f, fq = tower.fq3, tower.fq
    for code in range(f.order):
        vecs = [f.coords(code), f.coords(f.frob(code, 1)), f.coords(f.frob(code, 2))]
        if _det3_base(fq, vecs) != 0:
            return Elt(f, code)
    raise AssertionError("unreachable: normal bases always exist")


def _det3_base(field, rows):
    a, b, c = rows[0]
    d, e, g = rows[1]
    h, i, j = rows[2]
    t1 = field.mul(a, field.sub(field.mul(e, j), field.mul(g, i)))
    t2 = field.mul(b, field.sub(field.mul(d, j), field.mul(g, h)))
    t3 = field.mul(c, field.sub(field.mul(d, i), field.mul(e, h)))
    return field.add(field.sub(t1, t2), t3)


def sqrt_in_fq(tower: FieldTower, a: Elt) -> Elt | None:
    """Smaller square root of a in F_q by code order; None for non-squares."""
    if a.field != tower.fq:
        raise LevelMismatch("sqrt_in_fq expects an F_q element")
    root = tower.fq.sqrt_code(a.code)
    return None if root is None else Elt(tower.fq, root)
