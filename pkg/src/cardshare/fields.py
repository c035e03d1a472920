"""Exact arithmetic in GF(q) for prime-power q.

Field construction is deterministic: for a given q the modulus is the
lexicographically smallest monic irreducible polynomial of degree k over
F_p, comparing coefficient vectors from the constant term up.  Elements are
encoded as canonical integers in [0, q): the coefficient vector
(c_0, ..., c_{k-1}) in the polynomial basis encodes to sum(c_i * p**i).
The encoding doubles as the wire representation, so transcripts produced on
different machines are byte-comparable.

Arithmetic is table-driven.  At the scales this package targets (q up to a
few hundred) the q-by-q tables cost nothing and make element operations
plain list lookups.  Prime fields go through the same code path with
modulus x.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import DivisionByZero, NotAPrimePower, SpecMismatch

__all__ = ["FieldSpec", "FieldElement", "construct_field", "factor_prime_power"]


def _smallest_prime_factor(n: int) -> int:
    f = 2
    while f * f <= n:
        if n % f == 0:
            return f
        f += 1
    return n


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, k) with q = p**k, p prime; raise NotAPrimePower otherwise."""
    if q < 2:
        raise NotAPrimePower(f"field order must be at least 2, got {q}")
    p = _smallest_prime_factor(q)
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotAPrimePower(f"{q} is not a power of a prime ({p} divides it, but so does {rest})")
    return p, k


# Polynomials over F_p are coefficient tuples, constant term first, with no
# trailing zeros; () is the zero polynomial.

def _poly_trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, b, p):
    """Remainder of a modulo monic b."""
    rem = list(_poly_trim(a))
    db = len(b) - 1
    while len(rem) > db:
        factor = rem[-1]
        if factor:
            shift = len(rem) - 1 - db
            for j, bj in enumerate(b):
                rem[shift + j] = (rem[shift + j] - factor * bj) % p
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return tuple(rem)


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg(poly) / 2."""
    deg = len(poly) - 1
    if deg <= 1:
        return deg == 1
    for div_deg in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=div_deg):
            divisor = tail + (1,)
            if not _poly_mod(poly, divisor, p):
                return False
    return True


class FieldSpec:
    """A concrete field GF(p**k): modulus, element encoding and operation tables.

    Instances are interned per order by :func:`construct_field`; building one
    directly from wire data ({p, k, modulus}) revalidates the modulus.
    """

    __slots__ = ("p", "k", "q", "modulus", "_elems", "_add", "_mul", "_neg", "_inv")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        if k < 1:
            raise NotAPrimePower(f"extension degree must be positive, got {k}")
        if _smallest_prime_factor(p) != p or p < 2:
            raise NotAPrimePower(f"characteristic {p} is not prime")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}, got {modulus}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError(f"modulus coefficients must lie in [0, {p}), got {modulus}")
        if not _is_irreducible(_poly_trim(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._build_tables()
        self._elems = tuple(FieldElement(self, v) for v in range(self.q))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        coeff = [self.coefficients(v) for v in range(q)]
        self._add = [
            [self.encode((a + b) % p for a, b in zip(coeff[i], coeff[j])) for j in range(q)]
            for i in range(q)
        ]
        self._neg = [self.encode((-a) % p for a in coeff[i]) for i in range(q)]
        self._mul = []
        for i in range(q):
            row = []
            for j in range(q):
                prod = _poly_mod(_poly_mul(coeff[i], coeff[j], p), self.modulus, p)
                row.append(self.encode(prod))
            self._mul.append(row)
        self._inv = [None] * q
        for i in range(1, q):
            for j in range(1, q):
                if self._mul[i][j] == 1:
                    self._inv[i] = j
                    break

    # --- encoding ----------------------------------------------------------

    def coefficients(self, value: int) -> tuple[int, ...]:
        """Decode a canonical value into its k base-p coefficients, low degree first."""
        out = []
        for _ in range(self.k):
            value, c = divmod(value, self.p)
            out.append(c)
        return tuple(out)

    def encode(self, coeffs) -> int:
        """Inverse of :meth:`coefficients`; short vectors are zero-padded."""
        value = 0
        for i, c in enumerate(coeffs):
            value += c * self.p**i
        return value

    # --- elements ----------------------------------------------------------

    def element(self, value: int) -> FieldElement:
        if not 0 <= value < self.q:
            raise ValueError(f"canonical value must lie in [0, {self.q}), got {value}")
        return self._elems[value]

    @property
    def zero(self) -> FieldElement:
        return self._elems[0]

    @property
    def one(self) -> FieldElement:
        return self._elems[1]

    def elements(self) -> tuple[FieldElement, ...]:
        """All q elements in canonical-value order."""
        return self._elems

    def as_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


class FieldElement:
    """An element of a FieldSpec, identified by its canonical integer value."""

    __slots__ = ("spec", "value", "_hash")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = value
        self._hash = hash((value, spec.q))

    def _check(self, other) -> FieldElement:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine field element with {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatch(f"elements of {self.spec} and {other.spec} cannot combine")
        return other

    def __add__(self, other):
        spec = self.spec
        if type(other) is not FieldElement or other.spec is not spec:
            other = self._check(other)
        return spec._elems[spec._add[self.value][other.value]]

    def __sub__(self, other):
        spec = self.spec
        if type(other) is not FieldElement or other.spec is not spec:
            other = self._check(other)
        return spec._elems[spec._add[self.value][spec._neg[other.value]]]

    def __mul__(self, other):
        spec = self.spec
        if type(other) is not FieldElement or other.spec is not spec:
            other = self._check(other)
        return spec._elems[spec._mul[self.value][other.value]]

    def __neg__(self):
        return self.spec._elems[self.spec._neg[self.value]]

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise DivisionByZero(f"zero of {self.spec} has no multiplicative inverse")
        return self.spec._elems[self.spec._inv[self.value]]

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.spec.coefficients(self.value)

    def __eq__(self, other):
        if self is other:  # elements are interned per spec, so this is the common case
            return True
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.value == other.value and self.spec == other.spec

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"F{self.spec.q}({self.value})"


@lru_cache(maxsize=None)
def construct_field(q: int) -> FieldSpec:
    """Build GF(q) deterministically.

    The modulus is the first irreducible polynomial in the lexicographic scan
    of monic degree-k polynomials (constant term varying slowest); prime q
    gets modulus x.  Same q, same field, always.
    """
    p, k = factor_prime_power(q)
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for tail in itertools.product(range(p), repeat=k):
        candidate = tail + (1,)
        if _is_irreducible(candidate, p):
            return FieldSpec(p, k, candidate)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable
