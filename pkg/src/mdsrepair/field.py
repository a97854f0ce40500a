"""Arithmetic in GF(2^m) via log/antilog tables.

Field elements are plain ints in [0, 2^m).  Addition is XOR (characteristic
2, every element is its own additive inverse).  Multiplication goes through
precomputed exponent/logarithm tables for the generator x, so each product
costs two lookups and one add.

Only m = 8 and m = 16 are supported; they are the symbol widths the codes
in this package are built over.
"""

from __future__ import annotations

import random

from .errors import BadPolynomial, ZeroInverse

# Widely deployed primitive polynomials (x^m bit included).
DEFAULT_POLY = {
    8: 0x11D,     # x^8 + x^4 + x^3 + x^2 + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}


class GF:
    """GF(2^m) with tables built once at construction.

    Construction validates that the reduction polynomial is primitive by
    checking that x generates all 2^m - 1 nonzero elements; a bad
    polynomial fails fast instead of yielding a corrupt table.

    The table attributes are immutable after construction and safe to
    share across threads.  ``exp`` is doubled in length so callers may
    index ``exp[log[a] + log[b]]`` without a modulo.
    """

    __slots__ = ("m", "order", "poly", "exp", "log")

    def __init__(self, m: int, poly: int | None = None):
        if m not in DEFAULT_POLY:
            raise BadPolynomial(f"unsupported field width m={m}; expected 8 or 16")
        if poly is None:
            poly = DEFAULT_POLY[m]
        order = 1 << m
        if poly >> m != 1:
            raise BadPolynomial(
                f"reduction polynomial 0x{poly:x} does not have degree exactly {m}"
            )

        exp = []
        log = [-1] * order
        x = 1
        for i in range(order - 1):
            if log[x] != -1:
                raise BadPolynomial(
                    f"0x{poly:x} is not primitive: x has multiplicative order {i}"
                    f" < {order - 1}"
                )
            exp.append(x)
            log[x] = i
            x <<= 1
            if x & order:
                x ^= poly
        if x != 1:
            raise BadPolynomial(f"0x{poly:x} is not irreducible over GF(2)")

        self.m = m
        self.order = order
        self.poly = poly
        self.exp = exp + exp  # doubled: exp[i] == exp[i + order - 1]
        self.log = log

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return self.exp[self.order - 1 - self.log[a]]

    def random_element(self, rng: random.Random) -> int:
        """Uniform draw over all 2^m elements (zero included)."""
        return rng.randrange(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.m, self.poly) == (other.m, other.poly)

    def __hash__(self) -> int:
        return hash((self.m, self.poly))

    def __repr__(self) -> str:
        return f"GF(2^{self.m}, poly=0x{self.poly:x})"
