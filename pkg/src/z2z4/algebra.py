"""Arithmetic on Z2^alpha x Z4^beta.

Vectors are packed into a single Python int so that addition, negation,
weights and inner products are word-parallel bit operations:

* binary symbol ``i`` (0-indexed) sits at bit ``2*beta + (alpha - 1 - i)``;
* quaternary symbol ``j`` occupies the two-bit lane starting at bit
  ``2*(beta - 1 - j)`` (high bit = 2, low bit = 1).

With this layout the integer order of packed values is the lexicographic
order of the vector literal, so the packed int doubles as the canonical
encoding used for sorting and deduplication.

Positions are 0-indexed here; reports and the CLI translate to 1-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionError

# Lee weights of 0, 1, 2, 3.
LEE = (0, 1, 2, 1)
# Gray map phi: Z4 -> Z2^2.
GRAY = ((0, 0), (0, 1), (1, 1), (1, 0))


@dataclass(frozen=True)
class Shape:
    """The ambient space Z2^alpha x Z4^beta and its bit masks."""

    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise DimensionError(f"negative shape ({self.alpha}, {self.beta})")
        if self.alpha + self.beta < 1:
            raise DimensionError("alpha + beta must be at least 1")

    @property
    def n_bits(self) -> int:
        """Binary length of the Gray image, alpha + 2*beta."""
        return self.alpha + 2 * self.beta

    @property
    def size(self) -> int:
        return 1 << self.n_bits

    @cached_property
    def lo(self) -> int:
        return int("01" * self.beta, 2) if self.beta else 0

    @cached_property
    def hi(self) -> int:
        return self.lo << 1

    @cached_property
    def qmask(self) -> int:
        return (1 << 2 * self.beta) - 1

    @cached_property
    def xmask(self) -> int:
        return ((1 << self.alpha) - 1) << 2 * self.beta

    # -- packed-int primitives -------------------------------------------

    def add(self, a: int, b: int) -> int:
        lo = self.lo
        return ((a & lo) + (b & lo)) ^ ((a ^ b) & ~lo)

    def neg(self, a: int) -> int:
        return a ^ ((a & self.lo) << 1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def double(self, a: int) -> int:
        return (a & self.lo) << 1

    def scale(self, a: int, k: int) -> int:
        k %= 4
        if k == 0:
            return 0
        if k == 1:
            return a
        if k == 2:
            return self.double(a)
        return self.neg(a)

    def gray(self, a: int) -> int:
        # phi(h l) = (h, h ^ l); it is its own inverse on packed ints
        return a ^ ((a & self.hi) >> 1)

    def weight(self, a: int) -> int:
        return self.gray(a).bit_count()

    def inner(self, a: int, b: int) -> int:
        lo = self.lo
        al, bl = a & lo, b & lo
        ah, bh = (a & self.hi) >> 1, (b & self.hi) >> 1
        xs = (a & b & self.xmask).bit_count()
        qs = (al & bl).bit_count() + 2 * ((ah & bl).bit_count() + (al & bh).bit_count())
        return (2 * xs + qs) % 4

    def is_order4(self, a: int) -> bool:
        return bool(a & self.lo)

    def rotate(self, a: int, k: int = 1) -> int:
        out = 0
        if self.alpha:
            n = self.alpha
            x = (a & self.xmask) >> 2 * self.beta
            s = k % n
            if s:
                x = ((x >> s) | (x << (n - s))) & ((1 << n) - 1)
            out = x << 2 * self.beta
        if self.beta:
            w = 2 * self.beta
            q = a & self.qmask
            s = 2 * (k % self.beta)
            if s:
                q = ((q >> s) | (q << (w - s))) & self.qmask
            out |= q
        return out

    def pack(self, binary: Sequence[int], quaternary: Sequence[int]) -> int:
        v = 0
        for b in binary:
            v = (v << 1) | b
        for q in quaternary:
            v = (v << 2) | q
        return v

    def unpack(self, a: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        x = a >> 2 * self.beta
        bits = tuple((x >> (self.alpha - 1 - i)) & 1 for i in range(self.alpha))
        quat = tuple((a >> 2 * (self.beta - 1 - j)) & 3 for j in range(self.beta))
        return bits, quat

    def vector(self, a: int) -> "MixedVector":
        return MixedVector(self, a)

    def zero(self) -> "MixedVector":
        return MixedVector(self, 0)

    def check(self, other: "Shape") -> None:
        if self != other:
            raise DimensionError(
                f"shape mismatch: ({self.alpha}, {self.beta}) vs ({other.alpha}, {other.beta})"
            )


@dataclass(frozen=True, order=True)
class MixedVector:
    """An element (u | u') of Z2^alpha x Z4^beta.

    >>> v = MixedVector.parse("110|112310")
    >>> v.weight()
    8
    >>> str(v.sigma())
    '011|011231'
    """

    shape: Shape = field(compare=False)
    packed: int

    def __post_init__(self):
        if not 0 <= self.packed < self.shape.size:
            raise DimensionError("packed value out of range for shape")

    # equality and ordering must respect the shape, but sorting on the
    # packed int alone keeps the order lexicographic within a shape
    def __eq__(self, other):
        if not isinstance(other, MixedVector):
            return NotImplemented
        return self.shape == other.shape and self.packed == other.packed

    def __hash__(self):
        return hash((self.shape.alpha, self.shape.beta, self.packed))

    @classmethod
    def from_symbols(cls, binary: Sequence[int], quaternary: Sequence[int]) -> "MixedVector":
        binary, quaternary = tuple(binary), tuple(quaternary)
        for b in binary:
            if b not in (0, 1):
                raise ValueError(f"binary symbol {b!r} not in {{0,1}}")
        for q in quaternary:
            if q not in (0, 1, 2, 3):
                raise ValueError(f"quaternary symbol {q!r} not in {{0,1,2,3}}")
        shape = Shape(len(binary), len(quaternary))
        return cls(shape, shape.pack(binary, quaternary))

    @classmethod
    def parse(cls, text: str) -> "MixedVector":
        """Parse the literal syntax ``"110|112310"`` (either side may be empty)."""
        if text.count("|") != 1:
            raise ValueError(f"vector literal {text!r} needs exactly one '|'")
        left, right = (s.strip() for s in text.split("|"))
        try:
            return cls.from_symbols([int(c) for c in left], [int(c) for c in right])
        except ValueError as exc:
            raise ValueError(f"bad vector literal {text!r}: {exc}") from None

    @property
    def alpha(self) -> int:
        return self.shape.alpha

    @property
    def beta(self) -> int:
        return self.shape.beta

    @property
    def binary_part(self) -> tuple[int, ...]:
        return self.shape.unpack(self.packed)[0]

    @property
    def quaternary_part(self) -> tuple[int, ...]:
        return self.shape.unpack(self.packed)[1]

    def __str__(self):
        b, q = self.shape.unpack(self.packed)
        return "".join(map(str, b)) + "|" + "".join(map(str, q))

    def __repr__(self):
        return f"MixedVector({str(self)!r})"

    def __add__(self, other: "MixedVector") -> "MixedVector":
        return add(self, other)

    def __sub__(self, other: "MixedVector") -> "MixedVector":
        return add(self, negate(other))

    def __neg__(self) -> "MixedVector":
        return negate(self)

    def __rmul__(self, k: int) -> "MixedVector":
        return MixedVector(self.shape, self.shape.scale(self.packed, k))

    def __bool__(self):
        return self.packed != 0

    def weight(self) -> int:
        return weight(self)

    def order(self) -> int:
        return order(self)

    def sigma(self, k: int = 1) -> "MixedVector":
        return sigma(self, k)

    def gray(self) -> "BinaryVector":
        return gray_map(self)


@dataclass(frozen=True, order=True)
class BinaryVector:
    """A binary word of fixed length, packed MSB-first like the X part."""

    length: int
    value: int

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BinaryVector":
        bits = tuple(bits)
        v = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"binary symbol {b!r} not in {{0,1}}")
            v = (v << 1) | b
        return cls(len(bits), v)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.length - 1 - i)) & 1 for i in range(self.length))

    def weight(self) -> int:
        return self.value.bit_count()

    def __xor__(self, other: "BinaryVector") -> "BinaryVector":
        if self.length != other.length:
            raise DimensionError("binary length mismatch")
        return BinaryVector(self.length, self.value ^ other.value)

    def __str__(self):
        return "".join(map(str, self.bits))


def _same_shape(a: MixedVector, b: MixedVector) -> Shape:
    a.shape.check(b.shape)
    return a.shape


def add(a: MixedVector, b: MixedVector) -> MixedVector:
    s = _same_shape(a, b)
    return MixedVector(s, s.add(a.packed, b.packed))


def negate(a: MixedVector) -> MixedVector:
    return MixedVector(a.shape, a.shape.neg(a.packed))


def gray_map(v: MixedVector) -> BinaryVector:
    """Phi(u | u') = (u | phi(u')), a word of length alpha + 2*beta."""
    return BinaryVector(v.shape.n_bits, v.shape.gray(v.packed))


def inverse_gray_map(b: BinaryVector, shape: Shape) -> MixedVector:
    if b.length != shape.n_bits:
        raise DimensionError("binary length does not match alpha + 2*beta")
    return MixedVector(shape, shape.gray(b.value))


def weight(v: MixedVector) -> int:
    """Hamming weight of the binary part plus Lee weight of the quaternary part."""
    return v.shape.weight(v.packed)


def distance(a: MixedVector, b: MixedVector) -> int:
    s = _same_shape(a, b)
    return s.weight(s.sub(a.packed, b.packed))


def hamming_distance(a: BinaryVector, b: BinaryVector) -> int:
    return (a ^ b).weight()


def inner_product(a: MixedVector, b: MixedVector) -> int:
    """2*sum(u_i v_i) + sum(u'_j v'_j) mod 4."""
    s = _same_shape(a, b)
    return s.inner(a.packed, b.packed)


def sigma(v: MixedVector, k: int = 1) -> MixedVector:
    """Right cyclic shift applied k times to both parts independently."""
    return MixedVector(v.shape, v.shape.rotate(v.packed, k))


def order(v: MixedVector) -> int:
    if not v.packed:
        return 1
    return 4 if v.shape.is_order4(v.packed) else 2


def support(x: BinaryVector) -> frozenset[int]:
    """1-indexed positions of nonzero bits."""
    return frozenset(i + 1 for i, b in enumerate(x.bits) if b)


def co_support(x: BinaryVector) -> frozenset[int]:
    return frozenset(range(1, x.length + 1)) - support(x)
