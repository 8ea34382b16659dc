"""Z2Z4-additive codes: reduction, types, duals, punctured codes, weights."""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .algebra import BinaryVector, MixedVector, Shape
from .errors import DimensionError, EnumerationCapError, InvalidTypeError

DEFAULT_CAP = 1 << 20
# duals are found by scanning the ambient space up to this binary length
SCAN_LIMIT = 20

MixedMatrix = Sequence[MixedVector]


@dataclass(frozen=True)
class CodeType:
    """The quintuple (alpha, beta; gamma, delta; kappa)."""

    alpha: int
    beta: int
    gamma: int
    delta: int
    kappa: int

    def __post_init__(self):
        vals = (self.alpha, self.beta, self.gamma, self.delta, self.kappa)
        if min(vals) < 0:
            raise InvalidTypeError(f"negative entry in type {vals}")
        if self.kappa > min(self.gamma, self.alpha):
            raise InvalidTypeError(f"kappa > min(gamma, alpha) in {vals}")
        if self.delta > self.beta or self.gamma + 2 * self.delta > self.alpha + 2 * self.beta:
            raise InvalidTypeError(f"type {vals} does not fit its ambient space")

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta, self.kappa)

    def __str__(self):
        return f"({self.alpha}, {self.beta}; {self.gamma}, {self.delta}; {self.kappa})"


def dual_type(t: CodeType) -> CodeType:
    """Type of the dual: (a, b; a + g - 2k, b - g - d + k; a - k)."""
    return CodeType(
        t.alpha,
        t.beta,
        t.alpha + t.gamma - 2 * t.kappa,
        t.beta - t.gamma - t.delta + t.kappa,
        t.alpha - t.kappa,
    )


# ---------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ReducedForm:
    """delta independent order-4 rows followed by gamma order-2 rows."""

    order4: tuple[MixedVector, ...]
    order2: tuple[MixedVector, ...]

    @property
    def rows(self) -> tuple[MixedVector, ...]:
        return self.order4 + self.order2


def _column_getters(shape: Shape):
    """(bit offset, is_quaternary) per coordinate, X first then Y."""
    cols = [(2 * shape.beta + shape.alpha - 1 - i, False) for i in range(shape.alpha)]
    cols += [(2 * (shape.beta - 1 - j), True) for j in range(shape.beta)]
    return cols


def _reduce_packed(shape: Shape, rows: list[int]) -> tuple[list[int], list[int]]:
    rows = [r for r in rows if r]
    order4: list[int] = []
    # order-4 pivots: odd entries in quaternary columns
    for j in range(shape.beta):
        off = 2 * (shape.beta - 1 - j)
        piv = next((i for i, r in enumerate(rows) if (r >> off) & 1), None)
        if piv is None:
            continue
        p = rows.pop(piv)
        if (p >> off) & 3 == 3:
            p = shape.neg(p)

        def clear(r, p=p, off=off):
            c = (r >> off) & 3
            return shape.sub(r, shape.scale(p, c)) if c else r

        rows = [r for r in map(clear, rows) if r]
        order4 = [clear(g) for g in order4]
        order4.append(p)

    # remaining rows are of order 2: every quaternary entry is 0 or 2
    order2: list[int] = []
    for off, quat in _column_getters(shape):
        bit = off + 1 if quat else off
        piv = next((i for i, r in enumerate(rows) if (r >> bit) & 1), None)
        if piv is None:
            continue
        p = rows.pop(piv)

        def clear2(r, p=p, bit=bit):
            return shape.add(r, p) if (r >> bit) & 1 else r

        rows = [r for r in map(clear2, rows) if r]
        order2 = [clear2(g) for g in order2]
        order4 = [clear2(g) for g in order4]
        order2.append(p)
    assert not rows
    return order4, order2


def reduce(generators: MixedMatrix, shape: Shape | None = None) -> ReducedForm:
    """Mixed Gaussian elimination.

    Quaternary columns are scanned left to right for an odd (unit) pivot;
    each pivot row is normalised to 1 and its column is cleared from every
    other row. The leftover rows have no odd entries and are eliminated as
    binary vectors. Ties go to the lowest column, then the lowest row.
    """
    shape = _shape_of(generators, shape)
    o4, o2 = _reduce_packed(shape, [g.packed for g in generators])
    return ReducedForm(tuple(shape.vector(v) for v in o4), tuple(shape.vector(v) for v in o2))


def _shape_of(generators: MixedMatrix, shape: Shape | None) -> Shape:
    if shape is None:
        if not generators:
            raise DimensionError("cannot infer the shape of an empty matrix")
        shape = generators[0].shape
    for g in generators:
        shape.check(g.shape)
    return shape


def _binary_rank(rows: Iterable[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _enumerate(shape: Shape, order4: Sequence[int], order2: Sequence[int]) -> list[int]:
    words = [0]
    for g in order4:
        mults = [0, g, shape.double(g), shape.neg(g)]
        words = [shape.add(w, m) for w in words for m in mults]
    for g in order2:
        words = words + [shape.add(w, g) for w in words]
    return words


def span(generators: MixedMatrix, cap: int = DEFAULT_CAP, shape: Shape | None = None) -> set[MixedVector]:
    """All additive combinations of the rows, refusing if more than ``cap``."""
    shape = _shape_of(generators, shape)
    red = reduce(generators, shape)
    size = 1 << (len(red.order2) + 2 * len(red.order4))
    if size > cap:
        raise EnumerationCapError(size, cap)
    words = _enumerate(shape, [g.packed for g in red.order4], [g.packed for g in red.order2])
    return {shape.vector(w) for w in words}


# ---------------------------------------------------------------------------
# kernel solving over Z4


def _kernel_packed(shape: Shape, rows: Sequence[int]) -> list[int]:
    """Generators of {v : v . h = 0 for every h in rows}.

    Each row h becomes a Z4 row with the binary coordinates doubled, so
    h . v = sum_k A[k] * v_k over Z4 with v_k in {0, 1} on X. Since every
    X column of A is even, the X unknowns can range over Z4 and be read
    mod 2 afterwards. The matrix is brought to diagonal form D = P A Q;
    ker A = Q ker D.
    """
    a, b = shape.alpha, shape.beta
    n = a + b
    mat = []
    for h in rows:
        bits, quat = shape.unpack(h)
        mat.append([2 * x for x in bits] + list(quat))
    m = len(mat)
    Q = [[int(i == j) for j in range(n)] for i in range(n)]  # Q[i][j], column j
    diag: list[int] = []
    k = 0

    def swap_cols(i, j):
        if i == j:
            return
        for row in mat:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    for want in ((1, 3), (2,)):
        while k < min(m, n):
            hit = next(
                ((i, j) for i in range(k, m) for j in range(k, n) if mat[i][j] in want),
                None,
            )
            if hit is None:
                break
            i, j = hit
            mat[k], mat[i] = mat[i], mat[k]
            swap_cols(k, j)
            p = mat[k][k]
            if p == 3:
                mat[k] = [(-x) % 4 for x in mat[k]]
                p = 1
            step = 1 if p == 1 else 2
            for i2 in range(k + 1, m):
                f = mat[i2][k] // step
                if f:
                    mat[i2] = [(x - f * y) % 4 for x, y in zip(mat[i2], mat[k])]
            for j2 in range(k + 1, n):
                f = mat[k][j2] // step
                if f:
                    for row in mat:
                        row[j2] = (row[j2] - f * row[k]) % 4
                    for row in Q:
                        row[j2] = (row[j2] - f * row[k]) % 4
            diag.append(p)
            k += 1

    gens = []
    for col in range(n):
        d = diag[col] if col < len(diag) else 0
        if d == 1:
            continue
        f = 2 if d == 2 else 1
        vec = [(f * Q[i][col]) % 4 for i in range(n)]
        packed = shape.pack([x % 2 for x in vec[:a]], vec[a:])
        if packed:
            gens.append(packed)
    return gens


def _scan_packed(shape: Shape, rows: Sequence[int]) -> np.ndarray:
    """Every ambient vector orthogonal to all rows, by brute force."""
    allv = np.arange(shape.size, dtype=np.uint64)
    lo = np.uint64(shape.lo)
    hi = np.uint64(shape.hi)
    xm = np.uint64(shape.xmask)
    al = allv & lo
    ah = (allv & hi) >> np.uint64(1)
    keep = np.ones(shape.size, dtype=bool)
    for h in rows:
        h = np.uint64(h)
        bl, bh = h & lo, (h & hi) >> np.uint64(1)
        xs = np.bitwise_count(allv & h & xm).astype(np.int64)
        qs = (
            np.bitwise_count(al & bl).astype(np.int64)
            + 2 * np.bitwise_count(ah & bl).astype(np.int64)
            + 2 * np.bitwise_count(al & bh).astype(np.int64)
        )
        keep &= (2 * xs + qs) % 4 == 0
    return allv[keep]


# ---------------------------------------------------------------------------
# codes


class Z2Z4Code:
    """An additive subgroup of Z2^alpha x Z4^beta given by generators.

    ``parity_check`` may be supplied when the dual generators are already
    known (codes defined as kernels); otherwise they are solved for lazily.
    """

    def __init__(
        self,
        alpha: int,
        beta: int,
        generators: MixedMatrix = (),
        *,
        parity_check: MixedMatrix | None = None,
        cap: int = DEFAULT_CAP,
        name: str = "",
    ):
        self.shape = Shape(alpha, beta)
        self.generators = tuple(generators)
        for g in self.generators:
            self.shape.check(g.shape)
        if parity_check is not None:
            parity_check = tuple(parity_check)
            for h in parity_check:
                self.shape.check(h.shape)
        self._parity_check = parity_check
        self.cap = cap
        self.name = name
        self._lock = threading.Lock()
        self._words: frozenset[int] | None = None

    @classmethod
    def from_parity_check(cls, alpha: int, beta: int, rows: MixedMatrix, **kw) -> "Z2Z4Code":
        shape = Shape(alpha, beta)
        rows = tuple(rows)
        for h in rows:
            shape.check(h.shape)
        gens = [shape.vector(v) for v in _kernel_packed(shape, [h.packed for h in rows])]
        return cls(alpha, beta, gens, parity_check=rows, **kw)

    @classmethod
    def full_space(cls, alpha: int, beta: int, **kw) -> "Z2Z4Code":
        shape = Shape(alpha, beta)
        gens = [shape.vector(1 << (2 * beta + i)) for i in range(alpha)]
        gens += [shape.vector(1 << 2 * j) for j in range(beta)]
        return cls(alpha, beta, gens, parity_check=(), **kw)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Z2Z4Code{label} type {self.type}>"

    @property
    def alpha(self) -> int:
        return self.shape.alpha

    @property
    def beta(self) -> int:
        return self.shape.beta

    # -- structure --------------------------------------------------------

    @cached_property
    def reduced(self) -> ReducedForm:
        return reduce(self.generators, self.shape)

    @property
    def gamma(self) -> int:
        return len(self.reduced.order2)

    @property
    def delta(self) -> int:
        return len(self.reduced.order4)

    @cached_property
    def kappa(self) -> int:
        # generators of (C_b)_X; doubled order-4 rows vanish on X but are kept
        # so the projection is taken over all of C_b's generators
        s = self.shape
        rows = [g.packed for g in self.reduced.order2]
        rows += [s.double(g.packed) for g in self.reduced.order4]
        return _binary_rank((r & s.xmask) >> 2 * s.beta for r in rows)

    @cached_property
    def type(self) -> CodeType:
        return CodeType(self.alpha, self.beta, self.gamma, self.delta, self.kappa)

    @property
    def size(self) -> int:
        return 1 << (self.gamma + 2 * self.delta)

    def __len__(self):
        return self.size

    @property
    def parity_check(self) -> tuple[MixedVector, ...]:
        """Generators of the dual code (solved on first use)."""
        if self._parity_check is None:
            packed = _kernel_packed(self.shape, [g.packed for g in self.reduced.rows])
            self._parity_check = tuple(self.shape.vector(v) for v in packed)
        return self._parity_check

    # -- enumeration ------------------------------------------------------

    def words(self) -> frozenset[int]:
        """Packed codewords; materialized once behind a lock."""
        if self._words is None:
            with self._lock:
                if self._words is None:
                    if self.size > self.cap:
                        raise EnumerationCapError(self.size, self.cap)
                    red = self.reduced
                    self._words = frozenset(
                        _enumerate(
                            self.shape,
                            [g.packed for g in red.order4],
                            [g.packed for g in red.order2],
                        )
                    )
        return self._words

    def codewords(self) -> list[MixedVector]:
        return [self.shape.vector(w) for w in sorted(self.words())]

    def __iter__(self):
        return iter(self.codewords())

    @property
    def materialized(self) -> bool:
        return self._words is not None

    def contains(self, v: MixedVector, method: str = "auto") -> bool:
        """Membership; ``method`` is "set", "syndrome" or "auto"."""
        self.shape.check(v.shape)
        return self.contains_packed(v.packed, method)

    def contains_packed(self, v: int, method: str = "auto") -> bool:
        if method == "set" or (method == "auto" and self.materialized):
            return v in self.words()
        inner = self.shape.inner
        return all(inner(v, h.packed) == 0 for h in self.parity_check)

    def __contains__(self, v: MixedVector) -> bool:
        return self.contains(v)

    def same_span(self, other: "Z2Z4Code") -> bool:
        if self.shape != other.shape or self.type != other.type:
            return False
        return all(other.contains_packed(g.packed, "syndrome") for g in self.reduced.rows)

    def __eq__(self, other):
        if not isinstance(other, Z2Z4Code):
            return NotImplemented
        return self.same_span(other)

    def __hash__(self):
        return hash(self.type)

    # -- derived codes ----------------------------------------------------

    def dual(self, method: str = "auto") -> "Z2Z4Code":
        """The dual code under the mixed inner product.

        "scan" tests every ambient vector (binary length <= SCAN_LIMIT by
        default in "auto" mode); "kernel" solves the orthogonality system.
        """
        if method == "auto":
            method = "scan" if self.shape.n_bits <= SCAN_LIMIT else "kernel"
        rows = [g.packed for g in self.reduced.rows]
        if method == "scan":
            if self.shape.size > max(self.cap, 1 << SCAN_LIMIT):
                raise EnumerationCapError(self.shape.size, self.cap)
            found = _scan_packed(self.shape, rows)
            o4, o2 = _reduce_packed(self.shape, [int(v) for v in found])
            gens = [self.shape.vector(v) for v in o4 + o2]
            code = Z2Z4Code(self.alpha, self.beta, gens, parity_check=self.reduced.rows, cap=self.cap)
            code._words = frozenset(int(v) for v in found)
            return code
        if method == "kernel":
            return Z2Z4Code(
                self.alpha, self.beta, self.parity_check, parity_check=self.reduced.rows, cap=self.cap
            )
        raise ValueError(f"unknown dual method {method!r}")

    def subcode_b(self) -> "Z2Z4Code":
        """C_b: the codewords v with 2v = 0."""
        s = self.shape
        gens = list(self.reduced.order2) + [s.vector(s.double(g.packed)) for g in self.reduced.order4]
        return Z2Z4Code(self.alpha, self.beta, gens, cap=self.cap)

    def puncture_X(self) -> "Z2Z4Code":
        """Projection onto the binary coordinates, as a (alpha, 0) code."""
        if not self.alpha:
            raise DimensionError("code has no binary coordinates")
        s = self.shape
        out = Shape(self.alpha, 0)
        gens = [out.vector((g.packed & s.xmask) >> 2 * s.beta) for g in self.reduced.rows]
        return Z2Z4Code(self.alpha, 0, gens, cap=self.cap)

    def puncture_Y(self) -> "Z2Z4Code":
        """Projection onto the quaternary coordinates, as a (0, beta) code."""
        if not self.beta:
            raise DimensionError("code has no quaternary coordinates")
        out = Shape(0, self.beta)
        gens = [out.vector(g.packed & self.shape.qmask) for g in self.reduced.rows]
        return Z2Z4Code(0, self.beta, gens, cap=self.cap)

    def permuted(self, arrangement) -> "Z2Z4Code":
        gens = [arrangement.apply(g) for g in self.generators]
        checks = None
        if self._parity_check is not None:
            checks = [arrangement.apply(h) for h in self._parity_check]
        return Z2Z4Code(self.alpha, self.beta, gens, parity_check=checks, cap=self.cap)

    # -- metrics ----------------------------------------------------------

    def gray_image(self) -> frozenset[int]:
        gray = self.shape.gray
        return frozenset(gray(w) for w in self.words())

    def gray_codewords(self) -> list[BinaryVector]:
        n = self.shape.n_bits
        return [BinaryVector(n, w) for w in sorted(self.gray_image())]

    def weight_distribution(self) -> dict[int, int]:
        wt = self.shape.weight
        return dict(sorted(Counter(wt(w) for w in self.words()).items()))

    def min_distance(self) -> int:
        """Minimum nonzero weight (the code is additive, so this is d)."""
        wt = self.shape.weight
        weights = [wt(w) for w in self.words() if w]
        if not weights:
            raise ValueError("the zero code has no minimum distance")
        return min(weights)


def compute_type(code: Z2Z4Code) -> CodeType:
    return code.type


def dual(code: Z2Z4Code, method: str = "auto") -> Z2Z4Code:
    return code.dual(method)


def contains(code: Z2Z4Code, v: MixedVector, method: str = "auto") -> bool:
    return code.contains(v, method)


def weight_distribution(code: Z2Z4Code) -> dict[int, int]:
    return code.weight_distribution()


def min_distance(code: Z2Z4Code) -> int:
    return code.min_distance()


def twos_to_ones(code: Z2Z4Code) -> set[BinaryVector]:
    """Read an order-2 quaternary code as binary words by mapping 2 -> 1.

    Binary coordinates are copied as they are.
    """
    s = code.shape
    out = set()
    for w in code.words():
        if s.is_order4(w):
            raise ValueError("code has order-4 codewords")
        bits, quat = s.unpack(w)
        out.add(BinaryVector.from_bits(bits + tuple(q // 2 for q in quat)))
    return out
