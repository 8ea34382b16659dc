"""Builders for the code families: cyclic simplex/Hamming codes, the 1-perfect
codes C_{r,t}, the cyclic code C*, their duals and parity extensions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import BinaryVector, MixedVector, Shape
from .code import DEFAULT_CAP, Z2Z4Code
from .errors import DimensionError, ParameterError

# Primitive polynomials, coefficients of x^0 .. x^r.
PRIMITIVE = {
    2: (1, 1, 1),  # x^2 + x + 1
    3: (1, 1, 0, 1),  # x^3 + x + 1
    4: (1, 1, 0, 0, 1),  # x^4 + x + 1
    5: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    6: (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
}

CSTAR_H = ("110|112310", "011|011231")


@dataclass(frozen=True)
class ConstructionParams:
    r: int
    t: int

    def __post_init__(self):
        if not (2 <= self.r <= self.t <= 2 * self.r):
            raise ParameterError(f"need 2 <= r <= t <= 2r, got r={self.r}, t={self.t}")

    @property
    def alpha(self) -> int:
        return 2**self.r - 1

    @property
    def beta(self) -> int:
        return 2 ** (self.t - 1) - 2 ** (self.r - 1)

    @property
    def length(self) -> int:
        return 2**self.t - 1


def _table_poly(r: int) -> tuple[int, ...]:
    if r not in PRIMITIVE:
        raise ParameterError(f"r={r} outside the primitive polynomial table (2..6)")
    return PRIMITIVE[r]


def m_sequence(r: int) -> tuple[int, ...]:
    """One period of the LFSR sequence with characteristic polynomial PRIMITIVE[r]."""
    p = _table_poly(r)
    n = 2**r - 1
    s = [0] * (r - 1) + [1]
    while len(s) < n:
        s.append(sum(p[i] * s[len(s) - r + i] for i in range(r)) % 2)
    return tuple(s)


def _shifts(word: tuple[int, ...], count: int) -> list[MixedVector]:
    n = len(word)
    return [MixedVector.from_symbols(word[n - k :] + word[: n - k], ()) for k in range(count)]


def simplex_cyclic(r: int, cap: int = DEFAULT_CAP) -> Z2Z4Code:
    """Binary cyclic simplex code S_r of length 2^r - 1 and dimension r."""
    seq = m_sequence(r)
    return Z2Z4Code(len(seq), 0, _shifts(seq, r), cap=cap, name=f"S_{r}")


def hamming_cyclic(r: int, cap: int = DEFAULT_CAP) -> Z2Z4Code:
    """Binary cyclic Hamming code generated by the primitive polynomial.

    The rows are the cyclic shifts x^i p(x); the code is the dual of
    ``simplex_cyclic(r)`` because the m-sequence satisfies the recurrence
    sum_i p_i s_{k+i} = 0.
    """
    p = _table_poly(r)
    n = 2**r - 1
    word = tuple(p) + (0,) * (n - len(p))
    return Z2Z4Code(n, 0, _shifts(word, n - r), cap=cap, name=f"Ham_{r}")


def perfect_check_matrix(params: ConstructionParams) -> list[MixedVector]:
    """Rows of the check matrix of C_{r,t} over the syndrome group
    Z2^(2r - t) x Z4^(t - r).

    X columns: every nonzero order-<=2 syndrome, ascending. Y columns: the
    smaller of each {c, -c} pair of order-4 syndromes, ascending. A binary
    syndrome row k reads column entries as bits and doubles the quaternary
    ones; a quaternary row halves the (even) X entries.
    """
    gbar, dbar = 2 * params.r - params.t, params.t - params.r
    syn = Shape(gbar, dbar) if gbar + dbar else None
    assert syn is not None
    xcols, ycols = [], set()
    for v in range(1, syn.size):
        if syn.is_order4(v):
            ycols.add(min(v, syn.neg(v)))
        else:
            xcols.append(v)
    ycols = sorted(ycols)
    assert len(xcols) == params.alpha and len(ycols) == params.beta

    shape = Shape(params.alpha, params.beta)
    rows = []
    xsyms = [syn.unpack(c) for c in xcols]
    ysyms = [syn.unpack(c) for c in ycols]
    for k in range(gbar):
        bits = [b[k] for b, _ in xsyms]
        quat = [2 * b[k] for b, _ in ysyms]
        rows.append(MixedVector(shape, shape.pack(bits, quat)))
    for k in range(dbar):
        bits = [q[k] // 2 for _, q in xsyms]
        quat = [q[k] for _, q in ysyms]
        rows.append(MixedVector(shape, shape.pack(bits, quat)))
    return rows


def build_perfect(r: int, t: int, cap: int = DEFAULT_CAP) -> Z2Z4Code:
    """The Z2Z4-additive 1-perfect code C_{r,t}, defined by its check matrix."""
    params = ConstructionParams(r, t)
    rows = perfect_check_matrix(params)
    return Z2Z4Code.from_parity_check(params.alpha, params.beta, rows, cap=cap, name=f"C_{r},{t}")


def cstar_check_matrix() -> list[MixedVector]:
    return [MixedVector.parse(s) for s in CSTAR_H]


def build_cstar(cap: int = DEFAULT_CAP) -> Z2Z4Code:
    """The cyclic 1-perfect code of type (3, 6; 3, 4; 3) with check matrix H."""
    return Z2Z4Code.from_parity_check(3, 6, cstar_check_matrix(), cap=cap, name="C*")


def build_D(r: int, cap: int = DEFAULT_CAP) -> Z2Z4Code:
    """D^(r), the dual of C_{r,2r}: generated by the check matrix rows."""
    params = ConstructionParams(r, 2 * r)
    rows = perfect_check_matrix(params)
    code = build_perfect(r, 2 * r, cap=cap)
    return Z2Z4Code(params.alpha, params.beta, rows, parity_check=code.generators, cap=cap, name=f"D({r})")


def extend(code: Z2Z4Code) -> Z2Z4Code:
    """Append an even-parity binary coordinate at the end of the X part.

    Parity of the weight is additive (binary bits plus odd quaternary
    symbols), so extending the generators extends the whole code.
    """
    s = code.shape
    out = Shape(s.alpha + 1, s.beta)

    def ext(v: int) -> int:
        x = (v & s.xmask) >> 2 * s.beta
        bit = s.weight(v) & 1
        return (((x << 1) | bit) << 2 * s.beta) | (v & s.qmask)

    gens = [out.vector(ext(g.packed)) for g in code.generators]
    checks = None
    if code._parity_check is not None:
        # dual of the extension: old checks with a zero column, plus the
        # all-ones/all-twos word
        checks = [out.vector(((h.packed & s.xmask) << 1) | (h.packed & s.qmask)) for h in code._parity_check]
        checks.append(out.vector(out.xmask | out.hi))
    name = f"{code.name}'" if code.name else ""
    return Z2Z4Code(out.alpha, out.beta, gens, parity_check=checks, cap=code.cap, name=name)


# ---------------------------------------------------------------------------
# block structure of vectors with beta = 2^(r-1) * alpha


@dataclass(frozen=True)
class BlockView:
    x_part: BinaryVector
    blocks: tuple[tuple[int, ...], ...]


def block_view(z: MixedVector, r: int) -> BlockView:
    a, b = z.alpha, z.beta
    nblocks = 2 ** (r - 1)
    if a == 0 or b != nblocks * a:
        raise DimensionError(f"beta={b} is not 2^(r-1) * alpha for r={r}, alpha={a}")
    quat = z.quaternary_part
    blocks = tuple(quat[i * a : (i + 1) * a] for i in range(nblocks))
    return BlockView(BinaryVector.from_bits(z.binary_part), blocks)


def eta(view: BlockView, k: int) -> int:
    """Number of 2s in block k (1-indexed)."""
    return sum(1 for s in view.blocks[k - 1] if s == 2)


def n_set(view: BlockView, i: int, j: int) -> frozenset[int]:
    """1-indexed positions l where blocks i and j hold {0, 2} in some order."""
    yi, yj = view.blocks[i - 1], view.blocks[j - 1]
    return frozenset(l + 1 for l, (a, b) in enumerate(zip(yi, yj)) if {a, b} == {0, 2})


def all_vectors(shape: Shape):
    """Every vector of the ambient space in lexicographic order."""
    for bits in product((0, 1), repeat=shape.alpha):
        for quat in product(range(4), repeat=shape.beta):
            yield MixedVector(shape, shape.pack(bits, quat))
