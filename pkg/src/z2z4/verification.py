"""Decision procedures and audits on concrete codes.

Negative answers from searches are only reported after the whole space
has been exhausted; running out of budget is a separate, inconclusive
outcome.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice, permutations, product
from typing import Any

import numpy as np

from .algebra import BinaryVector, MixedVector, Shape
from .code import Z2Z4Code, reduce, twos_to_ones
from .constructions import (
    ConstructionParams,
    block_view,
    build_cstar,
    build_D,
    cstar_check_matrix,
    eta,
    n_set,
    simplex_cyclic,
)
from .errors import EnumerationCapError

DEFAULT_BUDGET = 10**6
SPHERE_LIMIT = 24

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Arrangement:
    """Coordinate permutations; new position k holds old coordinate pi[k].

    Stored 0-indexed, serialized 1-indexed.
    """

    pi_X: tuple[int, ...]
    pi_Y: tuple[int, ...]

    def __post_init__(self):
        for p in (self.pi_X, self.pi_Y):
            if sorted(p) != list(range(len(p))):
                raise ValueError(f"{p} is not a permutation")

    @classmethod
    def identity(cls, alpha: int, beta: int) -> "Arrangement":
        return cls(tuple(range(alpha)), tuple(range(beta)))

    def apply(self, v: MixedVector) -> MixedVector:
        b, q = v.binary_part, v.quaternary_part
        if len(b) != len(self.pi_X) or len(q) != len(self.pi_Y):
            raise ValueError("arrangement does not match the vector shape")
        return MixedVector(v.shape, v.shape.pack([b[p] for p in self.pi_X], [q[p] for p in self.pi_Y]))

    def to_json(self) -> dict[str, list[int]]:
        return {"pi_X": [p + 1 for p in self.pi_X], "pi_Y": [p + 1 for p in self.pi_Y]}


@dataclass
class AuditReport:
    claim: str
    params: dict[str, Any]
    verdict: str
    witness: Any = None
    counters: dict[str, int] = field(default_factory=dict)
    elapsed_ms: float = 0.0
    note: str = ""

    def __post_init__(self):
        if self.verdict == FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def ok(self) -> bool:
        return self.verdict != FAILS

    def to_json(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "claim": self.claim,
            "params": dict(self.params),
            "verdict": self.verdict,
            "witness": self.witness,
            "counters": {k: int(v) for k, v in self.counters.items()},
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.note:
            out["note"] = self.note
        return out


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = 1000 * (time.perf_counter() - self.t0)


# ---------------------------------------------------------------------------
# cyclicity


def cyclic_witness(code: Z2Z4Code, method: str = "generators") -> MixedVector | None:
    """A codeword whose shift leaves the code, or None if the code is cyclic.

    "generators" only shifts the reduced generators, which suffices since
    sigma is additive; "all" shifts every codeword.
    """
    s = code.shape
    if method == "generators":
        for g in code.reduced.rows:
            if not code.contains_packed(s.rotate(g.packed), "syndrome"):
                return g
        return None
    if method == "all":
        words = code.words()
        for w in sorted(words):
            if s.rotate(w) not in words:
                return s.vector(w)
        return None
    raise ValueError(f"unknown method {method!r}")


def is_cyclic(code: Z2Z4Code, method: str = "generators") -> bool:
    return cyclic_witness(code, method) is None


@dataclass(frozen=True)
class ArrangementResult:
    status: str  # "found", "none" or "inconclusive"
    arrangement: Arrangement | None
    examined: int
    total: int


def _search_range(alpha, beta, gens, checks, lo, hi):
    """First index in [lo, hi) of a cyclic arrangement, or None.

    For arrangement pi the rearranged code is cyclic iff
    pi^-1 sigma pi (g) lies in the code for every generator g; that map
    is the coordinate permutation rho(m) = pi(pi^-1(m) - 1).
    """
    shape = Shape(alpha, beta)
    inner, pack = shape.inner, shape.pack
    space = product(permutations(range(alpha)), permutations(range(beta)))
    for idx, (px, py) in enumerate(islice(space, lo, hi), start=lo):
        ix = [0] * alpha
        for k, p in enumerate(px):
            ix[p] = k
        iy = [0] * beta
        for k, p in enumerate(py):
            iy[p] = k
        rx = [px[ix[m] - 1] for m in range(alpha)]
        ry = [py[iy[m] - 1] for m in range(beta)]
        for b, q in gens:
            w = pack([b[i] for i in rx], [q[i] for i in ry])
            if any(inner(w, h) for h in checks):
                break
        else:
            return idx
    return None


def exists_cyclic_arrangement(
    code: Z2Z4Code, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> ArrangementResult:
    """Search (pi_X, pi_Y) in lexicographic order for a cyclic rearrangement.

    X and Y coordinates are never mixed. ``workers > 1`` splits the index
    range into contiguous chunks; the lexicographically first witness wins,
    so the result does not depend on the worker count.
    """
    a, b = code.alpha, code.beta
    total = math.factorial(a) * math.factorial(b)
    limit = min(total, budget)
    s = code.shape
    gens = [s.unpack(g.packed) for g in code.reduced.rows]
    checks = [h.packed for h in code.parity_check]

    if workers <= 1 or limit < 2 * workers:
        found = _search_range(a, b, gens, checks, 0, limit)
    else:
        step = -(-limit // workers)
        bounds = [(lo, min(lo + step, limit)) for lo in range(0, limit, step)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_search_range, a, b, gens, checks, lo, hi) for lo, hi in bounds]
            hits = [f.result() for f in futs]
        hits = [h for h in hits if h is not None]
        found = min(hits) if hits else None

    if found is not None:
        px, py = next(islice(product(permutations(range(a)), permutations(range(b))), found, None))
        return ArrangementResult("found", Arrangement(px, py), found + 1, total)
    if limit < total:
        return ArrangementResult("inconclusive", None, limit, total)
    return ArrangementResult("none", None, total, total)


# ---------------------------------------------------------------------------
# perfectness


def _np_add(shape: Shape, a, b):
    lo = np.uint64(shape.lo)
    return ((a & lo) + (b & lo)) ^ ((a ^ b) & ~lo)


def sphere_coverage(code: Z2Z4Code) -> np.ndarray:
    """How many codewords lie within distance 1 of each ambient vector."""
    s = code.shape
    if s.n_bits > SPHERE_LIMIT:
        raise EnumerationCapError(s.size, 1 << SPHERE_LIMIT)
    errors = [0]
    errors += [1 << (2 * s.beta + i) for i in range(s.alpha)]
    for j in range(s.beta):
        e = 1 << 2 * j
        errors += [e, s.neg(e)]
    words = np.fromiter(sorted(code.words()), dtype=np.uint64)
    hits = np.concatenate([_np_add(s, words, np.uint64(e)) for e in errors])
    return np.bincount(hits.astype(np.int64), minlength=s.size)


def check_columns(code: Z2Z4Code) -> list[MixedVector]:
    """Columns of the reduced check matrix as syndrome-group elements.

    With gamma' order-2 and delta' order-4 reduced dual rows, the syndrome
    group is Z2^gamma' x Z4^delta'. X coordinates come first.
    """
    s = code.shape
    red = reduce(code.parity_check, s) if code.parity_check else None
    o2 = [s.unpack(h.packed) for h in (red.order2 if red else ())]
    o4 = [s.unpack(h.packed) for h in (red.order4 if red else ())]
    syn = Shape(len(o2), len(o4)) if (o2 or o4) else None
    cols = []
    for i in range(s.alpha):
        bits = [h[0][i] for h in o2]
        quat = [2 * h[0][i] for h in o4]
        cols.append((bits, quat))
    for j in range(s.beta):
        bits = [h[1][j] // 2 for h in o2]
        quat = [h[1][j] for h in o4]
        cols.append((bits, quat))
    if syn is None:
        return []
    return [MixedVector(syn, syn.pack(b, q)) for b, q in cols]


def _column_problem(code: Z2Z4Code):
    """None if the check-matrix criterion for 1-perfect codes holds,
    otherwise a short description and a witness."""
    s = code.shape
    cols = check_columns(code)
    if not cols:
        return "no check matrix (full space)", str(s.zero())
    syn = cols[0].shape
    if 1 + s.alpha + 2 * s.beta != syn.size:
        return "1 + alpha + 2*beta differs from the syndrome group size", None
    seen = {0: "zero"}
    for pos, c in enumerate(cols):
        label = f"X{pos + 1}" if pos < s.alpha else f"Y{pos - s.alpha + 1}"
        if pos >= s.alpha and not syn.is_order4(c.packed):
            return f"column {label} has order < 4", label
        vals = [c.packed] if pos < s.alpha else [c.packed, syn.neg(c.packed)]
        for v in vals:
            if v in seen:
                return f"column {label} collides with {seen[v]}", [label, seen[v]]
            seen[v] = label
    return None


def perfect_witness(code: Z2Z4Code, method: str = "sphere"):
    """None if 1-perfect, otherwise evidence.

    sphere: an ambient vector whose radius-1 coverage is not exactly one.
    column: the offending check-matrix column(s).
    """
    if method == "sphere":
        cov = sphere_coverage(code)
        bad = np.flatnonzero(cov != 1)
        if bad.size:
            return str(code.shape.vector(int(bad[0])))
        return None
    if method == "column":
        prob = _column_problem(code)
        return None if prob is None else prob[1] or prob[0]
    raise ValueError(f"unknown method {method!r}")


def is_perfect(code: Z2Z4Code, method: str = "auto") -> bool:
    """1-perfect test; "auto" runs both methods when the sphere one fits
    and insists they agree."""
    if method in ("sphere", "column"):
        return perfect_witness(code, method) is None
    col = perfect_witness(code, "column") is None
    if code.shape.n_bits <= SPHERE_LIMIT and code.size <= code.cap:
        sph = perfect_witness(code, "sphere") is None
        if sph != col:
            raise AssertionError("sphere and column methods disagree")
    return col


# ---------------------------------------------------------------------------
# Gray image linearity


def gray_linearity_witness(code: Z2Z4Code, method: str = "generators"):
    """A pair of Gray codewords whose XOR is not a Gray codeword, or None.

    "generators": pairs of reduced generators suffice because
    Phi(u) + Phi(v) = Phi(u + v + 2(u*v)) and (u, v) -> 2(u*v) is
    biadditive. "all": full pairwise closure of Phi(C).
    """
    s = code.shape
    n = s.n_bits
    if method == "generators":
        rows = [g.packed for g in code.reduced.rows]
        for i, u in enumerate(rows):
            for v in rows[i + 1 :]:
                x = s.gray(u) ^ s.gray(v)
                if not code.contains_packed(s.gray(x)):
                    return BinaryVector(n, s.gray(u)), BinaryVector(n, s.gray(v))
        return None
    if method == "all":
        img = np.fromiter(sorted(code.gray_image()), dtype=np.uint64)
        for a in img:
            xs = img ^ a
            pos = np.searchsorted(img, xs)
            pos[pos == len(img)] = 0
            miss = img[pos] != xs
            if miss.any():
                k = int(np.flatnonzero(miss)[0])
                return BinaryVector(n, int(a)), BinaryVector(n, int(img[k]))
        return None
    raise ValueError(f"unknown method {method!r}")


def gray_image_linear(code: Z2Z4Code, method: str = "generators") -> bool:
    return gray_linearity_witness(code, method) is None


# ---------------------------------------------------------------------------
# audits


def verify_prop_3_1(r: int, t: int) -> AuditReport:
    """beta is a multiple of alpha exactly when t = r or t = 2r."""
    with _Timer() as tm:
        p = ConstructionParams(r, t)
        rem = p.beta % p.alpha
        excluded = rem != 0
        ok = (not excluded) == (t == r or t == 2 * r)
    return AuditReport(
        "prop_3_1",
        {"r": r, "t": t},
        HOLDS if ok else FAILS,
        witness=None if ok else {"r": r, "t": t, "rem": rem},
        counters={"alpha": p.alpha, "beta": p.beta, "rem": rem, "cyclic_excluded": int(excluded)},
        elapsed_ms=tm.ms,
        note="cyclic excluded" if excluded else "cyclic not excluded",
    )


def verify_lemma_3_7(r: int) -> AuditReport:
    """Parity of |supp(x) & cosupp(y)| over all pairs of S_r."""
    with _Timer() as tm:
        words = sorted(simplex_cyclic(r).words())
        n = 2**r - 1
        mask = (1 << n) - 1
        odd = []
        meets = set()
        for x in words:
            for y in words:
                if (x & ~y & mask).bit_count() % 2:
                    odd.append((x, y))
                if x and y and x != y:
                    meets.add((x & y).bit_count())
        wit = None
        if odd:
            x, y = odd[0]
            wit = [str(BinaryVector(n, x)), str(BinaryVector(n, y))]
        if r > 2:
            verdict = FAILS if odd else HOLDS
        else:
            verdict = NOT_APPLICABLE
    return AuditReport(
        "lemma_3_7",
        {"r": r},
        verdict,
        witness=wit,
        counters={
            "pairs": len(words) ** 2,
            "odd_pairs": len(odd),
            "supp_intersection": meets.pop() if len(meets) == 1 else -1,
        },
        elapsed_ms=tm.ms,
        note="" if r > 2 else "r = 2: odd intersections occur, the hypothesis r > 2 is needed",
    )


def _replications(simplex: set[int], n: int, copies: int) -> set[int]:
    out = set()
    for w in simplex:
        v = 0
        for _ in range(copies):
            v = (v << n) | w
        out.add(v)
    return out


def verify_structure_D(r: int, code: Z2Z4Code | None = None) -> AuditReport:
    """X projection, order-2 subcode, replication and symbol counts of a
    cyclic D^(r) (the dual of C* when r = 2)."""
    with _Timer() as tm:
        if code is None:
            code = build_cstar().dual() if r == 2 else build_D(r)
        s = code.shape
        alpha = 2**r - 1
        nblocks = 2 ** (r - 1)
        counters: dict[str, int] = {"codewords": code.size}
        cyclic = is_cyclic(code)
        counters["cyclic"] = int(cyclic)
        if not cyclic or s.alpha != alpha or s.beta != nblocks * alpha:
            return AuditReport("structure_d", {"r": r}, NOT_APPLICABLE, counters=counters,
                               note="code is not cyclic of the D^(r) shape")
        problems = []
        simplex = set(simplex_cyclic(r).words())

        xproj = set(code.puncture_X().words())
        counters["x_projection"] = len(xproj)
        if xproj != simplex:
            problems.append("X projection differs from S_r")

        sub_b = code.subcode_b()
        b_words = set(sub_b.words())
        zero_x = {w for w in code.words() if not w & s.xmask}
        counters["subcode_b"] = len(b_words)
        counters["zero_x_codewords"] = len(zero_x)
        if zero_x != b_words:
            problems.append("zero-X codewords differ from C_b")

        image = {v.value for v in twos_to_ones(sub_b.puncture_Y())}
        counters["replication_image"] = len(image)
        if image != _replications(simplex, alpha, nblocks):
            problems.append("twos->ones image of (D_b)_Y is not a replication of S_r")

        want_odd = 2 ** (2 * r - 2)
        want_two = 2 ** (r - 2) * (2 ** (r - 1) - 1) if r >= 2 else 0
        order4 = [w for w in sorted(code.words()) if s.is_order4(w)]
        counters["order4_codewords"] = len(order4)
        bad = None
        for w in order4:
            quat = s.unpack(w)[1]
            odd = sum(q % 2 for q in quat)
            twos = quat.count(2)
            zeros = quat.count(0)
            view = block_view(s.vector(w), r)
            congruent = len({tuple(x % 2 for x in blk) for blk in view.blocks}) == 1
            if (odd, twos, zeros) != (want_odd, want_two, want_two) or not congruent:
                bad = str(s.vector(w))
                break
        counters.update(odd_per_codeword=want_odd, twos_per_codeword=want_two, zeros_per_codeword=want_two)
        if bad:
            problems.append("order-4 symbol counts")

        verdict = FAILS if problems else HOLDS
        wit = (bad or "; ".join(problems)) if problems else None
    return AuditReport("structure_d", {"r": r}, verdict, witness=wit, counters=counters,
                       elapsed_ms=tm.ms, note="; ".join(problems))


def lambda_mu_solutions(r: int) -> list[tuple[int, int]]:
    """Nonnegative (lambda, mu) with 2^(r-1) lambda + 2^(r-2) mu = 2^(r-2)(2^(r-1)-1)."""
    total = 2 ** (r - 2) * (2 ** (r - 1) - 1)
    a, b = 2 ** (r - 1), 2 ** (r - 2)
    return [(lam, (total - a * lam) // b) for lam in range(total // a + 1) if (total - a * lam) % b == 0]


def _lambda_mu(view) -> tuple[int, int]:
    lam = mu = 0
    for column in zip(*view.blocks):
        if all(y == 2 for y in column):
            lam += 1
        elif 0 in column and 2 in column:
            mu += 1
    return lam, mu


def audit_theorem_3_11(r: int) -> AuditReport:
    """Counting argument for r > 2: every (lambda, mu) has mu odd, which
    clashes with the even |N_{i,j}|; at r = 2 the argument does not apply
    and the actual dual of C* is inspected instead."""
    with _Timer() as tm:
        sols = lambda_mu_solutions(r)
        odd_mu = sum(1 for _, mu in sols if mu % 2)
        counters = {
            "total_twos": 2 ** (r - 2) * (2 ** (r - 1) - 1),
            "solutions": len(sols),
            "odd_mu_solutions": odd_mu,
        }
        wit = None
        if r > 2:
            ok = odd_mu == len(sols) and all(
                2 ** (r - 1) * lam + 2 ** (r - 2) * mu == counters["total_twos"] for lam, mu in sols
            )
            verdict = HOLDS if ok else FAILS
            note = "nonexistence confirmed" if ok else "some solution has even mu"
            if not ok:
                wit = [list(p) for p in sols if p[1] % 2 == 0] or [list(p) for p in sols]
        else:
            dual = build_cstar().dual()
            s = dual.shape
            order4 = [w for w in sorted(dual.words()) if s.is_order4(w)]
            match = odd_n = 0
            for w in order4:
                view = block_view(s.vector(w), 2)
                lam, mu = _lambda_mu(view)
                twos = eta(view, 1) + eta(view, 2)
                if twos == 2 * lam + mu == counters["total_twos"]:
                    match += 1
                if len(n_set(view, 1, 2)) % 2:
                    odd_n += 1
            counters.update(order4_codewords=len(order4), counting_matches=match, odd_N12=odd_n)
            verdict = NOT_APPLICABLE
            note = "no contradiction"
    return AuditReport("thm_3_11", {"r": r}, verdict, witness=wit, counters=counters,
                       elapsed_ms=tm.ms, note=note)


# ---------------------------------------------------------------------------
# uniqueness search for the cyclic 1-perfect code with alpha = 3, beta = 6

_U_SHAPE = Shape(3, 6)
_U_WEIGHT = 8
_U_SIZE = 16


def _cyclic_closure(shape: Shape, start: frozenset[int], gens) -> frozenset[int] | None:
    """sigma-closed span of ``start`` and ``gens``, or None once it grows past
    16 words or picks up a nonzero word of weight other than 8."""
    words = set(start)
    period = math.lcm(shape.alpha or 1, shape.beta or 1)
    todo = [shape.rotate(g, k) for g in gens for k in range(period)]
    for h in todo:
        if h in words:
            continue
        mults = (h, shape.double(h), shape.neg(h))
        new = {shape.add(w, m) for w in words for m in mults} - words
        if len(words) + len(new) > _U_SIZE:
            return None
        if any(shape.weight(v) != _U_WEIGHT for v in new):
            return None
        words |= new
    return frozenset(words)


def _single_spans(lo: int, hi: int) -> list[tuple[int, ...]]:
    s = _U_SHAPE
    out = set()
    for g in range(lo, hi):
        if s.weight(g) != _U_WEIGHT:
            continue
        sp = _cyclic_closure(s, frozenset([0]), [g])
        if sp is not None:
            out.add(tuple(sorted(sp)))
    return sorted(out)


def _pair_spans(small: list[tuple[int, ...]], lo: int, hi: int) -> list[tuple[int, ...]]:
    s = _U_SHAPE
    out = set()
    for i in range(lo, hi):
        a = frozenset(small[i])
        for b in small[i + 1 :]:
            sp = _cyclic_closure(s, a, [w for w in b if w not in a])
            if sp is not None and len(sp) == _U_SIZE:
                out.add(tuple(sorted(sp)))
    return sorted(out)


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    step = max(1, -(-n // parts))
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)]


def _run(fn, jobs, workers):
    if workers <= 1:
        return [fn(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, *zip(*jobs)))


def uniqueness_search(workers: int = 1) -> AuditReport:
    """Find every sigma-closed code in Z2^3 x Z4^6 of size 16, type
    (3, 6; 0, 2; 0) and constant nonzero weight 8, then test its dual.

    Candidates are searched on the dual side: a cyclic 1-perfect code has a
    constant-weight-8 dual, and such a dual is the sum of the cyclic spans
    of at most two of its elements (it is 2-generated as a group). Spans are
    deduplicated by their sorted packed encodings; the candidate space is
    split into contiguous ranges so results do not depend on ``workers``.
    """
    with _Timer() as tm:
        s = _U_SHAPE
        cands = sum(1 for g in range(1, s.size) if s.weight(g) == _U_WEIGHT)
        singles = sorted(set().union(*_run(_single_spans, [(lo, hi) for lo, hi in _chunks(s.size, max(workers, 1) * 4)], workers)))
        full = {sp for sp in singles if len(sp) == _U_SIZE}
        small = [sp for sp in singles if len(sp) < _U_SIZE]
        pairs = _run(_pair_spans, [(small, lo, hi) for lo, hi in _chunks(len(small), max(workers, 1) * 4)], workers)
        spans = sorted(full.union(*pairs))

        h_span = None
        h = cstar_check_matrix()
        sp = _cyclic_closure(s, frozenset([0]), [v.packed for v in h])
        if sp is not None:
            h_span = tuple(sorted(sp))

        survivors, wrong_type, perfect, cstar_type, bad = [], 0, 0, 0, None
        for sp in spans:
            code = Z2Z4Code(3, 6, [s.vector(w) for w in sp if w])
            if code.type.as_tuple() != (3, 6, 0, 2, 0):
                wrong_type += 1
                continue
            survivors.append((sp, code))
            primal = code.dual()
            ok_perfect = is_perfect(primal, "sphere") and is_perfect(primal, "column")
            ok_type = primal.type.as_tuple() == (3, 6, 3, 4, 3)
            perfect += ok_perfect
            cstar_type += ok_type
            if (not ok_perfect or not ok_type) and bad is None:
                bad = [str(v) for v in code.reduced.rows]

        found_h = any(sp == h_span for sp, _ in survivors)
        ok = bool(survivors) and found_h and bad is None
        if ok:
            first = next(code for sp, code in survivors if sp == h_span)
            witness = [str(v) for v in first.reduced.rows]
        else:
            witness = bad or "no survivor matches the closure of H"
        counters = {
            "weight8_vectors": cands,
            "single_spans": len(singles),
            "size16_spans": len(spans),
            "rejected_type": wrong_type,
            "survivors": len(survivors),
            "perfect_duals": perfect,
            "cstar_type_duals": cstar_type,
            "h_closure_found": int(found_h),
        }
    return AuditReport(
        "uniqueness",
        {"alpha": 3, "beta": 6},
        HOLDS if ok else FAILS,
        witness=witness,
        counters=counters,
        elapsed_ms=tm.ms,
        note="search on the dual side (16 codewords) with the constant-weight-8 filter",
    )
