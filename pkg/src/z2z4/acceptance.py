"""The end-to-end acceptance checks, shared by the test suite and ``z2z4 suite``.

Each criterion returns a Criterion with a pass flag and a one-line detail.
Time limits are part of the pass condition.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass

from .algebra import Shape
from .code import Z2Z4Code, dual_type
from .constructions import (
    build_cstar,
    build_perfect,
    extend,
    hamming_cyclic,
    simplex_cyclic,
)
from .verification import (
    HOLDS,
    NOT_APPLICABLE,
    audit_theorem_3_11,
    cyclic_witness,
    exists_cyclic_arrangement,
    gray_linearity_witness,
    is_cyclic,
    perfect_witness,
    sphere_coverage,
    uniqueness_search,
    verify_lemma_3_7,
    verify_prop_3_1,
    verify_structure_D,
)

PAIRS = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5), (3, 6)]


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title} ({self.seconds:.2f} s) {self.detail}"


def closed_form_type(r: int, t: int) -> tuple[int, ...]:
    a = 2**r - 1
    b = 2 ** (t - 1) - 2 ** (r - 1)
    g = 2**r - 1 - 2 * r + t
    d = 2 ** (t - 1) - 2 ** (r - 1) + r - t
    return (a, b, g, d, g)


def closed_form_dual_type(r: int, t: int) -> tuple[int, ...]:
    a = 2**r - 1
    b = 2 ** (t - 1) - 2 ** (r - 1)
    return (a, b, 2 * r - t, t - r, 2 * r - t)


def _timed(number, title, limit, fn) -> Criterion:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not raised, so the suite keeps going
        ok, detail = False, f"error: {exc!r}"
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok, detail = False, f"{detail}; exceeded {limit} s"
    return Criterion(number, title, ok, detail, dt)


def criterion_1() -> Criterion:
    def run():
        c = build_cstar()
        cov = sphere_coverage(c)
        checks = {
            "size": c.size == 2048 and len(c.words()) == 2048,
            "type": c.type.as_tuple() == (3, 6, 3, 4, 3),
            "min_distance": c.min_distance() == 3,
            "sphere": cov.size == 32768 and bool((cov == 1).all()),
            "column": perfect_witness(c, "column") is None,
            "cyclic": is_cyclic(c),
        }
        bad = [k for k, v in checks.items() if not v]
        return not bad, "failed: " + ", ".join(bad) if bad else "2048 words, (3,6;3,4;3), d=3, 32768 covered once"

    return _timed(1, "C* reconstruction", 5.0, run)


def criterion_2() -> Criterion:
    def run():
        d = build_cstar().dual()
        rep = verify_structure_D(2, d)
        c = rep.counters
        checks = {
            "size": d.size == 16,
            "weights": d.weight_distribution() == {0: 1, 8: 15},
            "audit": rep.verdict == HOLDS,
            "x_projection": set(d.puncture_X().words()) == set(simplex_cyclic(2).words()),
            "subcode_b": c.get("subcode_b") == 4,
            "replication": c.get("replication_image") == 4,
            "counts": (c.get("odd_per_codeword"), c.get("twos_per_codeword"), c.get("zeros_per_codeword")) == (4, 1, 1),
            "order4": c.get("order4_codewords") == 12,
        }
        bad = [k for k, v in checks.items() if not v]
        return not bad, "failed: " + ", ".join(bad) if bad else "16 words, {0:1, 8:15}, D_X = S_2, |D_b| = 4, 4/1/1 counts"

    return _timed(2, "Dual structure at r=2", 1.0, run)


def criterion_3() -> Criterion:
    def run():
        c = build_cstar()
        wit = gray_linearity_witness(c)
        image = c.gray_image()
        witness_ok = wit is not None and wit[0].value in image and wit[1].value in image and (wit[0] ^ wit[1]).value not in image
        gray_wd = dict(sorted(Counter(w.bit_count() for w in image).items()))
        ham = hamming_cyclic(4).weight_distribution()
        ok = witness_ok and gray_wd == ham
        detail = f"witness {wit[0]} ^ {wit[1]} outside; WD {gray_wd}" if wit else "no witness"
        return ok, detail

    return _timed(3, "Gray image of C* is nonlinear", None, run)


def criterion_4() -> Criterion:
    def run():
        bad = []
        for r, t in PAIRS:
            code = build_perfect(r, t)
            got = code.type
            if got.as_tuple() != closed_form_type(r, t):
                bad.append(f"type({r},{t})={got}")
            if dual_type(got).as_tuple() != closed_form_dual_type(r, t):
                bad.append(f"dual({r},{t})")
            if code.materialized:
                bad.append(f"({r},{t}) enumerated")
        return not bad, ", ".join(bad) or f"{len(PAIRS)} parameter pairs match, (3,6) without enumeration"

    return _timed(4, "Type formulas", None, run)


def criterion_5() -> Criterion:
    def run():
        reps = [verify_prop_3_1(r, t) for r, t in PAIRS]
        res = exists_cyclic_arrangement(build_perfect(2, 3))
        ok = all(rep.verdict == HOLDS for rep in reps) and res.status == "none" and res.examined == 12
        return ok, f"7/7 pairs consistent; C_2,3: {res.status} after {res.examined} arrangements"

    return _timed(5, "beta multiple of alpha", 1.0, run)


def criterion_6() -> Criterion:
    def run():
        r1 = exists_cyclic_arrangement(extend(build_perfect(2, 3)))
        r2 = exists_cyclic_arrangement(extend(build_cstar()))
        ok = (r1.status, r1.examined, r2.status, r2.examined) == ("none", 48, "none", 17280)
        return ok, f"C'_2,3: {r1.status}/{r1.examined}; C'_2,4: {r2.status}/{r2.examined}"

    return _timed(6, "Extended codes not cyclic", 60.0, run)


def criterion_7() -> Criterion:
    def run():
        ext = extend(hamming_cyclic(3))
        res = exists_cyclic_arrangement(ext)
        ok = ext.shape == Shape(8, 0) and ext.min_distance() == 4 and res.status == "none" and res.examined == 40320
        return ok, f"[8,4,4]: {res.status} after {res.examined} permutations"

    return _timed(7, "Extended Hamming(8) not cyclic", 60.0, run)


def criterion_8() -> Criterion:
    def run():
        bad = []
        for r in (3, 4, 5, 6):
            rep = audit_theorem_3_11(r)
            if rep.verdict != HOLDS or rep.note != "nonexistence confirmed":
                bad.append(f"counting r={r}")
        rep2 = audit_theorem_3_11(2)
        if rep2.verdict != NOT_APPLICABLE or rep2.note != "no contradiction":
            bad.append("counting r=2")
        for r in (3, 4, 5):
            if verify_lemma_3_7(r).verdict != HOLDS:
                bad.append(f"parity r={r}")
        return not bad, ", ".join(bad) or "r=3..6 nonexistence, r=2 no contradiction, simplex parity r=3..5"

    return _timed(8, "Counting audit", None, run)


def criterion_9(workers: int = 2) -> Criterion:
    def run():
        rep = uniqueness_search(workers=1)
        par = uniqueness_search(workers=workers)
        same = json.dumps(rep.to_json(timing=False), sort_keys=True) == json.dumps(par.to_json(timing=False), sort_keys=True)
        c = rep.counters
        ok = (
            rep.verdict == HOLDS
            and c["survivors"] >= 1
            and c["h_closure_found"] == 1
            and c["perfect_duals"] == c["survivors"]
            and c["cstar_type_duals"] == c["survivors"]
            and same
        )
        return ok, f"survivors={c['survivors']}, all perfect of type (3,6;3,4;3), parallel identical={same}"

    return _timed(9, "Uniqueness search at (3,6)", 600.0, run)


def random_code(rng: random.Random, max_alpha: int = 4, max_beta: int = 4) -> Z2Z4Code:
    while True:
        a, b = rng.randint(0, max_alpha), rng.randint(0, max_beta)
        if a + b:
            break
    s = Shape(a, b)
    gens = [s.vector(rng.randrange(s.size)) for _ in range(rng.randint(0, 3))]
    return Z2Z4Code(a, b, gens)


def oracle_mismatches(code: Z2Z4Code) -> list[str]:
    s = code.shape
    bad = []
    words = code.words()
    scan, kern = code.dual("scan"), code.dual("kernel")
    if scan.words() != kern.words():
        bad.append("dual scan != kernel")
    if code.size * scan.size != s.size:
        bad.append("|C||C^perp|")
    for v in range(s.size):
        if code.contains_packed(v, "syndrome") != (v in words):
            bad.append("contains")
            break
    if (cyclic_witness(code, "generators") is None) != (cyclic_witness(code, "all") is None):
        bad.append("is_cyclic")
    if scan.dual("scan").words() != words or kern.dual("kernel").words() != words:
        bad.append("double dual")
    return bad


def criterion_10(n: int = 50, seed: int = 20161) -> Criterion:
    def run():
        rng = random.Random(seed)
        fails = []
        for i in range(n):
            code = random_code(rng)
            bad = oracle_mismatches(code)
            if bad:
                fails.append(f"#{i} {code.generators}: {bad}")
        return not fails, "; ".join(fails[:3]) or f"{n} random codes agree on all four oracles"

    return _timed(10, "Oracle equivalences", None, run)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all(echo=print) -> list[Criterion]:
    results = []
    for fn in CRITERIA:
        res = fn()
        if echo:
            echo(res.line())
        results.append(res)
    return results
