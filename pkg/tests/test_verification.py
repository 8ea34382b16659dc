import json
import random
from itertools import permutations

import pytest

import reference as ref
from z2z4 import MixedVector, Shape, Z2Z4Code
from z2z4.constructions import build_cstar, build_perfect, extend, hamming_cyclic, simplex_cyclic
from z2z4.verification import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    Arrangement,
    AuditReport,
    audit_theorem_3_11,
    check_columns,
    cyclic_witness,
    exists_cyclic_arrangement,
    gray_image_linear,
    gray_linearity_witness,
    is_cyclic,
    is_perfect,
    lambda_mu_solutions,
    perfect_witness,
    sphere_coverage,
    verify_lemma_3_7,
    verify_prop_3_1,
    verify_structure_D,
)

V = MixedVector.parse


# -- cyclicity -----------------------------------------------------------------


def test_is_cyclic_examples(cstar, cstar_dual):
    assert is_cyclic(cstar) and is_cyclic(cstar_dual)
    assert is_cyclic(Z2Z4Code(3, 6, [V("100|200000").sigma(k) for k in range(6)]))
    # a single non-symmetric word is not closed under the shift
    code = Z2Z4Code(2, 2, [V("10|10")])
    assert not is_cyclic(code)
    wit = cyclic_witness(code)
    assert wit is not None and not code.contains(wit.sigma())


def test_cyclic_methods_agree_random():
    rng = random.Random(11)
    for _ in range(60):
        a, b = rng.randint(0, 3), rng.randint(1, 4)
        s = Shape(a, b)
        code = Z2Z4Code(a, b, [s.vector(rng.randrange(s.size)) for _ in range(rng.randint(0, 3))])
        closed = all(ref.sym(w.sigma()) in {ref.sym(u) for u in code.codewords()} for w in code.codewords())
        assert is_cyclic(code, "generators") == is_cyclic(code, "all") == closed


def test_arrangement_recovers_shuffled_cstar(cstar):
    arr = Arrangement((2, 0, 1), (4, 1, 5, 0, 3, 2))
    mixed = cstar.permuted(arr)
    assert not is_cyclic(mixed)
    res = exists_cyclic_arrangement(mixed)
    assert res.status == "found" and res.arrangement is not None
    assert is_cyclic(mixed.permuted(res.arrangement))
    assert 1 <= res.examined <= res.total == 6 * 720


def test_arrangement_identity_first(cstar):
    res = exists_cyclic_arrangement(cstar)
    assert res.status == "found" and res.examined == 1
    assert res.arrangement == Arrangement.identity(3, 6)


def test_arrangement_none_counts():
    res = exists_cyclic_arrangement(build_perfect(2, 3))
    assert (res.status, res.examined, res.total) == ("none", 12, 12)
    res = exists_cyclic_arrangement(extend(build_perfect(2, 3)))
    assert (res.status, res.examined) == ("none", 48)


def test_arrangement_budget_inconclusive():
    res = exists_cyclic_arrangement(extend(build_cstar()), budget=100)
    assert res.status == "inconclusive" and res.examined == 100 and res.total == 17280


def test_arrangement_parallel_matches_serial(cstar):
    mixed = cstar.permuted(Arrangement((1, 2, 0), (5, 4, 3, 2, 1, 0)))
    one = exists_cyclic_arrangement(mixed, workers=1)
    two = exists_cyclic_arrangement(mixed, workers=2)
    assert one == two


def test_arrangement_exhaustive_matches_brute_force():
    # small code: compare against direct closure checks of every arrangement
    code = Z2Z4Code(2, 3, [V("10|120"), V("01|002")])
    res = exists_cyclic_arrangement(code)
    first = None
    for k, (px, py) in enumerate((px, py) for px in permutations(range(2)) for py in permutations(range(3))):
        if is_cyclic(code.permuted(Arrangement(px, py)), "all"):
            first = k
            break
    if first is None:
        assert res.status == "none"
    else:
        assert res.status == "found" and res.examined == first + 1


def test_arrangement_json_is_one_indexed():
    assert Arrangement((1, 0), (0, 2, 1)).to_json() == {"pi_X": [2, 1], "pi_Y": [1, 3, 2]}
    with pytest.raises(ValueError):
        Arrangement((0, 0), ())


# -- perfectness -----------------------------------------------------------------


def test_is_perfect_examples(cstar):
    assert is_perfect(cstar)
    cov = sphere_coverage(cstar)
    assert cov.size == 2**15 and (cov == 1).all()
    assert not is_perfect(Z2Z4Code.full_space(3, 6))
    assert not is_perfect(simplex_cyclic(3))


@pytest.mark.parametrize(
    "code", [build_cstar(), build_perfect(2, 3), build_perfect(2, 2), hamming_cyclic(2), hamming_cyclic(3), hamming_cyclic(4)],
    ids=["cstar", "C23", "C22", "ham2", "ham3", "ham4"],
)
def test_perfect_methods_agree(code):
    assert perfect_witness(code, "sphere") is None
    assert perfect_witness(code, "column") is None
    assert is_perfect(code, "auto")


def test_perfect_methods_agree_on_non_perfect():
    rng = random.Random(5)
    for _ in range(40):
        a, b = rng.randint(0, 3), rng.randint(1, 3)
        s = Shape(a, b)
        code = Z2Z4Code(a, b, [s.vector(rng.randrange(s.size)) for _ in range(rng.randint(0, 4))])
        assert (perfect_witness(code, "sphere") is None) == (perfect_witness(code, "column") is None)


def test_check_columns_of_cstar(cstar):
    cols = check_columns(cstar)
    assert len(cols) == 9
    assert len(set(cols)) == 9


# -- Gray linearity --------------------------------------------------------------


def test_gray_linear_examples(cstar, cstar_dual):
    assert not gray_image_linear(cstar)
    a, b = gray_linearity_witness(cstar)
    image = cstar.gray_image()
    assert a.value in image and b.value in image and (a ^ b).value not in image
    assert gray_image_linear(hamming_cyclic(3))
    assert gray_image_linear(Z2Z4Code(0, 1, [V("|2")]))


def test_gray_shortcut_matches_closure():
    rng = random.Random(2)
    for _ in range(60):
        a, b = rng.randint(0, 3), rng.randint(1, 4)
        s = Shape(a, b)
        code = Z2Z4Code(a, b, [s.vector(rng.randrange(s.size)) for _ in range(rng.randint(0, 3))])
        image = code.gray_image()
        closed = all((x ^ y) in image for x in image for y in image)
        assert gray_image_linear(code, "generators") == gray_image_linear(code, "all") == closed


# -- audits ------------------------------------------------------------------------


@pytest.mark.parametrize("r,t,rem,excluded", [(2, 3, 2, 1), (2, 4, 0, 0), (3, 5, 5, 1), (3, 3, 0, 0), (3, 6, 0, 0)])
def test_multiple_audit(r, t, rem, excluded):
    rep = verify_prop_3_1(r, t)
    assert rep.verdict == HOLDS
    assert rep.counters["rem"] == rem and rep.counters["cyclic_excluded"] == excluded


def test_simplex_parity_audit():
    rep2 = verify_lemma_3_7(2)
    assert rep2.verdict == NOT_APPLICABLE and rep2.counters["odd_pairs"] > 0
    assert rep2.witness is not None
    for r, inter in [(3, 2), (4, 4), (5, 8)]:
        rep = verify_lemma_3_7(r)
        assert rep.verdict == HOLDS
        assert rep.counters["odd_pairs"] == 0
        assert rep.counters["supp_intersection"] == inter
        assert rep.counters["pairs"] == 4**r


def test_structure_audit(cstar_dual):
    rep = verify_structure_D(2, cstar_dual)
    assert rep.verdict == HOLDS
    c = rep.counters
    assert (c["subcode_b"], c["replication_image"], c["order4_codewords"]) == (4, 4, 12)
    assert (c["odd_per_codeword"], c["twos_per_codeword"], c["zeros_per_codeword"]) == (4, 1, 1)
    assert verify_structure_D(3).verdict == NOT_APPLICABLE


def test_counting_audit():
    assert lambda_mu_solutions(3) == [(0, 3), (1, 1)]
    assert lambda_mu_solutions(4) == [(0, 7), (1, 5), (2, 3), (3, 1)]
    for r in (3, 4, 5, 6):
        rep = audit_theorem_3_11(r)
        assert rep.verdict == HOLDS and rep.note == "nonexistence confirmed"
        assert rep.counters["odd_mu_solutions"] == rep.counters["solutions"]
    rep = audit_theorem_3_11(2)
    assert rep.verdict == NOT_APPLICABLE and rep.note == "no contradiction"
    assert rep.counters["order4_codewords"] == 12


def test_report_json_fields():
    rep = verify_prop_3_1(2, 3)
    out = rep.to_json()
    assert {"claim", "params", "verdict", "witness", "counters", "elapsed_ms"} <= set(out)
    assert "elapsed_ms" not in rep.to_json(timing=False)
    json.dumps(out)
    with pytest.raises(ValueError):
        AuditReport("x", {}, FAILS)
