import dataclasses

import pytest

from qalt.bracket import jones
from qalt.construct import braid_closure, pretzel
from qalt.diagram import (connected_sum, mirror, parse_pd, smooth,
                          SmoothingKind)
from qalt.laurent import gap_report
from qalt.qacert import (AdditivityReport, Certifier, PreconditionError,
                         QACertificate, certify, certify_at,
                         connected_sum_split, fast_det, gap_preservation_verify,
                         lemma33_verify, theorem1_verify, verify_certificate)
from qalt.tangle import (enumerate_alternating_tangles, insert, is_twist_tangle,
                         mirror_tangle, tangle_sign, twist_tangle)

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def test_certify_unknot():
    res = certify(parse_pd("O"))
    assert res.certified and res.certificate.kind == "unknot-base"
    assert res.certificate.det == 1


def test_certify_trefoil():
    res = certify(parse_pd(TREFOIL))
    assert res.certified and res.certificate.kind == "alternating-base"
    ok, fails = verify_certificate(res.certificate)
    assert ok, fails


def test_certify_split():
    assert certify(parse_pd("O O")).status == "split"


def test_certify_at_trefoil(trefoil):
    for c in range(3):
        res = certify_at(trefoil, c)
        assert res.certified
        node = res.certificate
        assert node.kind == "smoothing-node"
        assert node.det == 3 and sorted((node.det_zero, node.det_inf)) == [1, 2]
        ok, fails = verify_certificate(node)
        assert ok, fails


def test_certify_at_curl_structural_failure():
    res = certify_at(parse_pd("X[1,1,2,2]"), 0)
    assert res.status == "structural-failure"


def test_certify_at_index_error(trefoil):
    with pytest.raises(IndexError):
        certify_at(trefoil, 9)


def test_certify_nonalternating_corpus(corpus):
    for name in ("8_20", "8_21", "p2_1_m3", "9_47_candidate"):
        d, row = corpus[name]
        res = certify(d, 100_000)
        assert res.certified, (name, res.status, res.reason)
        assert res.certificate.det == row["det"]
        ok, fails = verify_certificate(res.certificate)
        assert ok, (name, fails)


def test_certify_composites(corpus):
    # the bundled composites are drawn alternating, so the alternating rung
    # takes them; a composite with a non-alternating factor needs the
    # connected-sum rung
    for name in ("granny", "square"):
        d, _ = corpus[name]
        res = certify(d)
        assert res.certified
        assert res.certificate.kind == "alternating-base"

    p = corpus["p2_1_m3"][0]
    tref = corpus["trefoil_left"][0]
    composite = connected_sum(p, tref)
    res = certify(composite)
    assert res.certified
    assert res.certificate.kind == "connected-sum-base"
    assert len(res.certificate.factors) == 2
    assert res.certificate.det == 21
    ok, fails = verify_certificate(res.certificate)
    assert ok, fails


def test_connected_sum_split(trefoil):
    granny = connected_sum(trefoil, trefoil)
    split = connected_sum_split(granny)
    assert split is not None
    f1, f2 = split
    assert f1.n == 3 and f2.n == 3
    assert fast_det(f1) == fast_det(f2) == 3
    assert connected_sum_split(trefoil) is None


def test_determinants_decrease_along_paths(corpus):
    d, _ = corpus["8_21"]
    cert = certify(d).certificate
    stack = [(cert, cert.det + 1)]
    while stack:
        node, bound = stack.pop()
        assert node.det <= bound
        if node.kind == "smoothing-node":
            assert node.det_zero < node.det and node.det_inf < node.det
            stack.append((node.child_zero, node.det - 1))
            stack.append((node.child_inf, node.det - 1))
        for f in node.factors:
            stack.append((f, node.det))


def test_verify_rejects_corruption(trefoil):
    cert = certify_at(trefoil, 0).certificate
    bad = dataclasses.replace(cert, det_zero=2, det_inf=1)
    ok, fails = verify_certificate(bad)
    assert not ok and any("root" in f for f in fails)


def test_certificate_serialization_round_trip(corpus):
    d, _ = corpus["8_20"]
    cert = certify(d).certificate
    text = cert.to_json()
    back = QACertificate.from_json(text)
    assert back == cert
    assert verify_certificate(back)[0]


def test_budget_exhaustion(corpus):
    d, _ = corpus["8_21"]
    res = certify(d, budget=2)
    assert res.status == "inconclusive-budget"


def test_memoization_consistency(corpus):
    d, _ = corpus["8_20"]
    eng = Certifier(100_000)
    first = eng.certify(d)
    second = eng.certify(d)
    assert first.certified and second.certified
    assert first.certificate == second.certificate


def test_lemma33_examples(trefoil, corpus):
    t = twist_tangle(2, "vertical", +1)
    rep = lemma33_verify(trefoil, 0, t)
    assert rep.all_hold and rep.det_lprime == rep.x * rep.det_zero + rep.y * rep.det_inf

    single = twist_tangle(1, "vertical", +1)
    rep = lemma33_verify(trefoil, 0, single)
    assert rep.x == 1 and rep.y == 1 and rep.all_hold
    assert rep.det_lprime == rep.det_l

    # the six-crossing pretzel base with a five-crossing non-algebraic tangle
    p = corpus["p2_1_m3"][0]
    c = next(c for c in range(p.n) if certify_at(p, c, 20000).certified)
    five = next(t for t in enumerate_alternating_tangles(5, +1)
                if t.n == 5 and not is_twist_tangle(t))
    rep = lemma33_verify(p, c, five)
    assert rep.all_hold
    assert rep.det_lprime == rep.x * rep.det_zero + rep.y * rep.det_inf


def test_lemma33_precondition(trefoil):
    kink = parse_pd("X[1,1,2,2]")
    with pytest.raises(PreconditionError):
        lemma33_verify(kink, 0, twist_tangle(2, "vertical", +1))


def test_lemma33_report_dict(trefoil):
    rep = lemma33_verify(trefoil, 0, twist_tangle(2, "horizontal", +1))
    payload = rep.to_dict()
    assert payload["all_hold"] and payload["x"] == rep.x


def test_theorem1(trefoil, corpus):
    three = [t for t in enumerate_alternating_tangles(3, +1) if t.n == 3]
    for t in three:
        rep = theorem1_verify(trefoil, 0, t)
        assert rep.all_certified, rep.rows
        for ci, cert in rep.certificates.items():
            assert verify_certificate(cert)[0]

    d820, _ = corpus["8_20"]
    c = next(c for c in range(d820.n) if certify_at(d820, c, 20000).certified)
    four = next(t for t in enumerate_alternating_tangles(4, -1) if t.n == 4)
    rep = theorem1_verify(d820, c, four)
    assert rep.all_certified
    extended = parse_pd(rep.extended_pd)
    assert extended.n == 11
    assert certify(extended).certified


def test_theorem1_single_crossing_reduces_to_certify_at(trefoil):
    single = twist_tangle(1, "vertical", +1)
    rep = theorem1_verify(trefoil, 0, single)
    assert len(rep.rows) == 1 and rep.all_certified
    direct = certify_at(trefoil, 0)
    assert rep.certificates[rep.rows[0].crossing].det == direct.certificate.det


def test_gap_preservation(trefoil, corpus):
    # gap-free bases stay gap-free under extension
    for base_name in ("figure8", "5_2"):
        d, _ = corpus[base_name]
        c = next(c for c in range(d.n) if certify_at(d, c, 20000).certified)
        assert gap_report(jones(d)).no_gap
        for t in enumerate_alternating_tangles(3, +1):
            rep = gap_preservation_verify(d, c, t)
            assert rep.passed and rep.extended_no_gap

    # a gapped base never grows its largest gap
    granny, _ = corpus["granny"]
    base_gap = gap_report(jones(granny)).max_gap
    assert base_gap > 2
    c = next(c for c in range(granny.n) if certify_at(granny, c, 20000).certified)
    for t in enumerate_alternating_tangles(3, +1):
        rep = gap_preservation_verify(granny, c, t)
        assert rep.passed and rep.extended_max_gap <= base_gap


def test_fast_det_matches_jones(corpus):
    for name, (d, row) in corpus.items():
        assert fast_det(d) == row["det"]
