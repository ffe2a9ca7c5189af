"""Acceptance suite: one test per criterion, each printing a pass/fail line
and enforcing its stated exactness and time budget.

Criterion 7a (the two-or-six degree-offset claim) is implemented exactly as
stated and is expected to fail: generated clasp-cascade tangles violate it
(see the decisions ledger); the downstream gap bounds of criterion 7b and
criterion 8 hold regardless.
"""

import time

import pytest

from qalt.bracket import (DELTA, jones, kauffman_bracket,
                          kauffman_bracket_skein, span)
from qalt.cli import main as cli_main
from qalt.diagram import (LinkDiagram, SmoothingKind, is_alternating,
                          is_nugatory, parse_pd, smooth)
from qalt.laurent import LaurentPoly, gap_report, is_alternating_poly
from qalt.qacert import (Certifier, certify_at, fast_det, gap_preservation_verify,
                         lemma33_verify, theorem1_verify, verify_certificate)
from qalt.taitgraph import build_tait, det_from_laplacian, det_from_trees
from qalt.tangle import (CrossingClass, bracket_decompose, classify_crossing,
                         enumerate_alternating_tangles, insert, is_twist_tangle,
                         lemma43_check, prop41_check, twist_tangle)


def report(criterion: str, passed: bool, detail: str = "") -> None:
    flag = "PASS" if passed else "FAIL"
    print(f"ACCEPTANCE {criterion}: {flag}  {detail}")


@pytest.fixture(scope="module")
def suite_bases(corpus):
    """(diagram, searched QA crossing) for the lemma/theorem product set."""
    eng = Certifier(10 ** 6)
    out = {}
    for name in ("trefoil_left", "p2_1_m3", "8_21"):
        d, _ = corpus[name]
        crossing = next(c for c in range(d.n) if eng.certify_at(d, c).certified)
        out[name] = (d, crossing)
    return out


@pytest.fixture(scope="module")
def tangles5():
    return (enumerate_alternating_tangles(5, +1)
            + enumerate_alternating_tangles(5, -1))


def test_criterion_1_bracket_axioms(corpus):
    t0 = time.time()
    ok = kauffman_bracket(parse_pd("O")) == LaurentPoly.one()
    for name, (d, _) in corpus.items():
        with_loop = LinkDiagram(d.crossings, d.free_loops + 1)
        ok &= kauffman_bracket(with_loop) == kauffman_bracket(d) * DELTA
        b = kauffman_bracket(d)
        for c in range(d.n):
            zero = kauffman_bracket(smooth(d, c, SmoothingKind.ZERO))
            inf = kauffman_bracket(smooth(d, c, SmoothingKind.INFINITY))
            ok &= b == zero.shift(1) + inf.shift(-1)
    elapsed = time.time() - t0
    report("1 bracket axioms + skein relation", ok and elapsed < 10,
           f"{elapsed:.1f}s")
    assert ok and elapsed < 10


def test_criterion_2_triple_determinant(corpus):
    t0 = time.time()
    ok = True
    for name, (d, _) in corpus.items():
        if d.n > 14 or d.n == 0:
            continue
        det_v = jones(d).determinant()
        for shading in (0, 1):
            g = build_tait(d, shading)
            ok &= det_from_trees(g) == det_v == det_from_laplacian(g)
    elapsed = time.time() - t0
    report("2 triple determinant agreement", ok and elapsed < 30,
           f"{elapsed:.1f}s")
    assert ok and elapsed < 30


def test_criterion_3_alternating_baseline(corpus):
    t0 = time.time()
    ok = True
    for name, (d, row) in corpus.items():
        if not row["alternating"] or not row["prime"] or d.n == 0:
            continue
        if any(is_nugatory(d, c) for c in range(d.n)):
            continue
        v = jones(d)
        ok &= is_alternating_poly(v.poly, 2)
        ok &= v.span() == d.n
        if not row["torus2"]:
            ok &= gap_report(v).no_gap
    elapsed = time.time() - t0
    report("3 alternating baseline (signs, span, gaps)", ok and elapsed < 10,
           f"{elapsed:.1f}s")
    assert ok and elapsed < 10


def test_criterion_4_certification(corpus):
    t0 = time.time()
    ok = True
    targets = ["unknot", "8_20", "8_21"]
    targets += [name for name, (_, row) in corpus.items() if row["alternating"]]
    for name in targets:
        d, _ = corpus[name]
        res = Certifier(100_000).certify(d)
        good = res.certified and verify_certificate(res.certificate)[0]
        if not good:
            print(f"  criterion 4: {name} -> {res.status}")
        ok &= good
    elapsed = time.time() - t0
    report("4 quasi-alternating certification", ok and elapsed < 60,
           f"{len(targets)} diagrams, {elapsed:.1f}s")
    assert ok and elapsed < 60


def test_criterion_5_lemma33_suite(suite_bases, tangles5):
    t0 = time.time()
    ok = True
    checked = 0
    for name, (d, c) in suite_bases.items():
        for t in tangles5:
            rep = lemma33_verify(d, c, t)
            checked += 1
            if not rep.all_hold:
                print(f"  criterion 5 failure: {name} + {t}")
                ok = False
    elapsed = time.time() - t0
    report("5 determinant additivity + tree model", ok and elapsed < 300,
           f"{checked} pairs, {elapsed:.1f}s")
    assert ok and elapsed < 300


def test_criterion_6_theorem1_suite(suite_bases, tangles5):
    t0 = time.time()
    eng = Certifier(10 ** 7)
    ok = True
    structural = []
    checked = 0
    for name, (d, c) in suite_bases.items():
        for t in tangles5:
            rep = theorem1_verify(d, c, t, certifier=eng)
            checked += 1
            if not rep.all_certified:
                ok = False
                if rep.structural_failures:
                    structural.append((name, t))
    elapsed = time.time() - t0
    report("6 extension certified at every tangle crossing", ok and elapsed < 900,
           f"{checked} extensions, {elapsed:.1f}s")
    assert not structural, "structural failures contradict the extension theorem"
    assert ok and elapsed < 900


def test_criterion_7a_degree_offsets():
    t0 = time.time()
    violations = []
    checked = 0
    for sign in (+1, -1):
        for t in enumerate_alternating_tangles(6, sign):
            if is_twist_tangle(t):
                continue
            for c in range(t.n):
                if classify_crossing(t, c) is not CrossingClass.NONTRIVIAL:
                    continue
                rep = prop41_check(t, c)
                checked += 1
                if not rep.passed:
                    violations.append((t, c, rep.offsets))
    elapsed = time.time() - t0
    ok = not violations
    report("7a smoothing degree offsets in {2,6}", ok,
           f"{checked} crossings, {len(violations)} outside, {elapsed:.1f}s; "
           "clasp cascades shift offsets by extra multiples of four "
           "(see decisions ledger)")
    assert ok and elapsed < 300, (
        f"{len(violations)} of {checked} nontrivial crossings have offsets "
        f"outside {{2,6}}, e.g. {violations[0][2]}; the stated two-or-six "
        "claim fails for clasp-cascade tangles"
    )


def test_criterion_7b_pair_structure_and_twists():
    t0 = time.time()
    ok = True
    for t in enumerate_alternating_tangles(6, +1):
        if not lemma43_check(t).passed:
            print(f"  criterion 7b failure: {t}")
            ok = False
    for n in range(1, 11):
        for direction in ("vertical", "horizontal"):
            pair = bracket_decompose(twist_tangle(n, direction, +1))
            if direction == "vertical":
                f = LaurentPoly.monomial(n - 1)
                g = LaurentPoly({(n - 1) - 4 * k: (-1) ** k for k in range(n)})
            else:
                g = LaurentPoly.monomial(-n + 1)
                f = LaurentPoly({(-n + 1) + 4 * k: (-1) ** k for k in range(n)})
            ok &= pair.f == f and pair.g == g
    elapsed = time.time() - t0
    report("7b alternating pair structure + twist closed forms",
           ok and elapsed < 300, f"{elapsed:.1f}s")
    assert ok and elapsed < 300


def test_criterion_8_gap_preservation(corpus, suite_bases, tangles5):
    t0 = time.time()
    ok = True
    checked = 0
    for name, (d, c) in suite_bases.items():
        base_rep = gap_report(jones(d))
        for t in tangles5:
            rep = gap_preservation_verify(d, c, t)
            checked += 1
            ok &= rep.passed
            if base_rep.no_gap:
                ok &= rep.extended_no_gap
    # constructed gapped bases: the largest gap never grows
    for name in ("trefoil_left", "granny"):
        d, _ = corpus[name]
        base_gap = gap_report(jones(d)).max_gap
        assert base_gap > 2
        c = next(c for c in range(d.n) if certify_at(d, c, 50_000).certified)
        for t in enumerate_alternating_tangles(4, +1):
            rep = gap_preservation_verify(d, c, t)
            checked += 1
            ok &= rep.extended_max_gap <= base_gap
    elapsed = time.time() - t0
    report("8 Jones gap preservation", ok and elapsed < 300,
           f"{checked} extensions, {elapsed:.1f}s")
    assert ok and elapsed < 300


def test_criterion_9_extension_reproduction(corpus, corpus_dir, tmp_path, monkeypatch):
    # census name matching is out of scope; the CLI extension of 8_21 with
    # the bundled six-crossing sample tangles yields 13-crossing diagrams
    # that pass the additivity, certification, and gap suites
    t0 = time.time()
    monkeypatch.chdir(tmp_path)
    d821, _ = corpus["8_21"]
    c = next(c for c in range(d821.n) if certify_at(d821, c, 50_000).certified)
    ok = True
    eng = Certifier(10 ** 7)
    samples = sorted((corpus_dir / "tangles").glob("sample_6c_*.tangle"))
    assert samples
    for i, sample in enumerate(samples):
        out = tmp_path / f"ext_{i}.pd"
        code = cli_main(["extend", str(corpus_dir / "8_21.pd"), str(sample),
                         "--crossing", str(c), "--out", str(out)])
        ok &= code == 0
        extended = parse_pd(out.read_text())
        ok &= extended.n == 13
        from qalt.tangle import parse_tangle
        t = parse_tangle(sample.read_text())
        ok &= lemma33_verify(d821, c, t).all_hold
        ok &= theorem1_verify(d821, c, t, certifier=eng).all_certified
        ok &= gap_preservation_verify(d821, c, t).passed
    elapsed = time.time() - t0
    report("9 property-based table substitute", ok, f"{len(samples)} "
           f"extensions to 13 crossings, {elapsed:.1f}s")
    assert ok
