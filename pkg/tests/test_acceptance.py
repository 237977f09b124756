"""Acceptance checklist: twelve end-to-end claims at full stated scale.

One test per claim, so `pytest tests/test_acceptance.py -v` reads as one
pass/fail line per criterion. Each test also prints a short verdict line
(visible with -s or -rA). These run only public entry points; the unit
suites own the fine-grained edge cases.

Some tests are deliberately heavy (hundreds of seeded graphs, a hundred
n=1600 extractions); the whole file stays inside the stated runtime
budgets on the compiled kernels.
"""

import math
import time
from fractions import Fraction

import pytest

from conftest import complete_graph, cycle_graph
from halllab.bounds import (hb_independence_probability,
                            union_bound_threshold, weight_lemma_bound)
from halllab.errors import ExtractionError, GraphError
from halllab.experiments import run_sample_hb
from halllab.extraction import (certify_sample, extract_semiregular,
                                theorem1_parameters, theorem1_pipeline)
from halllab.fractional import chi_f_exact, chi_f_lower_from_weights
from halllab.generators import (gnp, join_of_copies, kneser, one_subdivision,
                                random_semiregular, sample_hb, sample_layered)
from halllab.graph import average_degree
from halllab.invariants import greedy_cover_coloring, hall_ratio, turan_bound
from halllab.reports import canonical, dumps_report
from halllab.rng import Seed
from halllab.subdivision import find_subdivision, verify_witness
from oracles import hb_independence_by_walking


def verdict(num, text):
    print(f"criterion {num:02d}: PASS ({text})")


def test_criterion_01_kneser_chi_f_values():
    cases = (((5, 2), Fraction(5, 2)),
             ((6, 2), Fraction(3)),
             ((7, 3), Fraction(7, 3)))
    for (ground, subset), expected in cases:
        started = time.perf_counter()
        cert = chi_f_exact(kneser(ground, subset))
        elapsed = time.perf_counter() - started
        assert cert.value == expected
        assert elapsed < 60
    verdict(1, "chi_f of K_5:2, K_6:2, K_7:3 exact, each under 60 s")


def test_criterion_02_hall_ratio_meets_chi_f_on_petersen():
    petersen = kneser(5, 2)
    rho = hall_ratio(petersen)
    assert rho.exact
    assert rho.value == chi_f_exact(petersen).value == Fraction(5, 2)
    verdict(2, "rho(K_5:2) = chi_f(K_5:2) = 5/2")


def test_criterion_03_join_scales_both_invariants():
    checks = 0
    for i in range(100):
        n = 4 + i % 5
        g = gnp(n, "1/2", Seed(3000 + i))
        base_chi = chi_f_exact(g).value
        base_rho = hall_ratio(g).value
        for k in (2, 3):
            gk = join_of_copies(g, k)
            assert chi_f_exact(gk).value == k * base_chi, (i, k)
            scaled = hall_ratio(gk)
            assert scaled.exact
            assert scaled.value == k * base_rho, (i, k)
            checks += 2
    assert checks == 400
    verdict(3, "100 seeded graphs, k in {2,3}, zero failures")


def test_criterion_04_average_degree_dominates_turan_bound():
    for i in range(1000):
        n = 1 + i % 14
        p = ("1/4", "1/2", "3/4")[i % 3]
        g = gnp(n, p, Seed(4000 + i))
        assert average_degree(g) >= turan_bound(g), i
    verdict(4, "1000 random graphs with n <= 14, zero violations")


def _hb_corpus():
    # every shape keeps C(a,2)^(q*b) configurations within the 3^12 cap
    shapes = ((3, 3, 1), (3, 3, 2), (3, 3, 3), (3, 3, 4),
              (4, 3, 1), (4, 3, 2), (5, 3, 1), (5, 3, 2),
              (6, 3, 1), (6, 3, 2), (7, 3, 1), (8, 3, 1),
              (4, 4, 1), (5, 4, 1), (6, 4, 1), (7, 4, 1),
              (5, 5, 1), (4, 2, 2), (5, 2, 1), (6, 2, 3))
    instances = []
    for idx, (b, a, q) in enumerate(shapes):
        pair = random_semiregular(b, a, q, Seed(5000 + idx))
        assert math.comb(a, 2) ** (q * b) <= 3 ** 12
        zs = [tuple(pair.side_b)]
        rng = Seed(5100 + idx).rng()
        sub = rng.choice(pair.side_b, size=b - 1, replace=False)
        zs.append(tuple(sorted(int(v) for v in sub)))
        instances.extend((pair, z) for z in zs)
    return instances


def test_criterion_05_hb_law_exact_and_below_weight_bound():
    corpus = _hb_corpus()
    assert len(corpus) >= 20
    bound_checks = 0
    for pair, z in corpus:
        exact = hb_independence_probability(pair, z)
        assert exact == hb_independence_by_walking(pair, z)
        n = len(pair.side_b)
        zset = set(z)
        degz = sum(len(pair.graph.adj[v] & zset) for v in pair.side_a)
        if degz > pair.q * n:
            wb = weight_lemma_bound(pair.a, pair.q, n, degz)
            assert float(exact) <= wb.bound.to_float() * (1 + 1e-9)
            bound_checks += 1
    assert bound_checks >= 20
    verdict(5, f"{len(corpus)} instances enumerate exactly; "
               f"{bound_checks} dominated by the weight bound")


def test_criterion_06_desk_scale_certification():
    started = time.perf_counter()
    params = theorem1_parameters(2)
    assert (params["a"], params["q"]) == (4, 16)
    pair = random_semiregular(8, 4, 16, Seed(60))
    assert len(pair.side_a) == 128 and len(pair.side_b) == 8
    weights = [Fraction(w) for w in pair.degree_weights_b()]
    threshold = (4 * 4 + 16) * 8
    assert threshold == 256
    certified = 0
    for t in range(200):
        hb = sample_hb(pair, Seed(61).child(t))
        rec = certify_sample(pair, hb)
        lower = chi_f_lower_from_weights(hb, weights)
        assert lower == rec["chi_f_lower"]
        if rec["certified"]:
            assert rec["alpha_w"] < threshold
            assert lower > 2
            certified += 1
        else:
            assert rec["alpha_w"] >= threshold
    assert certified >= 1
    assert 2 * certified > 200
    assert time.perf_counter() - started < 300
    verdict(6, f"{certified}/200 samples certify chi_f > 2")


def test_criterion_07_extraction_pipeline_at_n_1600():
    started = time.perf_counter()
    successes = 0
    for s in range(100):
        g = gnp(1600, "1/2", Seed(7000 + s))
        try:
            pair, _ = extract_semiregular(g, 20, 1, Seed(7500 + s), 64)
        except ExtractionError:
            continue
        assert len(pair.side_a) == 1 * len(pair.side_b)
        assert all(pair.graph.degree(v) == 20 for v in pair.side_a)
        successes += 1
    elapsed = time.perf_counter() - started
    assert successes >= 95
    assert elapsed < 300
    verdict(7, f"{successes}/100 seeds succeed in {elapsed:.0f} s")


def test_criterion_08_layered_size_law():
    layered = sample_layered(2 ** 16, 2, Seed(80))
    assert [len(layer) for layer in layered.layers] == [32768, 4096]
    assert layered.graph.m == 131072
    spans = []
    offset = layered.n
    for layer in layered.layers:
        spans.append((offset, offset + len(layer)))
        offset += len(layer)
    for v in layered.side_a:
        nbrs = sorted(int(u) for u in layered.graph.neighbors(v))
        assert len(nbrs) == 2
        for (lo, hi), u in zip(spans, nbrs):
            assert lo <= u < hi
    with pytest.raises(GraphError):
        sample_layered(100, 2, Seed(81))
    verdict(8, "|B_1| = 32768, |B_2| = 4096, |E| = 131072, "
               "one neighbor per layer; n = 100 rejected")


def test_criterion_09_union_bound_threshold_search():
    candidates = [b ** 16 for b in (16, 32, 64)]
    rep = union_bound_threshold(2, candidates)
    assert [row["n"] for row in rep.rows] == candidates
    assert rep.minimal_passing == 32 ** 16
    row = next(r for r in rep.rows if r["n"] == rep.minimal_passing)
    half = math.log(Fraction(1, 2))
    assert row["passes"]
    assert row["branch_log"] < half and row["subdivision_log"] < half
    assert rep.monotone_nonincreasing
    verdict(9, "minimal passing candidate 32^16, sums monotone in n")


def test_criterion_10_subdivision_round_trip(corpus8):
    assert len(corpus8) == 30
    for name, g in corpus8:
        host, _ = one_subdivision(g)
        res = find_subdivision(host, g)
        assert res.witness is not None, name
        assert verify_witness(res.witness).ok, name
    none_case = find_subdivision(cycle_graph(8), complete_graph(3))
    assert none_case.witness is None and none_case.completed
    verdict(10, "30 round trips verified; C_8 vs K_3 is a definite no")


def test_criterion_11_greedy_cover_class_count(corpus8):
    for name, g in corpus8:
        rho = hall_ratio(g)
        assert rho.exact
        classes = greedy_cover_coloring(g)
        limit = math.ceil(rho.value * math.log(g.n)) + 1
        assert len(classes) <= limit, name
    verdict(11, "class count <= ceil(rho ln n) + 1 on all 30 graphs")


def test_criterion_12_seeded_reruns_byte_identical():
    g = gnp(600, "1/2", Seed(4))
    thm_runs = [dumps_report(canonical(
                    {"trials": theorem1_pipeline(g, 1, Seed(9), 4)["trials"]}))
                for _ in range(2)]
    assert thm_runs[0] == thm_runs[1]
    hb_runs = []
    for _ in range(2):
        rep, _, _, _ = run_sample_hb(8, 4, 16, 5, Seed(3), ["acceptance"])
        hb_runs.append(dumps_report(canonical({"trials": rep.trials})))
    assert hb_runs[0] == hb_runs[1]
    verdict(12, "thm1 and sample-hb per-trial records repeat byte for byte")
