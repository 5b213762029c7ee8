"""Acceptance gate: one test per criterion, each at its stated scale and tolerance."""

import json
import random
import time
from fractions import Fraction
from pathlib import Path

from goodsets import (PointSet, decompose_weak_loop, enumerate_extreme_points, enumerate_loops,
                      extend_from_maximal_good, is_full, is_good, loop_coefficients, maximal_good_subset,
                      uperp_dimension, uperp_fundamental_basis)
from goodsets.components import (check_union_maximal_good, max_pointwise_agreement, quotient,
                                 related_components, relatively_full_components)
from goodsets.generate import GeneratorSpec, generate
from goodsets.linalg import rank
from goodsets.loops import support_kernel_dim
from goodsets.measures import has_vanishing_marginals
from goodsets.polytope import loop_measure_set, measure_key
from goodsets.structure import random_good_function

from conftest import ACCEPTANCE_NOTES, TWO_BLOCKS

FINDINGS = Path(__file__).resolve().parent.parent / ".findings"


def _note(name, text):
    ACCEPTANCE_NOTES[name] = text


def _random_set(rng, n, size, alphabet=3):
    size = min(size, alphabet ** n)
    return generate(GeneratorSpec("random", n, size, budgets=(alphabet,) * n, seed=rng.randrange(2**32)))


def _orders(rng, S, k=3):
    out = [list(range(len(S)))]
    while len(out) < k:
        order = list(range(len(S)))
        rng.shuffle(order)
        out.append(order)
    return out


def test_criterion_1_single_related_component_for_full_sets():
    start = time.perf_counter()
    for seed in range(200):
        n = (2, 3, 4)[seed % 3]
        size = 1 + seed % 12
        S = generate(GeneratorSpec("full", n, size, seed=seed))
        assert is_full(S)
        assert len(related_components(S, "oracle", fallback=False)) == 1, S.to_document()
    elapsed = time.perf_counter() - start
    _note("test_criterion_1_single_related_component_for_full_sets", f"200 sets, {elapsed:.1f}s")
    assert elapsed < 120


def test_criterion_2_quotient_detects_fullness():
    rng = random.Random(2)
    full_count = 0
    for seed in range(200):
        n = 2 + seed % 3
        if seed % 2:
            S = generate(GeneratorSpec("full", n, 2 + seed % 9, seed=seed))
        else:
            S = generate(GeneratorSpec("good", n, 2 + seed % 6, budgets=(4,) * n, seed=seed))
        assert is_good(S)
        full_count += is_full(S)
        comps = related_components(S, fallback=False)
        for _ in range(3):
            q = quotient(S, components=comps, rng=rng)
            assert is_full(q.image) == is_full(S), S.to_document()
    _note("test_criterion_2_quotient_detects_fullness", f"200 sets, {full_count} full")
    assert 0 < full_count < 200


def test_criterion_3_loop_certificates():
    rng = random.Random(3)
    total = 0
    for _ in range(100):
        n = rng.choice((2, 3))
        S = _random_set(rng, n, rng.randint(4, 10))
        for cert in enumerate_loops(S):
            cert.validate()
            sub = cert.as_pointset()
            assert support_kernel_dim(S, [S.index(p) for p in cert.points]) == 1
            assert all(is_good(sub.take(j for j in range(len(sub)) if j != i)) for i in range(len(sub)))
            assert loop_coefficients(sub).key() == cert.key()
            total += 1
    _note("test_criterion_3_loop_certificates", f"{total} loops certified")
    assert total > 0


def test_criterion_4_extreme_points_are_loop_measures():
    rng = random.Random(4)
    start = time.perf_counter()
    good_cases = 0
    for k in range(100):
        n = rng.choice((2, 3))
        S = _random_set(rng, n, rng.randint(1, 8), alphabet=3 if n == 2 else 2)
        if k < 5:
            S = generate(GeneratorSpec("full", n, 1 + k, seed=k))
        extreme = {measure_key(m) for m in enumerate_extreme_points(S)}
        assert extreme == loop_measure_set(S, enumerate_loops(S)), S.to_document()
        if uperp_dimension(S) == 0:
            good_cases += 1
            assert extreme == {(Fraction(0),) * len(S)}
    elapsed = time.perf_counter() - start
    _note("test_criterion_4_extreme_points_are_loop_measures",
          f"100 sets, {good_cases} with A={{0}}, {elapsed:.1f}s")
    assert good_cases > 0
    assert elapsed < 300


def test_criterion_5_conformal_decomposition():
    rng = random.Random(5)
    done = 0
    pivots = []
    while done < 200:
        S = _random_set(rng, rng.choice((2, 3)), rng.randint(4, 9))
        basis = uperp_fundamental_basis(S)
        if not basis:
            continue
        m = sum((Fraction(rng.randint(-6, 6), rng.randint(1, 5)) * mu for mu in basis[1:]),
                Fraction(rng.randint(1, 6), rng.randint(1, 5)) * basis[0])
        if m.is_zero():
            continue
        dec = decompose_weak_loop(m)
        assert dec.recombine(S) == m
        assert sum(t.norm for t in dec.terms) == m.norm == dec.norm
        for t in dec.terms:
            assert all(v * m[p] > 0 for p, v in t.vector().items())
        pivots.append(dec.pivots)
        done += 1
    _note("test_criterion_5_conformal_decomposition",
          f"200 vectors, pivots total {sum(pivots)}, max {max(pivots)}")


def test_criterion_6_extension_and_dimension():
    rng = random.Random(6)
    for _ in range(100):
        S = _random_set(rng, rng.choice((2, 3)), rng.randint(2, 9))
        orders = _orders(rng, S)
        M = maximal_good_subset(S, orders[0])
        for _ in range(10):
            f = random_good_function(S, rng)
            assert extend_from_maximal_good(S, M, f.restrict(M)) == f
        for order in orders:
            M = maximal_good_subset(S, order)
            assert uperp_dimension(S) == len(S) - len(M)
            basis = uperp_fundamental_basis(S, M)
            assert len(basis) == len(S) - len(M)
            if basis:
                assert rank([mu.values for mu in basis]) == len(basis)
                assert all(has_vanishing_marginals(mu) for mu in basis)
    _note("test_criterion_6_extension_and_dimension", "100 sets x 10 functions x 3 orders")


def test_criterion_7_relatively_full_structure():
    rng = random.Random(7)
    sets = [generate(GeneratorSpec("relatively_full", 2 + k % 2, 2 + k % 9, seed=k)) for k in range(100)]
    for S in sets:
        for order in _orders(rng, S):
            assert is_full(maximal_good_subset(S, order))
    mixed = sets + [_random_set(rng, rng.choice((2, 3)), rng.randint(2, 10)) for _ in range(100)]
    split = 0
    for S in mixed:
        part = relatively_full_components(S, fallback=False)
        split += len(part) > 1
        for i, A in enumerate(part.parts):
            for B in part.parts[i + 1:]:
                assert max_pointwise_agreement(A, B) <= S.n - 2
                if S.n == 2:
                    assert all(not set(A.projection(a)) & set(B.projection(a)) for a in range(2))
        assert check_union_maximal_good(S).agree
    _note("test_criterion_7_relatively_full_structure",
          f"100 generated + 100 random, {split} with several parts")


def test_criterion_8_two_block_fixture():
    assert not is_good(TWO_BLOCKS)
    part = relatively_full_components(TWO_BLOCKS)
    assert [list(p.points) for p in part.parts] == [
        [("0", "0", "0"), ("0", "0", "1")], [("1", "1", "0"), ("1", "1", "1")]]
    report = check_union_maximal_good(TWO_BLOCKS)
    union = TWO_BLOCKS.subset(p for F in report.full_parts for p in F.points)
    assert union == TWO_BLOCKS and not is_good(union)
    (loop,) = enumerate_loops(TWO_BLOCKS)
    assert loop.points == TWO_BLOCKS.points and loop.coeffs == (1, -1, -1, 1)
    q = Fraction(1, 4)
    assert [m.values for m in enumerate_extreme_points(TWO_BLOCKS)] == [(q, -q, -q, q), (-q, q, q, -q)]


def test_criterion_9_heuristic_soundness():
    rng = random.Random(9)
    agree = total = 0
    disagreements = []
    for k in range(200):
        n = rng.choice((2, 3))
        if k % 2:
            S = generate(GeneratorSpec("full" if k % 4 == 1 else "good", n, rng.randint(2, 9),
                                       budgets=None if k % 4 == 1 else (5,) * n, seed=k))
        else:
            S = _random_set(rng, n, rng.randint(2, 10))
        checks = [("relatively_full", relatively_full_components)]
        if is_good(S):
            checks.append(("related", related_components))
        for kind, fn in checks:
            oracle = fn(S, "oracle", fallback=False)
            heuristic = fn(S, "heuristic")
            assert heuristic.refines(oracle), S.to_document()
            total += 1
            if heuristic.blocks() == oracle.blocks():
                agree += 1
            else:
                disagreements.append({"kind": kind, "set": S.to_document(),
                                      "oracle": oracle.to_document(), "heuristic": heuristic.to_document()})
    if disagreements:
        FINDINGS.mkdir(exist_ok=True)
        (FINDINGS / "heuristic_disagreements.json").write_text(json.dumps(disagreements, indent=2) + "\n")
    _note("test_criterion_9_heuristic_soundness",
          f"agreement {agree}/{total} = {agree / total:.1%}, {len(disagreements)} findings")
