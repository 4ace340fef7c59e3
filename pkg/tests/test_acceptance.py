"""Contract acceptance suite.

One test per criterion. Each prints a single verdict line (replayed in the
terminal summary) of the form

    ACCEPTANCE <nn> <PASS|FAIL> <name>: <measured numbers>; <time> / budget <T>

Criteria whose statistical or tolerance targets are unattainable at this scale
stay red: they print their witnesses and xfail, never silently pass. The two
module-scope corpora (the complete 2-face enumeration and the per-shape
fulfill sweep) are shared between criteria 1, 8 and 9; their build times are
printed in the verdict lines that rely on them.
"""

import json
import time
from collections import deque
from itertools import combinations, count
from types import SimpleNamespace

import numpy as np
import pytest

from conftest import record
from squarewalls.cayley import build_ball
from squarewalls.cli import run as cli_run
from squarewalls.complexes import (
    Face,
    IsoParams,
    SquareComplex,
    Step,
    build_quotient,
    cancellation,
    generalized_boundary_length,
)
from squarewalls.enumeration import (
    check_special_cells,
    enumerate_abstract_complexes,
    random_labeled_complex,
    scan_local_iso,
)
from squarewalls.fixtures import (
    annulus,
    comparison,
    planar_fixtures,
    staircase,
    strongly_adjacent_pair,
    z2_ball,
)
from squarewalls.fulfill import (
    AbstractComplex,
    check_assignment,
    exact_fulfill_probability,
    exact_set_fulfill_probability,
    fulfill_search,
    kappa,
    monte_carlo_set_fulfill,
)
from squarewalls.presentation import (
    Presentation,
    enumerate_cyclically_reduced,
    sample_presentation,
)
from squarewalls.walls import (
    bfs_distances,
    check_wall_lower_bound,
    check_window_crossing,
    extract_collared_diagram,
    is_embedded_tree,
    paint,
    trace_hypergraphs,
    wall_decomposition,
    wall_distance,
)

TORUS = Presentation(rank=2, density=0.25, seed=0, relators=((1, 2, -1, -2),))


def verdict(num, ok, name, detail, elapsed, budget):
    word = "PASS" if ok else "FAIL"
    record(f"ACCEPTANCE {num:02d} {word} {name}: {detail}; "
           f"{elapsed:.1f}s / budget {budget}s")


# -- shared corpora -----------------------------------------------------------------


@pytest.fixture(scope="module")
def corpus2():
    t0 = time.perf_counter()
    classes = list(enumerate_abstract_complexes(2))
    return SimpleNamespace(classes=classes, build_time=time.perf_counter() - t0)


@pytest.fixture(scope="module")
def sweep(corpus2):
    """One pass over every 2-face class: vectorized tuple-space counts (the
    brute-force oracle), fulfill_search verdict + witness check, belongs-to
    statistics, and library parity spot checks."""
    W2 = enumerate_cyclically_reduced(2)
    arr = np.array(W2, dtype=np.int8)
    col = {(k, s): arr[:, k] * s for k in range(4) for s in (1, -1)}
    shapes = [Y for Y in corpus2.classes if len(Y.base.faces) == 2]

    def brute_counts(Y, order):
        """Exhaustive tuple counts by pairwise slot agreement over the pool:
        c1 = words admitted by the first label alone, c2 = admitted tuples
        (None for single-label shapes, where the tuple space is the 84
        diagonal pairs). Third value is local injectivity."""
        inc = Y.slot_incidences()
        for lst in inc.values():
            pairs = [(lab, k) for _f, _j, k, _s, lab in lst]
            if len(set(pairs)) != len(pairs):
                return 0, None if len(order) == 1 else 0, False
        if len(order) == 1:
            valid = np.ones(84, dtype=bool)
            for lst in inc.values():
                for (_f1, _j1, k1, s1, _l1), (_f2, _j2, k2, s2, _l2) \
                        in combinations(lst, 2):
                    valid &= col[(k1, s1)] == col[(k2, s2)]
            return int(valid.sum()), None, True
        a, _b = order
        va = np.ones(84, dtype=bool)
        vb = np.ones(84, dtype=bool)
        cross = None
        for lst in inc.values():
            for (_f1, _j1, k1, s1, l1), (_f2, _j2, k2, s2, l2) \
                    in combinations(lst, 2):
                if l1 == l2:
                    v = va if l1 == a else vb
                    v &= col[(k1, s1)] == col[(k2, s2)]
                    if l1 == a:
                        va = v
                    else:
                        vb = v
                else:
                    if l2 == a:
                        k1, s1, k2, s2 = k2, s2, k1, s1
                    m = np.equal.outer(col[(k1, s1)], col[(k2, s2)])
                    cross = m if cross is None else (cross & m)
        if cross is None:
            c2 = int(va.sum()) * int(vb.sum())
        else:
            c2 = int((cross & va[:, None] & vb[None, :]).sum())
        return int(va.sum()), c2, True

    t0 = time.perf_counter()
    agreement_failures = []
    witness_failures = []
    parity_failures = []
    parity_checked = 0
    n_fulfillable = n_empty = n_non_li = 0
    strict_violations = 0
    ratios_defined = 0
    max_adjusted = 0.0
    for i, Y in enumerate(shapes):
        order = Y.label_order()
        c1, c2, li = brute_counts(Y, order)
        total = c1 if c2 is None else c2
        got = fulfill_search(Y, W2)
        if (got is not None) != (li and total > 0):
            agreement_failures.append(i)
        if got is not None and not check_assignment(Y, got):
            witness_failures.append(i)
        if not li:
            n_non_li += 1
        elif total > 0:
            n_fulfillable += 1
        else:
            n_empty += 1
        if i % 401 == 0:
            parity_checked += 1
            rep = exact_fulfill_probability(Y, 2)
            if rep.counts != ((c1,) if c2 is None else (c1, c2)):
                parity_failures.append(i)
        if li:
            st = kappa(Y)
            ps = [c1 / 84] if c2 is None else [c1 / 84, c2 / 84 ** 2]
            prev = 1.0
            for j, p in enumerate(ps):
                if prev == 0:
                    break
                ratio = p / prev
                prev = p
                if ratio == 0:
                    continue
                ratios_defined += 1
                max_adjusted = max(max_adjusted, ratio * 3 ** st.kappa[j])
                if ratio > 3 ** -st.kappa[j] * 1.10:
                    strict_violations += 1
    return SimpleNamespace(
        n_shapes=len(shapes),
        n_fulfillable=n_fulfillable,
        n_empty=n_empty,
        n_non_li=n_non_li,
        agreement_failures=agreement_failures,
        witness_failures=witness_failures,
        parity_checked=parity_checked,
        parity_failures=parity_failures,
        strict_violations=strict_violations,
        ratios_defined=ratios_defined,
        max_adjusted=max_adjusted,
        elapsed=time.perf_counter() - t0,
        corpus_time=corpus2.build_time,
    )


# -- criteria -----------------------------------------------------------------------


def test_criterion_01_boundary_identity(corpus2):
    t0 = time.perf_counter()
    for Y in corpus2.classes:
        E, F = len(Y.base.edges), len(Y.base.faces)
        gb = generalized_boundary_length(Y.base)
        assert gb == 4 * F - 2 * cancellation(Y.base) == 2 * E - 4 * F
        assert gb % 2 == 0
    folded = 0
    checked = 0
    for seed in count():
        Y = random_labeled_complex(seed)
        if Y is None:
            folded += 1
            continue
        E, F = len(Y.base.edges), len(Y.base.faces)
        gb = generalized_boundary_length(Y.base)
        assert gb == 4 * F - 2 * cancellation(Y.base) == 2 * E - 4 * F
        assert gb % 2 == 0
        checked += 1
        if checked == 1000:
            break
    elapsed = time.perf_counter() - t0
    verdict(1, True, "boundary-identity",
            f"exact and even on all {len(corpus2.classes)} complete <=2-face "
            f"classes (corpus built in {corpus2.build_time:.1f}s) + 1000 "
            f"seeded random <=4-face complexes ({folded} folded draws; the "
            f"capped 3-face level is re-checked under criterion 11)",
            elapsed, 10)
    assert elapsed <= 10


def test_criterion_02_planar_agreement():
    t0 = time.perf_counter()
    fixtures = planar_fixtures()
    assert len(fixtures) == 20
    for name, D in fixtures:
        assert D.boundary_length == generalized_boundary_length(D.complex), name
    elapsed = time.perf_counter() - t0
    verdict(2, True, "planar-agreement",
            "|boundary walk| == generalized boundary length on all 20 "
            "constructed disc diagrams", elapsed, 1)
    assert elapsed <= 1


def test_criterion_03_word_counts():
    t0 = time.perf_counter()
    got = []
    for n in (1, 2, 3):
        words = enumerate_cyclically_reduced(n)
        letters = [x for g in range(1, n + 1) for x in (g, -g)]
        brute = {
            w for w in ((a, b, c, d) for a in letters for b in letters
                        for c in letters for d in letters)
            if all(w[i] != -w[(i + 1) % 4] for i in range(4))
        }
        assert set(words) == brute
        assert len(words) == (2 * n - 1) ** 4 + (2 * n - 1)
        got.append(len(words))
    elapsed = time.perf_counter() - t0
    verdict(3, True, "word-counts",
            f"pool sizes {got} match the independent filter and the closed "
            f"form", elapsed, 1)
    assert elapsed <= 1


def test_criterion_04_grid_end_to_end():
    t0 = time.perf_counter()
    ball = build_ball(TORUS, 5)
    cx = ball.base
    assert len(cx.vertices) == 61
    W = wall_decomposition(paint(cx))
    assert len(W.walls) == 16
    assert all(is_embedded_tree(H).tree for H in W.walls)
    # every wall is two-sided; at finite radius all of them touch the rim,
    # so the two-complement clause is checked on each one
    assert all(rep.count == 2 for rep in W.reports)

    supported = set()
    for f in cx.faces.values():
        for st in f.walk:
            supported.update(cx.edges[st.edge])
    verts = sorted(cx.vertices)
    dists = {v: bfs_distances(cx, v) for v in verts}
    pairs = list(combinations(verts, 2))
    mismatched = [(x, y) for x, y in pairs
                  if wall_distance(W, x, y) != dists[x][y]]
    # d_wall == d_edge exactly on cell-supported pairs; the four rim apexes
    # sit on no 2-cell, their incident edges are crossed by no wall, and
    # every defective pair involves one of them
    assert all(x not in supported or y not in supported for x, y in mismatched)
    assert not [p for p in mismatched
                if p[0] in supported and p[1] in supported]
    reports = check_wall_lower_bound(W, cx, pairs)
    assert len(reports) == len(pairs)
    assert all(r.status == "pass" for r in reports)

    # the radius-5 ball has diameter 10, so it contains no 21-edge geodesic;
    # the window clause is exercised on the radius-11 ball instead
    grid = z2_ball(11)
    WG = wall_decomposition(paint(grid))
    gverts = sorted(grid.vertices)
    far = [(u, v) for u, v in combinations(gverts, 2)
           if abs(u[0] - v[0]) + abs(u[1] - v[1]) >= 21]
    assert len(far) == 810
    checked = 0
    exhausted = 0
    for u, v in far:
        d, paths, truncated = _all_geodesics(grid, u, v, cap=25)
        assert d >= 21
        exhausted += not truncated
        for p in paths:
            rep = check_window_crossing(grid, WG, list(p))
            assert rep.all_pass
            checked += 1
    elapsed = time.perf_counter() - t0
    verdict(4, True, "grid-end-to-end",
            f"61 vertices, 16 embedded-tree walls, 2 complement components "
            f"each, d_wall==d_edge on all {len(pairs) - len(mismatched)} "
            f"cell-supported pairs ({len(mismatched)} apex pairs excluded, "
            f"0 supported exceptions), lower bound passes all {len(pairs)} "
            f"pairs; windows pass on {checked} geodesics of length >=21 over "
            f"all 810 far pairs of the radius-11 ball ({exhausted} pairs "
            f"fully exhausted, rest capped at 25)",
            elapsed, 60)
    assert elapsed <= 60


def _all_geodesics(cx, x, y, cap):
    adj = {v: [] for v in cx.vertices}
    for eid, (u, v) in sorted(cx.edges.items()):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    dist = {x: 0}
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        for nxt, _e in adj[cur]:
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    paths = []
    truncated = False

    def back(v, acc):
        nonlocal truncated
        if len(paths) >= cap:
            truncated = True
            return
        if v == x:
            paths.append(tuple(reversed(acc)))
            return
        for u, eid in adj[v]:
            if dist.get(u, -2) == dist[v] - 1:
                back(u, acc + [eid])

    back(y, [])
    return dist[y], paths, truncated


def test_criterion_05_staircase_motivation():
    t0 = time.perf_counter()
    cx, _gamma, x, y = staircase(8)
    W = wall_decomposition(paint(cx), kinds=("standard",))
    assert wall_distance(W, x, y) == 0
    (report,) = check_wall_lower_bound(W, cx, [(x, y)])
    assert report.d_edge == 16 >= 15
    assert report.bound == 1 and report.d_wall == 0
    assert report.status == "violation"
    elapsed = time.perf_counter() - t0
    verdict(5, True, "staircase-motivation",
            "standard walls only: endpoint wall distance 0 at edge distance "
            "16, reported as a lower-bound violation", elapsed, 5)
    assert elapsed <= 5


def test_criterion_06_comparison_routes():
    t0 = time.perf_counter()
    cx, expected = comparison()
    painted = paint(cx)
    sizes = {}
    for kind in ("standard", "red", "blue"):
        H = next(H for H in trace_hypergraphs(painted, kind)
                 if "da" in H.vertices)
        assert frozenset(H.edges) == expected[kind], kind
        sizes[kind] = len(H.edges)
    elapsed = time.perf_counter() - t0
    verdict(6, True, "comparison-routes",
            f"traced hypergraph edge sets equal the frozen figure routes "
            f"(sizes {sizes})", elapsed, 1)
    assert elapsed <= 1


def test_criterion_07_annulus_collar():
    t0 = time.perf_counter()
    cx = annulus(4)
    painted = paint(cx)
    circ = next(H for H in trace_hypergraphs(painted, "standard")
                if ("s", 0) in H.vertices)
    rep = is_embedded_tree(circ)
    assert not rep.tree
    assert rep.witness.kind == "cycle"
    assert len(rep.witness.segments) == 4
    coll = extract_collared_diagram(circ, painted)
    assert coll.cornerless and coll.corner is None
    gb = generalized_boundary_length(coll.complex)
    assert gb == 8 and gb % 2 == 0
    elapsed = time.perf_counter() - t0
    verdict(7, True, "annulus-collar",
            f"4-segment cycle witness; cornerless collared diagram with "
            f"k={coll.k}, k'={coll.k_prime}, l={coll.l}, boundary length "
            f"{gb} (even)", elapsed, 1)
    assert elapsed <= 1


def test_criterion_08_fulfill_oracle_agreement(sweep):
    assert sweep.agreement_failures == []
    assert sweep.witness_failures == []
    assert sweep.parity_failures == []
    verdict(8, True, "fulfill-oracle-agreement",
            f"fulfill_search matches the exhaustive tuple oracle on all "
            f"{sweep.n_shapes} 2-face shapes ({sweep.n_fulfillable} "
            f"fulfillable, {sweep.n_empty} empty, {sweep.n_non_li} not "
            f"locally injective); {sweep.parity_checked} library parity spot "
            f"checks; corpus {sweep.corpus_time:.1f}s",
            sweep.elapsed, 120)
    assert sweep.elapsed <= 120


def test_criterion_09_ownership_ratios(sweep):
    # canonical witness: two faces of one label glued at positions 0 and 2
    Y = AbstractComplex.wrap(
        build_quotient(2, [((0, 0), (1, 2), 1)], labels=[1, 1]))
    rep = exact_fulfill_probability(Y, 2)
    st = kappa(Y)
    assert st.kappa == (1,) and rep.counts == (36,)
    ratio = rep.ratios[0]
    strict_bound = 3 ** -1 * 1.10
    assert ratio == 36 / 84 > strict_bound
    # the pool-inflation-adjusted form holds over the whole sweep, with the
    # witness saturating it exactly
    assert sweep.max_adjusted <= 9 / 7 + 1e-9
    verdict(9, False, "ownership-ratios",
            f"{sweep.strict_violations} of {sweep.ratios_defined} exact "
            f"p-ratios exceed 3^-kappa * 1.10; witness: repeated-position "
            f"shape has p1 = 36/84 = {ratio:.6f} > {strict_bound:.6f} "
            f"(kappa 1); adjusted bound 3^-kappa * 9/7 holds on all shapes "
            f"(max ratio*3^kappa = {sweep.max_adjusted:.6f} = 9/7, saturated)",
            sweep.elapsed, 120)
    record("              the 10% slack cannot absorb the cyclically-reduced "
           "pool deflation 84/108: the per-position conditional count stays "
           "36 over both pools")
    pytest.xfail("tolerance 3^-kappa * 1.10 is unattainable over the "
                 "cyclically reduced pool; adjusted bound asserted instead")


def test_criterion_10_monte_carlo_consistency():
    t0 = time.perf_counter()
    shapes = [
        ("repeated-position", AbstractComplex.wrap(
            build_quotient(2, [((0, 0), (1, 2), 1)], labels=[1, 1]))),
        ("shared-edge", AbstractComplex.wrap(
            build_quotient(2, [((0, 1), (1, 1), -1)], labels=[1, 2]))),
        ("strongly-adjacent", AbstractComplex.wrap(strongly_adjacent_pair())),
    ]
    details = []
    for name, Y in shapes:
        exact = exact_set_fulfill_probability(Y, 2, 0.25)
        mc = monte_carlo_set_fulfill(Y, 2, 0.25, trials=2000, seed=7)
        assert mc.trials == 2000
        assert mc.ci_low <= exact.probability <= mc.ci_high, name
        details.append(f"{name} exact {exact.probability:.4f} in "
                       f"[{mc.ci_low:.4f}, {mc.ci_high:.4f}]")
    elapsed = time.perf_counter() - t0
    verdict(10, True, "monte-carlo-consistency",
            "; ".join(details), elapsed, 60)
    assert elapsed <= 60


def test_criterion_11_statistical_reflections():
    t0 = time.perf_counter()
    classes = list(enumerate_abstract_complexes(3))
    corpus_time = time.perf_counter() - t0
    # bonus coverage for criterion 1 on the capped 3-face level
    for Y in classes:
        E, F = len(Y.base.edges), len(Y.base.faces)
        assert generalized_boundary_length(Y.base) \
            == 4 * F - 2 * cancellation(Y.base) == 2 * E - 4 * F

    p = IsoParams(d=0.2, eps=0.05)
    # classes the scan can ever report: cancellation above the threshold
    hot = [Y for Y in classes
           if cancellation(Y.base) > 4 * (p.d + p.eps) * len(Y.base.faces)]
    per_n = {}
    for n in (4, 5, 6):
        special_clean = scan_clean = 0
        witness_total = third_total = 0
        scan_counts = []
        pair_count = candidates = None
        for seed in range(20):
            R = list(sample_presentation(n, 0.2, seed).relators)
            m = len(R)
            pair_count = m * (m - 1) // 2
            candidates = sum(m ** Y.n_labels for Y in hot)
            rep = check_special_cells(R)
            witness_total += len(rep.three_shares)
            third_total += len(rep.third_face_witnesses)
            special_clean += rep.cross_witness_count == 0
            violations = scan_local_iso(R, 3, p, classes=classes)
            scan_counts.append(len(violations))
            scan_clean += len(violations) == 0
        per_n[n] = SimpleNamespace(
            special_clean=special_clean, scan_clean=scan_clean,
            three_share_rate=witness_total / (20 * pair_count),
            third_total=third_total, scan_mean=sum(scan_counts) / 20,
            scan_rate=sum(scan_counts) / 20 / candidates,
            scan_min=min(scan_counts), scan_max=max(scan_counts))
    elapsed = time.perf_counter() - t0

    # the direction the asymptotic statements assert does hold at this scale:
    # per relator pair for the cell patterns, per candidate word assignment
    # for the scan (the raw count confounds the growing relator count, which
    # multiplies the assignment space by m^labels)
    rates = [per_n[n].three_share_rate for n in (4, 5, 6)]
    assert rates[0] > rates[1] > rates[2]
    srates = [per_n[n].scan_rate for n in (4, 5, 6)]
    assert srates[0] > srates[1] > srates[2]

    parts = []
    for n in (4, 5, 6):
        s = per_n[n]
        parts.append(
            f"n={n}: special-cells clean {s.special_clean}/20 (three-share "
            f"rate {s.three_share_rate:.3f}/pair, {s.third_total} third-face "
            f"witnesses), scan clean {s.scan_clean}/20 (violations "
            f"{s.scan_min}-{s.scan_max}, mean {s.scan_mean:.1f}, "
            f"{s.scan_rate:.2e}/assignment)")
    verdict(11, False, "statistical-reflections",
            "; ".join(parts) + f"; thresholds need >=15/20 clean; 3-face "
            f"corpus {len(classes)} classes in {corpus_time:.1f}s",
            elapsed, 600)
    record("              both normalized witness rates decrease strictly as "
           "the alphabet grows (asserted), the direction the asymptotic "
           "claims point; absence itself is out of reach at rank 4-6")
    assert elapsed <= 600
    pytest.xfail("letter coincidences are birthday-dense at rank 4-6: no "
                 "seed is witness-free; the monotone trend companions hold")


def test_criterion_12_pseudometric():
    t0 = time.perf_counter()
    cx = z2_ball(4)
    W = wall_decomposition(paint(cx))
    verts = sorted(cx.vertices)
    n = len(verts)
    assert n == 41
    D = np.zeros((n, n), dtype=int)
    for i in range(n):
        assert wall_distance(W, verts[i], verts[i]) == 0
        for j in range(i + 1, n):
            dij = wall_distance(W, verts[i], verts[j])
            dji = wall_distance(W, verts[j], verts[i])
            assert dij == dji
            D[i, j] = D[j, i] = dij
    triples = 0
    for j in range(n):
        assert (D <= D[:, j][:, None] + D[j, :][None, :]).all()
        triples += n * n
    elapsed = time.perf_counter() - t0
    verdict(12, True, "pseudometric",
            f"symmetry on all {n * (n - 1) // 2} pairs and triangle "
            f"inequality on all {triples} ordered triples of the radius-4 "
            f"ball ({len(W.walls)} walls, max distance {D.max()})",
            elapsed, 30)
    assert elapsed <= 30


def test_criterion_13_cli_determinism(tmp_path):
    t0 = time.perf_counter()
    pres = tmp_path / "pres.json"
    pres.write_text(TORUS.to_json())
    shape = tmp_path / "shape.json"
    square = SquareComplex(
        ["p", "q", "r", "s"],
        {"a": ("p", "q"), "b": ("q", "r"), "c": ("r", "s"), "d": ("s", "p")},
        {0: Face((Step("a", 1), Step("b", 1), Step("c", 1), Step("d", 1)),
                 label=1)})
    shape.write_text(AbstractComplex.wrap(square).to_json())
    z2_small = tmp_path / "z2.json"
    z2_big = tmp_path / "z2big.json"
    ball_doc = tmp_path / "ball.json"
    assert cli_run(["fixtures", "--name", "z2", "--radius", "2",
                    "--out", str(z2_small)]) == 0
    assert cli_run(["fixtures", "--name", "z2", "--radius", "11",
                    "--out", str(z2_big)]) == 0
    assert cli_run(["ball", "--in", str(pres), "--radius", "3",
                    "--out", str(ball_doc)]) == 0

    commands = {
        "sample": ["sample", "--rank", "2", "--density", "0.25", "--seed", "3"],
        "enumerate": ["enumerate", "--faces", "1"],
        "scan-iso": ["scan-iso", "--rank", "2", "--density", "0.25",
                     "--seed", "1", "--faces", "1"],
        "special-cells": ["special-cells", "--rank", "2", "--density", "0.25",
                          "--seed", "0"],
        "ball": ["ball", "--in", str(pres), "--radius", "3"],
        "walls": ["walls", "--in", str(ball_doc), "--kinds", "standard",
                  "--format", "dot"],
        "wall-metric": ["wall-metric", "--in", str(z2_small),
                        "--format", "csv"],
        "windows": ["windows", "--in", str(z2_big),
                    "--from", "[-5,-5]", "--to", "[6,5]"],
        "fulfill-mc": ["fulfill-mc", "--in", str(shape), "--rank", "2",
                       "--density", "0.25", "--trials", "100", "--seed", "1"],
        "fixtures": ["fixtures", "--name", "annulus", "--k", "4"],
    }
    for name, argv in commands.items():
        outs = []
        rcs = []
        for i, threads in enumerate(("1", "1", "8")):
            out = tmp_path / f"{name}-{i}.out"
            rcs.append(cli_run([*argv, "--threads", threads,
                                "--out", str(out)]))
            outs.append(out.read_bytes())
        assert rcs[0] == rcs[1] == rcs[2], name
        assert outs[0] == outs[1] == outs[2], name
    elapsed = time.perf_counter() - t0
    verdict(13, True, "cli-determinism",
            f"all {len(commands)} commands, run twice and with --threads 1 "
            f"vs 8, emit byte-identical artifacts", elapsed, 120)
    assert elapsed <= 120
