"""One test per acceptance criterion. Each prints a single pass/fail line."""
import itertools
import math
import time

from posdfa.automata import (
    Alphabet,
    LanguageRelation,
    accepts,
    count_accepted_up_to,
    distinguishing_witness,
    language_relation,
    max_count,
    unary_ring,
    unary_sink_chain,
)
from posdfa.bench import pearson
from posdfa.heuristic import HeuristicConfig, TransitionSystem, hill_climb, min_score_learn, score
from posdfa.ilp import (
    ExhaustiveSolver,
    ExternalSolver,
    binary_search_min,
    build_model,
    decide_with_solver,
    highs_command,
    solve_min,
)
from posdfa.oracle import certify_language_minimal, decide_problem1, enumerate_min_count
from posdfa.reduction import (
    EXAMPLE_INSTANCE,
    ApnSatInstance,
    audit_suitability,
    build_witness_dfa,
    build_word_sets,
    choose_params,
)
from posdfa.sample import Sample, recognizes_sample

from helpers import brute_witness, report, rng_dfa, run, seeded, words_up_to

HIGHS = highs_command()


def nonempty_sample(rng, sigma, max_words, max_len):
    k = int(rng.integers(1, max_words + 1))
    words = set()
    for _ in range(k):
        ln = int(rng.integers(0, max_len + 1))
        words.add(tuple(int(x) for x in rng.integers(0, sigma, size=ln)))
    return Sample.from_words(words, sigma)


def test_criterion_1_counting_matches_enumeration():
    rng = seeded(101)
    bad = []
    for i in range(200):
        n, sigma = int(rng.integers(1, 5)), int(rng.integers(1, 4))
        dfa = rng_dfa(rng, n, sigma)
        per_len = [0] * 9
        for w in words_up_to(sigma, 8):
            if run(dfa.delta, dfa.init, w) in dfa.final:
                per_len[len(w)] += 1
        for m in range(9):
            if count_accepted_up_to(dfa, m) != sum(per_len[: m + 1]):
                bad.append((i, m))
    ok = report(1, not bad, f"200 DFAs x m<=8, mismatches={len(bad)}")
    assert ok, bad[:5]


def test_criterion_2_witness_length_bound_and_tightness():
    rng = seeded(202)
    bad = []
    for i in range(100):
        sigma = int(rng.integers(1, 4))
        ab = Alphabet.of_size(sigma)
        a = rng_dfa(rng, int(rng.integers(1, 5)), sigma, ab)
        b = rng_dfa(rng, int(rng.integers(1, 5)), sigma, ab)
        bound = a.n_states + b.n_states - 2
        w = distinguishing_witness(a, b)
        equal = language_relation(a, b) is LanguageRelation.EQUAL
        if (w is None) != equal:
            bad.append((i, "completeness"))
        elif w is not None:
            if len(w) > bound or accepts(a, w) == accepts(b, w):
                bad.append((i, "bound or soundness"))
            if w != brute_witness(a, b, bound):
                bad.append((i, "not shortest"))
    tight = []
    for n in range(2, 6):
        for m in range(2, n + 1):
            w = distinguishing_witness(unary_sink_chain(m, {m - 2}), unary_ring(n, {m - 2}))
            tight.append(w is not None and len(w) == m + n - 2)
    ok = report(2, not bad and all(tight), f"100 pairs bad={len(bad)}, unary family {sum(tight)}/{len(tight)} exact")
    assert ok, bad[:5]


def test_criterion_3_count_minimal_is_language_minimal():
    rng = seeded(303)
    failures = 0
    for i in range(50):
        n = 1 + i % 3
        p = nonempty_sample(rng, 2, 4, 3)
        res = enumerate_min_count(p, n)
        if not certify_language_minimal(res.witness, p, n):
            failures += 1
    horizon = []
    for n in (2, 3):
        p = Sample.from_words([(0,) * (n - 2)], 1)
        ring = unary_ring(n, {n - 2})
        short = enumerate_min_count(p, n, horizon=2 * n - 3).min_count
        horizon.append(count_accepted_up_to(ring, 2 * n - 3) == short and recognizes_sample(ring, p)
                       and not certify_language_minimal(ring, p, n))
    ok = report(3, failures == 0 and all(horizon),
                f"50 instances certified={50 - failures}, horizon tightness n=2,3 {horizon}")
    assert ok


def test_criterion_4_ilp_optimum_equals_oracle():
    rng = seeded(404)
    if HIGHS:
        solver, sizes, route = ExternalSolver(HIGHS), [2] * 10 + [3] * 10, "HiGHS"
    else:
        solver, sizes, route = ExhaustiveSolver(), [1] * 5 + [2] * 15, "exhaustive"
    bad = []
    for i, n in enumerate(sizes):
        p = nonempty_sample(rng, 2, 4, 3)
        oracle = enumerate_min_count(p, n).min_count
        _, optimum = solve_min(p, n, solver)
        res = binary_search_min(p, n, solver)
        limit = (2 * n - 1) * math.log2(2) + 2
        if not (optimum == res.count == oracle and res.queries <= limit):
            bad.append((i, n, oracle, optimum, res.count, res.queries))
    ok = report(4, not bad, f"20 instances via {route}, disagreements={len(bad)}")
    assert ok, bad


def _family_sizes(n, sigma, n_prefixes):
    h = 2 * n - 2
    return {
        "t": n * sigma * n,
        "f": n,
        "w": n_prefixes * n,
        "c": n * (h + 1),
        "cp": n * sigma * n * h,
        "cf": n * (h + 1),
        "xF": 1,
    }


def test_criterion_5_encoding_census():
    word_sets = {
        1: {1: [()], 2: [(0,)], 3: [(0, 0)]},
        2: {1: [()], 2: [(1,)], 3: [(0,), (1,)]},
    }
    bad = []
    for n, sigma, n_pref in itertools.product((1, 2, 3), (1, 2), (1, 2, 3)):
        p = Sample.from_words(word_sets[sigma][n_pref], sigma)
        assert len(p.trie) == n_pref
        model = build_model(p, n)
        got = {}
        for v in model.variables:
            fam = v.name if v.name == "xF" else v.name.split("_")[0]
            got[fam] = got.get(fam, 0) + 1
        h = 2 * n - 2
        n_cons = (n * sigma + 1 + n_pref + (n_pref - 1) * n * n + len(p) * n + n
                  + 2 * n * n * sigma * h + n * h + 2 * n * (h + 1) + 1)
        expected = {fam: size for fam, size in _family_sizes(n, sigma, n_pref).items() if size}
        if got != expected or len(model.constraints) != n_cons:
            bad.append((n, sigma, n_pref))
    example = len(build_model(Sample.from_words([(0,)], 2), 2).variables)
    ok = report(5, not bad and example == 43, f"18 shapes mismatched={len(bad)}, n=2 sigma=2 p=2 variables={example}")
    assert ok, bad


def test_criterion_6_heuristic_soundness_bracketing_and_climb_rate():
    rng = seeded(606)
    bad = []
    for inst in range(10):
        n = 2 + inst % 2
        p = nonempty_sample(rng, 2, 4, 3)
        oracle = enumerate_min_count(p, n).min_count
        for seed in range(5):
            cfg = HeuristicConfig(10, 5, seed)
            res = min_score_learn(p, n, cfg)
            again = min_score_learn(p, n, cfg)
            sound = (res.dfa.n_states <= n and recognizes_sample(res.dfa, p)
                     and count_accepted_up_to(res.dfa, 2 * n - 2) == res.score)
            bracketed = oracle <= res.score <= max_count(n, 2)
            same = (again.dfa, again.score, again.start_state) == (res.dfa, res.score, res.start_state)
            if not (sound and bracketed and same):
                bad.append((inst, seed))
    family = [[(0,)], [(0,), (1,)], [(0, 1)], [(0,), (1, 0)], [()], [(0, 0)], [(1,), (0, 1)], [(0, 1), (1, 0)]]
    hits = total = 0
    for words in family:
        p = Sample.from_words(words, 2)
        systems = [TransitionSystem(p.alphabet, [list(f[:2]), list(f[2:])])
                   for f in itertools.product(range(2), repeat=4)]
        best = min(score(ts, p, 2)[0] for ts in systems)
        assert best == enumerate_min_count(p, 2).min_count
        hits += sum(hill_climb(ts, p, 2)[1] == best for ts in systems)
        total += len(systems)
    rate = hits / total
    ok = report(6, not bad and rate >= 0.8, f"50 runs bad={len(bad)}, climb optimum rate={rate:.4f} ({hits}/{total})")
    assert ok, bad


def test_criterion_7_reduction_audit():
    instances = [
        EXAMPLE_INSTANCE,
        ApnSatInstance(2, ((True, {1, 2}), (False, {2}))),
        ApnSatInstance(4, ((True, {1, 2}), (False, {3, 4}), (True, {3}))),
    ]
    t0 = time.perf_counter()
    checks = {}
    for idx, inst in enumerate(instances):
        pr = choose_params(inst)
        r, s = max(inst.r, 2), inst.s
        M, T = 3 * (s + r), 2 * s + 3 * r
        k = s * (T + s - 1) + M * r
        w2 = 18 + s + M + 4 * k + r + 2 * r * s + r * r * T
        d = w2 + 1
        w1 = d * (2 + r)
        checks[f"{idx}:params"] = (pr.M, pr.T, pr.k, pr.omega2, pr.d, pr.omega1, pr.n) == (M, T, k, w2, d, w1, w1 + w2)
        if idx == 0:
            checks["0:example_values"] = (pr.M, pr.T, pr.k) == (15, 13, 73)
        val = next(inst.satisfying_valuations())
        ws = build_word_sets(inst, pr)
        dfa = build_witness_dfa(inst, val, pr)
        rep = audit_suitability(dfa, ws, pr, inst)
        checks[f"{idx}:states={dfa.n_states}/{w1 + w2}"] = dfa.n_states == w1 + w2
        checks[f"{idx}:accepts_P"] = rep.accepts_sample
        checks[f"{idx}:errors=k"] = rep.error_count == M * r + s * (s + T - 1) == k
        checks[f"{idx}:assumptions_A-D"] = all(v for name, v in rep.assumptions.items() if name[:2] in ("A_", "B_", "C_", "D_"))
    elapsed = time.perf_counter() - t0
    checks["runtime<60s"] = elapsed < 60
    failed = [name for name, v in checks.items() if not v]
    ok = report(7, not failed, f"{len(checks) - len(failed)}/{len(checks)} checks, failed={failed}, {elapsed:.1f}s")
    assert ok, failed


def test_criterion_8_oracle_and_ilp_decisions_agree():
    rng = seeded(808)
    solver = ExternalSolver(HIGHS) if HIGHS else ExhaustiveSolver()
    pairs = []
    while len(pairs) < 30:
        n = 1 + len(pairs) % 2 if not HIGHS else 2 + len(pairs) % 2
        p = nonempty_sample(rng, 2, 3, 3)
        best = enumerate_min_count(p, n).min_count
        for k in (best - 1, best):
            pairs.append((p, n, k))
    answers = []
    bad = 0
    for p, n, k in pairs[:30]:
        a = decide_problem1(p, n, k)
        b = decide_with_solver(p, n, k, solver)
        answers.append(a)
        bad += a != b
    ok = report(8, bad == 0 and True in answers and False in answers,
                f"30 pairs disagreements={bad}, yes={sum(answers)} no={30 - sum(answers)}")
    assert ok


def test_criterion_9_pearson():
    xs = [0.5, 1.0, 2.5, 4.0, 7.25]
    plus = pearson(xs, [2 * x + 3 for x in xs])
    minus = pearson(xs, [-0.5 * x + 1 for x in xs])
    # deviations (-2,-1,0,1,2) and (-2,0,1,0,1): 6 / sqrt(10 * 6)
    five = pearson([1, 2, 3, 4, 5], [2, 4, 5, 4, 5])
    ok = report(9, abs(plus - 1) <= 1e-12 and abs(minus + 1) <= 1e-12 and abs(five - 0.7745966692414834) <= 1e-9,
                f"r+={plus!r} r-={minus!r} five-point={five!r}")
    assert ok
