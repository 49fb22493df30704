"""Score-driven local search for DFAs that accept a positive sample while
accepting as few other short words as possible.

A transition system is a DFA without initial or final states. Given a
start state, the final states are forced: exactly the states reached by
the sample words. The score of a transition system is the smallest
number of accepted words of length at most 2n-2 over all start states.

Randomness comes from numpy's PCG64 bit generator; run ``i`` of
``min_score_learn`` is seeded with ``seed + i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .automata import Alphabet, Dfa, count_accepted_up_to, max_count
from .errors import AlphabetMismatchError, InvalidConfigError
from .sample import Sample, reached_states


@dataclass(frozen=True)
class TransitionSystem:
    alphabet: Alphabet
    delta: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(q) for q in row) for row in self.delta)
        object.__setattr__(self, "delta", rows)

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def with_transition(self, q: int, a: int, target: int) -> "TransitionSystem":
        rows = [list(r) for r in self.delta]
        rows[q][a] = target
        return TransitionSystem(self.alphabet, rows)


@dataclass(frozen=True)
class HeuristicConfig:
    init_rand: int = 100
    nb_run: int = 50
    seed: int = 0


@dataclass(frozen=True)
class ScoredDfa:
    dfa: Dfa
    score: int
    start_state: int


def derive_dfa(ts: TransitionSystem, p: Sample, start: int) -> Dfa:
    """The DFA with initial state `start` whose final states are exactly
    those reached by words of the sample."""
    if ts.alphabet != p.alphabet:
        raise AlphabetMismatchError("sample and transition system alphabets differ")
    dfa = Dfa(ts.alphabet, ts.delta, frozenset(), start)
    return Dfa(ts.alphabet, ts.delta, frozenset(reached_states(dfa, p)), start)


def score_reference(ts: TransitionSystem, p: Sample, n: int) -> tuple:
    """Plain-Python scoring, used to cross-check the vectorised path."""
    h = 2 * n - 2
    best = None
    for q in range(ts.n_states):
        c = count_accepted_up_to(derive_dfa(ts, p, q), h)
        if best is None or c < best[0]:
            best = (c, q)
    return best


class _Scorer:
    """Scores every start state of a transition system at once.

    The sample trie is walked level by level for all start states in
    parallel, and the number of words of length <= h leading from state
    q to state q' is read off the matrix sum I + A + ... + A^h.
    """

    def __init__(self, p: Sample, n_states: int, n_bound: int):
        trie = p.trie
        self.n = n_states
        self.horizon = 2 * n_bound - 2
        self.levels = []
        for start, stop in trie.level_ranges():
            par = np.asarray(trie.parent[start:stop], dtype=np.int64)
            sym = np.asarray(trie.symbol[start:stop], dtype=np.int64)
            self.levels.append((start, stop, par, sym))
        self.n_nodes = len(trie)
        self.terminal = np.asarray(trie.terminal_nodes(), dtype=np.int64)
        # int64 is exact as long as the largest partial sum fits
        self.dtype = np.int64 if max_count(n_bound, max(p.sigma, 1)) < 2 ** 62 else object

    def scores(self, delta: np.ndarray) -> list:
        n = self.n
        states = np.empty((self.n_nodes, n), dtype=np.int64)
        states[0] = np.arange(n)
        for start, stop, par, sym in self.levels:
            states[start:stop] = delta[states[par], sym[:, None]]
        final_mask = np.zeros((n, n), dtype=bool)
        if len(self.terminal):
            final_mask[np.broadcast_to(np.arange(n), (len(self.terminal), n)), states[self.terminal]] = True
        adj = np.zeros((n, n), dtype=self.dtype)
        rows = np.repeat(np.arange(n), delta.shape[1])
        for r, c in zip(rows.tolist(), delta.ravel().tolist()):
            adj[r, c] += 1
        power = np.identity(n, dtype=self.dtype)
        total = power.copy()
        for _ in range(self.horizon):
            power = power @ adj
            total = total + power
        per_start = (total * final_mask).sum(axis=1)
        return [int(x) for x in per_start]

    def best(self, delta: np.ndarray) -> tuple:
        s = self.scores(delta)
        q = min(range(len(s)), key=lambda i: (s[i], i))
        return s[q], q


def _check(p: Sample, n: int):
    if n < 1:
        raise InvalidConfigError("the state bound must be at least 1")


def score(ts: TransitionSystem, p: Sample, n: int) -> tuple:
    """(score, start_state) with ties broken by the smallest start state."""
    _check(p, n)
    if ts.alphabet != p.alphabet:
        raise AlphabetMismatchError("sample and transition system alphabets differ")
    return _Scorer(p, ts.n_states, n).best(np.asarray(ts.delta, dtype=np.int64))


def random_transition_system(n: int, alphabet: Alphabet, rng: np.random.Generator) -> TransitionSystem:
    if n < 1:
        raise InvalidConfigError("n must be at least 1")
    table = rng.integers(0, n, size=(n, alphabet.size))
    return TransitionSystem(alphabet, table.tolist())


def _climb(delta: np.ndarray, scorer: _Scorer, current: int, trace: Optional[list]) -> int:
    n, sigma = delta.shape
    if trace is not None:
        trace.append(current)
    while True:
        best = current
        move = None
        for q in range(n):
            for a in range(sigma):
                old = delta[q, a]
                for target in range(n):
                    if target == old:
                        continue
                    delta[q, a] = target
                    s, _ = scorer.best(delta)
                    if s < best:
                        best, move = s, (q, a, target)
                delta[q, a] = old
        if move is None:
            return current
        delta[move[0], move[1]] = move[2]
        current = best
        if trace is not None:
            trace.append(current)


def hill_climb(ts: TransitionSystem, p: Sample, n: int, trace: Optional[list] = None) -> tuple:
    """Best-improvement descent over single transition changes.

    Each round tries every move (q, a, q') and commits the best strict
    improvement; ties go to the lexicographically smallest move. Returns
    (transition system, score). If `trace` is a list, the score after
    each committed move is appended to it.
    """
    _check(p, n)
    scorer = _Scorer(p, ts.n_states, n)
    delta = np.asarray(ts.delta, dtype=np.int64).copy()
    current, _ = scorer.best(delta)
    final = _climb(delta, scorer, current, trace)
    return TransitionSystem(ts.alphabet, delta.tolist()), final


def min_score_learn(p: Sample, n: int, cfg: HeuristicConfig = HeuristicConfig()) -> ScoredDfa:
    """Random restarts followed by hill climbing; keeps the best result."""
    _check(p, n)
    if cfg.init_rand < 1 or cfg.nb_run < 1:
        raise InvalidConfigError("init_rand and nb_run must be at least 1")
    scorer = _Scorer(p, n, n)
    best_delta = None
    best_score = None
    for run in range(cfg.nb_run):
        rng = np.random.Generator(np.random.PCG64(cfg.seed + run))
        run_delta = None
        run_score = None
        for _ in range(cfg.init_rand):
            cand = rng.integers(0, n, size=(n, p.sigma))
            s, _ = scorer.best(cand)
            if run_score is None or s < run_score:
                run_delta, run_score = cand, s
        run_score = _climb(run_delta, scorer, run_score, None)
        if best_score is None or run_score < best_score:
            best_delta, best_score = run_delta.copy(), run_score
    ts = TransitionSystem(p.alphabet, best_delta.tolist())
    s, start = scorer.best(best_delta)
    return ScoredDfa(derive_dfa(ts, p, start), s, start)
