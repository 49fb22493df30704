"""Experiment tooling: random samples drawn from hidden DFAs, timed
algorithm runs recorded as CSV rows, and Pearson correlation."""
from __future__ import annotations

import csv
import io
import multiprocessing as mp
import statistics
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .automata import Alphabet, Dfa, count_accepted_up_to
from .errors import InvalidConfigError, SolverUnavailableError, UndefinedCorrelationError
from .heuristic import HeuristicConfig, min_score_learn
from .oracle import enumerate_min_count
from .sample import Sample

ALGORITHMS = ("heuristic", "ilp", "ilp-binary-search", "oracle")
CSV_HEADER = ("instance", "algo", "n", "seed", "start_score", "final_score", "ms", "status")


# --- random samples ----------------------------------------------------------

def random_dfa(rng: np.random.Generator, n_states: int, sigma: int, p_final: float = 0.5) -> Dfa:
    """Uniform transitions; each state final with probability p_final,
    redrawn until at least one state is final."""
    delta = rng.integers(0, n_states, size=(n_states, sigma)).tolist()
    while True:
        final = frozenset(q for q in range(n_states) if rng.random() < p_final)
        if final:
            return Dfa(Alphabet.of_size(sigma), delta, final, 0)


def _suffix_counts(dfa: Dfa, max_len: int) -> list:
    """table[l][q] = number of words of length l leading from q into F."""
    table = [[int(q in dfa.final) for q in range(dfa.n_states)]]
    for _ in range(max_len):
        prev = table[-1]
        table.append([sum(prev[t] for t in dfa.delta[q]) for q in range(dfa.n_states)])
    return table


def uniform_accepted_word(dfa: Dfa, length: int, table: list, rng: np.random.Generator) -> tuple:
    """Exactly uniform among accepted words of the given length."""
    q = dfa.init
    word = []
    for rem in range(length, 0, -1):
        pick = int(rng.integers(0, table[rem][q]))
        for a in range(dfa.sigma):
            c = table[rem - 1][dfa.delta[q][a]]
            if pick < c:
                word.append(a)
                q = dfa.delta[q][a]
                break
            pick -= c
    return tuple(word)


def sample_from_dfa(dfa: Dfa, n_draws: int, min_len: int, max_len: int, rng: np.random.Generator) -> Sample:
    """Draw lengths uniformly, then a uniform accepted word of that length.
    A length with no accepted word is redrawn. Duplicates collapse."""
    table = _suffix_counts(dfa, max_len)
    lengths = [l for l in range(min_len, max_len + 1) if table[l][dfa.init] > 0]
    if not lengths:
        raise InvalidConfigError("the DFA accepts no word in the length range")
    words = set()
    for _ in range(n_draws):
        while True:
            l = int(rng.integers(min_len, max_len + 1))
            if table[l][dfa.init]:
                break
        words.add(uniform_accepted_word(dfa, l, table, rng))
    return Sample(dfa.alphabet, frozenset(words))


def generate_experiment(seed: int, n_words: int = 1000) -> tuple:
    """(hidden DFA, sample): 1..10 states, three letters, words of length 1..10."""
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        n_states = int(rng.integers(1, 11))
        dfa = random_dfa(rng, n_states, 3)
        table = _suffix_counts(dfa, 10)
        if any(table[l][dfa.init] for l in range(1, 11)):
            return dfa, sample_from_dfa(dfa, n_words, 1, 10, rng)


def generate_experiment_sample(seed: int) -> Sample:
    return generate_experiment(seed)[1]


# --- statistics --------------------------------------------------------------

def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ValueError("sequences must have equal length")
    if len(xs) < 2:
        raise UndefinedCorrelationError("need at least two points")
    try:
        return statistics.correlation(xs, ys)
    except statistics.StatisticsError as exc:
        raise UndefinedCorrelationError(str(exc)) from None


# --- bench -------------------------------------------------------------------

@dataclass(frozen=True)
class BenchRecord:
    instance: str
    algo: str
    n: int
    seed: int
    start_score: Optional[int]
    final_score: Optional[int]
    ms: float
    status: str  # ok | timeout | unavailable | error

    def to_row(self) -> list:
        return [("" if v is None else v) for v in asdict(self).values()]

    @classmethod
    def from_row(cls, row: dict) -> "BenchRecord":
        def opt_int(x):
            return None if x in ("", None) else int(x)

        return cls(row["instance"], row["algo"], int(row["n"]), int(row["seed"]),
                   opt_int(row["start_score"]), opt_int(row["final_score"]), float(row["ms"]), row["status"])


def write_records(records: Iterable[BenchRecord], path, append: bool = False) -> None:
    path = Path(path)
    new_file = not append or not path.exists() or path.stat().st_size == 0
    with path.open("a" if append else "w", newline="") as fh:
        w = csv.writer(fh)
        if new_file:
            w.writerow(CSV_HEADER)
        for rec in records:
            w.writerow(rec.to_row())


def read_records(path) -> list:
    with Path(path).open(newline="") as fh:
        return [BenchRecord.from_row(row) for row in csv.DictReader(fh)]


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(rec.to_row())
    return buf.getvalue()


def _run_algorithm(algo: str, sample: Sample, n: int, seed: int, options: dict) -> tuple:
    """Returns (start_score, final_score)."""
    from .ilp import ExternalSolver, binary_search_min, solve_min

    h = 2 * n - 2
    if algo == "heuristic":
        cfg = HeuristicConfig(options.get("init_rand", 100), options.get("nb_run", 50), seed)
        res = min_score_learn(sample, n, cfg)
        return None, res.score
    if algo == "oracle":
        res = enumerate_min_count(sample, n, options.get("max_enum", 10 ** 7))
        return None, res.min_count
    command = options.get("solver_cmd")
    if not command:
        raise SolverUnavailableError("no solver command configured")
    solver = ExternalSolver(command)
    if algo == "ilp":
        _, count = solve_min(sample, n, solver)
        return None, count
    if algo == "ilp-binary-search":
        res = binary_search_min(sample, n, solver)
        return None, count_accepted_up_to(res.dfa, h)
    raise InvalidConfigError(f"unknown algorithm {algo!r}")


def _worker(conn, algo, sample, n, seed, options):
    try:
        conn.send(("ok", _run_algorithm(algo, sample, n, seed, options)))
    except SolverUnavailableError as exc:
        conn.send(("unavailable", str(exc)))
    except Exception as exc:  # reported as a record, never raised
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def run_one(algo: str, sample: Sample, n: int, seed: int, timeout_ms: Optional[int],
            options: Optional[dict] = None, instance: str = "sample") -> BenchRecord:
    """Run one algorithm in a child process so it can be stopped at the
    deadline."""
    options = options or {}
    ctx = mp.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    t0 = time.perf_counter()
    proc = ctx.Process(target=_worker, args=(child, algo, sample, n, seed, options))
    proc.start()
    child.close()
    timeout = None if timeout_ms is None else timeout_ms / 1000.0
    ready = parent.poll(timeout)
    ms = (time.perf_counter() - t0) * 1000.0
    if not ready:
        proc.terminate()
        proc.join()
        return BenchRecord(instance, algo, n, seed, None, None, round(ms, 3), "timeout")
    try:
        status, payload = parent.recv()
    except EOFError:
        status, payload = "error", "worker died"
    proc.join()
    if status == "ok":
        start, final = payload
        return BenchRecord(instance, algo, n, seed, start, final, round(ms, 3), "ok")
    return BenchRecord(instance, algo, n, seed, None, None, round(ms, 3), status)


def run_bench(sample: Sample, n: int, algorithms: Sequence[str], timeout_ms: Optional[int] = None,
              seed: int = 0, repeats: int = 1, options: Optional[dict] = None,
              instance: str = "sample", csv_path=None, on_record: Optional[Callable] = None) -> list:
    """Run each algorithm `repeats` times with seeds seed, seed+1, ...
    Records are appended to `csv_path` as soon as each finishes."""
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise InvalidConfigError(f"unknown algorithm {algo!r}")
    records = []
    for algo in algorithms:
        for rep in range(repeats):
            rec = run_one(algo, sample, n, seed + rep, timeout_ms, options, instance)
            records.append(rec)
            if csv_path is not None:
                write_records([rec], csv_path, append=True)
            if on_record is not None:
                on_record(rec)
    return records

