"""Running the model through a solver and extracting the optimal DFA.

A solver is any callable taking an IlpModel and returning an
IlpSolution. Two are provided: an external command (any MILP solver
wrapped to read an LP file and write the solution format) and an
exhaustive search over DFAs for very small models.
"""
from __future__ import annotations

import itertools
import math
import shlex
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path
from typing import Callable, NamedTuple, Optional

from ..automata import Dfa, count_accepted_up_to, max_count, trivial_dfa
from ..errors import SolverError, SolverProtocolError, SolverUnavailableError, TooLargeError
from ..sample import Sample
from .encoder import OBJ, assignment_from_dfa, build_model, decode_solution
from .lpformat import emit_lp, parse_solution
from .model import IlpModel, IlpSolution

Solver = Callable[[IlpModel], IlpSolution]


def highs_command() -> Optional[str]:
    """Command template for the bundled HiGHS adapter, or None if highspy
    is not importable."""
    try:
        import highspy  # noqa: F401
    except ImportError:
        return None
    return f"{shlex.quote(sys.executable)} -m posdfa.ilp.highs_cli {{lp}} {{sol}}"


def solve_external(lp_document: str, solver_command: Optional[str], timeout: Optional[float] = None) -> IlpSolution:
    """Write the LP to a temporary file, run the command template (with
    ``{lp}`` and ``{sol}`` placeholders) and parse the solution file."""
    if not solver_command or not solver_command.strip():
        raise SolverUnavailableError("no solver command configured")
    if "{lp}" not in solver_command or "{sol}" not in solver_command:
        raise SolverError("solver command must contain {lp} and {sol}")
    with tempfile.TemporaryDirectory(prefix="posdfa-") as tmp:
        lp_path = Path(tmp) / "model.lp"
        sol_path = Path(tmp) / "model.sol"
        lp_path.write_text(lp_document)
        argv = [
            part.replace("{lp}", str(lp_path)).replace("{sol}", str(sol_path))
            for part in shlex.split(solver_command)
        ]
        if shutil.which(argv[0]) is None:
            raise SolverUnavailableError(f"solver executable not found: {argv[0]}")
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=timeout)
        except FileNotFoundError:
            raise SolverUnavailableError(f"solver executable not found: {argv[0]}") from None
        except subprocess.TimeoutExpired:
            raise SolverError("solver timed out") from None
        if proc.returncode == 4:
            raise SolverUnavailableError(proc.stderr.strip() or "solver unavailable")
        if proc.returncode != 0:
            raise SolverError(f"solver exited with code {proc.returncode}: {proc.stderr.strip()}")
        if not sol_path.exists():
            raise SolverProtocolError("solver did not write a solution file")
        return parse_solution(sol_path.read_text())


class ExternalSolver:
    def __init__(self, command: Optional[str], timeout: Optional[float] = None):
        self.command = command
        self.timeout = timeout

    def __call__(self, model: IlpModel) -> IlpSolution:
        return solve_external(emit_lp(model), self.command, self.timeout)


class ExhaustiveSolver:
    """Tries every assignment of the transition and final-state binaries.

    The run variables are forced by the transitions and the count
    variables are set to their least feasible values, which are the exact
    counts. Every candidate is checked against the model's own
    constraints. Only usable for tiny models.
    """

    def __init__(self, max_candidates: int = 10 ** 6):
        self.max_candidates = max_candidates

    def __call__(self, model: IlpModel) -> IlpSolution:
        n, sigma = model.meta["n"], model.meta["sigma"]
        p: Sample = model.meta["sample"]
        if n ** (n * sigma) * 2 ** n > self.max_candidates:
            raise TooLargeError("model too large for exhaustive search")
        best = None
        best_value = None
        for flat in itertools.product(range(n), repeat=n * sigma):
            table = [flat[i * sigma:(i + 1) * sigma] for i in range(n)]
            for mask in range(2 ** n):
                final = frozenset(q for q in range(n) if mask >> q & 1)
                x = assignment_from_dfa(model, Dfa(p.alphabet, table, final, 0))
                if model.first_violation(x) is not None:
                    continue
                value = model.objective_value(x)
                if best is None or value < best_value:
                    best, best_value = x, value
                    if not model.objective:
                        return IlpSolution("feasible", best)
        if best is None:
            return IlpSolution("infeasible", {})
        return IlpSolution("optimal", best)


def solve_min(p: Sample, n: int, solver: Solver) -> tuple:
    """Minimise the model directly. Returns (dfa, count)."""
    model = build_model(p, n)
    sol = solver(model)
    if not sol.is_feasible:
        raise SolverError("solver reported the model infeasible, but it always has a solution")
    dfa = decode_solution(model, sol)
    return dfa, count_accepted_up_to(dfa, 2 * n - 2)


class SearchResult(NamedTuple):
    dfa: Dfa
    count: int
    queries: int


def binary_search_min(p: Sample, n: int, solver: Solver) -> SearchResult:
    """Locate the minimum count with feasibility queries ``xF <= k``.

    The search starts from the interval [words of P no longer than 2n-2,
    total number of such words]; the upper end is always reachable by the
    one-state DFA accepting everything. Each feasible answer is decoded
    and its true count tightens the upper end.
    """
    h = 2 * n - 2
    lo = sum(1 for w in p.words if len(w) <= h)
    hi = max_count(n, p.sigma)
    best = trivial_dfa(p.alphabet)
    queries = 0
    while lo < hi:
        mid = (lo + hi) // 2
        model = build_model(p, n, bound=mid)
        sol = solver(model)
        queries += 1
        if sol.is_feasible:
            dfa = decode_solution(model, sol)
            best = dfa
            hi = count_accepted_up_to(dfa, h)
        else:
            lo = mid + 1
    return SearchResult(best, count_accepted_up_to(best, h), queries)


def query_bound(n: int, sigma: int) -> int:
    """Worst-case number of feasibility queries made by binary_search_min."""
    return math.ceil(math.log2(max_count(n, sigma) + 1))


def decide_with_solver(p: Sample, n: int, k: int, solver: Solver) -> bool:
    """Is there a DFA with at most n states accepting P with count <= k?"""
    if k < 0:
        return False
    model = build_model(p, n, bound=min(k, max_count(n, p.sigma)))
    sol = solver(model)
    if sol.is_feasible:
        decode_solution(model, sol)
        return True
    return False


__all__ = [
    "OBJ",
    "ExhaustiveSolver",
    "ExternalSolver",
    "SearchResult",
    "Solver",
    "binary_search_min",
    "decide_with_solver",
    "highs_command",
    "query_bound",
    "solve_external",
    "solve_min",
]
