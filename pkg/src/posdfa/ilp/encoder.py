"""Integer program whose optimum is the least number of accepted words of
length at most 2n-2 over all n-state DFAs accepting a sample.

Variable families (p, q states; a symbol; u prefix-trie node; k length):

    t_p_a_q     binary, transition p --a--> q
    f_q         binary, q is final
    w_u_q       binary, reading prefix u ends in q
    c_q_k       integer, words of length k ending in q
    cp_p_a_q_k  integer, share of c_p_k carried along p --a--> q
    cf_q_k      integer, c_q_k when q is final and 0 otherwise
    xF          integer, accepted words of length <= 2n-2 (minimised)

Products of a binary and an integer variable are linearised with big-M
constraints. Those only bound the carried counts from below, so xF is an
upper bound on the true count of the encoded DFA, tight at the optimum.
"""
from __future__ import annotations

from typing import Optional

from ..automata import Dfa, count_accepted_up_to, count_vectors, max_count
from ..errors import InvalidConfigError, InvalidSolutionError
from ..sample import Sample, recognizes_sample
from .model import IlpModel, IlpSolution


def t_var(p, a, q):
    return f"t_{p}_{a}_{q}"


def f_var(q):
    return f"f_{q}"


def w_var(u, q):
    return f"w_{u}_{q}"


def c_var(q, k):
    return f"c_{q}_{k}"


def cp_var(p, a, q, k):
    return f"cp_{p}_{a}_{q}_{k}"


def cf_var(q, k):
    return f"cf_{q}_{k}"


OBJ = "xF"


def build_model(p: Sample, n: int, bound: Optional[int] = None) -> IlpModel:
    """Build the minimisation model. With `bound` set, the objective is
    dropped and the constraint ``xF <= bound`` is added, turning the model
    into a feasibility query."""
    if n < 1:
        raise InvalidConfigError("n must be at least 1")
    sigma = p.sigma
    trie = p.trie
    h = 2 * n - 2
    total = max_count(n, sigma)
    big_m = total + 1
    states = range(n)
    syms = range(sigma)
    model = IlpModel(meta={"n": n, "sigma": sigma, "sample": p, "bound": bound})

    for q0 in states:
        for a in syms:
            for q in states:
                model.add_variable(t_var(q0, a, q), "binary")
    for q in states:
        model.add_variable(f_var(q), "binary")
    for u in range(len(trie)):
        for q in states:
            model.add_variable(w_var(u, q), "binary")
    for q in states:
        for k in range(h + 1):
            model.add_variable(c_var(q, k), "integer", 0, sigma ** k)
    for q0 in states:
        for a in syms:
            for q in states:
                for k in range(h):
                    model.add_variable(cp_var(q0, a, q, k), "integer", 0, sigma ** k)
    for q in states:
        for k in range(h + 1):
            model.add_variable(cf_var(q, k), "integer", 0, sigma ** k)
    model.add_variable(OBJ, "integer", 0, total)

    # complete deterministic transition table
    for q0 in states:
        for a in syms:
            model.add_constraint(f"dfa_{q0}_{a}", [(1, t_var(q0, a, q)) for q in states], "=", 1)

    # runs of the sample prefixes
    model.add_constraint("run_init", [(1, w_var(0, 0))], "=", 1)
    for u in range(len(trie)):
        model.add_constraint(f"run_unique_{u}", [(1, w_var(u, q)) for q in states], "=", 1)
    for v in range(1, len(trie)):
        u, a = trie.parent[v], trie.symbol[v]
        for q0 in states:
            for q in states:
                model.add_constraint(
                    f"run_step_{v}_{q0}_{q}",
                    [(1, w_var(u, q0)), (1, t_var(q0, a, q)), (-1, w_var(v, q))],
                    "<=",
                    1,
                )

    # sample words end in final states
    for u in trie.terminal_nodes():
        for q in states:
            model.add_constraint(f"consistent_{u}_{q}", [(1, w_var(u, q)), (-1, f_var(q))], "<=", 0)

    # counting
    for q in states:
        model.add_constraint(f"count_init_{q}", [(1, c_var(q, 0))], "=", 1 if q == 0 else 0)
    for q0 in states:
        for a in syms:
            for q in states:
                for k in range(h):
                    model.add_constraint(
                        f"count_carry_{q0}_{a}_{q}_{k}",
                        [(1, c_var(q0, k)), (-1, cp_var(q0, a, q, k)), (big_m, t_var(q0, a, q))],
                        "<=",
                        big_m,
                    )
                    model.add_constraint(
                        f"count_gate_{q0}_{a}_{q}_{k}",
                        [(1, cp_var(q0, a, q, k)), (-big_m, t_var(q0, a, q))],
                        "<=",
                        0,
                    )
    for q in states:
        for k in range(1, h + 1):
            terms = [(1, c_var(q, k))]
            terms += [(-1, cp_var(q0, a, q, k - 1)) for q0 in states for a in syms]
            model.add_constraint(f"count_step_{q}_{k}", terms, "=", 0)
    for q in states:
        for k in range(h + 1):
            model.add_constraint(
                f"final_carry_{q}_{k}",
                [(1, c_var(q, k)), (-1, cf_var(q, k)), (big_m, f_var(q))],
                "<=",
                big_m,
            )
            model.add_constraint(f"final_gate_{q}_{k}", [(1, cf_var(q, k)), (-big_m, f_var(q))], "<=", 0)
    model.add_constraint(
        "final_total",
        [(1, OBJ)] + [(-1, cf_var(q, k)) for q in states for k in range(h + 1)],
        "=",
        0,
    )

    if bound is None:
        model.objective = ((1, OBJ),)
    else:
        model.add_constraint("objective_bound", [(1, OBJ)], "<=", bound)
        model.objective = ()
    return model


def expected_variable_count(n: int, sigma: int, n_prefixes: int) -> int:
    """Closed-form size of each variable family, summed."""
    h = 2 * n - 2
    return (
        n * n * sigma  # transitions
        + n  # final flags
        + n_prefixes * n  # runs
        + n * (h + 1)  # counts
        + n * n * sigma * h  # carried counts
        + n * (h + 1) + 1  # final counts and the total
    )


def expected_constraint_count(n: int, sigma: int, n_prefixes: int, n_words: int) -> int:
    h = 2 * n - 2
    return (
        n * sigma
        + 1 + n_prefixes + (n_prefixes - 1) * n * n
        + n_words * n
        + n
        + 2 * n * n * sigma * h
        + n * h
        + 2 * n * (h + 1)
        + 1
    )


def assignment_from_dfa(model: IlpModel, dfa: Dfa) -> dict:
    """The assignment encoding a DFA with initial state 0, with every
    count variable set to its exact value."""
    n, sigma = model.meta["n"], model.meta["sigma"]
    p: Sample = model.meta["sample"]
    if dfa.n_states != n or dfa.sigma != sigma or dfa.init != 0:
        raise InvalidConfigError("DFA shape does not match the model")
    h = 2 * n - 2
    x = {}
    for q0 in range(n):
        for a in range(sigma):
            for q in range(n):
                x[t_var(q0, a, q)] = int(dfa.delta[q0][a] == q)
    for q in range(n):
        x[f_var(q)] = int(q in dfa.final)
    trie = p.trie
    run = [0] * len(trie)
    for v in range(1, len(trie)):
        run[v] = dfa.delta[run[trie.parent[v]]][trie.symbol[v]]
    for u in range(len(trie)):
        for q in range(n):
            x[w_var(u, q)] = int(run[u] == q)
    total = 0
    for k, vec in enumerate(count_vectors(dfa, h)):
        for q in range(n):
            x[c_var(q, k)] = vec[q]
            x[cf_var(q, k)] = vec[q] if q in dfa.final else 0
            total += x[cf_var(q, k)]
            if k < h:
                for q0 in range(n):
                    for a in range(sigma):
                        x[cp_var(q0, a, q, k)] = 0
        if k < h:
            for q0 in range(n):
                for a in range(sigma):
                    x[cp_var(q0, a, dfa.delta[q0][a], k)] = vec[q0]
    x[OBJ] = total
    return x


def decode_solution(model: IlpModel, solution: IlpSolution) -> Dfa:
    """Check a solver assignment against every constraint and turn it into
    a DFA. Raises InvalidSolutionError naming the first violation."""
    if not solution.is_feasible:
        raise InvalidSolutionError(f"solution status is {solution.status}")
    values = solution.values
    bad = model.first_violation(values)
    if bad is not None:
        name, reason = bad
        raise InvalidSolutionError(f"{reason} violated: {name}", name)
    n, sigma = model.meta["n"], model.meta["sigma"]
    p: Sample = model.meta["sample"]
    delta = []
    for q0 in range(n):
        row = []
        for a in range(sigma):
            row.append(next(q for q in range(n) if values.get(t_var(q0, a, q), 0) == 1))
        delta.append(row)
    final = frozenset(q for q in range(n) if values.get(f_var(q), 0) == 1)
    dfa = Dfa(p.alphabet, delta, final, 0)
    if not recognizes_sample(dfa, p):
        raise InvalidSolutionError("decoded DFA rejects a sample word", "consistent")
    count = count_accepted_up_to(dfa, 2 * n - 2)
    objective = int(values.get(OBJ, 0))
    if count > objective:
        raise InvalidSolutionError("decoded DFA accepts more words than xF states", "final_total")
    if solution.status == "optimal" and model.meta.get("bound") is None and count != objective:
        raise InvalidSolutionError(
            f"reported optimum {objective} exceeds the decoded DFA count {count}", "final_total"
        )
    return dfa

