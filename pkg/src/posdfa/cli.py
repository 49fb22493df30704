"""Command line interface.

Exit codes: 0 success, 2 malformed input, 3 enumeration or size guard
triggered, 4 no usable solver, 1 any other failure.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from . import fileio
from .automata import count_accepted_up_to, distinguishing_witness
from .errors import (
    InvalidConfigError,
    InvalidValuationError,
    ParseError,
    PosDfaError,
    SolverUnavailableError,
    TooLargeError,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_GUARD, EXIT_SOLVER = 0, 1, 2, 3, 4


def _fail(exc: Exception) -> None:
    if isinstance(exc, (ParseError, InvalidValuationError, InvalidConfigError)):
        code = EXIT_PARSE
    elif isinstance(exc, TooLargeError):
        code = EXIT_GUARD
    elif isinstance(exc, SolverUnavailableError):
        code = EXIT_SOLVER
    else:
        code = EXIT_FAIL
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except PosDfaError as exc:
            _fail(exc)


@click.group(cls=_Group)
@click.option("--seed", type=int, default=0, show_default=True, help="Base random seed.")
@click.option("--timeout-ms", type=int, default=None, help="Per-run time limit where supported.")
@click.option("--quiet", is_flag=True, help="Suppress informational output on stderr.")
@click.pass_context
def main(ctx, seed, timeout_ms, quiet):
    """Learn small DFAs from positive samples."""
    ctx.obj = {"seed": seed, "timeout_ms": timeout_ms, "quiet": quiet}


def _info(ctx, text):
    if not ctx.obj.get("quiet"):
        click.echo(text, err=True)


@main.command()
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--states", type=int, required=True)
@click.option("--init-rand", type=int, default=100, show_default=True)
@click.option("--nb-run", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the global seed.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def learn(ctx, sample_path, states, init_rand, nb_run, seed, out):
    """Run the randomised hill-climbing learner."""
    from .heuristic import HeuristicConfig, min_score_learn

    sample = fileio.read_sample(sample_path)
    seed = ctx.obj["seed"] if seed is None else seed
    res = min_score_learn(sample, states, HeuristicConfig(init_rand, nb_run, seed))
    fileio.write_dfa(res.dfa, out)
    click.echo(f"score={res.score} start={res.start_state}")


@main.command()
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--states", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--bound", type=int, default=None, help="Emit the feasibility query xF <= BOUND instead.")
def encode(sample_path, states, out, bound):
    """Write the integer program as an LP file."""
    from .ilp import build_model, emit_lp

    model = build_model(fileio.read_sample(sample_path), states, bound)
    Path(out).write_text(emit_lp(model))
    click.echo(f"variables={len(model.variables)} constraints={len(model.constraints)}")


@main.command()
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--states", type=int, required=True)
@click.option("--solver-cmd", default=None, help="Command template with {lp} and {sol}; 'highs' uses the bundled adapter.")
@click.option("--binary-search", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def solve(ctx, sample_path, states, solver_cmd, binary_search, out):
    """Solve the integer program with an external solver."""
    from .ilp import ExternalSolver, binary_search_min, highs_command, solve_min

    sample = fileio.read_sample(sample_path)
    if solver_cmd == "highs":
        solver_cmd = highs_command()
    timeout = None if ctx.obj["timeout_ms"] is None else ctx.obj["timeout_ms"] / 1000
    solver = ExternalSolver(solver_cmd, timeout)
    if binary_search:
        res = binary_search_min(sample, states, solver)
        dfa, count = res.dfa, res.count
        _info(ctx, f"queries={res.queries}")
    else:
        dfa, count = solve_min(sample, states, solver)
    fileio.write_dfa(dfa, out)
    click.echo(f"count={count}")


@main.command()
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--states", type=int, required=True)
@click.option("--k", "k", type=int, default=None, help="Answer the decision question count <= k.")
@click.option("--max-enum", type=int, default=10 ** 7, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the optimal DFA.")
def oracle(sample_path, states, k, max_enum, out):
    """Exhaustive search over all DFAs with the given number of states."""
    from .oracle import enumerate_min_count

    res = enumerate_min_count(fileio.read_sample(sample_path), states, max_enum)
    if out:
        fileio.write_dfa(res.witness, out)
    if k is None:
        click.echo(f"min_count={res.min_count}")
    else:
        click.echo(f"decision={'true' if res.min_count <= k else 'false'}")


@main.command()
@click.option("--apn", "apn_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out-sample", type=click.Path(dir_okay=False), default=None)
@click.option("--witness", type=click.Path(dir_okay=False), default=None, help="Write the witness DFA here.")
@click.option("--valuation", default=None, help='Satisfying valuation, e.g. "1=T 2=F 3=F".')
@click.option("--audit", is_flag=True, help="Check the witness against the sample and budget.")
@click.option("--census", type=click.Choice(["formula", "exact"]), default="formula", show_default=True)
@click.option("--scale", type=click.Choice(["full", "tiny"]), default="full", show_default=True)
@click.option("--k", "tiny_k", type=int, default=None)
@click.option("--d", "tiny_d", type=int, default=None)
@click.option("--T", "tiny_T", type=int, default=None)
@click.option("--M", "tiny_M", type=int, default=None)
def reduce(apn_path, out_sample, witness, valuation, audit, census, scale, tiny_k, tiny_d, tiny_T, tiny_M):
    """Build the sample and bounds from a satisfiability instance."""
    from . import reduction as red

    inst = red.parse_apn(Path(apn_path).read_text())
    if scale == "tiny":
        if None in (tiny_k, tiny_d, tiny_T, tiny_M):
            raise InvalidConfigError("--scale tiny needs --k, --d, --T and --M")
        params = red.tiny_params(inst, k=tiny_k, d=tiny_d, T=tiny_T, M=tiny_M)
    else:
        params = red.choose_params(inst, census)
    ws = red.build_word_sets(inst, params)
    bound = red.problem1_bound(ws, params)
    click.echo(f"r={params.r} s={params.s} M={params.M} T={params.T} k={params.k} d={params.d} "
               f"n={params.n} m={params.m} words={len(ws)} count_bound={bound}")
    if out_sample:
        fileio.write_sample(ws.to_sample(), out_sample)
    if witness or audit:
        if valuation is None:
            val = next(inst.satisfying_valuations(), None)
            if val is None:
                raise InvalidValuationError("instance is unsatisfiable; no witness exists")
        else:
            val = red.parse_valuation(valuation, inst.r)
        dfa = red.build_witness_dfa(inst, val, params)
        if witness:
            fileio.write_dfa(dfa, witness)
        if audit:
            report = red.audit_suitability(dfa, ws, params, inst)
            for line in report.lines():
                click.echo(line)


@main.command("gen-sample")
@click.option("--seed", type=int, default=None, help="Overrides the global seed.")
@click.option("--words", "n_words", type=int, default=1000, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--hidden", type=click.Path(dir_okay=False), default=None, help="Write the hidden DFA here.")
@click.pass_context
def gen_sample(ctx, seed, n_words, out, hidden):
    """Draw a sample from a random hidden DFA."""
    from .bench import generate_experiment

    seed = ctx.obj["seed"] if seed is None else seed
    dfa, sample = generate_experiment(seed, n_words)
    fileio.write_sample(sample, out)
    if hidden:
        fileio.write_dfa(dfa, hidden)
    click.echo(f"hidden_states={dfa.n_states} words={len(sample)}")


@main.command()
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--states", type=int, required=True)
@click.option("--algo", "algos", multiple=True, required=True,
              type=click.Choice(["heuristic", "ilp", "ilp-binary-search", "oracle"]))
@click.option("--repeats", type=int, default=1, show_default=True)
@click.option("--init-rand", type=int, default=100, show_default=True)
@click.option("--nb-run", type=int, default=50, show_default=True)
@click.option("--solver-cmd", default=None)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), required=True)
@click.option("--instance", default=None, help="Instance label; defaults to the sample file name.")
@click.pass_context
def bench(ctx, sample_path, states, algos, repeats, init_rand, nb_run, solver_cmd, csv_path, instance):
    """Time algorithms on one sample and append CSV records."""
    from .bench import run_bench
    from .ilp import highs_command

    if solver_cmd == "highs":
        solver_cmd = highs_command()
    sample = fileio.read_sample(sample_path)
    options = {"init_rand": init_rand, "nb_run": nb_run, "solver_cmd": solver_cmd}
    records = run_bench(sample, states, algos, ctx.obj["timeout_ms"], ctx.obj["seed"], repeats, options,
                        instance or Path(sample_path).name, csv_path)
    for rec in records:
        _info(ctx, f"{rec.algo} seed={rec.seed} status={rec.status} score={rec.final_score} ms={rec.ms}")


@main.command()
@click.argument("dfa_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("m", type=int)
def count(dfa_path, m):
    """Number of accepted words of length at most M."""
    click.echo(str(count_accepted_up_to(fileio.read_dfa(dfa_path), m)))


@main.command()
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
def witness(first, second):
    """Shortest word accepted by exactly one of two DFAs."""
    a, b = fileio.read_dfa(first), fileio.read_dfa(second)
    w = distinguishing_witness(a, b)
    if w is None:
        click.echo("equal")
    else:
        click.echo(f"length={len(w)} word={a.alphabet.render(w)}")


if __name__ == "__main__":
    main()
