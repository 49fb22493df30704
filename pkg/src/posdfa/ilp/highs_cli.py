"""External solver adapter around HiGHS.

Usage: ``python -m posdfa.ilp.highs_cli MODEL.lp SOLUTION.txt``

Reads an LP file, solves it and writes the plain-text solution format.
Requires the optional ``highspy`` package.
"""
from __future__ import annotations

import sys


def solve_file(lp_path: str, sol_path: str, time_limit: float | None = None) -> str:
    import highspy

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if time_limit is not None:
        h.setOptionValue("time_limit", float(time_limit))
    status = h.readModel(lp_path)
    if status == highspy.HighsStatus.kError:
        raise RuntimeError(f"HiGHS could not read {lp_path}")
    h.run()
    ms = h.getModelStatus()
    if ms == highspy.HighsModelStatus.kOptimal:
        label = "optimal"
    elif ms == highspy.HighsModelStatus.kInfeasible:
        label = "infeasible"
    elif h.getInfo().primal_solution_status == 2:
        label = "feasible"
    else:
        raise RuntimeError(f"HiGHS stopped with status {h.modelStatusToString(ms)}")
    lines = [f"STATUS {label}"]
    if label != "infeasible":
        lp = h.getLp()
        values = h.getSolution().col_value
        for name, x in zip(lp.col_names_, values):
            v = round(x)
            if v != 0:
                lines.append(f"{name} {v}")
    with open(sol_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return label


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: python -m posdfa.ilp.highs_cli MODEL.lp SOLUTION.txt", file=sys.stderr)
        return 2
    try:
        solve_file(argv[0], argv[1])
    except ImportError:
        print("highspy is not installed", file=sys.stderr)
        return 4
    except RuntimeError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
