#!/usr/bin/env python3
"""Solve an MPS model with HiGHS and write a locus solution file.

Usage: highs_adapter.py MODEL.mps SOLUTION.sol [TIME_LIMIT|inf] [GAP]

    export LOCUS_SOLVER_CMD='python3 scripts/highs_adapter.py {mps} {sol} {time} {gap}'
"""
import math
import sys

import highspy


def main(argv):
    if len(argv) < 3:
        sys.exit(__doc__)
    mps, sol = argv[1], argv[2]
    limit = argv[3] if len(argv) > 3 else "inf"
    gap = float(argv[4]) if len(argv) > 4 else 0.0

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if limit != "inf":
        h.setOptionValue("time_limit", float(limit))
    h.setOptionValue("mip_rel_gap", gap)
    if h.readModel(mps) != highspy.HighsStatus.kOk:
        sys.exit(f"cannot read {mps}")
    h.run()

    status = h.getModelStatus()
    info = h.getInfo()
    has_point = info.primal_solution_status == 2
    if status == highspy.HighsModelStatus.kOptimal:
        label = "OPTIMAL"
    elif status == highspy.HighsModelStatus.kInfeasible:
        label = "INFEASIBLE"
    elif status == highspy.HighsModelStatus.kTimeLimit:
        label = "TIME_LIMIT"
    elif has_point:
        label = "FEASIBLE"
    else:
        sys.exit(f"solver stopped with {h.modelStatusToString(status)}")

    lines = [f"status {label}"]
    if has_point:
        lines.append(f"objective {info.objective_function_value!r}")
        g = info.mip_gap
        lines.append(f"gap {g!r}" if math.isfinite(g) else "gap inf")
        names = h.getLp().col_names_
        for name, value in zip(names, h.getSolution().col_value):
            lines.append(f"{name} {value!r}")
    with open(sol, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv)
