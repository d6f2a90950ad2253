# SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
# SPDX-License-Identifier: Apache-2.0

"""Integer bilevel programs with a convex quadratic follower."""

from ._bicut import (
    SETTINGS,
    Cut,
    Instance,
    InstanceFormatError,
    OracleRefused,
    OracleResult,
    Point,
    SolveReport,
    SolverInvariantError,
    VerifyOutcome,
    brute_force_solve,
    evaluate_q,
    generate,
    lattice_size,
    read_instance,
    solve,
    verify_report,
    write_instance,
)

__all__ = [
    "SETTINGS",
    "Cut",
    "Instance",
    "InstanceFormatError",
    "OracleRefused",
    "OracleResult",
    "Point",
    "SolveReport",
    "SolverInvariantError",
    "VerifyOutcome",
    "brute_force_solve",
    "evaluate_q",
    "generate",
    "lattice_size",
    "read_instance",
    "solve",
    "verify_report",
    "write_instance",
]
