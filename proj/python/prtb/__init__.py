# Copyright 2026 The prtb Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""One-way partition bound toolkit.

Exact rational computation of the one-way partition bound of small partial
functions, compilation of optimal weights into zero-communication protocols,
protocol conversion and boosting, and end-to-end verification of the
lower/upper sandwich against exact one-way randomized communication
complexity. All values are `fractions.Fraction`; nothing is approximated.
"""

from prtb._core import (
    UNDEFINED,
    BoostedProtocol,
    Caps,
    CapExceeded,
    CheckReport,
    DualWitness,
    EstimatedCell,
    InputError,
    OneWayProtocol,
    PartialFunction,
    PrimalSolution,
    ProtocolStats,
    PrtResult,
    RccResult,
    Report,
    SimulationResult,
    ZeroCommProtocol,
    boost,
    compile_protocol,
    compute_prt,
    exact_rcc,
    exact_stats,
    extract_weights,
    generate,
    min_error_at_cost,
    oneway_to_zerocomm,
    parse_function,
    permute,
    run_suite,
    serialize_function,
    simulate,
    verify_sandwich,
    verify_solution,
    verify_witness,
)

__all__ = [
    "UNDEFINED",
    "BoostedProtocol",
    "Caps",
    "CapExceeded",
    "CheckReport",
    "DualWitness",
    "EstimatedCell",
    "InputError",
    "OneWayProtocol",
    "PartialFunction",
    "PrimalSolution",
    "ProtocolStats",
    "PrtResult",
    "RccResult",
    "Report",
    "SimulationResult",
    "ZeroCommProtocol",
    "boost",
    "compile_protocol",
    "compute_prt",
    "exact_rcc",
    "exact_stats",
    "extract_weights",
    "generate",
    "min_error_at_cost",
    "oneway_to_zerocomm",
    "parse_function",
    "permute",
    "run_suite",
    "serialize_function",
    "simulate",
    "verify_sandwich",
    "verify_solution",
    "verify_witness",
]

__version__ = "0.1.0"
