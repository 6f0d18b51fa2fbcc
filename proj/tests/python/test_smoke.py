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

from fractions import Fraction

import pytest

import prtb


def test_generate_and_round_trip():
    f = prtb.generate("eq", 1)
    assert (f.nx, f.ny, f.nz) == (2, 2, 2)
    assert f.value(0, 0) == 1
    assert prtb.parse_function(prtb.serialize_function(f)) == f


def test_partition_bound_is_exact():
    f = prtb.generate("eq", 1)
    res = prtb.compute_prt(f, Fraction(0))
    assert res.value == Fraction(2)
    assert isinstance(res.value, Fraction)
    assert prtb.verify_solution(f, Fraction(0), res.solution).ok
    assert prtb.verify_witness(f, Fraction(0), res.witness).ok
    assert res.witness.value == Fraction(2)

    # the closed form 2 - 2*eps
    assert prtb.compute_prt(f, Fraction(1, 4)).value == Fraction(3, 2)


def test_exact_rcc():
    f = prtb.generate("eq", 1)
    res = prtb.exact_rcc(f, Fraction(1, 4))
    assert res.c_star == 1
    assert res.game_values == {0: Fraction(1, 2), 1: Fraction(0)}


def test_compile_and_stats():
    f = prtb.generate("eq", 1)
    sol = prtb.compute_prt(f, Fraction(0)).solution
    p = prtb.compile_protocol(sol)
    assert p.declared_eff == Fraction(1, 2)
    stats = prtb.exact_stats(p, f)
    assert stats.eff == Fraction(1, 2)
    assert stats.worst_err == Fraction(0)
    back = prtb.extract_weights(p)
    assert back.value == sol.value


def test_boost_counts_and_error():
    f = prtb.generate("eq", 1)
    p = prtb.compile_protocol(prtb.compute_prt(f, Fraction(0)).solution)
    b = prtb.boost(p, f, Fraction(0), Fraction(1, 8))
    assert b.repetitions == 3
    assert b.c == 2
    assert prtb.exact_stats(b, f).worst_err == Fraction(1, 16)


def test_simulation_is_deterministic():
    f = prtb.generate("eq", 1)
    p = prtb.compile_protocol(prtb.compute_prt(f, Fraction(0)).solution)
    a = prtb.simulate(p, f, samples=5000, seed=3)
    b = prtb.simulate(p, f, samples=5000, seed=3)
    assert [c.eff_estimate for c in a.cells] == [c.eff_estimate for c in b.cells]


def test_sandwich_report():
    f = prtb.generate("eq", 1)
    rep = prtb.verify_sandwich(f, Fraction(1, 4), Fraction(1, 8))
    assert rep.ok
    assert "PASS" in rep.to_text()


def test_protocol_text_round_trip():
    f = prtb.generate("eq", 1)
    p = prtb.compile_protocol(prtb.compute_prt(f, Fraction(1, 4)).solution)
    again = prtb.ZeroCommProtocol.from_text(p.to_text())
    assert again.declared_eff == p.declared_eff
    assert again.validate().ok


def test_errors_are_typed():
    with pytest.raises(ValueError):
        prtb.compute_prt(prtb.generate("eq", 1), Fraction(1, 2))
    with pytest.raises(prtb.CapExceeded):
        prtb.generate("eq", 21)
    with pytest.raises(TypeError):
        prtb.compute_prt(prtb.generate("eq", 1), 0.25)  # floats are refused


def test_random_generator_contract():
    f = prtb.generate("random", 3, density=Fraction(2, 3), seed=7)
    g = prtb.generate("random", 3, density=Fraction(2, 3), seed=7)
    assert f == g
