# SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
# SPDX-License-Identifier: Apache-2.0

import json
import os
import pathlib

import pytest

import bicut

DATA = pathlib.Path(os.environ.get("BICUT_DATA", pathlib.Path(__file__).parents[2] / "tests" / "data"))


def test_worked_example_all_settings():
    inst = bicut.read_instance(DATA / "worked_example.json")
    assert (inst.n1, inst.n2) == (1, 1)
    for setting in bicut.SETTINGS:
        report = bicut.solve(inst, setting)
        assert report.status == "optimal"
        assert report.z_star == pytest.approx(-1.0, abs=1e-9)
        assert bicut.verify_report(inst, report).passed


def test_generated_instance_matches_oracle():
    inst = bicut.generate(8, m1=1, seed=4)
    assert inst.is_binary()
    oracle = bicut.brute_force_solve(inst, list_feasible=True)
    report = bicut.solve(inst, "IF-G", time_limit=60)
    assert report.z_star == pytest.approx(oracle.value, abs=1e-6)
    for cut in report.cuts:
        assert cut.violation_at_source > 1e-6
        if cut.scope == "global":
            for p in oracle.bilevel_feasible:
                assert cut.alpha @ p.x + cut.beta @ p.y >= cut.tau - 1e-7


def test_report_json_and_round_trip(tmp_path):
    inst = bicut.generate(6, seed=2)
    path = tmp_path / "inst.json"
    bicut.write_instance(inst, path)
    assert bicut.read_instance(path) == inst
    assert bicut.Instance.from_json(inst.to_json()) == inst
    doc = json.loads(bicut.solve(inst, "CP-O").to_json())
    assert list(doc)[:9] == ["t", "Gap", "RGap", "Nodes", "nICut", "nFCut", "tF", "tS", "status"]
    assert doc["cp_iterations"] >= 1


def test_errors():
    with pytest.raises(ValueError):
        bicut.generate(7)
    with pytest.raises(ValueError):
        bicut.solve(bicut.generate(4), "XX")
    with pytest.raises(bicut.InstanceFormatError):
        bicut.Instance.from_json("{}")
    with pytest.raises(bicut.OracleRefused):
        bicut.brute_force_solve(bicut.generate(50))
