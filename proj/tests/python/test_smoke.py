import json
import pathlib

import pytest

import leadcon

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def test_greedy_on_mixed_configuration_fixture():
    rep = leadcon.solve(load("mixed_config.json"), algo="greedy", sense="opt")
    assert rep["leader_cost"] == "2"


def test_milp_matches_oracle_on_random_game():
    g = leadcon.gen_random(3, 3, seed=5)
    milp = leadcon.solve(g, algo="milp")
    oracle = leadcon.solve(g, algo="oracle")
    assert milp["status"] == "optimal"
    assert milp["leader_cost"] == oracle["leader_cost"]


def test_check_round_trip():
    g = load("asym_mixed_ose.json")
    rep = leadcon.solve(g, algo="milp")
    assert rep["leader_cost"] == "1/2"
    verdict = leadcon.check(g, rep["leader_strategy"], rep["profile"])
    assert verdict["is_nash"]
    assert verdict["leader_cost"] == "1/2"


def test_model_size_and_export():
    g = leadcon.gen_random(20, 10, seed=1)
    size = leadcon.model_size(g, mode="paper-faithful")
    assert (size["variables"], size["binaries"], size["constraints"]) == (430, 210, 732)
    small = leadcon.gen_random(3, 2, seed=1)
    assert "Binaries" in leadcon.export_lp(small)


def test_gadgets():
    g = leadcon.gen_sat("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
    assert leadcon.solve(g, algo="milp")["leader_cost"] == "4"
    kp = leadcon.gen_partition([1, 1, 1, 1], k=2)
    assert len(kp["resources"]) == 6


def test_validation_errors_surface():
    with pytest.raises(ValueError):
        leadcon.solve(leadcon.gen_random(2, 2, seed=1), algo="nope")
