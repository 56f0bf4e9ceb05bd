import json
import math
import os
import subprocess

import pytest

revmc = pytest.importorskip("revmc")


def test_canonicalize():
    assert revmc.canonicalize(["foo", "bar", "foo"]) == ["S1", "S2", "S1"]


def test_simulate_deterministic():
    a = revmc.simulate(2.0, 0.3, 0.6, 50, seed=42)
    b = revmc.simulate(2.0, 0.3, 0.6, 50, seed=42)
    assert a == b
    assert len(a["states"]) == 51
    assert len(a["categories"]) == 50
    assert set(a["categories"]) <= set("abc")


def test_single_transition_law():
    theta, beta = 2.0, 0.6
    got = revmc.log_p_z(["x", "y"], theta, 0.3, beta)
    assert got == pytest.approx(math.log(theta / (theta + beta)), abs=1e-12)


def test_transition_pairs():
    rows = revmc.transition_pairs(["a", "b", "a", "b"])
    assert rows == [{"x": "S1", "y": "S2", "n": 3, "cap": 2}]


def test_joint_law_sums_to_marginal():
    labels = ["a", "b", "a", "b"]
    theta, alpha, beta = 2.0, 0.3, 0.6
    cap = revmc.transition_pairs(labels)[0]["cap"]
    total = sum(
        math.exp(revmc.log_p_zk(labels, [k], theta, alpha, beta))
        for k in range(cap + 1)
    )
    assert math.log(total) == pytest.approx(
        revmc.log_p_z(labels, theta, alpha, beta), abs=1e-12
    )


def test_marginal_likelihood_beta_one_exact():
    labels = ["a", "b", "a", "b"]
    out = revmc.marginal_likelihood(labels, 2.0, 0.0, 1.0)
    assert out["se"] == 0.0
    assert out["log_p_hat"] == pytest.approx(
        revmc.log_p_z(labels, 2.0, 0.0, 1.0), abs=1e-10
    )


def test_fit_grid_sorted():
    labels = list(revmc.simulate(2.0, 0.2, 0.6, 120, seed=5)["states"])
    grid = [(1.0, 0.03, 0.5), (5.0, 0.2, 0.8), (25.0, 0.5, 0.97)]
    rows = revmc.fit_grid(labels, grid, sweeps=200, burn_in=80, seed=3, threads=2)
    assert len(rows) == 3
    assert all(rows[i]["log_p_hat"] >= rows[i + 1]["log_p_hat"] for i in range(2))


def test_predict_summary():
    labels = ["a", "b", "a", "c", "a", "b"]
    out = revmc.predict(
        labels, 2.0, 0.3, 0.6, horizon=100, draws=60, sweeps=100, burn_in=40, seed=7
    )
    assert out["draws"] == 60
    assert sum(out["histogram"].values()) == 60
    assert out["new_species_mean"] >= 0.0
    assert set(out["new_species_quantiles"]) == {10, 25, 50, 75, 90}


def test_f_evaluators_agree():
    for n in range(1, 10):
        for k in range(n + 1):
            rec = math.exp(revmc.log_f(1.0, 0.3, n, k))
            assert rec == pytest.approx(revmc.f_bruteforce(1.0, 0.3, n, k), rel=1e-10)
            assert rec == pytest.approx(revmc.f_closed(1.0, 0.3, n, k), rel=1e-10)


def test_ingest_roundtrip(tmp_path):
    p = tmp_path / "traj.txt"
    p.write_text("a\nb\n\na\n")
    assert revmc.ingest(str(p)) == ["a", "b", "a"]


@pytest.mark.skipif("REVMC_CLI_PATH" not in os.environ, reason="cli path not set")
def test_cli_simulate_then_law(tmp_path):
    cli = os.environ["REVMC_CLI_PATH"]
    sim = tmp_path / "sim.csv"
    subprocess.run(
        [cli, "simulate", "--theta", "2", "--beta", "0.6", "--steps", "8",
         "--seed", "1", "--out", str(sim)],
        check=True, capture_output=True,
    )
    out = subprocess.run(
        [cli, "law", "--trajectory", str(sim), "--theta", "2", "--beta", "0.6"],
        check=True, capture_output=True, text=True,
    )
    report = json.loads(out.stdout)
    assert report["n_transitions"] == 8
    assert report["log_p_z"] < 0.0
