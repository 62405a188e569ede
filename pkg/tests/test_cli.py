import json

import pytest

from mobex import cli
from mobex.graphs import MoebiusGraph, graph_to_json


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_graphs_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "graphs", "--profile", "3:2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 7
    for record in data:
        g = MoebiusGraph(record["rotations"], record["edges"], record["twists"])
        assert graph_to_json(g)  # structurally valid
        assert record["aut_moebius"] >= 1


def test_graphs_budget_violation_exit_code(capsys):
    code, _, err = run_cli(capsys, "graphs", "--profile", "3:20")
    assert code == cli.EXIT_BUDGET
    assert json.loads(err)["code"] == cli.EXIT_BUDGET


def test_expand_json_schema(capsys):
    code, out, _ = run_cli(capsys, "expand", "--beta", "4", "--tag", "master",
                           "--max-degree", "4")
    assert code == 0
    data = json.loads(out)
    t2 = next(rec for rec in data if rec["monomial"] == [2])
    assert t2["coeff"] == {"2": "1", "1": "-1/2"}


def test_expand_threads_do_not_change_bytes(capsys):
    code1, out1, _ = run_cli(capsys, "expand", "--beta", "1", "--tag", "master",
                             "--max-degree", "6", "--threads", "1")
    code2, out2, _ = run_cli(capsys, "expand", "--beta", "1", "--tag", "master",
                             "--max-degree", "6", "--threads", "3")
    assert code1 == code2 == 0
    assert out1 == out2


def test_expand_matches_golden_file(capsys):
    import pathlib
    golden = pathlib.Path(__file__).with_name("golden_expand_beta4_master_d6.json")
    code, out, _ = run_cli(capsys, "expand", "--beta", "4", "--tag", "master",
                           "--max-degree", "6")
    assert code == 0
    assert out == golden.read_text()


def test_expand_usage_error(capsys):
    code, _, err = run_cli(capsys, "expand", "--beta", "3", "--max-degree", "4")
    assert code == cli.EXIT_USAGE
    assert "beta" in json.loads(err)["error"]


def test_mu_subcommand(tmp_path, capsys):
    klein = MoebiusGraph([(0, 1, 2, 3)], [(0, 1), (2, 3)], [True, True])
    path = tmp_path / "klein.json"
    path.write_text(graph_to_json(klein))
    code, out, _ = run_cli(capsys, "mu", "--graph", str(path), "--beta", "4")
    assert code == 0
    data = json.loads(out)
    assert data["mu_bruteforce"] == data["mu_closed"] == 4
    assert data["agree"] is True


def test_mu_structural_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"rotations\": [[0]], \"edges\": [[0, 0]], \"twists\": [false]}")
    code, _, err = run_cli(capsys, "mu", "--graph", str(path), "--beta", "2")
    assert code == cli.EXIT_STRUCTURAL


def test_oracle_subcommand(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--beta", "4", "--n", "2",
                           "--max-degree", "4", "--tag", "master")
    assert code == 0
    data = json.loads(out)
    assert data and all(rec["equal"] for rec in data)


def test_oracle_mc_subcommand(capsys):
    code, out, _ = run_cli(capsys, "oracle", "mc", "--beta", "1", "--n", "2",
                           "--powers", "2", "--samples", "2000", "--seed", "7")
    assert code == 0
    data = json.loads(out)
    assert abs(data["mean"] - 6) < 4 * data["stderr"]


def test_penner_series_and_euler(capsys):
    code, out, _ = run_cli(capsys, "penner", "--model", "K", "--alpha", "2",
                           "--order", "2")
    assert code == 0
    data = json.loads(out)
    assert data["1"] == {"1": "-1/12", "2": "-1/2", "3": "2/3"}

    code, out, _ = run_cli(capsys, "penner", "euler", "--q", "1", "--n", "1")
    assert code == 0
    assert json.loads(out)["euler_characteristic"] == "1/24"


def test_charpoly_sides_and_verify(capsys):
    code, out, _ = run_cli(capsys, "charpoly", "--ensemble", "goe", "--side",
                           "lhs", "--max-degree", "4")
    assert code == 0
    lhs = json.loads(out)
    code, out, _ = run_cli(capsys, "charpoly", "--ensemble", "gse", "--side",
                           "rhs", "--max-degree", "4")
    assert code == 0
    assert json.loads(out) == lhs

    code, out, _ = run_cli(capsys, "charpoly", "verify", "--which", "BHQ",
                           "--N", "1", "--k", "1")
    assert code == 0
    assert json.loads(out)["equal"] is True


def test_clt_subcommand(capsys):
    code, out, _ = run_cli(capsys, "clt", "--alpha", "2", "--jmax", "3",
                           "--verify", "--max-degree", "6")
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True
    assert dict((tuple(p), v) for p, v in data["quadratic_form"])[(1, 1)] == "1"


def test_duality_subcommand(capsys):
    code, out, _ = run_cli(capsys, "duality", "--alpha", "2", "--max-degree", "6")
    assert code == 0
    data = json.loads(out)
    assert data["involution_holds"] and data["self_dual_graph_by_graph"]


def test_verification_failure_exit_code(monkeypatch, capsys):
    from mobex import series as series_mod

    def corrupt(series):
        out = series.copy()
        key = next(iter(out.terms))
        out.terms[key] = out.terms[key] * 2
        return out

    monkeypatch.setattr(cli.series, "apply_duality", corrupt)
    code, _, err = run_cli(capsys, "duality", "--alpha", "2", "--max-degree", "4")
    assert code == cli.EXIT_VERIFY
    assert json.loads(err)["code"] == cli.EXIT_VERIFY


def test_env_budget_override(monkeypatch, capsys):
    monkeypatch.setenv("MOBEX_HALF_EDGE_BUDGET", "4")
    code, _, err = run_cli(capsys, "graphs", "--profile", "3:2")
    assert code == cli.EXIT_BUDGET
    # explicit flag wins over the environment
    code, out, _ = run_cli(capsys, "graphs", "--profile", "3:2",
                           "--half-edge-budget", "16")
    assert code == 0


def test_table_and_csv_formats(capsys):
    code, out, _ = run_cli(capsys, "graphs", "--profile", "2:1", "--format", "table")
    assert code == 0 and "orientable" in out
    code, out, _ = run_cli(capsys, "graphs", "--profile", "2:1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("v,e,f")
