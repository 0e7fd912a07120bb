"""End-to-end checks of the command-line front end via main(argv)."""

import pytest

from inspectq.cli import main

BASE = ["--lambda", "2.2", "--mu", "2.8", "--reward", "10", "--wait-cost", "5"]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_kv(out: str) -> dict:
    pairs = {}
    for line in out.splitlines():
        if "=" in line and not line.startswith("#"):
            k, v = line.split("=", 1)
            pairs[k] = v
    return pairs


class TestEquilibrium:
    def test_interior_solution(self, capsys):
        code, out, _ = run(
            ["equilibrium", *BASE, "--inspect-cost", "0.5"], capsys
        )
        assert code == 0
        kv = parse_kv(out)
        assert kv["branch"] == "interior"
        assert abs(float(kv["p_star"]) - 0.2947) < 1e-3
        # interior: both actions indifferent
        assert abs(float(kv["u_inspect"]) - float(kv["u_no_inspect"])) < 1e-8

    def test_missing_required_param_exits_2(self, capsys):
        code, _, err = run(
            ["equilibrium", "--lambda", "2.2", "--reward", "10",
             "--wait-cost", "5", "--inspect-cost", "0.5"],
            capsys,
        )
        assert code == 2
        assert "mu" in err

    def test_invalid_rate_exits_2(self, capsys):
        code, _, err = run(
            ["equilibrium", "--lambda", "2.2", "--mu", "-1", "--reward", "10",
             "--wait-cost", "5", "--inspect-cost", "0.5"],
            capsys,
        )
        assert code == 2
        assert err.startswith("error:")

    def test_overloaded_queue_stabilized_by_inspection(self, capsys):
        # lam > mu alone would diverge, but enough inspection thins arrivals
        code, out, _ = run(
            ["equilibrium", "--lambda", "5", "--mu", "2.8", "--reward", "10",
             "--wait-cost", "5", "--inspect-cost", "0.5"],
            capsys,
        )
        assert code == 0
        kv = parse_kv(out)
        p = float(kv["p_star"])
        assert 1 - (1 - p) * (5 / 2.8) > 0


class TestConfigFile:
    def test_config_supplies_params(self, tmp_path, capsys):
        cfg = tmp_path / "params.cfg"
        cfg.write_text(
            "# market\nlambda = 2.2\nmu = 2.8\nreward = 10\n"
            "wait-cost = 5\ninspect-cost = 0.5\n"
        )
        code, out, _ = run(["equilibrium", "--config", str(cfg)], capsys)
        assert code == 0
        assert parse_kv(out)["branch"] == "interior"

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "params.cfg"
        cfg.write_text("lambda=2.2\nmu=2.8\nreward=10\nwait-cost=5\ninspect-cost=9\n")
        code, out, _ = run(
            ["equilibrium", "--config", str(cfg), "--inspect-cost", "0.5"], capsys
        )
        assert code == 0
        assert abs(float(parse_kv(out)["p_star"]) - 0.2947) < 1e-3

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("lambda 2.2\n")
        code, _, err = run(["equilibrium", "--config", str(cfg)], capsys)
        assert code == 2
        assert "bad config line" in err


class TestOptimize:
    @pytest.mark.parametrize(
        "reward,fee", [("20", 18.333333333), ("3", 1.9649016609864687)]
    )
    def test_access_optimum(self, reward, fee, capsys):
        code, out, _ = run(
            ["optimize", "--mechanism", "access", "--lambda", "2.2",
             "--mu", "2.8", "--reward", reward, "--wait-cost", "1"],
            capsys,
        )
        assert code == 0
        assert abs(float(parse_kv(out)["optimal_fee"]) - fee) < 1e-6

    def test_info_optimum_matches_curve_peak(self, capsys):
        code, out, _ = run(["optimize", "--mechanism", "info", *BASE], capsys)
        assert code == 0
        kv = parse_kv(out)
        fee, rev = float(kv["optimal_fee"]), float(kv["optimal_revenue"])
        assert rev > 0

        code, out, _ = run(
            ["revenue-curve", "--mechanism", "info", *BASE,
             "--fee-min", "0.001", "--fee-max", "10", "--points", "400"],
            capsys,
        )
        assert code == 0
        rows = [r for r in out.splitlines() if "," in r and not r.startswith("#")][1:]
        best = max(float(r.split(",")[2]) for r in rows)
        assert rev >= best - 1e-6


class TestRevenueCurve:
    def test_csv_shape_and_header_comments(self, capsys):
        code, out, _ = run(
            ["revenue-curve", "--mechanism", "access", *BASE,
             "--fee-min", "0", "--fee-max", "8", "--points", "5"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        comments = [l for l in lines if l.startswith("#")]
        assert any("lambda=2.2" in c for c in comments)
        assert any("mechanism=access" in c for c in comments)
        data = [l for l in lines if not l.startswith("#")]
        assert data[0] == "fee,equilibrium,revenue"
        assert len(data) == 1 + 5

    def test_output_file_is_deterministic(self, tmp_path, capsys):
        args = ["revenue-curve", "--mechanism", "info", *BASE,
                "--fee-min", "0.01", "--fee-max", "5", "--points", "50"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main([*args, "--output", str(a)]) == 0
        assert main([*args, "--output", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_bad_fee_range_exits_2(self, capsys):
        code, _, err = run(
            ["revenue-curve", "--mechanism", "access", *BASE,
             "--fee-min", "5", "--fee-max", "1"],
            capsys,
        )
        assert code == 2
        assert "fee-min" in err


class TestPolicy:
    def test_sweep_csv_and_threshold_line(self, tmp_path, capsys):
        out_file = tmp_path / "sweep.csv"
        code, _, _ = run(
            ["policy", "--lambda", "2.2", "--mu", "2.8", "--reward", "10",
             "--cw-min", "8", "--cw-max", "20", "--grid", "32",
             "--output", str(out_file)],
            capsys,
        )
        assert code == 0
        text = out_file.read_text()
        rows = [l for l in text.splitlines() if "," in l and not l.startswith("#")][1:]
        winners = [r.split(",")[3] for r in rows]
        assert winners[0] == "access" and winners[-1] == "info"
        assert any("thresholds=" in l for l in text.splitlines() if l.startswith("#"))


class TestValidate:
    def test_pass_exits_0(self, capsys):
        code, out, _ = run(
            ["validate", *BASE, "--inspect-cost", "0.5", "--p", "0.3",
             "--events", "200000", "--seed", "42"],
            capsys,
        )
        assert code == 0
        assert out.strip().endswith("PASS")

    def test_impossibly_tight_tolerance_exits_1(self, capsys):
        code, out, _ = run(
            ["validate", *BASE, "--inspect-cost", "0.5", "--p", "0.3",
             "--events", "50000", "--seed", "42", "--tol-tv", "1e-9"],
            capsys,
        )
        assert code == 1
        assert out.strip().endswith("FAIL")
