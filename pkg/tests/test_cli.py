import csv
import io
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from supcal.cli import SCHEMA_VERSION, main

SCHEMAS = {
    name: json.loads(resources.files("supcal").joinpath(f"schemas/{name}.schema.json").read_text())
    for name in ("calibrate", "map", "bf_curve", "design", "simulate")
}

WORKED = ["calibrate", "--ci-lower", "-0.29", "--ci-upper", "-0.07", "--ci-level", "0.95",
            "--method", "si-normal", "--prior-mean", "0", "--prior-sd", "2", "--level", "10"]
RECOVERY = ["--estimate", str(math.log(0.83)), "--se",
            str((math.log(0.93) - math.log(0.75)) / (2 * 1.959963984540054)),
            "--method", "si-normal", "--prior-mean", str(math.log(0.8)), "--prior-sd", "2"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, schema, *argv):
    code, out, err = run(capsys, *argv, "--json")
    obj = json.loads(out)
    jsonschema.validate(obj, SCHEMAS[schema])
    assert obj["schema_version"] == SCHEMA_VERSION
    return code, obj


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_schemas_are_valid(name):
    jsonschema.Draft202012Validator.check_schema(SCHEMAS[name])


class TestCalibrate:
    def test_worked_example_layout(self, capsys):
        code, out, _ = run(capsys, *WORKED)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "Point Estimate [95% CI]"
        assert lines[1] == "-0.18 [-0.29,-0.07]"
        assert "Calibration Method" in lines
        assert lines[-2] == "k = 10 Support Interval"
        assert lines[-1] == "[-0.27,-0.09]"

    def test_worked_example_json(self, capsys):
        code, obj = run_json(capsys, "calibrate", *WORKED)
        assert code == 0
        assert round(obj["estimate"], 2) == -0.18
        assert obj["interval"]["kind"] == "bounded"
        assert [round(obj["interval"][e], 2) for e in ("lower", "upper")] == [-0.27, -0.09]

    def test_point(self, capsys):
        code, obj = run_json(capsys, "calibrate", "calibrate", "--estimate", "0", "--se", "1",
                             "--method", "minsi-all", "--level", "1")
        assert code == 0
        assert obj["interval"] == {"kind": "point", "lower": 0.0, "upper": 0.0}

    def test_ci(self, capsys):
        code, out, _ = run(capsys, "calibrate", "--estimate", "0", "--se", "1", "--method", "ci", "--level", "0.95")
        assert code == 0 and out.splitlines()[-1] == "[-1.96,1.96]"

    def test_human_and_json_agree(self, capsys):
        argv = ["calibrate", *RECOVERY, "--level", "0.1"]
        _, out, _ = run(capsys, *argv)
        _, obj = run_json(capsys, "calibrate", *argv)
        lo, hi = obj["interval"]["lower"], obj["interval"]["upper"]
        two = lambda x: f"{round(x, 2) + 0.0:.2f}"
        assert out.splitlines()[-1] == f"[{two(lo)},{two(hi)}]" == "[-0.37,0.00]"

    def test_empty_exits_3(self, capsys):
        argv = ["calibrate", "--estimate", "0", "--se", "1", "--method", "si-local-normal",
                "--prior-sd", "0.1", "--level", "10"]
        code, out, _ = run(capsys, *argv)
        assert code == 3
        assert "does not exist" in out and "existence requires" in out
        code, obj = run_json(capsys, "calibrate", *argv)
        assert code == 3 and obj["interval"]["kind"] == "empty" and obj["multiplier"] is None

    @pytest.mark.parametrize("argv", [
        ["calibrate", "--estimate", "0", "--method", "ci", "--level", "0.95"],
        ["calibrate", "--estimate", "0", "--se", "1", "--method", "si-normal", "--level", "3"],
        ["calibrate", "--estimate", "0", "--se", "1", "--level", "3"],
        ["calibrate", "--estimate", "0", "--se", "-1", "--method", "ci", "--level", "0.95"],
        ["calibrate", "--estimate", "0", "--se", "1", "--method", "minsi-all", "--level", "2"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2
        assert err.strip().splitlines()[-1].startswith("supcal calibrate")

    def test_bad_choice_exits_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["calibrate", "--method", "bogus"])
        assert info.value.code == 2

    def test_label(self, capsys):
        _, out, _ = run(capsys, *WORKED, "--label", "jeffreys")
        assert "k = 10 Support Interval (strong, jeffreys)" in out

    def test_conflicting_inputs_warn(self, capsys):
        code, out, err = run(capsys, "calibrate", "--estimate", "-0.2", "--se", "0.0561",
                             "--ci-lower", "-0.29", "--ci-upper", "-0.07", "--method", "ci", "--level", "0.95")
        assert code == 0 and "warning" in err


class TestMap:
    def test_all_95(self, capsys):
        code, out, _ = run(capsys, "map", "--family", "all", "--ci-level", "0.95")
        assert code == 0 and "k = 0.1465 (1/6.8)" in out

    def test_eplogp_tenth(self, capsys):
        code, obj = run_json(capsys, "map", "map", "--family", "eplogp", "--k", "0.1")
        assert code == 0 and obj["ci_level"] == pytest.approx(0.9925, abs=1e-4)

    def test_k_one(self, capsys):
        code, obj = run_json(capsys, "map", "map", "--family", "all", "--k", "1")
        assert obj["ci_level"] == 0.0

    def test_undefined_exits_3(self, capsys):
        code, obj = run_json(capsys, "map", "map", "--family", "local-normal", "--ci-level", "0.5")
        assert code == 3 and obj["k"] is None and "error" in obj

    def test_needs_exactly_one(self, capsys):
        assert run(capsys, "map", "--family", "all")[0] == 2
        assert run(capsys, "map", "--family", "all", "--k", "0.1", "--ci-level", "0.9")[0] == 2
        assert run(capsys, "map", "--k", "0.1")[0] == 2


class TestBfCurve:
    def test_crossings(self, capsys):
        code, out, _ = run(capsys, "bf-curve", *RECOVERY, "--from", "-0.5", "--to", "0.1",
                           "--points", "6001", "--cut", "10")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        inside = [float(r["theta0"]) for r in rows if r["in_si"] == "1"]
        assert round(min(inside), 2) == -0.27 and round(max(inside), 2) == -0.10

    def test_two_points(self, capsys):
        code, out, _ = run(capsys, "bf-curve", *RECOVERY, "--points", "2")
        lines = out.split("\n")
        assert lines[0] == "theta0,bf01"
        assert len([l for l in lines[1:] if l]) == 2
        assert "\r" not in out

    def test_full_precision(self, capsys):
        _, out, _ = run(capsys, "bf-curve", *RECOVERY, "--from", "-0.3", "--to", "0.1", "--points", "3")
        value = out.splitlines()[1].split(",")[1]
        assert len(value.replace(".", "").replace("-", "").lstrip("0").split("e")[0]) >= 15

    def test_membership_at_estimate(self, capsys):
        _, out, _ = run(capsys, "bf-curve", *RECOVERY, "--points", "3", "--cut", "5", "--format", "json")
        obj = json.loads(out)
        jsonschema.validate(obj, SCHEMAS["bf_curve"])
        # the middle of a symmetric default range is the estimate
        assert obj["bf01"][1] == max(obj["bf01"]) and obj["in_si"][1] is True

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "curve.csv"
        run(capsys, "bf-curve", *RECOVERY, "--points", "5", "--out", str(path))
        assert path.read_text().count("\n") == 6

    def test_ci_rejected(self, capsys):
        assert run(capsys, "bf-curve", "--estimate", "0", "--se", "1", "--method", "ci")[0] == 2


class TestDesign:
    def test_existence(self, capsys):
        code, out, _ = run(capsys, "design", "--jeffreys", "--k", "10")
        assert code == 0 and out.splitlines()[0] == "n_exists = 99"

    def test_width(self, capsys):
        code, obj = run_json(capsys, "design", "design", "--jeffreys", "--k", "10", "--unit-var", "4",
                             "--width", "0.2")
        assert code == 0 and obj["n_width"] == [143, 862]

    def test_infeasible(self, capsys):
        code, out, _ = run(capsys, "design", "--jeffreys", "--k", "10", "--unit-var", "4", "--width", "10")
        assert code == 3 and "INFEASIBLE" in out

    def test_k_at_most_one(self, capsys):
        assert run(capsys, "design", "--k", "1")[0] == 2

    def test_prior(self, capsys):
        code, obj = run_json(capsys, "design", "design", "--k", "10", "--prior", "normal",
                             "--prior-mean", "0", "--prior-sd", "1")
        assert code == 0 and obj["n_exists"] == 99


class TestSimulate:
    BASE = ["simulate", "--method", "si-local-normal", "--prior-sd", "1", "--reps", "2000"]

    def test_fixed(self, capsys):
        code, out, _ = run(capsys, *self.BASE, "--k", "0.05", "--n", "10")
        assert code == 0 and "PASS" in out

    def test_sequential_json(self, capsys):
        code, obj = run_json(capsys, "simulate", *self.BASE, "--k", "0.1", "--regime", "sequential",
                             "--max-looks", "50", "--seed", "4")
        assert code == 0 and obj["pass"] and obj["seed"] == 4 and len(obj["per_look_counts"]) == 50

    def test_minsi_exit_2(self, capsys):
        code, _, err = run(capsys, "simulate", "--method", "minsi-all", "--k", "0.1", "--n", "5")
        assert code == 2 and "universal bound" in err

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("SUPCAL_SEED", "123")
        _, a = run_json(capsys, "simulate", *self.BASE, "--k", "0.1", "--n", "5")
        _, b = run_json(capsys, "simulate", *self.BASE, "--k", "0.1", "--n", "5", "--seed", "123")
        assert a["seed"] == 123 and a == b
        _, c = run_json(capsys, "simulate", *self.BASE, "--k", "0.1", "--n", "5", "--seed", "9")
        assert c["coverage_estimate"] != a["coverage_estimate"] or c["seed"] == 9


class TestConfig:
    def test_config_supplies_values(self, capsys, tmp_path):
        cfg = tmp_path / "job.json"
        cfg.write_text(json.dumps({"ci-lower": -0.29, "ci-upper": -0.07, "method": "si-normal",
                                   "prior-mean": 0, "prior-sd": 2, "level": 10}))
        code, out, _ = run(capsys, "calibrate", "--config", str(cfg))
        assert code == 0 and out.splitlines()[-1] == "[-0.27,-0.09]"

    def test_flags_win(self, capsys, tmp_path):
        cfg = tmp_path / "job.json"
        cfg.write_text(json.dumps({"family": "all", "ci_level": 0.95}))
        _, obj = run_json(capsys, "map", "map", "--config", str(cfg), "--ci-level", "0.99")
        assert obj["ci_level"] == 0.99

    def test_unknown_key(self, capsys, tmp_path):
        cfg = tmp_path / "job.json"
        cfg.write_text(json.dumps({"nope": 1}))
        with pytest.raises(SystemExit) as info:
            main(["map", "--config", str(cfg)])
        assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "supcal", "map", "--family", "all", "--k", "0.1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "96.81%" in proc.stdout
