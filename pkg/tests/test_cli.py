import json

import numpy as np
import pytest

from hyperbm.cli import EXPERIMENTS, main, report_schema, run, validate


def write_config(tmp_path, config, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    return path


def normalization_config(outdir, n=3, ts=(1.0,)):
    return {"experiment": "normalization",
            "parameters": {"n": n, "t_list": list(ts)},
            "master_seed": 1, "output_dir": str(outdir)}


class TestValidate:
    def test_unknown_experiment(self):
        errs = validate({"experiment": "nope", "parameters": {}})
        assert len(errs) == 1 and "unknown name" in errs[0]

    def test_dimension_precondition(self):
        errs = validate({"experiment": "normalization",
                         "parameters": {"n": 1, "t_list": [1.0]}})
        assert any("n >= 2" in e for e in errs)

    def test_beta_range(self):
        errs = validate({"experiment": "mdp-rate",
                         "parameters": {"n": 3, "beta": 0.5, "x": 2.0,
                                        "t_grid": [10.0, 20.0, 40.0]},
                         "master_seed": 1})
        assert any("(0, 1/2)" in e for e in errs)

    def test_hitting_ball_ordering(self):
        errs = validate({"experiment": "hitting-mc",
                         "parameters": {"n": 3, "eta0": 1.0, "eta1": 2.0,
                                        "horizon": 10.0, "dt": 0.001,
                                        "paths": 100},
                         "master_seed": 1})
        assert any("eta1" in e and "below" in e for e in errs)

    def test_decay_grid_vs_ball(self):
        errs = validate({"experiment": "hitting-decay",
                         "parameters": {"n_list": [3], "eta1": 12.0,
                                        "eta_grid": [10.0, 40.0]}})
        assert any("exceed eta1" in e for e in errs)

    def test_mc_requires_seed(self):
        errs = validate({"experiment": "hitting-mc",
                         "parameters": {"n": 3, "eta0": 2.0, "eta1": 1.0,
                                        "horizon": 10.0, "dt": 0.001,
                                        "paths": 100}})
        assert any("master_seed" in e for e in errs)

    def test_validation_never_throws(self):
        assert validate({"experiment": "kernel-scan", "parameters": {"n": "x"}})
        assert validate({"experiment": "ldp-rate", "parameters": None})

    def test_valid_config_is_clean(self, tmp_path):
        assert validate(normalization_config(tmp_path)) == []


class TestSchema:
    def test_known_schemas_cover_experiments(self):
        for name in EXPERIMENTS:
            schema = report_schema(name)
            assert schema["experiment"] == name
            assert "outputs" in schema and "parameters" in schema

    def test_frozen_columns(self):
        assert report_schema("ldp-rate")["outputs"]["ldp_rate.csv"] == \
            ["t", "tail_prob", "scaled_log", "target", "abs_err"]
        assert report_schema("hirao-check")["outputs"]["hirao_check.csv"] == \
            ["x", "lambda_star_closed", "lambda_star_numeric", "two_I1",
             "discrepancy"]
        assert report_schema("kernel-scan")["outputs"]["kernel_scan.csv"] == \
            ["eta", "t", "k", "h", "g", "ratio"]

    def test_unknown_schema(self):
        with pytest.raises(ValueError):
            report_schema("mystery")


class TestRun:
    def test_normalization_output(self, tmp_path):
        manifest = run(normalization_config(tmp_path / "out"))
        data = json.loads((tmp_path / "out" / "normalization.json").read_text())
        assert abs(data["results"][0]["integral"] - 1.0) < 1e-8
        assert "normalization.json" in manifest["outputs"]
        assert manifest["version"]

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg_a = normalization_config(tmp_path / "a")
        cfg_b = normalization_config(tmp_path / "b")
        m1 = run(cfg_a)
        m2 = run(cfg_b)
        assert m1["outputs"] == m2["outputs"]
        assert (tmp_path / "a" / "normalization.json").read_bytes() == \
            (tmp_path / "b" / "normalization.json").read_bytes()

    def test_hitting_decay_final_slope(self, tmp_path):
        cfg = {"experiment": "hitting-decay",
               "parameters": {"n_list": [3], "eta1": 1.0,
                              "eta_grid": [10.0, 20.0, 40.0]},
               "master_seed": 1, "output_dir": str(tmp_path / "decay")}
        run(cfg)
        lines = (tmp_path / "decay" / "hitting_decay.csv").read_text().splitlines()
        header = lines[0].split(",")
        last = lines[-1].split(",")
        slope = float(last[header.index("log_P_over_eta")])
        assert slope == pytest.approx(-2.0, abs=0.05)

    def test_invalid_config_rejected_before_work(self, tmp_path):
        cfg = normalization_config(tmp_path)
        cfg["parameters"]["n"] = 9
        with pytest.raises(ValueError):
            run(cfg)
        assert not (tmp_path / "normalization.json").exists()

    def test_csv_formatting(self, tmp_path):
        cfg = {"experiment": "euclidean-compare",
               "parameters": {"n_list": [3], "r1": 1.0, "r_list": [3.0]},
               "master_seed": 1, "output_dir": str(tmp_path / "e")}
        run(cfg)
        raw = (tmp_path / "e" / "euclidean_compare.csv").read_bytes()
        assert b"\r" not in raw
        assert raw.decode("ascii").splitlines()[1].split(",")[2] == \
            format(1.0 / 3.0, ".17g")

    def test_failure_writes_partial_manifest(self, tmp_path, monkeypatch):
        import hyperbm.cli as cli_mod

        def exploding_runner(p, outdir, seed):
            (outdir / "partial.csv").write_text("a,b\n1,2\n")
            raise RuntimeError("synthetic numerical failure")

        monkeypatch.setitem(cli_mod.EXPERIMENTS, "normalization",
                            (cli_mod.EXPERIMENTS["normalization"][0],
                             exploding_runner))
        cfg = normalization_config(tmp_path / "boom")
        with pytest.raises(RuntimeError):
            run(cfg)
        manifest = json.loads((tmp_path / "boom" / "manifest.json").read_text())
        assert "synthetic numerical failure" in manifest["failed"]
        assert "partial.csv" in manifest["partial_outputs"]

    def test_radii_dump_option(self, tmp_path):
        from hyperbm.sampling import read_radii

        cfg = {"experiment": "hitting-mc",
               "parameters": {"n": 3, "eta0": 2.0, "eta1": 1.0,
                              "horizon": 5.0, "dt": 1e-3, "paths": 500,
                              "stop_level": 12.0, "dump_radii": True},
               "master_seed": 5, "output_dir": str(tmp_path / "dump")}
        manifest = run(cfg)
        assert "radii.bin" in manifest["outputs"]
        radii = read_radii(tmp_path / "dump" / "radii.bin")
        assert radii.size == 500
        assert np.all(np.isfinite(radii))

    def test_worker_flag_does_not_change_output(self, tmp_path):
        base = {"experiment": "hitting-mc",
                "parameters": {"n": 3, "eta0": 2.0, "eta1": 1.0,
                               "horizon": 10.0, "dt": 1e-3, "paths": 2000,
                               "stop_level": 12.0},
                "master_seed": 77}
        m1 = run(dict(base), workers=1, output_dir=tmp_path / "w1")
        m4 = run(dict(base), workers=4, output_dir=tmp_path / "w4")
        assert m1["outputs"] == m4["outputs"]
        assert (tmp_path / "w1" / "hitting_mc.csv").read_bytes() == \
            (tmp_path / "w4" / "hitting_mc.csv").read_bytes()


class TestMainEntry:
    def test_run_and_exit_codes(self, tmp_path, capsys):
        cfg_path = write_config(tmp_path, normalization_config(tmp_path / "out"))
        assert main(["run", str(cfg_path)]) == 0
        manifest = json.loads(capsys.readouterr().out)
        assert manifest["experiment"] == "normalization"

    def test_validate_subcommand(self, tmp_path, capsys):
        good = write_config(tmp_path, normalization_config(tmp_path), "good.json")
        assert main(["validate", str(good)]) == 0
        bad_cfg = normalization_config(tmp_path)
        bad_cfg["parameters"]["n"] = 1
        bad = write_config(tmp_path, bad_cfg, "bad.json")
        assert main(["validate", str(bad)]) == 1
        out = capsys.readouterr().out
        assert "n >= 2" in out

    def test_schema_subcommand(self, capsys):
        assert main(["schema", "mdp-rate"]) == 0
        assert "scaled_log" in capsys.readouterr().out
        assert main(["schema", "unknown-thing"]) == 2

    def test_missing_config_file(self, tmp_path):
        assert main(["run", str(tmp_path / "absent.json")]) == 2

    def test_invalid_config_run_code(self, tmp_path):
        cfg = normalization_config(tmp_path)
        cfg["parameters"]["n"] = 1
        path = write_config(tmp_path, cfg)
        assert main(["run", str(path)]) == 1
