import json

import numpy as np
import pytest

from airwrite.cli import main
from airwrite.config import load_config
from airwrite.errors import ConfigError
from airwrite.glyphs import glyph_trajectory
from airwrite.pnm import read_mask, write_mask
from airwrite.synth import SynthHandSpec, synth_hand


class TestConfig:
    def test_defaults(self):
        cfg = load_config()
        assert cfg["fingertip.gamma"] == 2.5
        assert cfg["trajectory.tau"] == 40.0
        assert cfg["tracking.reinit_interval"] == 50

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            load_config(overrides={"fingertip.gama": 3})

    def test_file_and_override_precedence(self, tmp_path):
        path = tmp_path / "conf"
        path.write_text("# comment\nfingertip.gamma = 3.0\ntrajectory.tau=55\n")
        cfg = load_config(path)
        assert cfg["fingertip.gamma"] == 3.0
        assert cfg["trajectory.tau"] == 55.0
        cfg = load_config(path, overrides={"fingertip.gamma": "4.5"})
        assert cfg["fingertip.gamma"] == 4.5

    def test_type_coercion_follows_default(self, tmp_path):
        cfg = load_config(overrides={"fingertip.samples": "96"})
        assert cfg["fingertip.samples"] == 96
        assert isinstance(cfg["fingertip.samples"], int)

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "conf"
        path.write_text("fingertip.gamma 3.0\n")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_built_configs_reflect_values(self):
        cfg = load_config(overrides={"segmentation.cb_min": "80", "trajectory.lambda": "7"})
        assert cfg.skin_model().cb_min == 80.0
        assert cfg.smoothing_config().lam == 7.0


class TestCli:
    def test_synth_hand_and_pose_roundtrip(self, tmp_path, capsys):
        mask_path = tmp_path / "hand.pgm"
        truth_path = tmp_path / "truth.json"
        rc = main(
            [
                "synth-hand",
                "--fingers", "0",
                "--seed", "5",
                "--out", str(mask_path),
                "--truth", str(truth_path),
            ]
        )
        assert rc == 0
        capsys.readouterr()
        rc = main(["pose", "--mask", str(mask_path)])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out == {"fingers": 0, "verdict": "non_writing"}

    def test_fingertip_matches_truth(self, tmp_path, capsys):
        spec = SynthHandSpec.random(seed=9, fingers=1)
        mask, truth = synth_hand(spec)
        mask_path = tmp_path / "hand.pgm"
        write_mask(mask_path, mask)
        sig_path = tmp_path / "sig.csv"
        rc = main(
            ["fingertip", "--mask", str(mask_path), "--gamma", "2.5",
             "--dump-signature", str(sig_path)]
        )
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        tx, ty = truth["tips"][0]
        assert np.hypot(out["x"] - tx, out["y"] - ty) <= 3.0
        header = sig_path.read_text().splitlines()[0]
        assert header == "index,x,y,alpha,entropy,distance,psi"

    def test_track_then_eval_tracking(self, tmp_path, capsys):
        seq_spec = tmp_path / "spec.json"
        seq_spec.write_text(json.dumps({"seed": 3, "fingers": 1, "frames": 20, "motion": [4, 0]}))
        seq_dir = tmp_path / "seq"
        rc = main(["synth-seq", "--spec", str(seq_spec), "--out", str(seq_dir)])
        assert rc == 0
        capsys.readouterr()
        results = tmp_path / "results.jsonl"
        rc = main(
            ["track", "--frames", str(seq_dir), "--boxes", str(seq_dir / "boxes.json"),
             "--out", str(results)]
        )
        assert rc == 0
        capsys.readouterr()
        rc = main(
            ["eval-tracking", "--pred", str(results), "--truth", str(seq_dir / "truth.json"),
             "--threshold", "15"]
        )
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["precision_at_threshold"] >= 0.9

    def test_write_command(self, tmp_path, capsys):
        traj = glyph_trajectory("4", n=30)
        traj_path = tmp_path / "t.json"
        traj.save(traj_path)
        rc = main(["write", "--traj", str(traj_path)])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["rejected"] is False
        assert out["ranked"][0]["label"] == "4"

    def test_eval_chars(self, tmp_path, capsys):
        dataset = tmp_path / "chars"
        dataset.mkdir()
        for i, label in enumerate("058ax"):
            glyph_trajectory(label, n=28, variant=i % 3).save(dataset / f"{i}.json")
        rc = main(["eval-chars", "--dataset", str(dataset)])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["samples"] == 5
        assert report["accuracy"] == 1.0
        assert len(report["confusion_matrix"]) == 36

    def test_eval_ope_tre_cli(self, tmp_path, capsys):
        seq_spec = tmp_path / "spec.json"
        seq_spec.write_text(json.dumps({"seed": 4, "fingers": 1, "frames": 12, "motion": [3, 1]}))
        seq_dir = tmp_path / "seq"
        main(["synth-seq", "--spec", str(seq_spec), "--out", str(seq_dir)])
        capsys.readouterr()
        listing = tmp_path / "list.txt"
        listing.write_text(f"{seq_dir}\n")
        rc = main(["eval-ope-tre", "--sequences", str(listing), "--tre-starts", "4"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["ope"]["auc"] > 0.5
        assert report["fps"] > 0

    def test_unknown_set_key_exits_one(self, tmp_path, capsys):
        mask_path = tmp_path / "m.pgm"
        write_mask(mask_path, np.ones((20, 20), bool))
        rc = main(["pose", "--mask", str(mask_path), "--set", "nope.key=1"])
        assert rc == 1
        assert capsys.readouterr().err.startswith("error: ")

    def test_missing_file_exits_one(self, capsys):
        rc = main(["pose", "--mask", "/does/not/exist.pgm"])
        assert rc == 1
        err = capsys.readouterr().err
        assert err.startswith("error: ") and "\n" not in err.strip()


class TestPnm:
    def test_mask_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        mask = rng.random((13, 17)) < 0.5
        path = tmp_path / "m.pgm"
        write_mask(path, mask)
        assert np.array_equal(read_mask(path), mask)

    def test_ppm_round_trip(self, tmp_path):
        from airwrite.pnm import read_ppm, write_ppm

        rng = np.random.default_rng(3)
        img = rng.integers(0, 256, (7, 9, 3)).astype(np.uint8)
        path = tmp_path / "f.ppm"
        write_ppm(path, img)
        assert np.array_equal(read_ppm(path), img)

    def test_header_comments_tolerated(self, tmp_path):
        path = tmp_path / "c.pgm"
        body = bytes(range(6))
        path.write_bytes(b"P5\n# comment line\n3 2\n255\n" + body)
        got = read_mask(path)
        assert got.shape == (2, 3)
