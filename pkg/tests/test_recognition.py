import numpy as np
import pytest

from airwrite.errors import EmptyTemplateSetError, NoTemplatesError
from airwrite.pnm import write_pgm
from airwrite.recognition import (
    LABELS,
    RecognitionResult,
    RecognizerConfig,
    TemplateSet,
    accuracy,
    classify,
    confusion_matrix,
    default_templates,
    load_templates,
    save_templates,
)


def _jitter(raster, dx, dy):
    out = np.roll(np.roll(raster, dy, axis=0), dx, axis=1)
    if dy > 0:
        out[:dy] = 0
    elif dy < 0:
        out[dy:] = 0
    if dx > 0:
        out[:, :dx] = 0
    elif dx < 0:
        out[:, dx:] = 0
    return out


class TestClassify:
    def test_template_classifies_to_itself_with_score_one(self):
        ts = default_templates()
        for label, raster in zip(ts.labels, ts.rasters):
            res = classify(raster, ts)
            assert res.top == label
            assert res.ranked[0][1] == 1.0

    def test_all_black_raster_scores_against_sparsest_template(self):
        # the RBF at sigma=2000 keeps an all-black raster above the 0.05
        # rejection bound for every realistic stroke template (fewer than
        # ~370 fully-bright pixels), so no rejection fires here
        ts = default_templates()
        res = classify(np.zeros((28, 28), np.uint8), ts)
        assert not res.rejected
        assert res.ranked[0][1] > 0.05

    def test_rejection_on_distant_raster(self):
        white = np.full((28, 28), 255, np.uint8)
        ts = TemplateSet(labels=["0"], rasters=np.zeros((1, 28, 28), np.uint8))
        res = classify(white, ts)  # 784 fully-bright pixels of distance
        assert res.rejected
        assert res.ranked == []

    def test_jitter_robustness(self):
        ts = default_templates()
        rng = np.random.default_rng(0)
        offsets = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)]
        hits = 0
        for _ in range(100):
            i = rng.integers(0, len(ts))
            dx, dy = offsets[rng.integers(0, 8)]
            res = classify(_jitter(ts.rasters[i], dx, dy), ts)
            hits += res.top == ts.labels[i]
        assert hits >= 90

    def test_template_order_irrelevant(self):
        ts = default_templates()
        rev = TemplateSet(labels=list(reversed(ts.labels)), rasters=ts.rasters[::-1].copy())
        probe = _jitter(ts.rasters[17], 1, 0)
        a = classify(probe, ts)
        b = classify(probe, rev)
        assert a.ranked == b.ranked

    def test_rejection_monotone_in_threshold(self):
        ts = default_templates()
        probe = _jitter(ts.rasters[3], 1, 1)
        res = classify(probe, ts)
        top = res.ranked[0][1]
        assert not classify(probe, ts, RecognizerConfig(reject_threshold=top * 0.99)).rejected
        assert classify(probe, ts, RecognizerConfig(reject_threshold=min(1.0, top * 1.01))).rejected

    def test_empty_set_raises(self):
        with pytest.raises(EmptyTemplateSetError):
            classify(np.zeros((28, 28)), TemplateSet(labels=[], rasters=np.zeros((0, 28, 28))))


class TestLoadTemplates:
    def test_round_trip(self, tmp_path):
        ts = default_templates()
        save_templates(ts, tmp_path)
        loaded = load_templates(tmp_path)
        assert len(loaded) == len(ts) == 108
        assert sorted(loaded.labels) == sorted(ts.labels)

    def test_empty_directory(self, tmp_path):
        with pytest.raises(NoTemplatesError):
            load_templates(tmp_path)

    def test_corrupt_file_skipped(self, tmp_path):
        ts = default_templates()
        save_templates(ts, tmp_path)
        (tmp_path / "9_0.pgm").write_bytes(b"P5\n28 28\n255\nshort")
        loaded = load_templates(tmp_path)
        assert len(loaded) == 107

    def test_unrelated_names_skipped(self, tmp_path):
        write_pgm(tmp_path / "a_0.pgm", np.zeros((28, 28), np.uint8))
        write_pgm(tmp_path / "README.pgm", np.zeros((28, 28), np.uint8))
        loaded = load_templates(tmp_path)
        assert loaded.labels == ["a"]


def _hit(label):
    return RecognitionResult(ranked=[(label, 1.0)], rejected=False)


class TestConfusionMatrix:
    def test_all_correct_diagonal(self):
        results = [(c, _hit(c)) for c in LABELS]
        counts = confusion_matrix(results)
        assert np.trace(counts[:, :36]) == 36
        assert counts.sum() == 36
        assert accuracy(counts) == 1.0

    def test_one_seven_confusion(self):
        counts = confusion_matrix([("1", _hit("7"))])
        assert counts[1, 7] == 1
        assert accuracy(counts) == 0.0

    def test_rejections_in_final_column(self):
        counts = confusion_matrix([("a", RecognitionResult(ranked=[], rejected=True))])
        assert counts[10, 36] == 1

    def test_empty_input_zero_matrix(self):
        counts = confusion_matrix([])
        assert counts.shape == (36, 37)
        assert counts.sum() == 0
        assert accuracy(counts) == 0.0

    def test_accuracy_arithmetic(self):
        results = [("0", _hit("0")), ("1", _hit("7")), ("2", _hit("2")), ("3", _hit("3"))]
        counts = confusion_matrix(results)
        assert accuracy(counts) == pytest.approx(0.75)
