import math

import numpy as np
import pytest

from relight import dataset
from relight.pipeline import EnhancementConfig
from conftest import natural_image, write_png


@pytest.fixture
def paired_dirs(tmp_path, rng):
    low_dir = tmp_path / "low"
    ref_dir = tmp_path / "ref"
    low_dir.mkdir()
    ref_dir.mkdir()
    for name in ("a", "b"):
        ref = natural_image(rng, 16, 16, lo=0.2, hi=1.0)
        write_png(ref_dir / f"{name}.png", ref)
        write_png(low_dir / f"{name}.png", ref ** 3)
    return low_dir, ref_dir


class TestDiscoverPairs:
    def test_full_match(self, paired_dirs):
        low_dir, ref_dir = paired_dirs
        pairs = dataset.discover_pairs(low_dir, ref_dir)
        assert [p.id for p in pairs] == ["a", "b"]

    def test_disjoint_raises(self, tmp_path, rng):
        low_dir = tmp_path / "low"
        ref_dir = tmp_path / "ref"
        low_dir.mkdir()
        ref_dir.mkdir()
        write_png(low_dir / "a.png", np.full((16, 16, 3), 0.5))
        write_png(ref_dir / "b.png", np.full((16, 16, 3), 0.5))
        with pytest.raises(ValueError, match="no pairs"):
            with pytest.warns(UserWarning):
                dataset.discover_pairs(low_dir, ref_dir)

    def test_partial_match_warns(self, tmp_path, rng):
        low_dir = tmp_path / "low"
        ref_dir = tmp_path / "ref"
        low_dir.mkdir()
        ref_dir.mkdir()
        for name in ("a", "c"):
            write_png(low_dir / f"{name}.png", np.full((16, 16, 3), 0.5))
        write_png(ref_dir / "a.png", np.full((16, 16, 3), 0.5))
        with pytest.warns(UserWarning, match="c"):
            pairs = dataset.discover_pairs(low_dir, ref_dir)
        assert [p.id for p in pairs] == ["a"]

    def test_missing_directory(self, tmp_path):
        with pytest.raises(NotADirectoryError):
            dataset.discover_pairs(tmp_path / "nope", tmp_path)

    def test_jpeg_suffixes_accepted(self, tmp_path, rng):
        low_dir = tmp_path / "low"
        ref_dir = tmp_path / "ref"
        low_dir.mkdir()
        ref_dir.mkdir()
        img = natural_image(rng, 16, 16)
        from PIL import Image
        Image.fromarray((img * 255).astype(np.uint8)).save(low_dir / "a.jpg")
        write_png(ref_dir / "a.png", img)
        pairs = dataset.discover_pairs(low_dir, ref_dir)
        assert pairs[0].low_path.suffix == ".jpg"


class TestManifest:
    def test_relative_paths_resolved(self, tmp_path, rng):
        img = np.full((16, 16, 3), 0.5)
        write_png(tmp_path / "x_low.png", img)
        write_png(tmp_path / "x_ref.png", img)
        manifest = tmp_path / "pairs.txt"
        manifest.write_text("# comment\nx_low.png,x_ref.png\n\n")
        pairs = dataset.read_manifest(manifest)
        assert len(pairs) == 1
        assert pairs[0].low_path == tmp_path / "x_low.png"
        assert pairs[0].id == "x_low"

    def test_bad_line_raises(self, tmp_path):
        manifest = tmp_path / "pairs.txt"
        manifest.write_text("only_one_field\n")
        with pytest.raises(ValueError, match="pairs.txt:1"):
            dataset.read_manifest(manifest)

    def test_empty_raises(self, tmp_path):
        manifest = tmp_path / "pairs.txt"
        manifest.write_text("# nothing\n")
        with pytest.raises(ValueError, match="no pairs"):
            dataset.read_manifest(manifest)


class TestEvaluate:
    def test_identical_white_pair(self, tmp_path):
        low_dir = tmp_path / "low"
        ref_dir = tmp_path / "ref"
        low_dir.mkdir()
        ref_dir.mkdir()
        white = np.ones((16, 16, 3))
        write_png(low_dir / "w.png", white)
        write_png(ref_dir / "w.png", white)
        report = dataset.evaluate(dataset.discover_pairs(low_dir, ref_dir))
        row = report.rows[0]
        assert row.psnr_db == math.inf
        assert row.ssim == 1.0
        assert report.psnr_rows_skipped == 1
        assert report.mean_psnr_db == math.inf

    def test_restoration_beats_identity_baseline(self, paired_dirs):
        low_dir, ref_dir = paired_dirs
        report = dataset.evaluate(dataset.discover_pairs(low_dir, ref_dir))
        assert report.mean_psnr_db > report.baseline_mean_psnr_db

    def test_undecodable_pair_becomes_error_row(self, paired_dirs):
        low_dir, ref_dir = paired_dirs
        (low_dir / "c.png").write_text("not a png")
        (ref_dir / "c.png").write_text("not a png")
        report = dataset.evaluate(dataset.discover_pairs(low_dir, ref_dir))
        assert len(report.rows) == 2
        assert len(report.errors) == 1
        assert report.errors[0][0] == "c"

    def test_shape_mismatch_is_row_error(self, tmp_path, rng):
        low_dir = tmp_path / "low"
        ref_dir = tmp_path / "ref"
        low_dir.mkdir()
        ref_dir.mkdir()
        write_png(low_dir / "a.png", np.full((16, 16, 3), 0.5))
        write_png(ref_dir / "a.png", np.full((16, 20, 3), 0.5))
        write_png(low_dir / "b.png", np.full((16, 16, 3), 0.5))
        write_png(ref_dir / "b.png", np.full((16, 16, 3), 0.9))
        report = dataset.evaluate(dataset.discover_pairs(low_dir, ref_dir))
        assert [e[0] for e in report.errors] == ["a"]
        assert [r.id for r in report.rows] == ["b"]

    def test_all_failed_raises(self, tmp_path):
        low_dir = tmp_path / "low"
        ref_dir = tmp_path / "ref"
        low_dir.mkdir()
        ref_dir.mkdir()
        (low_dir / "a.png").write_text("junk")
        (ref_dir / "a.png").write_text("junk")
        with pytest.raises(RuntimeError, match="all 1 pairs failed"):
            dataset.evaluate(dataset.discover_pairs(low_dir, ref_dir))

    def test_empty_pair_list_raises(self):
        with pytest.raises(ValueError):
            dataset.evaluate([])

    def test_order_independent_values(self, paired_dirs):
        low_dir, ref_dir = paired_dirs
        pairs = dataset.discover_pairs(low_dir, ref_dir)
        fwd = dataset.evaluate(pairs)
        rev = dataset.evaluate(list(reversed(pairs)))
        by_id_fwd = {r.id: (r.psnr_db, r.ssim) for r in fwd.rows}
        by_id_rev = {r.id: (r.psnr_db, r.ssim) for r in rev.rows}
        assert by_id_fwd == by_id_rev

    def test_aggregate_recomputable_from_rows(self, paired_dirs):
        low_dir, ref_dir = paired_dirs
        report = dataset.evaluate(dataset.discover_pairs(low_dir, ref_dir))
        psnrs = [r.psnr_db for r in report.rows if math.isfinite(r.psnr_db)]
        assert report.mean_psnr_db == pytest.approx(
            sum(psnrs) / len(psnrs), abs=1e-12)
        assert report.mean_ssim == pytest.approx(
            sum(r.ssim for r in report.rows) / len(report.rows), abs=1e-12)

    def test_config_reaches_pipeline(self, paired_dirs):
        low_dir, ref_dir = paired_dirs
        pairs = dataset.discover_pairs(low_dir, ref_dir)
        deep = dataset.evaluate(pairs, EnhancementConfig(levels_override=3))
        shallow = dataset.evaluate(pairs, EnhancementConfig(levels_override=1))
        assert deep.rows[0].psnr_db != shallow.rows[0].psnr_db


class TestWriteReport:
    def _report(self):
        rows = [dataset.EvalRow("a", 20.0, 0.5, 0.001),
                dataset.EvalRow("b", math.inf, 1.0, 0.002)]
        return dataset.EvalReport(
            rows=rows, errors=[], mean_psnr_db=20.0, mean_ssim=0.75,
            mean_seconds=0.0015, baseline_mean_psnr_db=10.0,
            psnr_rows_skipped=1)

    def test_csv_layout(self, tmp_path):
        path = tmp_path / "out.csv"
        dataset.write_report(self._report(), path)
        lines = path.read_text().splitlines()
        assert len(lines) == 3
        assert lines[0] == "a,20.000000,0.500000,0.001000"
        assert lines[1].startswith("b,inf,")
        assert lines[2].startswith("MEAN,")

    def test_single_row_csv_is_two_lines(self, tmp_path):
        report = self._report()
        report.rows = report.rows[:1]
        report.mean_psnr_db = 20.0
        path = tmp_path / "one.csv"
        dataset.write_report(report, path)
        assert len(path.read_text().splitlines()) == 2

    def test_markdown_layout(self, tmp_path):
        path = tmp_path / "out.md"
        dataset.write_report(self._report(), path, fmt="md")
        lines = path.read_text().splitlines()
        assert len(lines) == 5
        assert lines[0].startswith("| id ")
        assert set(lines[1].replace("|", "").split()) == {"---"}
        assert lines[-1].startswith("| MEAN ")

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            dataset.write_report(self._report(), tmp_path / "x", fmt="xml")

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(OSError, match="cannot write report"):
            dataset.write_report(self._report(), tmp_path / "missing" / "x.csv")

    def test_rerun_identical_except_timing(self, paired_dirs, tmp_path):
        low_dir, ref_dir = paired_dirs
        pairs = dataset.discover_pairs(low_dir, ref_dir)
        p1, p2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
        dataset.write_report(dataset.evaluate(pairs), p1)
        dataset.write_report(dataset.evaluate(pairs), p2)
        strip = lambda text: [line.rsplit(",", 1)[0] for line in text.splitlines()]
        assert strip(p1.read_text()) == strip(p2.read_text())
