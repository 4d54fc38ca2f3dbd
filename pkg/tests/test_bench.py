import csv
import json

import pytest

from emdsteg.bench import BenchConfig, BenchConfigError, build_cover, run_bench
from emdsteg.cli import main

SMALL_CONFIG = {
    "schemes": [
        {"scheme": "emd", "params": {"n": 2}},
        {"scheme": "emd", "params": {"n": 3}},
        {"scheme": "gemd", "params": {"n": 2}},
        {"scheme": "de", "params": {"k": 1}},
    ],
    "cover": {"kind": "noise", "width": 64, "height": 64, "seed": 5},
    "seed": 9,
    "fill": 1.0,
}


def read_rows(path):
    return list(csv.DictReader(path.read_text().splitlines()))


@pytest.fixture(scope="module")
def bench_out(tmp_path_factory):
    out = tmp_path_factory.mktemp("bench")
    cfg = BenchConfig.from_json(json.dumps(SMALL_CONFIG))
    paths = run_bench(cfg, out)
    return paths


class TestRunBench:
    def test_all_outputs_written(self, bench_out):
        assert sorted(bench_out) == ["fig2", "fig3", "table3", "table4", "table5"]
        for path in bench_out.values():
            assert path.exists()

    def test_provenance_column_everywhere(self, bench_out):
        for path in bench_out.values():
            rows = read_rows(path)
            assert rows
            assert all(r["provenance"] in ("computed", "reported") for r in rows)

    def test_reported_rows_have_only_quoted_fields(self, bench_out):
        for name in ("table3", "table4", "table5"):
            for row in read_rows(bench_out[name]):
                if row["provenance"] == "reported":
                    assert row["params"] == ""
                    assert row["alpha"] != ""
                    assert row["value"] != ""
                else:
                    assert row["delta_vs_computed"] == ""

    def test_reported_deltas_follow_computed_rows(self, bench_out):
        rows = read_rows(bench_out["table4"])
        computed = {
            (r["scheme"], r["params"]): float(r["value"])
            for r in rows
            if r["provenance"] == "computed" and r["value"]
        }
        emd3 = next(
            r
            for r in rows
            if r["provenance"] == "reported"
            and r["scheme"] == "emd"
            and r["condition"] == "n=3"
        )
        delta = float(emd3["delta_vs_computed"])
        assert delta == pytest.approx(
            float(emd3["value"]) - computed[("emd", "n=3")], abs=1e-9
        )

    def test_computed_alpha_values(self, bench_out):
        rows = read_rows(bench_out["table4"])
        emd3 = next(
            r
            for r in rows
            if r["provenance"] == "computed" and r["params"] == "n=3"
            and r["scheme"] == "emd"
        )
        assert float(emd3["alpha"]) == pytest.approx(0.9357, abs=1e-3)

    def test_fig3_scheme_points_never_beat_the_frontier(self, bench_out):
        rows = read_rows(bench_out["fig3"])
        envelope = sorted(
            (float(r["inv_alpha"]), float(r["efficiency"]))
            for r in rows
            if r["series"] == "bound"
        )
        for row in rows:
            if row["series"] == "bound" or row["provenance"] != "computed":
                continue
            x = float(row["inv_alpha"])
            eff = float(row["efficiency"])
            ceiling = max(e for ix, e in envelope if ix <= x + 1e-12)
            assert eff <= ceiling + 1e-9, row["series"]

    def test_fig2_contains_bound_series(self, bench_out):
        rows = read_rows(bench_out["fig2"])
        assert any(r["series"] == "bound" for r in rows)
        assert any(r["provenance"] == "reported" for r in rows)


class TestDeterminism:
    def test_byte_identical_runs(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(SMALL_CONFIG))
        first = tmp_path / "run1"
        second = tmp_path / "run2"
        assert main(["bench", "--config", str(cfg_path), "--out-dir", str(first)]) == 0
        assert main(["bench", "--config", str(cfg_path), "--out-dir", str(second)]) == 0
        for name in ("table3.csv", "table4.csv", "table5.csv", "fig2.csv", "fig3.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_seed_changes_measurements(self, tmp_path):
        cfg = BenchConfig.from_json(json.dumps(SMALL_CONFIG))
        run_bench(cfg, tmp_path / "a")
        cfg.seed = cfg.seed + 1
        run_bench(cfg, tmp_path / "b")
        a = (tmp_path / "a" / "table4.csv").read_text()
        b = (tmp_path / "b" / "table4.csv").read_text()
        assert a != b


class TestConfig:
    def test_bad_fill_rejected(self):
        with pytest.raises(BenchConfigError):
            BenchConfig.from_json(json.dumps({"fill": 0.0}))

    def test_bad_json_rejected(self):
        with pytest.raises(BenchConfigError):
            BenchConfig.from_json("{nope")

    def test_empty_scheme_list_rejected(self):
        with pytest.raises(BenchConfigError):
            BenchConfig.from_json(json.dumps({"schemes": []}))

    def test_cli_exit_on_bad_config(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"fill": 2.0}))
        assert main(["bench", "--config", str(cfg_path),
                     "--out-dir", str(tmp_path / "out")]) == 2

    def test_flat_cover_build(self):
        img = build_cover({"kind": "flat", "width": 8, "height": 4, "value": 200})
        assert img.size == 32
        assert int(img.pixels[0]) == 200

    def test_unknown_cover_kind(self):
        with pytest.raises(BenchConfigError):
            build_cover({"kind": "gradient"})
