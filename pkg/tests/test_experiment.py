import json

import numpy as np
import pytest

from dprisk.exceptions import ConfigError, SampleTooSmall
from dprisk.experiment import (
    ROW_FIELDS,
    SweepConfig,
    SweepRow,
    aggregate,
    derive_seed,
    draw_sample,
    load_config,
    read_rows_csv,
    run_sweep,
    sample_size,
    write_aggregate_csv,
    write_rows_csv,
)
from dprisk.model import Universe


def test_full_proportion_is_whole_universe(table1):
    assert draw_sample(table1, 1.0, 123).values.tolist() == table1.values.tolist()


def test_too_small(table1):
    with pytest.raises(SampleTooSmall):
        draw_sample(table1, 0.1, 0)


def test_draw_is_deterministic():
    u = Universe(np.arange(10_000))
    a, b = draw_sample(u, 0.5, 42), draw_sample(u, 0.5, 42)
    assert len(a) == 5000
    assert np.array_equal(a.values, b.values)
    assert len(np.unique(a.values)) == 5000


def test_sample_size_floor():
    assert sample_size(100, 0.29) == 29
    assert sample_size(5, 0.99) == 4
    assert sample_size(5, 0.1) == 0


def test_derive_seed_depends_on_every_index():
    base = derive_seed(0, 0, 0, 0, 0, 0)
    assert base == derive_seed(0, 0, 0, 0, 0, 0)
    others = {derive_seed(0, *idx) for idx in np.eye(5, dtype=int)} | {derive_seed(1, 0, 0, 0, 0, 0)}
    assert base not in others and len(others) == 6


def test_cardinality(table1):
    cfg = SweepConfig([("t", table1)], queries=["mean"], epsilons=[1.0], proportions=[0.6], repetitions=100)
    res = run_sweep(cfg)
    assert len(res) == 100
    assert [r.repetition for r in res] == list(range(100))


def test_full_proportion_has_constant_local(table1):
    cfg = SweepConfig([("t", table1)], queries=["median"], epsilons=[1.0], proportions=[1.0], repetitions=20)
    assert len({r.delta_v for r in run_sweep(cfg)}) == 1


def test_worked_example_appears_in_sweep(table1):
    cfg = SweepConfig(
        [("t", table1)], queries=["mean"], epsilons=[1.0], proportions=[0.8], repetitions=100, local_method="analytic"
    )
    rows = run_sweep(cfg).rows
    hits = [r for r in rows if r.delta_v == pytest.approx(133.45)]
    assert hits, "no repetition drew the data set without the maximum"
    assert all(r.delta_f == 337 for r in rows)
    assert all(r.sample_size == 4 for r in rows)


def test_skipped_cells(table1):
    cfg = SweepConfig([("t", table1)], queries=["max"], epsilons=[1.0], proportions=[0.1, 1.0], repetitions=3)
    res = run_sweep(cfg)
    assert len(res) == 3
    assert len(res.skipped) == 1 and res.skipped[0].proportion == 0.1


def test_workers_do_not_change_output():
    u = Universe(np.random.default_rng(0).integers(0, 100, 300))
    cfg = SweepConfig([("u", u)], queries=["max", "variance"], epsilons=[0.5, 2.0], proportions=[0.1, 0.5], repetitions=5)
    assert run_sweep(cfg, workers=1).rows == run_sweep(cfg, workers=2).rows


def test_rho_gl_constant_per_cell(table1):
    cfg = SweepConfig([("t", table1)], queries=["max", "mean"], epsilons=[0.5, 3.0], proportions=[0.6], repetitions=10)
    for cell in aggregate(run_sweep(cfg).rows):
        assert cell.stats["rho_gl"]["min"] == cell.stats["rho_gl"]["max"]


def _row(rho_tw, rep=0):
    return SweepRow("v", "max", 1.0, 0.5, 10, rep, 1.0, 0.5, 0.1, rho_tw, 0.73)


def test_aggregate_two_rows():
    (cell,) = aggregate([_row(0.5, 0), _row(0.7, 1)])
    tw = cell.stats["rho_tw"]
    assert tw["mean"] == pytest.approx(0.6)
    assert (tw["min"], tw["max"]) == (0.5, 0.7)
    assert tw["p50"] == pytest.approx(0.6)


def test_aggregate_identical_rows():
    (cell,) = aggregate([_row(0.55, i) for i in range(100)])
    assert cell.repetitions == 100
    assert set(cell.stats["rho_tw"].values()) == {0.55}


def test_csv_roundtrip(tmp_path, table1):
    cfg = SweepConfig([("t", table1)], queries=["variance"], epsilons=[0.3], proportions=[0.6], repetitions=7)
    rows = run_sweep(cfg).rows
    path = write_rows_csv(rows, tmp_path / "rows.csv")
    assert path.read_text().splitlines()[0] == ",".join(ROW_FIELDS)
    assert read_rows_csv(path) == rows
    agg = write_aggregate_csv(aggregate(rows), tmp_path / "agg.csv").read_text().splitlines()
    assert agg[0].startswith("variable,query,epsilon,proportion,repetitions,rho_mw_mean")
    assert len(agg) == 2


def test_load_config(fixtures_dir):
    cfg = load_config(fixtures_dir / "table1_sweep.json")
    (label, universe), = cfg.variables
    assert label == "distance-work"
    assert universe.values.tolist() == [3, 1, 10, 675, 17]
    assert cfg.master_seed == 7 and cfg.local_method.value == "analytic"


@pytest.mark.parametrize(
    "patch",
    [
        {"epsilons": [0]},
        {"proportions": [1.5]},
        {"repetitions": 0},
        {"queries": ["mode"]},
        {"local_method": "brute-force"},
        {"unknown": 1},
        {"variables": []},
    ],
)
def test_bad_config(tmp_path, fixtures_dir, patch):
    raw = json.loads((fixtures_dir / "table1_sweep.json").read_text())
    raw.update(patch)
    (tmp_path / "table1.csv").write_text((fixtures_dir / "table1.csv").read_text())
    path = tmp_path / "c.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(ConfigError):
        load_config(path)
