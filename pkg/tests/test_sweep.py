import csv
import io
import json
import math

import pytest

from dfstates.errors import DomainError
from dfstates.moments import DEFAULT_CONTROL, SeriesControl, moment_closed_form
from dfstates.presets import PRESET_IDS, PRESETS, figure_preset
from dfstates.states import Family, StateSpec
from dfstates.sweep import (
    MOMENT_COLUMNS,
    QGRID_COLUMNS,
    WITNESS_COLUMNS,
    SweepConfig,
    Table,
    emit,
    render,
    run_sweep,
)
from dfstates.witnesses import klyshko_B, mandel_q


def small_config(**over):
    base = dict(
        witness="MandelQ",
        family=Family.PADFS,
        photons_list=(1,),
        fock_list=(1,),
        alpha_mag=(0.0, 1.0, 3),
    )
    base.update(over)
    return SweepConfig(**base)


class TestConfig:
    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            small_config(witness="Wigner")

    def test_family_coercion(self):
        cfg = small_config(family="psdfs")
        assert cfg.family is Family.PSDFS

    @pytest.mark.parametrize("rng", [(1.0, 0.0, 3), (0.0, 1.0, 0), (0.0, 0.0, 2)])
    def test_bad_mag_range(self, rng):
        with pytest.raises(DomainError):
            small_config(alpha_mag=rng)

    def test_single_point_range_allowed(self):
        cfg = small_config(alpha_mag=(0.4, 0.4, 1))
        assert len(run_sweep(cfg).rows) == 1

    def test_empty_lists_rejected(self):
        with pytest.raises(DomainError):
            small_config(photons_list=())
        with pytest.raises(DomainError):
            small_config(order=())

    def test_bad_format(self):
        with pytest.raises(DomainError):
            small_config(fmt="xml")


class TestRunSweep:
    def test_row_count_and_order(self):
        cfg = small_config(
            photons_list=(1, 2),
            fock_list=(0, 1),
            alpha_mag=(0.0, 1.0, 3),
            alpha_phase=(0.0, math.pi, 2),
        )
        table = run_sweep(cfg)
        assert table.columns == WITNESS_COLUMNS
        assert len(table.rows) == 2 * 2 * 3 * 2
        # phase varies fastest, then magnitude, then fock, then photons
        first = table.rows[0]
        second = table.rows[1]
        assert first[3:7] == (1, 0, 0.0, 0.0)
        assert second[3:7] == (1, 0, 0.0, math.pi)
        assert table.rows[2][5] == 0.5
        assert table.rows[-1][3:5] == (2, 1)

    def test_values_match_direct_calls(self):
        cfg = small_config(alpha_mag=(0.0, 2.0, 5))
        table = run_sweep(cfg)
        for row in table.rows:
            spec = StateSpec("padfs", row[3], row[4], row[5], row[6])
            direct = mandel_q(spec)
            assert abs(row[7] - direct.value) < 1e-14
            assert row[8] == direct.nonclassical
            assert row[9] == "ok"

    @pytest.mark.parametrize("photons", [1, 2, 3])
    def test_added_fock_floor_at_zero_alpha(self, photons):
        cfg = small_config(photons_list=(photons,), alpha_mag=(0.0, 5.0, 11))
        first = run_sweep(cfg).rows[0]
        assert abs(first[7] + 1.0) < 1e-10

    def test_degenerate_points_get_status_rows(self):
        cfg = small_config(
            witness="MandelQ",
            family=Family.PSDFS,
            photons_list=(2,),
            fock_list=(1,),
            alpha_mag=(0.0, 1.0, 3),
        )
        table = run_sweep(cfg)
        assert len(table.rows) == 3
        assert table.rows[0][7] is None
        assert table.rows[0][9] == "degenerate"
        assert table.rows[1][9] == "ok"

    def test_klyshko_sweep_matches_direct(self):
        cfg = small_config(
            witness="Klyshko",
            order=(0, 1, 2),
            alpha_mag=(1.0, 1.0, 1),
        )
        table = run_sweep(cfg)
        assert len(table.rows) == 3
        for row in table.rows:
            direct = klyshko_B(StateSpec("padfs", 1, 1, 1.0, 0.0), row[1])
            assert row[7] == direct.value

    def test_moment_rows_carry_imaginary_part(self):
        cfg = small_config(witness="moment", q=1, r=2, alpha_mag=(0.8, 0.8, 1),
                           alpha_phase=0.9)
        table = run_sweep(cfg)
        assert table.columns == MOMENT_COLUMNS
        val = moment_closed_form(StateSpec("padfs", 1, 1, 0.8, 0.9), 1, 2).value
        row = table.rows[0]
        assert abs(row[7] - val.real) < 1e-14
        assert abs(row[10] - val.imag) < 1e-14
        assert row[8] is None

    def test_workers_do_not_change_output(self):
        cfg = small_config(
            witness="HongMandel",
            order=(2, 4),
            photons_list=(1, 2),
            alpha_mag=(0.0, 2.0, 5),
        )
        seq = render(run_sweep(cfg, workers=1), "csv")
        par = render(run_sweep(cfg, workers=4), "csv")
        assert seq == par

    def test_deterministic_rendering(self):
        cfg = small_config(witness="HOSPS", order=(3,), alpha_mag=(0.0, 1.5, 7))
        a = render(run_sweep(cfg), "json")
        b = render(run_sweep(cfg), "json")
        assert a == b

    def test_qgrid_kind(self):
        cfg = small_config(
            witness="qgrid",
            grid=(-1.0, 1.0, 3, -1.0, 1.0, 3),
            alpha_mag=(0.5, 0.5, 1),
        )
        table = run_sweep(cfg)
        assert table.columns == QGRID_COLUMNS
        assert len(table.rows) == 9

    def test_qgrid_requires_single_state(self):
        cfg = small_config(
            witness="qgrid",
            grid=(-1.0, 1.0, 3, -1.0, 1.0, 3),
            photons_list=(1, 2),
            alpha_mag=(0.5, 0.5, 1),
        )
        with pytest.raises(DomainError):
            run_sweep(cfg)


class TestRender:
    def test_csv_header_only_for_empty_table(self):
        table = Table(columns=WITNESS_COLUMNS)
        text = render(table, "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert rows == [list(WITNESS_COLUMNS)]

    def test_csv_cells(self):
        cfg = small_config(alpha_mag=(0.0, 1.0, 2))
        rows = list(csv.reader(io.StringIO(render(run_sweep(cfg), "csv"))))
        assert rows[0] == list(WITNESS_COLUMNS)
        assert rows[1][0] == "MandelQ"
        assert rows[1][8] in ("true", "false")
        assert float(rows[2][5]) == 1.0

    def test_csv_round_trip_preserves_floats(self):
        cfg = small_config(witness="Antibunching", order=(3,), alpha_mag=(0.0, 2.0, 5))
        table = run_sweep(cfg)
        rows = list(csv.reader(io.StringIO(render(table, "csv"))))
        for parsed, row in zip(rows[1:], table.rows):
            assert float(parsed[7]) == row[7]

    def test_json_document_shape(self):
        cfg = small_config(alpha_mag=(0.5, 0.5, 1))
        ctrl = SeriesControl(rel_tol=1e-13)
        doc = json.loads(render(run_sweep(cfg, ctrl), "json"))
        assert len(doc["rows"]) == 1
        assert set(doc["rows"][0]) == set(WITNESS_COLUMNS)
        assert doc["rows"][0]["status"] == "ok"
        meta = doc["metadata"]
        assert meta["series_control"]["rel_tol"] == 1e-13
        assert meta["kind"] == "MandelQ"
        assert "library_version" in meta
        assert "timestamp" not in meta

    def test_unknown_format(self):
        with pytest.raises(DomainError):
            render(Table(columns=WITNESS_COLUMNS), "xml")

    def test_emit_writes_file(self, tmp_path):
        cfg = small_config(alpha_mag=(0.5, 0.5, 1))
        table = run_sweep(cfg)
        path = tmp_path / "out.csv"
        emit(table, "csv", str(path))
        assert path.read_bytes().decode() == render(table, "csv")


class TestPresets:
    def test_catalog_size_and_ids(self):
        assert len(PRESET_IDS) == 38
        assert PRESET_IDS == tuple(sorted(PRESETS))
        for pid in ("fig2a", "fig6c", "fig7b", "fig9d"):
            assert pid in PRESET_IDS

    def test_unknown_preset(self):
        with pytest.raises(DomainError):
            figure_preset("fig99z")

    def test_added_number_statistics_preset(self):
        table = figure_preset("fig2a")
        assert table.columns == WITNESS_COLUMNS + ("scale",)
        assert len(table.rows) == 4 * 101
        assert all(row[-1] == 1.0 for row in table.rows)
        assert table.meta["preset"] == "fig2a"
        # 4 photon numbers, each starting at the -1 floor
        floors = [row for row in table.rows if row[5] == 0.0]
        assert len(floors) == 4
        for row in floors:
            assert abs(row[7] + 1.0) < 1e-10

    def test_phase_sweep_preset_minima_on_axis(self):
        table = figure_preset("fig7b")
        phases = sorted({row[6] for row in table.rows})
        assert len(phases) == 41
        for order in (2, 4):
            vals = {row[6]: row[7] for row in table.rows if row[1] == order}
            qmin = min(vals.values())
            argmins = {ph for ph, v in vals.items() if abs(v - qmin) < 1e-12}
            assert argmins == {phases[0], phases[20], phases[40]}

    def test_qgrid_preset(self):
        table = figure_preset("fig6a")
        assert table.columns == QGRID_COLUMNS + ("scale",)
        assert len(table.rows) == 121 * 121
