import json
import math

import numpy as np
import pytest

from trig2d import io
from trig2d.analysis import DEMO_GAUSSIAN, raster
from trig2d.cli import EXIT_AUDIT_FAILED, EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_USAGE, run
from trig2d.functions import Kind, evaluate
from trig2d.transforms import (
    CoefficientTable,
    GridSpec,
    SampledField,
    Symmetry,
    Variant,
    forward,
    label_set,
    sample_field,
    sample_points,
)

A, S = Symmetry.ANTISYMMETRIC, Symmetry.SYMMETRIC


def random_table(rng, spec):
    return CoefficientTable(spec, rng.normal(size=len(label_set(spec))) * 10.0 ** rng.integers(-20, 20))


class TestFiles:
    @pytest.mark.parametrize("suffix", [".json", ".csv"])
    def test_coeffs_roundtrip_bit_exact(self, tmp_path, rng, suffix):
        for spec in (GridSpec(A, Variant.II, 7), GridSpec(S, Variant.IV, 5), GridSpec(A, Variant.III, 3)):
            table = random_table(rng, spec)
            path = tmp_path / f"c{suffix}"
            io.write_coeffs(path, table)
            back = io.read_coeffs(path)
            assert back.spec == spec
            assert back == table
            assert np.array_equal(back.coeffs, table.coeffs)

    def test_field_roundtrip_bit_exact(self, tmp_path, rng):
        spec = GridSpec(S, Variant.III, 6)
        field = SampledField(spec, rng.normal(size=len(sample_points(spec))) / 3.0)
        path = tmp_path / "f.csv"
        io.write_field_csv(path, field)
        back = io.read_field_csv(path, spec)
        assert np.array_equal(back.values, field.values)

    def test_dense_roundtrip_bit_exact(self, tmp_path, rng):
        grid = raster(40)
        dense = io.DenseGrid({"kind": "sin-", "resolution": 40}, grid.x, grid.y, rng.normal(size=len(grid)))
        path = tmp_path / "d.csv"
        io.write_dense(path, dense)
        back = io.read_dense(path)
        assert back.header == {"kind": "sin-", "resolution": "40"}
        assert np.array_equal(back.x, grid.x) and np.array_equal(back.value, dense.value)

    def test_missing_row_reports_row_count(self, tmp_path):
        spec = GridSpec(A, Variant.II, 4)
        path = tmp_path / "f.csv"
        io.write_field_csv(path, sample_field(spec, DEMO_GAUSSIAN))
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")
        with pytest.raises(io.FormatError, match="row count"):
            io.read_field_csv(path, spec)

    @pytest.mark.parametrize("mutate, message", [
        (lambda rows: [rows[0].replace("value", "val")] + rows[1:], "header"),
        (lambda rows: rows[:1] + [rows[1] + ",9"] + rows[2:], "columns"),
        (lambda rows: rows[:1] + ["9,9" + rows[1][3:]] + rows[2:], "indices"),
        (lambda rows: rows[:1] + [rows[1].rsplit(",", 1)[0] + ",nan"] + rows[2:], "non-finite"),
    ])
    def test_field_diagnostics(self, tmp_path, mutate, message):
        spec = GridSpec(A, Variant.II, 4)
        path = tmp_path / "f.csv"
        io.write_field_csv(path, sample_field(spec, DEMO_GAUSSIAN))
        path.write_text("\n".join(mutate(path.read_text().splitlines())) + "\n")
        with pytest.raises(io.FormatError, match=message):
            io.read_field_csv(path, spec)

    def test_field_from_other_grid_rejected(self, tmp_path):
        path = tmp_path / "f.csv"
        io.write_field_csv(path, sample_field(GridSpec(A, Variant.IV, 4), DEMO_GAUSSIAN))
        with pytest.raises(io.FormatError):
            io.read_field_csv(path, GridSpec(A, Variant.III, 4))

    def test_bad_coeff_files(self, tmp_path):
        bad = tmp_path / "c.json"
        bad.write_text("{not json")
        with pytest.raises(io.FormatError):
            io.read_coeffs(bad)
        table = CoefficientTable(GridSpec(S, Variant.I, 3), [1.0, 2.0, 3.0])
        io.write_coeffs(bad, table)
        doc = json.loads(bad.read_text())
        doc["entries"] = doc["entries"][:-1]
        bad.write_text(json.dumps(doc))
        with pytest.raises(io.FormatError, match="row count"):
            io.read_coeffs(bad)

    def test_dense_row_count_checked(self, tmp_path):
        grid = raster(32)
        path = tmp_path / "d.csv"
        io.write_dense(path, io.DenseGrid({"resolution": 32}, grid.x, grid.y, np.zeros(len(grid))))
        path.write_text("\n".join(path.read_text().splitlines()[:-3]) + "\n")
        with pytest.raises(io.FormatError, match="row count"):
            io.read_dense(path)


class TestCommands:
    def test_eval(self, capsys):
        assert run(["eval", "--kind", "sin-", "--label", "2,1", "--point", "0.75,0.25"]) == EXIT_OK
        value = float(capsys.readouterr().out)
        assert value == pytest.approx(-math.sqrt(2), abs=1e-15)

    def test_eval_half_integer_label(self, capsys):
        assert run(["eval", "--kind", "cos+", "--label", "2.5,0.5", "--point", "0.1,0.3",
                    "--point", "0.2,0.2"]) == EXIT_OK
        out = [float(v) for v in capsys.readouterr().out.split()]
        assert out == [evaluate(Kind.COS_PLUS, (2.5, 0.5), 0.1, 0.3), evaluate(Kind.COS_PLUS, (2.5, 0.5), 0.2, 0.2)]

    def test_fold(self, capsys):
        assert run(["fold", "--kind", "sin-", "--point", "0.25,0.75"]) == EXIT_OK
        sign, x, y = capsys.readouterr().out.split()
        assert (sign, float(x), float(y)) == ("-1", 0.75, 0.25)

    def test_decompose_line(self, capsys):
        assert run(["decompose", "--left", "sin+:2,1", "--right", "sin+:3,2"]) == EXIT_OK
        line = capsys.readouterr().out.strip()
        assert line.startswith("4*sin+(2,1)*sin+(3,2) = ")
        terms = set(line.split(" = ")[1].split())
        assert terms == {"+cos+(5,3)", "-cos+(5,1)", "-cos+(3,1)", "+cos+(1,1)",
                         "+cos+(4,4)", "-cos+(4,2)", "-cos+(4,0)", "+cos+(2,0)"}

    def test_decompose_json_and_slots(self, capsys):
        assert run(["decompose", "--left", "sin+:2,1", "--right", "cos+:3,2", "--json"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["terms"]) == 6
        assert run(["decompose", "--left", "sin+:2,1", "--right", "cos+:3,2", "--slots"]) == EXIT_OK
        raw, reduced = capsys.readouterr().out.splitlines()
        assert reduced.endswith("+0 +0")

    def test_transform_and_synth(self, tmp_path, capsys):
        spec = GridSpec(A, Variant.II, 7)
        field_path, coeff_path, dense_path = tmp_path / "f.csv", tmp_path / "c.json", tmp_path / "d.csv"
        io.write_field_csv(field_path, sample_field(spec, DEMO_GAUSSIAN))
        assert run(["transform", "--symmetry", "anti", "--variant", "II", "--M", "7",
                    "--input", str(field_path), "--output", str(coeff_path)]) == EXIT_OK
        table = io.read_coeffs(coeff_path)
        assert table == forward(spec, sample_field(spec, DEMO_GAUSSIAN))
        assert run(["synth", "--coeffs", str(coeff_path), "--resolution", "40", "--output", str(dense_path)]) == EXIT_OK
        assert len(io.read_dense(dense_path)) == 40 * 41 // 2

    def test_synth_basis_dense_grid(self, tmp_path):
        out = tmp_path / "sin.csv"
        assert run(["synth", "--kind", "sin-", "--label", "2,1", "--output", str(out)]) == EXIT_OK
        dense = io.read_dense(out)
        assert len(dense) == 20100
        assert np.all(dense.x >= dense.y)
        assert np.max(np.abs(dense.value - evaluate(Kind.SIN_MINUS, (2, 1), dense.x, dense.y))) == 0.0

    def test_demo_outputs(self, tmp_path, capsys):
        assert run(["demo", "--symmetry", "anti", "--variant", "II", "--M", "7",
                    "--resolution", "64", "--outdir", str(tmp_path)]) == EXIT_OK
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == [f"amdst-ii-M7_{s}" for s in
                         ("coeffs.json", "dense.csv", "diff.csv", "error.json", "field.csv")]
        report = json.loads((tmp_path / "amdst-ii-M7_error.json").read_text())
        assert set(report) == {"symmetry", "variant", "M", "resolution", "max_abs", "l2"}
        diff = io.read_dense(tmp_path / "amdst-ii-M7_diff.csv")
        assert report["max_abs"] == np.max(np.abs(diff.value))

    def test_demo_is_deterministic(self, tmp_path):
        outputs = []
        for name in ("a", "b"):
            d = tmp_path / name
            d.mkdir()
            assert run(["demo", "--symmetry", "sym", "--variant", "IV", "--M", "5",
                        "--resolution", "32", "--outdir", str(d)]) == EXIT_OK
            outputs.append({p.name: p.read_bytes() for p in d.iterdir()})
        assert outputs[0] == outputs[1]

    def test_ortho_pass(self, capsys):
        assert run(["ortho", "--kind", "sin+", "--max-label", "3"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 36 + 1
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1].startswith("36/36")

    def test_ortho_fail_exit_code(self, capsys, monkeypatch):
        monkeypatch.setenv("TRIG2D_QUAD_ORDER", "3")
        assert run(["ortho", "--kind", "sin-", "--max-label", "4"]) == EXIT_AUDIT_FAILED
        out = capsys.readouterr().out
        assert "FAIL" in out and "(order 3)" in out


class TestErrors:
    @pytest.mark.parametrize("argv, code", [
        (["frobnicate"], EXIT_USAGE),
        ([], EXIT_USAGE),
        (["eval", "--kind", "sin-"], EXIT_USAGE),
        (["eval", "--kind", "sin-", "--label", "2;1", "--point", "0,0"], EXIT_INVALID),
        (["eval", "--kind", "tan+", "--label", "2,1", "--point", "0,0"], EXIT_INVALID),
        (["eval", "--kind", "sin-", "--label", "2,1", "--point", "0,inf"], EXIT_INVALID),
        (["decompose", "--left", "sin-:1,2", "--right", "sin+:2,1"], EXIT_INVALID),
        (["decompose", "--left", "sin-2,1", "--right", "sin+:2,1"], EXIT_INVALID),
        (["demo", "--symmetry", "anti", "--variant", "II", "--M", "1"], EXIT_INVALID),
        (["demo", "--symmetry", "anti", "--variant", "V", "--M", "4"], EXIT_INVALID),
        (["ortho", "--kind", "cos+"], EXIT_INVALID),
        (["transform", "--symmetry", "anti", "--variant", "II", "--M", "4",
          "--input", "/nonexistent/f.csv", "--output", "c.json"], EXIT_IO),
        (["synth", "--coeffs", "/nonexistent/c.json", "--output", "d.csv"], EXIT_IO),
    ])
    def test_exit_codes(self, capsys, argv, code):
        assert run(argv) == code
        if code != EXIT_USAGE:
            assert capsys.readouterr().err.strip()

    def test_env_order_invalid(self, monkeypatch, capsys):
        monkeypatch.setenv("TRIG2D_QUAD_ORDER", "many")
        assert run(["ortho", "--kind", "sin-"]) == EXIT_INVALID
        assert "TRIG2D_QUAD_ORDER" in capsys.readouterr().err

    def test_no_partial_outputs(self, tmp_path):
        assert run(["demo", "--symmetry", "anti", "--variant", "II", "--M", "4",
                    "--resolution", "8", "--outdir", str(tmp_path)]) == EXIT_INVALID
        assert run(["demo", "--symmetry", "anti", "--variant", "II", "--M", "4",
                    "--sigma", "0", "--outdir", str(tmp_path)]) == EXIT_INVALID
        field = tmp_path / "f.csv"
        io.write_field_csv(field, sample_field(GridSpec(A, Variant.II, 3), DEMO_GAUSSIAN))
        out = tmp_path / "c.json"
        assert run(["transform", "--symmetry", "anti", "--variant", "II", "--M", "4",
                    "--input", str(field), "--output", str(out)]) == EXIT_IO
        assert sorted(p.name for p in tmp_path.iterdir()) == ["f.csv"]

    def test_missing_outdir(self, tmp_path):
        assert run(["demo", "--symmetry", "anti", "--variant", "II", "--M", "4",
                    "--outdir", str(tmp_path / "nope")]) == EXIT_IO
