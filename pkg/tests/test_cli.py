import csv
import io
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pearcey.cli import (
    BATCH_COLUMNS,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_REGION,
    EXIT_ROW_FAILED,
    main,
    parse_complex,
    parse_range,
    render_complex,
)
from pearcey.reference import relative_error


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestComplexLiterals:
    @pytest.mark.parametrize(
        "text, z",
        [
            ("1", 1 + 0j),
            ("-2.5", -2.5 + 0j),
            ("i", 1j),
            ("-i", -1j),
            ("3i", 3j),
            ("1+2i", 1 + 2j),
            ("1-i", 1 - 1j),
            ("0.1-0.125i", 0.1 - 0.125j),
            ("1e-3+2E2j", 0.001 + 200j),
            ("(3,-4)", 3 - 4j),
            (" ( -1e2 , .5 ) ", -100 + 0.5j),
        ],
    )
    def test_parse(self, text, z):
        assert parse_complex(text) == z

    @pytest.mark.parametrize("text", ["", "abc", "1+", "i2", "1+2", "(1,2", "1++2i", "nan", "inf"])
    def test_reject(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)

    @given(st.complex_numbers(allow_nan=False, allow_infinity=False))
    def test_round_trip(self, z):
        back = parse_complex(render_complex(z))
        assert back == z
        assert math.copysign(1, back.imag) == math.copysign(1, z.imag)
        assert math.copysign(1, back.real) == math.copysign(1, z.real)


class TestEval:
    def test_origin(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "0", "--y", "0")
        assert code == EXIT_OK
        assert "0.9064024771" in out

    def test_json_schema(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "20", "--y", "1", "--method", "largex", "--terms", "1", "--json")
        assert code == EXIT_OK
        obj = json.loads(out)
        assert list(obj) == ["x", "y", "value", "method", "terms", "error_estimate", "warnings"]
        assert obj["x"] == [20.0, 0.0] and obj["method"] == "large_x" and obj["terms"] == 1
        value = complex(*obj["value"])
        assert relative_error(value, 20, 1) == pytest.approx(0.001766, rel=5e-4)

    def test_json_round_trip_precision(self, capsys):
        from pearcey.evaluator import evaluate

        _, out, _ = run(capsys, "eval", "--x", "1+i", "--y", "0.5", "--json")
        assert complex(*json.loads(out)["value"]) == evaluate(1 + 1j, 0.5).value

    def test_parse_error_names_flag(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "abc", "--y", "0")
        assert code == EXIT_PARSE
        assert "--x" in err

    def test_region_error(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "-5", "--y", "0", "--method", "largex")
        assert code == EXIT_REGION
        assert "region" in err

    def test_bad_flag_is_parse_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--x", "1"])
        assert exc.value.code == EXIT_PARSE

    def test_bad_terms(self, capsys):
        code, _, _ = run(capsys, "eval", "--x", "1", "--y", "1", "--terms", "0")
        assert code == EXIT_PARSE


class TestBatch:
    def write(self, tmp_path, text, name="in.csv"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    def test_three_rows_in_order(self, tmp_path, capsys):
        path = self.write(tmp_path, "x,y\n1,i\n0.1-0.125i,-2\n0.05i,2i\n")
        code, out, _ = run(capsys, "batch", path)
        assert code == EXIT_OK
        rows = read_csv(out)
        assert list(rows[0]) == BATCH_COLUMNS
        assert [r["x"] for r in rows] == ["1.0+0.0i", "0.1-0.125i", "0.0+0.05i"]
        assert all(r["error"] == "" for r in rows)

    def test_header_only(self, tmp_path, capsys):
        code, out, _ = run(capsys, "batch", self.write(tmp_path, "x,y\n"))
        assert code == EXIT_OK
        assert out == ",".join(BATCH_COLUMNS) + "\n"

    def test_row_isolation(self, tmp_path, capsys):
        path = self.write(tmp_path, "x,y,method\n20,1,largex\n-5,0,largex\n1,i,\n")
        code, out, _ = run(capsys, "batch", path)
        assert code == EXIT_ROW_FAILED
        rows = read_csv(out)
        assert [bool(r["error"]) for r in rows] == [False, True, False]
        assert rows[1]["error"].startswith("region-error")
        assert rows[0]["method"] == "large_x"

    def test_malformed_line_reported(self, tmp_path, capsys):
        path = self.write(tmp_path, "x,y\n1,1\nfoo,1\n2,2\n")
        code, out, _ = run(capsys, "batch", path)
        assert code == EXIT_ROW_FAILED
        rows = read_csv(out)
        assert len(rows) == 3 and "line 3" in rows[1]["error"]

    def test_jsonl(self, tmp_path, capsys):
        path = self.write(tmp_path, '{"x": "20", "y": "1", "method": "largex", "terms": 2}\nnot json\n', "in.jsonl")
        code, out, _ = run(capsys, "batch", path)
        assert code == EXIT_ROW_FAILED
        rows = read_csv(out)
        assert rows[0]["terms"] == "2" and "line 2" in rows[1]["error"]

    def test_unreadable(self, tmp_path, capsys):
        code, _, _ = run(capsys, "batch", str(tmp_path / "missing.csv"))
        assert code == EXIT_PARSE

    def test_deterministic_across_workers(self, tmp_path, capsys):
        lines = ["x,y"] + [f"{k}+{k / 3}i,{k / 7}" for k in range(1, 13)]
        path = self.write(tmp_path, "\n".join(lines) + "\n")
        outs = []
        for workers in ("1", "1", "3"):
            dest = tmp_path / f"out{len(outs)}.csv"
            assert main(["batch", path, str(dest), "--workers", workers]) == EXIT_OK
            outs.append(dest.read_bytes())
        assert outs[0] == outs[1] == outs[2]


class TestTable:
    def test_exit_code_tracks_cells(self, capsys):
        from pearcey.tables import reproduce_table

        code, out, _ = run(capsys, "table", "2", "--digits", "30")
        cells = reproduce_table(2, digits=30)
        assert code == (EXIT_OK if all(c.passed for c in cells) else EXIT_ROW_FAILED)
        assert out.strip().endswith(f"{sum(c.passed for c in cells)}/{len(cells)} cells pass")

    def test_cell_values(self, capsys):
        _, out, _ = run(capsys, "table", "2", "--digits", "30")
        rows = [ln[22:].split() for ln in out.splitlines() if ln.startswith("(30i, -i)")]
        n, computed, expected, verdict = next(r for r in rows if r[0] == "2")
        assert float(computed) == pytest.approx(3.775e-8, rel=1e-3)
        assert verdict == "PASS"


class TestSweep:
    def test_range(self):
        assert list(parse_range("1:100:3:log")) == pytest.approx([1, 10, 100])
        assert list(parse_range("0:1:3")) == [0, 0.5, 1]
        assert list(parse_range("5:9:1")) == [5]

    @pytest.mark.parametrize("spec", ["1:2", "a:b:3", "1:2:0", "0:1:3:log", "1:2:3:cubic"])
    def test_bad_range(self, spec):
        with pytest.raises(ValueError):
            parse_range(spec)

    def test_malformed_spec_exit(self, capsys):
        code, _, _ = run(capsys, "sweep", "--x-grid", "1:2", "--y-grid", "1:1:1")
        assert code == EXIT_PARSE

    def test_three_by_three(self, capsys):
        code, out, _ = run(capsys, "sweep", "--x-grid", "1:100:3:log", "--y-grid", "1:1:1")
        assert code == EXIT_OK
        rows = read_csv(out)
        assert len(rows) == 3  # three x moduli, one y
        code, out, _ = run(capsys, "sweep", "--x-grid", "1:100:3:log", "--y-grid", "1:1:1", "--x-arg", "0:1:3")
        rows = read_csv(out)
        assert len(rows) == 9
        assert rows[0]["method"] in ("small_x", "convergent_series")
        assert rows[-1]["method"] == "large_x"

    def test_single_row(self, capsys):
        _, out, _ = run(capsys, "sweep", "--x-grid", "2:2:1", "--y-grid", "1:1:1")
        assert len(read_csv(out)) == 1

    def test_with_oracle(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--x-grid", "1:60:5:log", "--y-grid", "0.5:20:4:log", "--with-oracle"
        )
        assert code == EXIT_OK
        rows = read_csv(out)
        assert "oracle_error" in rows[0]
        rated = [r for r in rows if r["error_estimate"]]
        honest = [r for r in rated if float(r["oracle_error"]) <= 10 * float(r["error_estimate"])]
        assert len(honest) >= 0.9 * len(rated)
