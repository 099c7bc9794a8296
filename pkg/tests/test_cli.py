"""Command-line interface: schemas, exit codes, determinism, figures."""

import csv
import io
import json
from contextlib import redirect_stdout

import pytest

from unitdist.cli import main


def run_cli(args):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestTable:
    def test_bold_column(self):
        code, out = run_cli(["table", "--from", "22", "--to", "30", "--seed", '{"21": 68}'])
        assert code == 0
        rows = parse_csv(out)
        assert [int(r["upper_bound"]) for r in rows] == [72, 77, 82, 87, 92, 97, 102, 108, 113]
        assert [int(r["lower_bound"]) for r in rows] == [60, 64, 68, 72, 76, 81, 85, 89, 93]

    def test_single_row_seed(self):
        code, out = run_cli(["table", "--from", "3", "--to", "3", "--seed", '{"2": 1}'])
        assert code == 0
        assert int(parse_csv(out)[0]["upper_bound"]) == 3

    def test_pre_case15_value(self):
        code, out = run_cli(["table", "--from", "15", "--to", "15", "--seed", '{"14": 33}'])
        assert code == 0
        assert int(parse_csv(out)[0]["upper_bound"]) == 38

    def test_default_seed_runs(self):
        code, out = run_cli(["table", "--from", "22", "--to", "30"])
        assert code == 0
        rows = parse_csv(out)
        assert [int(r["upper_bound"]) for r in rows][-1] == 113

    def test_json_schema(self):
        code, out = run_cli(["table", "--from", "22", "--to", "23",
                             "--seed", '{"21": 68}', "--format", "json"])
        payload = json.loads(out)
        assert payload["schema_version"] == 1
        assert payload["command"] == "table"

    def test_seed_overrides_mix_with_pipeline(self):
        # seeds below the range chain through; explicit seeds are kept as given
        code, out = run_cli(["table", "--from", "25", "--to", "30", "--seed", '{"21": 68, "24": 80}'])
        assert code == 0
        assert len(parse_csv(out)) == 6

    def test_range_below_seed_errors(self):
        code, _ = run_cli(["table", "--from", "10", "--to", "30", "--seed", '{"21": 68}'])
        assert code == 2

    def test_empty_range_errors(self):
        code, _ = run_cli(["table", "--from", "30", "--to", "22", "--seed", '{"21": 68}'])
        assert code == 2

    def test_csv_columns_frozen(self):
        _, out = run_cli(["table", "--from", "22", "--to", "22", "--seed", '{"21": 68}'])
        header = out.splitlines()[0]
        assert header == "n,lower_bound,upper_bound,recursion,degree2,proposition,source"


class TestVerify:
    def test_single_record(self):
        code, out = run_cli(["verify", "--only", "n15", "--format", "json"])
        assert code == 0
        result = json.loads(out)["results"][0]
        assert result["status"] == "exact_certified"
        assert result["derived"] == 37

    def test_unknown_record_usage_error(self):
        code, _ = run_cli(["verify", "--only", "n99"])
        assert code == 2

    def test_corrupted_catalog_fails(self, tmp_path):
        bad = [{
            "id": "broken", "n": 3, "claimed_count": 3,
            "coords": [[0, 0], [1, 0], [0.5, 2.5]],
            "edges": [[0, 1], [0, 2], [1, 2]],
        }]
        path = tmp_path / "cat.json"
        path.write_text(json.dumps(bad))
        code, out = run_cli(["verify", "--catalog", str(path)])
        assert code == 1
        rows = parse_csv(out)
        assert rows[0]["approx_ok"] == "False"

    def test_figures_written(self, tmp_path):
        fig_dir = tmp_path / "figs"
        code, _ = run_cli(["verify", "--only", "n3", "--figures", str(fig_dir)])
        assert code == 0
        assert (fig_dir / "n3.svg").exists()

    def test_csv_columns_frozen(self):
        _, out = run_cli(["verify", "--only", "n3"])
        assert out.splitlines()[0] == (
            "id,n,claimed,approx_ok,worst_sq_error,ambiguous_pairs,"
            "status,derived,bonus_edges,hinges,flexible"
        )

    def test_precision_flag_adds_exact_points(self):
        code, out = run_cli(["verify", "--only", "n3", "--format", "json",
                             "--precision", "40"])
        assert code == 0
        result = json.loads(out)["results"][0]
        assert result["exact_points"][2] == ["1/2", "(1/2)*sqrt(3)"]
        assert result["points_decimal"][2][1].startswith("0.866025403")

    def test_nonpositive_tolerance_usage_error(self):
        code, _ = run_cli(["verify", "--only", "n3", "--tol", "0"])
        assert code == 2


class TestBounds:
    def test_theorem1(self):
        code, out = run_cli(["bounds", "--formula", "theorem1", "--n", "15"])
        assert code == 0
        assert parse_csv(out)[0]["value"] == "71"

    def test_multi2_even(self):
        _, out = run_cli(["bounds", "--formula", "multi2_even", "--n", "22", "--m", "144"])
        assert parse_csv(out)[0]["value"] == "48"
        _, out = run_cli(["bounds", "--formula", "multi2_even", "--n", "22", "--m", "143"])
        row = parse_csv(out)[0]
        assert row["applicable"] == "False" and "odd" in row["reason"]

    def test_unknown_formula(self):
        code, _ = run_cli(["bounds", "--formula", "zzz", "--n", "5"])
        assert code == 2

    def test_rational_value_rendered(self):
        _, out = run_cli(["bounds", "--formula", "nonhomotopic_ptt", "--n", "10", "--m", "41"])
        assert parse_csv(out)[0]["value"] == "1681/240"


class TestCrossover:
    def test_thresholds(self):
        code, out = run_cli(["crossover"])
        assert code == 0
        rows = {r["threshold"]: r for r in parse_csv(out)}
        assert int(rows["low_degree_regime"]["value"]) == 47
        assert int(rows["balanced_degree_regime"]["value"]) == 380
        assert int(rows["theorem_vs_table"]["value"]) == 521
        assert "8091" in rows["theorem_vs_table"]["detail"]


class TestArcs:
    def test_n15(self):
        code, out = run_cli(["arcs", "--construction", "n15"])
        assert code == 0
        row = parse_csv(out)[0]
        assert int(row["arcs"]) == 74
        assert int(row["max_multiplicity"]) <= 2
        assert int(row["circle_intersections"]) <= 210

    def test_missing_construction(self):
        code, _ = run_cli(["arcs", "--construction", "n99"])
        assert code == 2

    def test_figures(self, tmp_path):
        fig_dir = tmp_path / "figs"
        code, _ = run_cli(["arcs", "--construction", "n7", "--figures", str(fig_dir)])
        assert code == 0
        assert (fig_dir / "n7_arcs.svg").exists()


class TestCase15:
    def test_single_case(self):
        code, out = run_cli(["case15", "--case", "p3p3"])
        assert code == 0
        assert parse_csv(out)[0]["verdict"] == "contradiction_certified"

    def test_all(self):
        code, out = run_cli(["case15", "--all"])
        assert code == 0
        rows = parse_csv(out)
        cases = [r["case"] for r in rows]
        assert cases[:4] == ["C6", "P5+P1", "P4+P2", "P3+P3"]
        assert "observations" in cases and "degree_profile" in cases


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ["table", "--from", "22", "--to", "30", "--seed", '{"21": 68}'],
        ["crossover"],
        ["case15", "--all"],
        ["verify", "--only", "n9", "--format", "json"],
    ])
    def test_repeat_identical(self, args):
        assert run_cli(args) == run_cli(args)
