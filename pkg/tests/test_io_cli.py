import json
import random

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxdet.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from maxdet.constructions import brouwer_whiteman, cohn_border, osds, paley_I, sylvester
from maxdet.io import MatrixFormatError, load_schema, parse, read_matrix, report_json, serialize, write_matrix
from maxdet.linalg import SignMatrix
from maxdet.verify import verify

SCHEMA = load_schema()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == EXIT_OK, err
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert_no_numbers(payload)
    return payload


def assert_no_numbers(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            assert_no_numbers(v)
    elif isinstance(obj, list):
        for v in obj:
            assert_no_numbers(v)
    else:
        assert not isinstance(obj, (int, float)) or isinstance(obj, bool), obj


sign_matrices = st.tuples(st.integers(1, 7), st.integers(1, 7)).flatmap(
    lambda rc: st.lists(
        st.lists(st.sampled_from([1, -1]), min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]
    )
).map(SignMatrix)


class TestMatrixFormat:
    @given(sign_matrices, st.lists(st.text(alphabet="abc xyz=0123", max_size=12), max_size=3))
    def test_round_trip(self, M, comments):
        f = parse(serialize(M, comments))
        assert f.matrix == M
        assert len(f.comments) == len(comments)

    def test_layout(self):
        text = serialize(SignMatrix([[1, -1], [1, 1]]), ["note"])
        assert text == "pm1 2 2\n+-\n++\n# note\n"

    def test_file_round_trip(self, tmp_path):
        M = osds(3).matrix
        write_matrix(tmp_path / "m.pm1", M)
        assert read_matrix(tmp_path / "m.pm1").matrix == M

    @pytest.mark.parametrize(
        "text, line, column",
        [
            ("", 1, None),
            ("pm2 1 1\n+\n", 1, None),
            ("pm1 2 2\n+-\n", 3, None),
            ("pm1 2 2\n+-\n+x\n", 3, 2),
            ("pm1 2 2\n+- \n++\n", 2, 3),
            ("pm1 1 3\n+-\n", 2, 3),
            ("pm1 1 1\n+\nextra\n", 3, 1),
            ("pm1 0 1\n", 1, None),
            ("pm1 -1 1\n+\n", 1, None),
            ("pm1 1 1 \n+\n", 1, None),
        ],
    )
    def test_strict_errors(self, text, line, column):
        with pytest.raises(MatrixFormatError) as info:
            parse(text)
        assert info.value.line == line
        assert info.value.column == column


class TestSchema:
    def test_schema_is_well_formed(self):
        from importlib import resources

        def no_duplicates(pairs):
            keys = [k for k, _ in pairs]
            assert len(keys) == len(set(keys)), keys
            return dict(pairs)

        text = resources.files("maxdet").joinpath("report.schema.json").read_text(encoding="utf-8")
        json.loads(text, object_pairs_hook=no_duplicates)
        jsonschema.Draft202012Validator.check_schema(SCHEMA)

    def test_report_json_validates(self):
        payload = report_json(verify(osds(3).matrix, "osds"), 5)
        jsonschema.validate(payload, SCHEMA)
        assert_no_numbers(payload)

    def test_rejects_bare_integers(self):
        payload = report_json(verify(sylvester(2).matrix), 0)
        payload["det"] = 16
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(payload, SCHEMA)


class TestCommands:
    def test_construct_and_verify(self, tmp_path, capsys):
        out = tmp_path / "h12.pm1"
        code, text, _ = run(capsys, "construct", "--family", "paley1", "--p", 11, "--out", out)
        assert code == EXIT_OK
        assert read_matrix(out).matrix.rows == 12
        code, text, _ = run(capsys, "det", "--in", out)
        assert abs(int(text.strip())) == 12 ** 6

    def test_verify_w25(self, tmp_path, capsys):
        out = tmp_path / "w25.pm1"
        assert run(capsys, "construct", "--family", "brouwer-whiteman", "--p", 3, "--out", out)[0] == EXIT_OK
        payload = run_json(capsys, "verify", "--in", out, "--expect", "brouwer-whiteman")
        assert payload["ratio"] == "1.0000"
        assert payload["bound_kind"] == "barba"
        assert payload["gram_class"]["tag"] == "BarbaOptimal"

    def test_verify_m31(self, tmp_path, capsys):
        out = tmp_path / "m31.pm1"
        run(capsys, "construct", "--family", "osds", "--q", 7, "--out", out)
        payload = run_json(capsys, "verify", "--in", out)
        assert payload["ratio"] == "0.7060"

    def test_corrupted_file(self, tmp_path, capsys):
        out = tmp_path / "w25.pm1"
        write_matrix(out, brouwer_whiteman(3).matrix.flip(4, 9))
        code, _, err = run(capsys, "verify", "--in", out, "--expect", "brouwer-whiteman")
        assert code == EXIT_MISMATCH
        assert "mismatch" in err

    def test_bad_parameters(self, tmp_path, capsys):
        out = tmp_path / "x.pm1"
        assert run(capsys, "construct", "--family", "paley1", "--p", 13, "--out", out)[0] == EXIT_USAGE
        assert run(capsys, "construct", "--family", "paley1", "--out", out)[0] == EXIT_USAGE
        assert not out.exists()

    def test_size_guard(self, tmp_path, capsys):
        out = tmp_path / "x.pm1"
        code, _, err = run(capsys, "--size-guard", 8, "construct", "--family", "sylvester", "--t", 4, "--out", out)
        assert code == EXIT_USAGE

    def test_parse_errors(self, tmp_path, capsys):
        bad = tmp_path / "bad.pm1"
        bad.write_text("pm1 2 2\n+-\n+?\n")
        code, _, err = run(capsys, "verify", "--in", bad)
        assert code == EXIT_USAGE and "line 3, column 2" in err
        assert run(capsys, "det", "--in", tmp_path / "missing.pm1")[0] == EXIT_USAGE

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["bound"])
        assert info.value.code == EXIT_USAGE

    def test_bound(self, capsys):
        payload = run_json(capsys, "bound", "--n", 23)
        assert payload["bound"]["symbolic"] == "45·22^22"
        assert payload["bound"]["bound_sq"] == {"numerator": str(45 * 22 ** 22), "denominator": "1"}
        payload = run_json(capsys, "bound", "--n", 4)
        assert payload["bound"]["bound_sq"]["numerator"] == "256"
        assert payload["sqrt_decimal"] == "16.0000"
        payload = run_json(capsys, "bound", "--n", 7, "--which", "ehlich-partition")
        assert payload["bound"]["partition"] == ["2", "2", "1", "1", "1"]
        assert payload["bound"]["bound_sq"]["numerator"] == "344064"

    def test_bound_incompatible(self, capsys):
        assert run(capsys, "bound", "--n", 8, "--which", "barba")[0] == EXIT_USAGE

    def test_feasible(self, capsys):
        code, text, _ = run(capsys, "feasible", "--n", 22)
        assert code == EXIT_OK and "42 is not a sum of two squares" in text
        payload = run_json(capsys, "feasible", "--n", 25)
        assert payload["feasibility"]["obstructions"][0]["passed"] is True

    def test_search_maxdet(self, tmp_path, capsys):
        out = tmp_path / "w5.pm1"
        payload = run_json(capsys, "search", "maxdet", "--n", 5, "--out", out)
        assert payload["max_det"] == "48"
        assert abs(verify(read_matrix(out).matrix).det) == 48

    def test_search_pairs_to_construct(self, tmp_path, capsys):
        pair_file = tmp_path / "pair.pm1"
        payload = run_json(capsys, "search", "pairs", "--k", 13, "--out", pair_file)
        assert payload["pairs"]
        out = tmp_path / "b27.pm1"
        code, _, err = run(capsys, "construct", "--family", "two-circulant", "--pair", pair_file, "--out", out)
        assert code == EXIT_OK, err
        payload = run_json(capsys, "verify", "--in", out, "--expect", "two-circulant")
        assert payload["family"] == "two-circulant"

    def test_search_pairs_infeasible(self, capsys):
        code, _, err = run(capsys, "search", "pairs", "--k", 2)
        assert code == EXIT_USAGE and "not a sum of two squares" in err

    def test_table(self, capsys):
        payload = run_json(capsys, "table", "--min", 23, "--max", 31)
        rows = {r["n"]: r for r in payload["rows"]}
        assert rows["23"]["osds"] == "-" and rows["23"]["border"] == "-"
        assert rows["31"]["osds"] == "0.7060"
        assert rows["23"]["bound_root_form"] == "√45·22^11"

    def test_table_range(self, capsys):
        assert run(capsys, "table", "--min", 5, "--max", 9)[0] == EXIT_USAGE

    def test_construct_json(self, tmp_path, capsys):
        payload = run_json(capsys, "construct", "--family", "two-circulant", "--k", 7, "--out", tmp_path / "b.pm1")
        assert len(payload["alternatives"]) == 4
        payload = run_json(capsys, "construct", "--family", "affine-ortho", "--p", 3, "--out", tmp_path / "a.pm1")
        assert payload["shape"] == ["9", "12"]
        payload = run_json(capsys, "det", "--in", tmp_path / "b.pm1")
        assert payload["order"] == "15"


FAMILY_ARGS = [
    ("sylvester", ["--t", 3]),
    ("paley1", ["--p", 19]),
    ("cohn", ["--q", 13]),
    ("excess-border", ["--t", 2]),
    ("brouwer-whiteman", ["--p", 3]),
    ("doubling", ["--p", 3]),
    ("osds", ["--q", 7]),
    ("two-circulant", ["--k", 13]),
]


@pytest.mark.parametrize("family, extra", FAMILY_ARGS, ids=[f for f, _ in FAMILY_ARGS])
def test_file_round_trip_matches_memory(family, extra, tmp_path, capsys):
    out = tmp_path / "m.pm1"
    code, _, err = run(capsys, "construct", "--family", family, *extra, "--out", out)
    assert code == EXIT_OK, err
    M = read_matrix(out).matrix
    from_file = run_json(capsys, "verify", "--in", out, "--expect", family)
    in_memory = report_json(verify(M, family), 0)
    from_file["runtime_ms"] = in_memory["runtime_ms"] = "0"
    assert from_file == in_memory


def test_random_mutations_exit_4(tmp_path, capsys):
    rng = random.Random(2)
    M = paley_I(11).matrix
    for _ in range(5):
        path = tmp_path / "bad.pm1"
        write_matrix(path, M.flip(rng.randrange(12), rng.randrange(12)))
        assert run(capsys, "verify", "--in", path, "--expect", "paley1")[0] == EXIT_MISMATCH


def test_cohn_ratio_via_cli(tmp_path, capsys):
    write_matrix(tmp_path / "c.pm1", cohn_border(5).matrix)
    payload = run_json(capsys, "verify", "--in", tmp_path / "c.pm1")
    assert payload["ratio"] == "0.6000" and payload["bound_kind"] == "ew"
