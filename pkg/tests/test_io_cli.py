import json
import pathlib

import pytest

from multispace import io
from multispace.cli import main
from multispace.constructions import disjoint_cyclic_union, zn_ring_space
from multispace.errors import InputError

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


class TestRoundTrips:
    @pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.iterdir()))
    def test_fixture_round_trips_byte_identical(self, name):
        text = (FIXTURES / name).read_text()
        data = io.parse_text(text)
        kind = data["kind"]
        if kind == "multispace":
            ms, construction = io.space_from_dict(data)
            again = io.render(io.space_to_dict(ms, construction))
        elif kind == "multivector":
            again = io.render(io.vector_space_to_dict(io.vector_space_from_dict(data)))
        elif kind == "multimetric":
            again = io.render(io.metric_components_to_dict(io.metric_components_from_dict(data)))
        else:
            again = io.render(io.mapping_to_dict(io.mapping_from_dict(data)))
        assert again == text

    def test_parse_render_identity_on_fresh_spaces(self):
        for ms in (disjoint_cyclic_union([2, 3]), zn_ring_space(6)):
            data = io.space_to_dict(ms)
            reparsed, _ = io.space_from_dict(json.loads(io.render(data)))
            assert io.space_to_dict(reparsed) == data

    def test_format_version_enforced(self):
        with pytest.raises(InputError):
            io.parse_text('{"format_version": "9", "kind": "multispace"}')

    def test_parse_error_position(self):
        with pytest.raises(InputError, match="line"):
            io.parse_text("{broken")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_latin_fixture_multigroup_fails(self, capsys):
        code, out, _ = run(capsys, "check", str(FIXTURES / "latin3.mspace.json"), "--level", "multigroup")
        assert code == 1
        assert "associativity" in out

    def test_z6_ring_fixture_passes(self, capsys):
        code, out, _ = run(capsys, "check", str(FIXTURES / "z6_ring.mspace.json"), "--level", "multiring")
        assert code == 0

    def test_group_fixture_passes(self, capsys):
        code, _, _ = run(capsys, "check", str(FIXTURES / "z4z6_group.mspace.json"), "--level", "multigroup")
        assert code == 0

    def test_malformed_file_exit_two(self, tmp_path, capsys):
        path = tmp_path / "broken.mspace.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "check", str(path))
        assert code == 2
        assert "line" in err

    def test_duplicate_universe_symbol_exit_two(self, tmp_path, capsys):
        path = tmp_path / "dup.mspace.json"
        path.write_text(
            '{"format_version": "1", "kind": "multispace", "universe": ["a", "a"],'
            ' "operations": [], "components": []}\n'
        )
        code, _, err = run(capsys, "check", str(path))
        assert code == 2
        assert "input error" in err

    def test_metric_fixture(self, capsys):
        code, _, _ = run(capsys, "check", str(FIXTURES / "two_component.metric.json"))
        assert code == 0

    def test_invalid_metric_fails_with_witness(self, capsys):
        code, out, _ = run(capsys, "check", str(FIXTURES / "triangle_violation.metric.json"))
        assert code == 1
        assert "triangle" in out

    def test_vector_fixture(self, capsys):
        code, _, _ = run(capsys, "check", str(FIXTURES / "three_lines.vector.json"), "--json")
        assert code == 0

    def test_wrong_level_for_kind(self, capsys):
        code, _, err = run(capsys, "check", str(FIXTURES / "two_component.metric.json"), "--level", "multigroup")
        assert code == 2

    def test_json_report_carries_numbers(self, capsys):
        code, out, _ = run(capsys, "--json", "check", str(FIXTURES / "latin3.mspace.json"))
        report = json.loads(out)
        assert report["elements"] == 3 and report["operations"] == 2


class TestConstruct:
    def test_latin_round_trip(self, tmp_path, capsys):
        out_path = tmp_path / "latin.mspace.json"
        code, out, _ = run(capsys, "construct", "latin", "n=3", "k=2", "seed=1", "--out", str(out_path))
        assert code == 0
        code, _, _ = run(capsys, "check", str(out_path))
        assert code == 0
        data = io.load_path(out_path)
        assert data["construction"] == {"kind": "latin", "n": 3, "k": 2, "seed": 1}
        # the written tables really are Latin squares
        ms, _ = io.space_from_dict(data)
        for table in ms.ops:
            want = set(table.domain)
            for i in range(len(table.domain)):
                assert set(table.entries[i]) == want
                assert {row[i] for row in table.entries} == want

    def test_cyclic_union(self, tmp_path, capsys):
        out_path = tmp_path / "u.mspace.json"
        code, _, _ = run(capsys, "construct", "cyclic_union", "orders=3,3", "--out", str(out_path))
        assert code == 0
        ms, _ = io.space_from_dict(io.load_path(out_path))
        assert len(ms.components) == 2

    def test_fan(self, tmp_path, capsys):
        out_path = tmp_path / "fan.mspace.json"
        code, _, _ = run(
            capsys, "construct", "fan", "base=Z2", "n=3", "policy=absorb", "--out", str(out_path)
        )
        assert code == 0
        ms, _ = io.space_from_dict(io.load_path(out_path))
        assert len(ms.components) == 3

    def test_partition_cyclic(self, tmp_path, capsys):
        out_path = tmp_path / "p.mspace.json"
        code, _, _ = run(
            capsys,
            "construct",
            "partition_cyclic",
            "modulus=6",
            "blocks=1,2,0|3,4,5,0",
            "core=0",
            "--out",
            str(out_path),
        )
        assert code == 0
        ms, _ = io.space_from_dict(io.load_path(out_path))
        assert len(ms.ops) == 3 and ms.is_completed()

    def test_capacity_error_exit_two(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "construct", "latin", "n=3", "k=99", "--out", str(tmp_path / "x.json")
        )
        assert code == 2


class TestAnalyze:
    def test_series_on_z8(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "series", str(FIXTURES / "z8_group.mspace.json"),
            "--orientation", "+1",
        )
        assert code == 0
        report = json.loads(out)
        assert report["length"] == 3 and report["length_invariant"]

    def test_ideal_chain_on_z6(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "ideal-chain", str(FIXTURES / "z6_ring.mspace.json")
        )
        assert code == 0
        report = json.loads(out)
        assert report["length"] == 2 and report["chain_count"] == 2

    def test_decompose_z6(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "decompose", str(FIXTURES / "z6_ring.mspace.json")
        )
        assert code == 0
        report = json.loads(out)
        pieces = report["components"][0]["pieces"]
        assert sorted(map(sorted, pieces)) == [["0", "2", "4"], ["0", "3"]]

    def test_cosets(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "cosets", str(FIXTURES / "z4z6_group.mspace.json"),
            "--sub", "e,c1_2,c2_2,c2_4",
        )
        assert code == 0
        report = json.loads(out)
        assert sum(len(c) for c in report["cosets"]) == 9

    def test_dim_three_lines(self, capsys):
        code, out, _ = run(capsys, "--json", "analyze", "dim", str(FIXTURES / "three_lines.vector.json"))
        assert code == 0
        report = json.loads(out)
        assert report["formula_value"] == 3
        assert report["greedy_value"] == 2
        assert report["agree"] is False

    def test_automorphisms(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "automorphisms", str(FIXTURES / "latin3.mspace.json")
        )
        assert code == 0
        report = json.loads(out)
        assert report["count"] == len(report["maps"]) >= 1

    def test_fixed_point(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "fixed-point", str(FIXTURES / "two_component.metric.json"),
            "--map", str(FIXTURES / "two_constants.map.json"),
        )
        assert code == 0
        report = json.loads(out)
        assert report["count"] == 2 and report["bound_ok"]

    def test_sequence(self, capsys):
        code, out, _ = run(
            capsys, "--json", "analyze", "sequence", str(FIXTURES / "two_component.metric.json"),
            "--prefix", "a,b", "--tail-kind", "constant", "--tail", "c",
        )
        assert code == 0
        report = json.loads(out)
        assert report["convergent"] and report["limit"] == "c"

    def test_reports_deterministic(self, capsys):
        args = (
            "--json", "analyze", "decompose", str(FIXTURES / "z6_ring.mspace.json")
        )
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        assert first == second

    def test_series_prerequisite_failure_exit_one(self, capsys):
        code, _, err = run(
            capsys, "analyze", "series", str(FIXTURES / "latin3.mspace.json"),
            "--orientation", "x1,x2",
        )
        assert code == 1
        assert "prerequisite" in err
