import json

import pytest
from hypothesis import given, settings

from graphalign import build_atlas, resolve, stratify, Valuation
from graphalign.formats import (
    GraphFormatError,
    graph_to_dot,
    load_graph,
    morphism_merged_vertices,
    parse_graph,
    serialize_graph,
    strata_poset_dot,
    write_atlas,
    write_strata,
    write_trace,
)
from graphalign.graph import specialise

from conftest import FIXTURES
from strategies import labelled_graphs, mono, twogon


ALL_FIXTURES = [
    "twogon.graph",
    "threecycle.graph",
    "theta.graph",
    "mixed6.graph",
    "wheel.graph",
]


class TestRoundTrip:
    @pytest.mark.parametrize("name", ALL_FIXTURES)
    def test_parse_serialize_round_trip(self, name):
        text = (FIXTURES / name).read_text()
        G = parse_graph(text, source=name)
        canonical = serialize_graph(G)
        assert parse_graph(canonical) == G
        assert serialize_graph(parse_graph(canonical)) == canonical

    def test_serialize_is_canonical_json(self):
        G = twogon()
        obj = json.loads(serialize_graph(G))
        assert list(obj) == ["generators", "nc", "vertices", "edges"]

    def test_unit_label_round_trips_as_empty_map(self):
        from graphalign import Monomial

        G = twogon(mono(x=1), Monomial.unit())
        obj = json.loads(serialize_graph(G))
        assert obj["edges"][1]["label"] == {}
        assert parse_graph(serialize_graph(G)) == G

    @settings(max_examples=150)
    @given(labelled_graphs(max_edges=6, gens=("x", "y", "z"), max_exp=4))
    def test_round_trip_on_arbitrary_graphs(self, G):
        assert parse_graph(serialize_graph(G)) == G


class TestParseErrors:
    def test_malformed_json_reports_position(self):
        with pytest.raises(GraphFormatError) as err:
            parse_graph("{\n  broken\n}", source="bad.graph")
        assert "bad.graph:2:" in str(err.value)

    def test_unknown_generator(self):
        text = json.dumps(
            {
                "generators": ["x"],
                "nc": False,
                "vertices": ["a"],
                "edges": [{"id": "e", "ends": ["a", "a"], "label": {"q": 1}}],
            }
        )
        with pytest.raises(GraphFormatError, match="unknown generator"):
            parse_graph(text)

    def test_duplicate_edge_id(self):
        text = json.dumps(
            {
                "generators": ["x"],
                "nc": False,
                "vertices": ["a"],
                "edges": [
                    {"id": "e", "ends": ["a", "a"], "label": {"x": 1}},
                    {"id": "e", "ends": ["a", "a"], "label": {"x": 2}},
                ],
            }
        )
        with pytest.raises(GraphFormatError, match="duplicate edge ids"):
            parse_graph(text)

    def test_unknown_vertex(self):
        text = json.dumps(
            {
                "generators": ["x"],
                "nc": False,
                "vertices": ["a"],
                "edges": [{"id": "e", "ends": ["a", "b"], "label": {"x": 1}}],
            }
        )
        with pytest.raises(GraphFormatError, match="unknown vertex"):
            parse_graph(text)

    def test_missing_field(self):
        with pytest.raises(GraphFormatError, match="missing field"):
            parse_graph('{"generators": [], "nc": false, "vertices": []}')

    def test_missing_file(self, tmp_path):
        with pytest.raises(GraphFormatError):
            load_graph(tmp_path / "nope.graph")


class TestDot:
    def test_edge_labels_rendered(self):
        dot = graph_to_dot(twogon(mono(x=2), mono(y=1)))
        assert '"v1" -- "v2"' in dot
        assert "e1: x^2" in dot

    def test_merged_vertex_annotation(self):
        G = twogon()
        H, phi = specialise(G, {"x"})
        dot = graph_to_dot(H, merged_from=morphism_merged_vertices(phi))
        assert "v1 <- v1,v2" in dot

    def test_strata_poset(self):
        fam = stratify(twogon(nc=True))
        dot = strata_poset_dot(fam)
        assert '"{x,y}" -> "{x}"' in dot


class TestDirectoryWriters:
    def test_atlas_directory(self, tmp_path):
        atlas = build_atlas(twogon(), 1)
        out = tmp_path / "atlas"
        write_atlas(atlas, out, vanishing=["x", "y"])
        index = json.loads((out / "atlas.index").read_text())
        assert len(index["charts"]) == 4
        assert len(index["overlaps"]) == 6
        for entry in index["charts"]:
            assert (out / entry["file"]).exists()
            assert "fibre" in entry
        rendered = json.loads((out / index["charts"][3]["file"]).read_text())["rendered"]
        assert "x = a_e1^1 * u_e1" in rendered

    def test_atlas_refuses_overwrite(self, tmp_path):
        atlas = build_atlas(twogon(), 0)
        out = tmp_path / "atlas"
        write_atlas(atlas, out)
        with pytest.raises(FileExistsError):
            write_atlas(atlas, out)
        # no stray temp directories left behind
        assert [p.name for p in tmp_path.iterdir()] == ["atlas"]

    def test_trace_directory(self, tmp_path):
        trace = resolve(
            twogon(mono(x=1), mono(x=3)), Valuation.from_dict({"x": 1, "y": 0})
        )
        out = tmp_path / "trace"
        write_trace(trace, out, dot=True)
        index = json.loads((out / "trace.index").read_text())
        assert len(index["steps"]) == len(trace.steps)
        assert (out / "step_00.graph").exists()
        assert (out / "step_01.dot").exists()

    def test_strata_directory(self, tmp_path):
        fam = stratify(twogon(nc=True))
        out = tmp_path / "strata"
        write_strata(fam, out)
        index = json.loads((out / "strata.index").read_text())
        assert [s["generators"] for s in index["strata"]] == [
            [],
            ["x"],
            ["y"],
            ["x", "y"],
        ]
        assert (out / "poset.dot").exists()
