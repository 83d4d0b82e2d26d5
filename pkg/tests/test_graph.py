import pytest
from hypothesis import given, settings

from graphalign import (
    GeneratorSet,
    GraphMorphism,
    LabelledGraph,
    Monomial,
    WitnessNotFoundError,
    circuit_partition,
    circuit_witness,
    compose,
    contract,
    enumerate_2vc_subgraphs,
    first_betti,
    specialise,
)
from graphalign.formats import load_graph

from conftest import FIXTURES
from strategies import (
    brute_circuit_partition,
    labelled_graphs,
    mono,
    theta,
    threecycle,
    twogon,
)


def path_plus_loop():
    gens = GeneratorSet(("x",))
    x = mono(x=1)
    return LabelledGraph.build(
        gens,
        ["a", "b", "c"],
        [("e1", "a", "b", x), ("e2", "b", "c", x), ("e3", "c", "c", x)],
    )


class TestCircuitPartition:
    def test_twogon_is_one_class(self):
        assert circuit_partition(twogon()) == (frozenset({"e1", "e2"}),)

    def test_theta_is_one_class(self):
        assert circuit_partition(theta()) == (frozenset({"e1", "e2", "e3"}),)

    def test_bridges_and_loops_are_singletons(self):
        assert circuit_partition(path_plus_loop()) == (
            frozenset({"e1"}),
            frozenset({"e2"}),
            frozenset({"e3"}),
        )

    @settings(max_examples=150)
    @given(labelled_graphs())
    def test_matches_brute_force(self, G):
        assert circuit_partition(G) == brute_circuit_partition(G)

    @settings(max_examples=100, deadline=None)
    @given(labelled_graphs(max_edges=8))
    def test_classes_are_maximal_2vc_plus_loops(self, G):
        part = set(circuit_partition(G))
        subs = enumerate_2vc_subgraphs(G)
        maximal = {s for s in subs if not any(s < t for t in subs)}
        assert part == maximal


class TestCircuitWitness:
    def test_twogon(self):
        assert circuit_witness(twogon(), "e1", "e2") == ["e1", "e2"]

    def test_theta_parallel_pair(self):
        w = circuit_witness(theta(), "e1", "e3")
        assert sorted(w) == ["e1", "e3"]
        assert w[0] == "e1"

    def test_different_classes_fail(self):
        with pytest.raises(WitnessNotFoundError):
            circuit_witness(path_plus_loop(), "e1", "e2")

    def test_wheel_every_same_class_pair(self):
        G = load_graph(FIXTURES / "wheel.graph")
        circuits = [c for c in _circuit_sets(G)]
        (cls,) = circuit_partition(G)
        ids = sorted(cls)
        for i, e in enumerate(ids):
            for f in ids[i + 1 :]:
                w = circuit_witness(G, e, f)
                assert w[0] == e
                assert f in w
                assert len(set(w)) == len(w)
                assert frozenset(w) in circuits

    @settings(max_examples=100, deadline=None)
    @given(labelled_graphs(max_edges=7))
    def test_random_graphs(self, G):
        circuits = _circuit_sets(G)
        for cls in circuit_partition(G):
            ids = sorted(cls)
            for i, e in enumerate(ids):
                for f in ids[i + 1 :]:
                    w = circuit_witness(G, e, f)
                    assert e in w and f in w
                    assert len(set(w)) == len(w)
                    assert frozenset(w) in circuits


def _circuit_sets(G):
    from strategies import all_circuits

    return set(all_circuits(G))


class TestEnumerate2vc:
    def test_single_loop(self):
        gens = GeneratorSet(("x",))
        G = LabelledGraph.build(gens, ["a"], [("l", "a", "a", mono(x=1))])
        assert enumerate_2vc_subgraphs(G) == [frozenset({"l"})]

    def test_single_bridge(self):
        gens = GeneratorSet(("x",))
        G = LabelledGraph.build(gens, ["a", "b"], [("e", "a", "b", mono(x=1))])
        assert enumerate_2vc_subgraphs(G) == [frozenset({"e"})]

    def test_twogon(self):
        assert enumerate_2vc_subgraphs(twogon()) == [
            frozenset({"e1"}),
            frozenset({"e2"}),
            frozenset({"e1", "e2"}),
        ]

    def test_loop_only_as_singleton(self):
        G = path_plus_loop()
        subs = enumerate_2vc_subgraphs(G)
        assert frozenset({"e3"}) in subs
        assert all(len(s) == 1 for s in subs)

    def test_size_cap(self):
        gens = GeneratorSet(("x",))
        edges = [(f"e{i}", "a", "b", mono(x=1)) for i in range(13)]
        G = LabelledGraph.build(gens, ["a", "b"], edges)
        with pytest.raises(ValueError):
            enumerate_2vc_subgraphs(G)


class TestContract:
    def test_twogon_single_edge(self):
        H, phi = contract(twogon(), ["e1"])
        assert H.vertices == ("v1",)
        assert [e.id for e in H.edges] == ["e2"]
        assert H.edge("e2").is_loop
        assert phi.edge_image("e1") == ("vertex", "v1")
        assert phi.edge_image("e2") == ("edge", "e2")

    def test_empty_contraction_is_identity(self):
        G = twogon()
        H, phi = contract(G, [])
        assert H == G
        assert phi.is_identity

    def test_threecycle_becomes_twogon(self):
        H, _ = contract(threecycle(), ["e1"])
        assert len(H.vertices) == 2
        assert circuit_partition(H) == (frozenset({"e2", "e3"}),)

    def test_unknown_edge(self):
        with pytest.raises(ValueError):
            contract(twogon(), ["nope"])


class TestSpecialise:
    def test_worked_example_stratum(self):
        H, _ = specialise(twogon(), {"x"})
        assert [e.id for e in H.edges] == ["e1"]
        assert H.edge("e1").is_loop
        assert H.edge("e1").label == mono(x=1)

    def test_all_generators_is_identity_on_graph(self):
        G = twogon()
        H, phi = specialise(G, {"x", "y"})
        assert H.vertices == G.vertices
        assert H.edges == G.edges
        assert phi.contracted_edges == frozenset()

    def test_normalise_drops_unit_factor(self):
        gens = GeneratorSet(("x", "y"))
        G = LabelledGraph.build(gens, ["a", "b"], [("e", "a", "b", mono(x=1, y=1))])
        H, phi = specialise(G, {"y"}, normalise=True)
        assert H.edge("e").label == mono(y=1)
        assert phi.kept_generators == ("y",)

    def test_contraction_criterion(self):
        gens = GeneratorSet(("x", "y", "z"))
        G = LabelledGraph.build(
            gens,
            ["a", "b"],
            [
                ("e1", "a", "b", mono(x=1)),
                ("e2", "a", "b", mono(y=2, z=1)),
                ("e3", "a", "a", Monomial.unit()),
            ],
        )
        _, phi = specialise(G, {"x", "z"})
        assert phi.contracted_edges == frozenset({"e3"})
        _, phi = specialise(G, {"y"})
        assert phi.contracted_edges == frozenset({"e1", "e3"})


class TestCompose:
    def test_identity(self):
        G = twogon()
        ident = GraphMorphism.identity(G)
        _, phi = specialise(G, {"x"})
        assert compose(ident, phi) == phi

    def test_contract_in_stages(self):
        G = threecycle()
        H1, phi1 = contract(G, ["e1"])
        H2, phi2 = contract(H1, ["e2"])
        direct_H, direct = contract(G, ["e1", "e2"])
        assert H2 == direct_H
        assert compose(phi1, phi2) == direct

    def test_specialise_chain_equals_direct(self):
        G = theta(nc=True)
        for J in [{"x", "y"}, {"x"}, {"y", "z"}]:
            for J2 in [set(), {"x"} & J]:
                H1, phi1 = specialise(G, J)
                H2, phi2 = specialise(H1, J2)
                direct_H, direct = specialise(G, J2)
                assert H2 == direct_H
                assert compose(phi1, phi2) == direct

    def test_mismatch_rejected(self):
        G = twogon()
        _, phi = specialise(G, {"x"})
        with pytest.raises(ValueError):
            compose(phi, phi)


class TestMorphismValidation:
    def test_label_mismatch_rejected(self):
        G = twogon()
        H = twogon(mono(x=2), mono(y=1))
        with pytest.raises(ValueError, match="labels do not match"):
            GraphMorphism(
                G,
                H,
                tuple((v, v) for v in G.vertices),
                tuple((e, ("edge", e)) for e in G.edge_ids),
            )

    def test_endpoint_mismatch_rejected(self):
        gens = GeneratorSet(("x",))
        x = mono(x=1)
        G = LabelledGraph.build(
            gens, ["a", "b", "c"], [("e1", "a", "b", x), ("e2", "b", "c", x)]
        )
        with pytest.raises(ValueError, match="endpoints do not commute"):
            GraphMorphism(
                G,
                G,
                (("a", "a"), ("b", "b"), ("c", "c")),
                (("e1", ("edge", "e2")), ("e2", ("edge", "e1"))),
            )

    def test_partial_maps_rejected(self):
        G = twogon()
        with pytest.raises(ValueError, match="total"):
            GraphMorphism(G, G, (("v1", "v1"),), tuple((e, ("edge", e)) for e in G.edge_ids))

    def test_contracted_edge_must_land_on_merged_image(self):
        gens = GeneratorSet(("x",))
        x = mono(x=1)
        G = LabelledGraph.build(
            gens, ["a", "b", "c"], [("e1", "a", "b", x), ("e2", "b", "c", x)]
        )
        H, _ = contract(G, ["e1"])
        with pytest.raises(ValueError, match="must map onto"):
            GraphMorphism(
                G,
                H,
                (("a", "a"), ("b", "c"), ("c", "c")),
                (("e1", ("vertex", "a")), ("e2", ("edge", "e2"))),
            )


class TestBettiBookkeeping:
    @settings(max_examples=150)
    @given(labelled_graphs(gens=("x", "y"), max_edges=7))
    def test_betti_drop_is_cyclomatic_number_of_contracted_part(self, G):
        # Contract the x-free edges; the drop in b1 equals the cyclomatic
        # number of the contracted subgraph, computed class by class.
        H, phi = specialise(G, {"x"}, normalise=False)
        contracted = phi.contracted_edges
        sub_edges = [(e.id, *e.ends, e.label) for e in G.edges if e.id in contracted]
        sub_vertices = {v for _, u, w, _ in sub_edges for v in (u, w)}
        sub = LabelledGraph.build(G.generators, sub_vertices, sub_edges)
        drop = sum(
            len(cls) - len({v for e in cls for v in sub.edge(e).ends}) + 1
            for cls in circuit_partition(sub)
        )
        assert first_betti(G) == first_betti(H) + drop
        assert drop == first_betti(sub)
