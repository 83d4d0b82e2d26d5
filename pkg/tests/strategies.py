"""Shared graph builders, hypothesis strategies, and brute-force oracles."""

from __future__ import annotations

import itertools
import math
import random

from hypothesis import strategies as st

from graphalign import GeneratorSet, LabelledGraph, Monomial

GENS2 = GeneratorSet(("x", "y"))
GENS3 = GeneratorSet(("x", "y", "z"))


def mono(**exps) -> Monomial:
    return Monomial.from_dict(exps)


def twogon(label1=None, label2=None, nc=False) -> LabelledGraph:
    l1 = label1 if label1 is not None else mono(x=1)
    l2 = label2 if label2 is not None else mono(y=1)
    gens = GeneratorSet(("x", "y"), nc=nc)
    return LabelledGraph.build(
        gens, ["v1", "v2"], [("e1", "v1", "v2", l1), ("e2", "v1", "v2", l2)]
    )


def theta(l1=None, l2=None, l3=None, nc=False) -> LabelledGraph:
    labels = [
        l1 if l1 is not None else mono(x=1),
        l2 if l2 is not None else mono(y=1),
        l3 if l3 is not None else mono(z=1),
    ]
    gens = GeneratorSet(("x", "y", "z"), nc=nc)
    return LabelledGraph.build(
        gens,
        ["v1", "v2"],
        [(f"e{i+1}", "v1", "v2", l) for i, l in enumerate(labels)],
    )


def threecycle(l1=None, l2=None, l3=None, nc=False) -> LabelledGraph:
    labels = [
        l1 if l1 is not None else mono(x=1),
        l2 if l2 is not None else mono(y=1),
        l3 if l3 is not None else mono(z=1),
    ]
    gens = GeneratorSet(("x", "y", "z"), nc=nc)
    return LabelledGraph.build(
        gens,
        ["v1", "v2", "v3"],
        [
            ("e1", "v1", "v2", labels[0]),
            ("e2", "v2", "v3", labels[1]),
            ("e3", "v1", "v3", labels[2]),
        ],
    )


# Hypothesis strategies -----------------------------------------------------

def monomials(gens=("x", "y"), max_exp=3, allow_unit=True):
    entry = st.integers(min_value=0 if allow_unit else 0, max_value=max_exp)
    base = st.fixed_dictionaries({g: entry for g in gens}).map(
        lambda d: Monomial.from_dict({g: e for g, e in d.items() if e > 0})
    )
    if allow_unit:
        return base
    return base.filter(lambda m: not m.is_unit)


def nonunit_monomials(gens=("x", "y"), max_exp=3):
    return monomials(gens, max_exp).filter(lambda m: not m.is_unit)


@st.composite
def labelled_graphs(draw, max_vertices=5, max_edges=8, gens=("x", "y"), max_exp=2):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    vertices = [f"v{i}" for i in range(n)]
    k = draw(st.integers(min_value=0, max_value=max_edges))
    edges = []
    for i in range(k):
        u = draw(st.sampled_from(vertices))
        v = draw(st.sampled_from(vertices))
        label = draw(monomials(gens, max_exp))
        edges.append((f"e{i}", u, v, label))
    return LabelledGraph.build(GeneratorSet(tuple(gens)), vertices, edges)


def random_graph(rng: random.Random, max_vertices=5, max_edges=8, gens=("x", "y"), max_exp=2):
    n = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(n)]
    k = rng.randint(0, max_edges)
    edges = []
    for i in range(k):
        u, v = rng.choice(vertices), rng.choice(vertices)
        label = Monomial.from_dict(
            {g: e for g in gens if (e := rng.randint(0, max_exp)) > 0}
        )
        edges.append((f"e{i}", u, v, label))
    return LabelledGraph.build(GeneratorSet(tuple(gens)), vertices, edges)


# Brute-force oracles --------------------------------------------------------

def is_circuit(G: LabelledGraph, subset: frozenset) -> bool:
    """A subset of edges is a single circuit iff every touched vertex has
    degree exactly 2 (a loop contributes 2) and the subgraph is connected."""
    edges = [G.edge(e) for e in subset]
    deg: dict[str, int] = {}
    for e in edges:
        u, v = e.ends
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    verts = set(deg)
    seen = {next(iter(sorted(verts)))}
    frontier = list(seen)
    while frontier:
        at = frontier.pop()
        for e in edges:
            if at in e.ends:
                other = e.other_end(at)
                if other not in seen:
                    seen.add(other)
                    frontier.append(other)
    return seen == verts


def all_circuits(G: LabelledGraph) -> list[frozenset]:
    ids = sorted(G.edge_ids)
    out = []
    for size in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            if is_circuit(G, frozenset(combo)):
                out.append(frozenset(combo))
    return out


def brute_circuit_partition(G: LabelledGraph) -> tuple[frozenset, ...]:
    """Maximal circuit-connected sets via X(e) = {e} + all co-circuit edges."""
    circuits = all_circuits(G)
    classes = set()
    for e in G.edge_ids:
        x = {e}
        for c in circuits:
            if e in c:
                x |= c
        classes.add(frozenset(x))
    return tuple(sorted(classes, key=min))


def brute_common_root(labels) -> bool:
    """Search every candidate root read off the first label's exponents."""
    units = [m.is_unit for m in labels]
    if all(units):
        return True
    if any(units):
        return False
    first = labels[0]
    g = math.gcd(*(e for _, e in first.exps))
    for k in range(1, g + 1):
        if any(e % k for _, e in first.exps):
            continue
        root = Monomial(tuple((gen, e // k) for gen, e in first.exps))
        if all(
            any(root.pow(n) == m for n in range(1, 1 + max(e for _, e in m.exps)))
            for m in labels
        ):
            return True
    return False
