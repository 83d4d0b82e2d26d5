#!/usr/bin/env python3
"""Exhaustive small-graph sweep of the two oracle equivalences.

Enumerates multigraph shapes up to isomorphism (default: at most 4
vertices and 5 edges), checks the circuit partition against the
brute-force maximal-circuit computation, and sweeps every labelling of
the structurally relevant edges to compare the partition-based alignment
test with the 2-vertex-connected-subgraph oracle.  Prints counts; exits
non-zero on any mismatch.
"""

import argparse
import itertools
import sys
import time

from graphalign import (
    GeneratorSet,
    LabelledGraph,
    Monomial,
    circuit_partition,
    enumerate_2vc_subgraphs,
)
from graphalign.alignment import _class_verdict, _has_common_root


def canonical_shapes(max_vertices, max_edges):
    verts = range(max_vertices)
    pairs = [(i, j) for i in verts for j in verts if i <= j]
    perms = list(itertools.permutations(verts))
    seen = set()
    for k in range(1, max_edges + 1):
        for combo in itertools.combinations_with_replacement(pairs, k):
            sig = min(
                tuple(sorted((min(p[a], p[b]), max(p[a], p[b])) for a, b in combo))
                for p in perms
            )
            seen.add(sig)
    return sorted(seen, key=lambda s: (len(s), s))


def shape_graph(shape, labels):
    used = sorted({v for pair in shape for v in pair})
    return LabelledGraph.build(
        GeneratorSet(("x", "y")),
        [f"v{v}" for v in used],
        [(f"e{i}", f"v{a}", f"v{b}", labels[i]) for i, (a, b) in enumerate(shape)],
    )


def brute_partition(G):
    """Maximal circuit-connected sets from explicit circuit enumeration."""
    ids = sorted(G.edge_ids)
    circuits = []
    for size in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            edges = [G.edge(e) for e in combo]
            deg = {}
            for e in edges:
                for v in e.ends:
                    deg[v] = deg.get(v, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            verts = set(deg)
            seen = {min(verts)}
            frontier = [min(verts)]
            while frontier:
                at = frontier.pop()
                for e in edges:
                    if at in e.ends and e.other_end(at) not in seen:
                        seen.add(e.other_end(at))
                        frontier.append(e.other_end(at))
            if seen == verts:
                circuits.append(frozenset(combo))
    classes = set()
    for e in ids:
        x = {e}
        for c in circuits:
            if e in c:
                x |= c
        classes.add(frozenset(x))
    return tuple(sorted(classes, key=min))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--max-edges", type=int, default=5)
    parser.add_argument("--max-exp", type=int, default=2)
    args = parser.parse_args(argv)

    alphabet = [
        Monomial.from_dict({g: e for g, e in (("x", i), ("y", j)) if e > 0})
        for i in range(args.max_exp + 1)
        for j in range(args.max_exp + 1)
    ]

    start = time.time()
    shapes = canonical_shapes(args.max_vertices, args.max_edges)
    mismatches = swept = 0
    class_cache, root_cache = {}, {}
    names = {k: tuple(f"d{i}" for i in range(k)) for k in range(1, args.max_edges + 1)}

    for shape in shapes:
        G0 = shape_graph(shape, [alphabet[0]] * len(shape))
        if circuit_partition(G0) != brute_partition(G0):
            print(f"PARTITION MISMATCH on shape {shape}")
            mismatches += 1
            continue
        idx = {e: i for i, e in enumerate(G0.edge_ids)}
        cgroups = [
            tuple(sorted(idx[e] for e in cls))
            for cls in circuit_partition(G0)
            if len(cls) > 1
        ]
        sgroups = [
            tuple(sorted(idx[e] for e in sub))
            for sub in enumerate_2vc_subgraphs(G0)
            if len(sub) > 1
        ]
        relevant = sorted({p for grp in cgroups + sgroups for p in grp})
        pos = {p: i for i, p in enumerate(relevant)}
        cpos = [tuple(pos[p] for p in grp) for grp in cgroups]
        spos = [tuple(pos[p] for p in grp) for grp in sgroups]
        for vec in itertools.product(range(len(alphabet)), repeat=len(relevant)):
            fast = True
            for grp in cpos:
                key = tuple(vec[q] for q in grp)
                v = class_cache.get(key)
                if v is None:
                    v = _class_verdict(
                        names[len(key)], [alphabet[i] for i in key]
                    ).aligned
                    class_cache[key] = v
                if not v:
                    fast = False
                    break
            orac = True
            for grp in spos:
                key = tuple(vec[q] for q in grp)
                v = root_cache.get(key)
                if v is None:
                    v = _has_common_root([alphabet[i] for i in key])
                    root_cache[key] = v
                if not v:
                    orac = False
                    break
            swept += 1
            if fast != orac:
                print(f"ALIGNMENT MISMATCH on shape {shape}, labels {vec}")
                mismatches += 1

    elapsed = time.time() - start
    print(
        f"{len(shapes)} shapes, {swept} labelled graphs swept, "
        f"{mismatches} mismatches ({elapsed:.1f}s)"
    )
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
