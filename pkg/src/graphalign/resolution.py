"""Blowup rewriting of aligned graphs with a strictly decreasing measure.

One rewriting step works class by class: an edge whose label is the square
of the class primitive splits into two primitive-labelled edges, a higher
power p^n splits into the path (p, p^{n-2}, p), unit-labelled edges are
deleted, primitive labels stay put.  The measure delta sums
(valuation - 1) over edges of positive valuation; it drops at every step,
so rewriting terminates with all labels of valuation at most one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .alignment import check_alignment
from .graph import Edge, LabelledGraph, _edge
from .labels import Monomial, Valuation


@dataclass(frozen=True)
class RewriteRecord:
    edge: str
    rule: str  # "keep" | "delete-unit" | "split-two" | "split-three"
    produced: tuple[str, ...]


@dataclass(frozen=True)
class ResolutionStep:
    graph: LabelledGraph
    delta: int
    rewrites: tuple[RewriteRecord, ...]


@dataclass(frozen=True)
class ResolutionTrace:
    valuation: Valuation
    steps: tuple[ResolutionStep, ...]

    @property
    def final(self) -> LabelledGraph:
        return self.steps[-1].graph


def delta(G: LabelledGraph, v: Valuation) -> int:
    """Sum of (valuation - 1) over edges with positive label valuation."""
    total = 0
    for e in G.edges:
        w = v.of(e.label)
        if w >= 1:
            total += w - 1
    return total


def _multiplicities(G: LabelledGraph) -> dict[str, tuple[Monomial, int]]:
    """Per edge, the class primitive and the exponent realising its label.

    Requires an aligned graph; unit-labelled edges are absent from the map.
    """
    report = check_alignment(G)
    if not report.aligned:
        bad = [c for c in report.classes if not c.aligned]
        raise ValueError(f"graph is not aligned (first failing class: {bad[0].edges})")
    out: dict[str, tuple[Monomial, int]] = {}
    for cls in report.classes:
        if cls.primitive is None:
            continue
        for e, n in cls.multiplicities:
            out[e] = (cls.primitive, n)
    return out


def blowup_step(
    G: LabelledGraph, step: int = 1
) -> tuple[LabelledGraph, tuple[RewriteRecord, ...]]:
    """Apply one simultaneous rewriting pass to an aligned graph.

    Fresh vertex names combine the parent edge id with the step index, and
    fresh edge ids extend the parent id, so traces are reproducible.
    """
    mults = _multiplicities(G)
    vertices = set(G.vertices)
    new_edges: list[Edge] = []
    records: list[RewriteRecord] = []
    for e in G.edges:
        if e.label.is_unit:
            records.append(RewriteRecord(e.id, "delete-unit", ()))
            continue
        p, n = mults[e.id]
        if n == 1:
            new_edges.append(e)
            records.append(RewriteRecord(e.id, "keep", (e.id,)))
            continue
        a, b = e.ends
        if n == 2:
            w = f"{e.id}@{step}.1"
            ids = (f"{e.id}.1", f"{e.id}.2")
            pieces = [(ids[0], a, w, p), (ids[1], w, b, p)]
            rule = "split-two"
            fresh = [w]
        else:
            w1 = f"{e.id}@{step}.1"
            w2 = f"{e.id}@{step}.2"
            ids = (f"{e.id}.1", f"{e.id}.2", f"{e.id}.3")
            pieces = [
                (ids[0], a, w1, p),
                (ids[1], w1, w2, p.pow(n - 2)),
                (ids[2], w2, b, p),
            ]
            rule = "split-three"
            fresh = [w1, w2]
        clash = (set(fresh) & vertices) | (
            set(ids) & ({x.id for x in G.edges} | {x.id for x in new_edges})
        )
        if clash:
            raise ValueError(f"fresh ids collide with existing ids: {sorted(clash)}")
        vertices.update(fresh)
        new_edges.extend(_edge(i, u, v, l) for i, u, v, l in pieces)
        records.append(RewriteRecord(e.id, rule, ids))
    H = LabelledGraph(
        G.generators,
        tuple(sorted(vertices)),
        tuple(sorted(new_edges, key=lambda x: x.id)),
    )
    return H, tuple(records)


def resolve(
    G: LabelledGraph, v: Valuation, max_steps: Optional[int] = None
) -> ResolutionTrace:
    """Iterate blowup steps until delta reaches zero, recording the trace.

    The valuation must send each class primitive to 1, so that label
    valuations agree with the intrinsic multiplicities and delta is the
    correct termination measure.
    """
    for e, (p, _) in _multiplicities(G).items():
        if v.of(p) != 1:
            raise ValueError(
                f"valuation must send the class primitive {p} (edge {e!r}) to 1"
            )
    steps = [ResolutionStep(G, delta(G, v), ())]
    i = 0
    while steps[-1].delta > 0:
        i += 1
        if max_steps is not None and i > max_steps:
            raise ValueError(f"resolution did not finish within {max_steps} steps")
        H, records = blowup_step(steps[-1].graph, step=i)
        d = delta(H, v)
        if d >= steps[-1].delta:
            raise AssertionError("delta failed to decrease; rewriting bug")
        steps.append(ResolutionStep(H, d, records))
    return ResolutionTrace(v, tuple(steps))
