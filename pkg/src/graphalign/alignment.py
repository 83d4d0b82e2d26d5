"""Alignment predicates on labelled graphs.

A graph is aligned when, class by class of the circuit partition, all
labels are positive powers of one common element.  Unit labels are only
admissible when the whole class consists of units; mixed classes fail.
The brute-force oracle re-derives the verdict from every 2-vertex-connected
subgraph and an independent common-root search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import LabelledGraph, circuit_partition, enumerate_2vc_subgraphs
from .labels import Monomial, power_equivalent, primitive_root


@dataclass(frozen=True)
class ClassAlignment:
    """Verdict for one class of the circuit partition."""

    edges: tuple[str, ...]
    aligned: bool
    primitive: Optional[Monomial] = None
    multiplicities: Optional[tuple[tuple[str, int], ...]] = None
    reason: Optional[str] = None


@dataclass(frozen=True)
class AlignmentReport:
    aligned: bool
    classes: tuple[ClassAlignment, ...]
    unit_edges: tuple[str, ...]


def _class_verdict(edges: Sequence[str], labels: Sequence[Monomial]) -> ClassAlignment:
    # edges and labels are parallel sequences; callers pass edges sorted.
    edges = tuple(edges)
    units = [m.is_unit for m in labels]
    if all(units):
        return ClassAlignment(edges, True)
    if any(units):
        # A unit can only be a positive power of a unit, which the other
        # labels are not; such classes normally disappear by contraction.
        return ClassAlignment(
            edges, False, reason="class mixes unit and non-unit labels"
        )
    found = primitive_root(list(labels))
    if found is None:
        return ClassAlignment(
            edges, False, reason="labels admit no common primitive root"
        )
    p, mults = found
    return ClassAlignment(edges, True, p, tuple(zip(edges, mults)))


def check_alignment(G: LabelledGraph) -> AlignmentReport:
    """Alignment report: one verdict per circuit class.

    Singleton classes are always aligned; a class with >= 2 edges needs a
    common primitive root for its labels (or must consist purely of units).
    """
    by_id = G.labels()
    classes = []
    for cls in circuit_partition(G):
        edges = sorted(cls)
        classes.append(_class_verdict(edges, [by_id[e] for e in edges]))
    return AlignmentReport(
        aligned=all(c.aligned for c in classes),
        classes=tuple(classes),
        unit_edges=tuple(sorted(e for e, m in by_id.items() if m.is_unit)),
    )


def is_aligned(G: LabelledGraph) -> bool:
    return check_alignment(G).aligned


def _has_common_root(labels: Sequence[Monomial]) -> bool:
    """Direct search for l with every label a positive power of l.

    Candidate roots are read off the first label's exponent divisors; no
    gcd-normalisation shortcut, so this stays independent of
    primitive_root.
    """
    units = [m.is_unit for m in labels]
    if all(units):
        return True
    if any(units):
        return False
    first = labels[0]
    g = math.gcd(*(e for _, e in first.exps))
    for k in range(1, g + 1):
        if g % k:
            continue
        if any(e % k for _, e in first.exps):
            continue
        root = Monomial(tuple((gen, e // k) for gen, e in first.exps))
        ok = True
        for m in labels:
            n = m.exponent(root.exps[0][0]) // root.exps[0][1]
            if n < 1 or root.pow(n) != m:
                ok = False
                break
        if ok:
            return True
    return False


def is_aligned_oracle(G: LabelledGraph) -> bool:
    """Brute force: every 2-vertex-connected subgraph must admit a common root."""
    by_id = G.labels()
    for sub in enumerate_2vc_subgraphs(G):
        if not _has_common_root([by_id[e] for e in sorted(sub)]):
            return False
    return True


def is_irregularly_aligned(G: LabelledGraph) -> bool:
    """Pairwise power-equivalence within every class.

    In the monomial model this coincides with the common-primitive-root
    test (the factorial case); pairs involving a unit only pass when both
    labels are units.
    """
    by_id = G.labels()
    for cls in circuit_partition(G):
        labels = [by_id[e] for e in sorted(cls)]
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                a, b = labels[i], labels[j]
                if a.is_unit and b.is_unit:
                    continue
                if a.is_unit or b.is_unit:
                    return False
                if not power_equivalent(a, b):
                    return False
    return True


def strong_alignment_level(G: LabelledGraph) -> Optional[int]:
    """Least e such that the graph is e-strongly aligned, or None.

    Loops are excluded.  Per block of the loop-deleted graph, one element
    a must realise every label as a^r with 0 <= r <= e, and the chosen
    tuple must be a weak normal-crossings family; for monomials that
    forces each a to be a unit or a single generator with exponent 1, so
    only those candidates are searched.  Classes mixing unit and non-unit
    labels are ruled out to keep strong alignment within plain alignment.
    """
    by_id = G.labels()
    loops = {e.id for e in G.edges if e.is_loop}
    level = 0
    for cls in circuit_partition(G):
        if cls <= loops:
            continue
        labels = [by_id[e] for e in sorted(cls)]
        units = [m.is_unit for m in labels]
        if all(units):
            continue
        if any(units):
            return None
        supports = set().union(*(m.support for m in labels))
        if len(supports) != 1:
            return None
        (gen,) = supports
        level = max(level, max(m.exponent(gen) for m in labels))
    return level
