"""Thickness functions and the chart atlas they index.

A thickness function M assigns a non-negative integer to every edge; after
contracting the zero edges, each circuit class must have values with gcd 1.
Every valid M indexes one chart: a finitely presented algebra over the base
with, per class, an aligning variable a and invertible variables u_e tied
together by the binomials label(e) - a^{m_e} u_e and one torus relation
1 - prod u_e^{n_e} built from a fixed Bezout choice.  Labels of edges with
M(e) = 0 are formally inverted, which localises the chart away from their
vanishing loci.  Overlaps invert, in addition, the labels of every class
(on either side) that meets the disagreement set of the two functions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .graph import LabelledGraph, circuit_partition, contract
from .labels import GeneratorSet, LaurentMonomial, Monomial, Valuation


@dataclass(frozen=True)
class ThicknessFunction:
    """Non-negative integer per edge, total on the controlling graph."""

    values: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [e for e, _ in self.values]
        if names != sorted(names) or len(set(names)) != len(names):
            raise ValueError("thickness entries must be sorted by distinct edge id")
        for e, v in self.values:
            if v < 0:
                raise ValueError(f"thickness of {e!r} must be >= 0, got {v}")

    @classmethod
    def from_dict(cls, mapping: Mapping[str, int]) -> "ThicknessFunction":
        return cls(tuple(sorted((e, int(v)) for e, v in mapping.items())))

    @classmethod
    def from_vector(cls, G: LabelledGraph, vector: Sequence[int]) -> "ThicknessFunction":
        ids = G.edge_ids
        if len(vector) != len(ids):
            raise ValueError(
                f"expected {len(ids)} values (edges {list(ids)}), got {len(vector)}"
            )
        return cls(tuple(zip(ids, (int(v) for v in vector))))

    def value(self, edge: str) -> int:
        for e, v in self.values:
            if e == edge:
                return v
        raise ValueError(f"thickness function is missing edge {edge!r}")

    def vector(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.values)

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.vector())


def _check_total(G: LabelledGraph, M: ThicknessFunction) -> None:
    if tuple(e for e, _ in M.values) != G.edge_ids:
        raise ValueError("thickness function does not match the graph's edges")


def contracted_graph(G: LabelledGraph, M: ThicknessFunction) -> LabelledGraph:
    """The graph with every M(e) = 0 edge contracted."""
    _check_total(G, M)
    zero = [e for e, v in M.values if v == 0]
    H, _ = contract(G, zero)
    return H


def is_thickness_function(G: LabelledGraph, M: ThicknessFunction) -> bool:
    """Validity: per class of the contracted graph, the values have gcd 1.

    The identically-zero function is valid (no classes survive).
    """
    H = contracted_graph(G, M)
    for cls in circuit_partition(H):
        if math.gcd(*(M.value(e) for e in cls)) != 1:
            return False
    return True


def enumerate_thickness(G: LabelledGraph, bound: int) -> list[ThicknessFunction]:
    """All valid thickness functions with values <= bound.

    Lexicographic in the edge-id-sorted value vectors; includes the zero
    function.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    ids = G.edge_ids
    out = []
    for vec in itertools.product(range(bound + 1), repeat=len(ids)):
        M = ThicknessFunction(tuple(zip(ids, vec)))
        if is_thickness_function(G, M):
            out.append(M)
    return out


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def bezout(ms: Sequence[int]) -> list[int]:
    """Coefficients n with sum(n_i * ms_i) == 1, fixed once and for all.

    Left fold of the extended Euclidean algorithm over the list order,
    stopping as soon as the running gcd reaches 1 (later coefficients are
    zero).  Requires gcd(ms) == 1 and positive entries.
    """
    if not ms:
        raise ValueError("bezout needs at least one integer")
    if any(m < 1 for m in ms):
        raise ValueError("bezout entries must be positive")
    if math.gcd(*ms) != 1:
        raise ValueError(f"gcd of {list(ms)} is not 1")
    g = ms[0]
    coeffs = [1]
    for m in ms[1:]:
        if g == 1:
            coeffs.append(0)
            continue
        g, s, t = _egcd(g, m)
        coeffs = [c * s for c in coeffs] + [t]
    return coeffs


@dataclass(frozen=True)
class ClassRow:
    """One edge of a chart class: label = a^multiplicity * u, with Bezout coefficient."""

    edge: str
    label: Monomial
    multiplicity: int
    coefficient: int

    @property
    def unit_var(self) -> str:
        return f"u_{self.edge}"


@dataclass(frozen=True)
class ChartClass:
    edges: tuple[str, ...]
    rows: tuple[ClassRow, ...]

    @property
    def aligning_var(self) -> str:
        return f"a_{self.edges[0]}"


@dataclass(frozen=True)
class BinomialRelation:
    """label - a^{multiplicity} * u, one per class edge."""

    class_edges: tuple[str, ...]
    edge: str
    label: Monomial
    multiplicity: int
    unit_var: str
    aligning_var: str


@dataclass(frozen=True)
class TorusRelation:
    """1 - prod u_e^{n_e}, one per class."""

    class_edges: tuple[str, ...]
    exponents: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class ChartPresentation:
    """Finitely presented algebra over the base attached to one thickness function."""

    base: GeneratorSet
    classes: tuple[ChartClass, ...]
    inverted: tuple[Monomial, ...]

    def relations(self) -> list[object]:
        rels: list[object] = []
        for cls in self.classes:
            for row in cls.rows:
                rels.append(
                    BinomialRelation(
                        cls.edges,
                        row.edge,
                        row.label,
                        row.multiplicity,
                        row.unit_var,
                        cls.aligning_var,
                    )
                )
            rels.append(
                TorusRelation(
                    cls.edges, tuple((r.edge, r.coefficient) for r in cls.rows)
                )
            )
        return rels


def chart(G: LabelledGraph, M: ThicknessFunction) -> ChartPresentation:
    """The chart indexed by M.

    Per class of the contracted graph, emit one binomial per edge and the
    torus relation from the Bezout choice; the labels of M(e) = 0 edges go
    to the inverted list.
    """
    if not is_thickness_function(G, M):
        raise ValueError(f"not a thickness function: {M}")
    H = contracted_graph(G, M)
    labels = G.labels()
    classes = []
    for cls in circuit_partition(H):
        edges = tuple(sorted(cls))
        ms = [M.value(e) for e in edges]
        ns = bezout(ms)
        rows = tuple(
            ClassRow(e, labels[e], m, n) for e, m, n in zip(edges, ms, ns)
        )
        classes.append(ChartClass(edges, rows))
    classes.sort(key=lambda c: c.edges)
    inverted = []
    for e, v in M.values:
        if v == 0 and labels[e] not in inverted:
            inverted.append(labels[e])
    var_names = {c.aligning_var for c in classes}
    var_names.update(r.unit_var for c in classes for r in c.rows)
    clash = var_names & set(G.generators.names)
    if clash:
        raise ValueError(f"chart variables collide with generators: {sorted(clash)}")
    return ChartPresentation(G.generators, tuple(classes), tuple(inverted))


def verify_chart_substitution(c: ChartPresentation) -> bool:
    """Check that a |-> prod label^n, u |-> label * a^-m kills every relation.

    The substitution is evaluated in exact Laurent-monomial arithmetic;
    False indicates a construction bug, never bad input.
    """
    for cls in c.classes:
        a_sub = LaurentMonomial.one()
        for row in cls.rows:
            a_sub = a_sub * LaurentMonomial.from_monomial(row.label).pow(row.coefficient)
        u_subs = {}
        for row in cls.rows:
            u_subs[row.edge] = LaurentMonomial.from_monomial(row.label) * a_sub.pow(
                -row.multiplicity
            )
        for row in cls.rows:
            lhs = LaurentMonomial.from_monomial(row.label)
            rhs = a_sub.pow(row.multiplicity) * u_subs[row.edge]
            if lhs != rhs:
                return False
        torus = LaurentMonomial.one()
        for row in cls.rows:
            torus = torus * u_subs[row.edge].pow(row.coefficient)
        if not torus.is_one:
            return False
    return True


def overlap_edges(
    G: LabelledGraph, M: ThicknessFunction, N: ThicknessFunction
) -> frozenset[str]:
    """The disagreement locus: union over both sides of every class meeting {M != N}."""
    _check_total(G, M)
    _check_total(G, N)
    diff = {e for e, v in M.values if N.value(e) != v}
    out: set[str] = set()
    for T in (M, N):
        H = contracted_graph(G, T)
        for cls in circuit_partition(H):
            if cls & diff:
                out |= cls
    return frozenset(out)


def overlap(
    G: LabelledGraph, M: ThicknessFunction, N: ThicknessFunction
) -> tuple[frozenset[str], ChartPresentation]:
    """The overlap chart: chart(M) with the disagreement labels inverted too."""
    delta = overlap_edges(G, M, N)
    base_chart = chart(G, M)
    labels = G.labels()
    inverted = list(base_chart.inverted)
    for e in sorted(delta):
        if labels[e] not in inverted:
            inverted.append(labels[e])
    return delta, ChartPresentation(base_chart.base, base_chart.classes, tuple(inverted))


@dataclass(frozen=True)
class Overlap:
    inverted_edges: frozenset[str]
    chart: ChartPresentation


@dataclass
class Atlas:
    """Charts for every valid thickness function up to the bound, plus overlaps."""

    graph: LabelledGraph
    bound: int
    charts: dict[ThicknessFunction, ChartPresentation]
    overlaps: dict[tuple[ThicknessFunction, ThicknessFunction], Overlap]

    @property
    def thickness_functions(self) -> list[ThicknessFunction]:
        return list(self.charts)

    def overlap_for(self, M: ThicknessFunction, N: ThicknessFunction) -> Overlap:
        if M == N:
            return Overlap(frozenset(), self.charts[M])
        if (M, N) in self.overlaps:
            return self.overlaps[(M, N)]
        return self.overlaps[(N, M)]


def build_atlas(G: LabelledGraph, bound: int) -> Atlas:
    """Charts in lexicographic order and one overlap per unordered pair."""
    ms = enumerate_thickness(G, bound)
    charts = {M: chart(G, M) for M in ms}
    overlaps = {}
    for i, M in enumerate(ms):
        for N in ms[i + 1 :]:
            delta, oc = overlap(G, M, N)
            overlaps[(M, N)] = Overlap(delta, oc)
    return Atlas(G, bound, charts, overlaps)


@dataclass(frozen=True)
class FibreReport:
    nonempty: bool
    connected: bool
    torus_rank: int


def closed_fibre(c: ChartPresentation, vanishing: Iterable[str]) -> FibreReport:
    """Fibre of the chart over the point where exactly ``vanishing`` vanishes.

    Requires weak normal-crossings labels (units or single generators with
    exponent 1).  The fibre is empty when an inverted label vanishes or a
    class mixes vanishing and non-vanishing labels; otherwise it is
    connected, and each class whose labels all vanish contributes a torus
    factor of rank (#edges - 1).
    """
    vanishing = frozenset(vanishing)
    unknown = vanishing - set(c.base.names)
    if unknown:
        raise ValueError(f"unknown generators {sorted(unknown)!r}")

    def check_nc(m: Monomial) -> None:
        if m.is_unit:
            return
        if len(m.exps) != 1 or m.exps[0][1] != 1:
            raise ValueError(
                f"closed-fibre analysis needs single-generator labels, got {m}"
            )

    for m in c.inverted:
        check_nc(m)
    for cls in c.classes:
        for row in cls.rows:
            check_nc(row.label)

    def vanishes(m: Monomial) -> bool:
        return bool(m.support & vanishing)

    if any(vanishes(m) for m in c.inverted):
        return FibreReport(False, False, 0)
    rank = 0
    for cls in c.classes:
        flags = [vanishes(row.label) for row in cls.rows]
        if any(flags) and not all(flags):
            return FibreReport(False, False, 0)
        if all(flags) and flags:
            rank += len(cls.edges) - 1
    return FibreReport(True, True, rank)


@dataclass(frozen=True)
class TraitFactorisation:
    """Thickness functions through which an integer valuation factors."""

    valuation: Valuation
    canonical: ThicknessFunction
    class_scales: tuple[tuple[tuple[str, ...], int], ...]
    bound: int
    all_valid: tuple[ThicknessFunction, ...]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _scales_consistently(
    G: LabelledGraph, M: ThicknessFunction, vals: Mapping[str, int]
) -> bool:
    # Per class of the contracted graph the edge valuations must be a
    # common non-negative integer multiple of M.
    for e, v in M.values:
        if v == 0 and vals[e] != 0:
            return False
    H = contracted_graph(G, M)
    for cls in circuit_partition(H):
        t = None
        for e in cls:
            m = M.value(e)
            if vals[e] % m:
                return False
            q = vals[e] // m
            if t is None:
                t = q
            elif t != q:
                return False
    return True


def trait_factorisation(
    G: LabelledGraph, v: Valuation, bound: Optional[int] = None
) -> TraitFactorisation:
    """Factor a trait (an integer valuation on the base) through the atlas.

    The canonical thickness function vanishes where the edge valuation
    does and divides out the per-class gcd; all_valid collects every valid
    M with values <= bound compatible with the valuation.  With the
    default bound the canonical function is always a member.
    """
    vals = {e.id: v.of(e.label) for e in G.edges}
    zero = [e for e, w in vals.items() if w == 0]
    H, _ = contract(G, zero)
    scales = []
    canonical = {e: 0 for e in vals}
    for cls in circuit_partition(H):
        t = math.gcd(*(vals[e] for e in cls))
        scales.append((tuple(sorted(cls)), t))
        for e in cls:
            canonical[e] = vals[e] // t
    canonical_tf = ThicknessFunction.from_dict(canonical)
    if bound is None:
        bound = max(canonical.values(), default=0)

    candidates = []
    for e in G.edge_ids:
        if vals[e] == 0:
            candidates.append(range(bound + 1))
        else:
            candidates.append([d for d in _divisors(vals[e]) if d <= bound])
    valid = []
    for vec in itertools.product(*candidates):
        M = ThicknessFunction(tuple(zip(G.edge_ids, vec)))
        if is_thickness_function(G, M) and _scales_consistently(G, M, vals):
            valid.append(M)
    valid.sort(key=lambda M: M.vector())
    return TraitFactorisation(
        v, canonical_tf, tuple(sorted(scales)), bound, tuple(valid)
    )
