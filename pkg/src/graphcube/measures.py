"""Per-vertex structural scores and the per-value significance table.

Each vertex gets a score ``diversity * clustering + density``; the score of a
dimensional value is the sum over the vertices carrying it. Values scoring
below their dimension's mean are pruned under the default policy; a plain
support-count policy is provided as the iceberg baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .core import InvertedIndex, MultidimGraph
from .errors import ParameterError

__all__ = [
    "VertexScore",
    "SignificanceRow",
    "SignificanceTable",
    "PrunePolicy",
    "clustering_coefficient",
    "local_density",
    "attribute_diversity",
    "vertex_score",
    "significance_table",
    "apply_policy",
    "degree_baseline",
    "write_significance_csv",
]


@dataclass(frozen=True)
class VertexScore:
    alpha: float
    cc: float
    density: float
    score: float


@dataclass(frozen=True)
class SignificanceRow:
    ss: float
    support: int
    keep: bool


@dataclass
class SignificanceTable:
    rows: dict[tuple[int, str], SignificanceRow]
    thresholds: dict[int, float]
    policy: str = "ss-mean"

    def keep(self, dim: int, value: str) -> bool:
        return self.rows[(dim, value)].keep


@dataclass(frozen=True)
class PrunePolicy:
    kind: str = "ss-mean"  # one of: none, ss-mean, support
    min_support: int = 1

    def __post_init__(self) -> None:
        if self.kind not in ("none", "ss-mean", "support"):
            raise ParameterError(f"unknown policy kind {self.kind!r}")
        if self.min_support < 1:
            raise ParameterError("min_support must be >= 1")


def clustering_coefficient(g: MultidimGraph, v: int) -> float:
    """Fraction of neighbor pairs of v that are adjacent; 0 when deg(v) < 2."""
    nbrs = g.neighbors(v)
    d = len(nbrs)
    if d < 2:
        return 0.0
    links = sum(1 for u in nbrs for w in g.neighbors(u) if w in nbrs and w > u)
    return links / (d * (d - 1) / 2)


def local_density(g: MultidimGraph, v: int) -> float:
    """Edge density of the induced subgraph on the closed neighborhood of v."""
    closed = set(g.neighbors(v)) | {v}
    k = len(closed)
    if k < 2:
        return 0.0
    links = sum(1 for u in closed for w in g.neighbors(u) if w in closed and w > u)
    return links / (k * (k - 1) / 2)


def attribute_diversity(g: MultidimGraph, v: int) -> float:
    """Mean over dimensions of (distinct neighbor values / neighbor count)."""
    nbrs = g.neighbors(v)
    if not nbrs:
        return 0.0
    attrs = [g.attributes(u) for u in nbrs]
    total = 0.0
    for j in range(g.dim_count):
        total += len({a[j] for a in attrs}) / len(nbrs)
    return total / g.dim_count


def vertex_score(g: MultidimGraph, v: int) -> VertexScore:
    alpha = attribute_diversity(g, v)
    cc = clustering_coefficient(g, v)
    density = local_density(g, v)
    return VertexScore(alpha=alpha, cc=cc, density=density, score=alpha * cc + density)


def significance_table(g: MultidimGraph, idx: InvertedIndex) -> SignificanceTable:
    """Sum per-vertex scores into each value's row and set per-dimension mean
    thresholds; keep flags follow the ss-mean policy."""
    scores = {v: vertex_score(g, v).score for v in g.vertices}
    raw: dict[tuple[int, str], tuple[float, int]] = {}
    for (d, value), members in idx.entries.items():
        raw[(d, value)] = (sum(scores[v] for v in members), len(members))

    per_dim: dict[int, list[float]] = {}
    for (d, _), (ss, _) in raw.items():
        per_dim.setdefault(d, []).append(ss)
    thresholds = {d: sum(vals) / len(vals) for d, vals in per_dim.items()}

    rows = {
        key: SignificanceRow(ss=ss, support=sup, keep=ss >= thresholds[key[0]])
        for key, (ss, sup) in raw.items()
    }
    return SignificanceTable(rows=rows, thresholds=thresholds, policy="ss-mean")


def apply_policy(t: SignificanceTable, p: PrunePolicy) -> SignificanceTable:
    """Recompute keep flags under the given policy; scores stay untouched."""
    def keep(key: tuple[int, str], row: SignificanceRow) -> bool:
        if p.kind == "none":
            return True
        if p.kind == "ss-mean":
            return row.ss >= t.thresholds[key[0]]
        return row.support >= p.min_support

    rows = {key: replace(row, keep=keep(key, row)) for key, row in t.rows.items()}
    return SignificanceTable(rows=rows, thresholds=dict(t.thresholds), policy=p.kind)


def degree_baseline(g: MultidimGraph, idx: InvertedIndex) -> dict[tuple[int, str], float]:
    """Comparison baseline: per value, the sum of its member vertices' degrees."""
    return {
        key: float(sum(g.degree(v) for v in members))
        for key, members in idx.entries.items()
    }


def write_significance_csv(t: SignificanceTable, dims: tuple[str, ...], path: str | Path) -> None:
    lines = ["dimension,value,ss,support,keep"]
    for (d, value), row in sorted(t.rows.items()):
        lines.append(f"{dims[d]},{value},{row.ss:.12g},{row.support},{str(row.keep).lower()}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
