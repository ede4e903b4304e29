"""Samplers for G(N, K, p).

Two independently implemented mechanisms that must agree in distribution:

* ``sample_direct`` draws each super-vertex pair {k, l} directly as a
  Bernoulli with the pair probability 1 - (1-p)^(i*j).
* ``sample_constructive`` realizes the defining construction: it draws the
  underlying cross vertex pairs as Bernoulli(p) and connects two
  super-vertices iff at least one underlying edge lands between their
  vertex sets. Pairs inside one super-vertex are never sampled; they
  cannot create a super edge.

Both are deterministic given (config, params, seed) and run in expected
time O(N + edges) via per-block geometric skipping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from . import kernels
from .config import SizeConfiguration

REGIMES = ("raw", "connectivity", "sparse")

_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class ModelParams:
    """Edge probability p and the parameterization it came from.

    regime "raw" reads c as the probability itself; "connectivity" sets
    p = (ln N + c) / N; "sparse" sets p = c / n.
    """

    regime: str
    c: float
    p: float

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}, expected one of {REGIMES}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"resolved p={self.p!r} outside [0, 1]")


def resolve_p(regime: str, c: float, config: SizeConfiguration) -> ModelParams:
    """Resolve the edge probability for a configuration under a regime."""
    n_super, n_vert = config.num_super, config.num_vertices
    if regime == "raw":
        p = float(c)
    elif regime == "connectivity":
        p = (math.log(n_super) + c) / n_super
    elif regime == "sparse":
        p = c / n_vert
    else:
        raise ValueError(f"unknown regime {regime!r}, expected one of {REGIMES}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"regime {regime!r} with c={c} resolves to p={p}, outside [0, 1]")
    return ModelParams(regime=regime, c=float(c), p=p)


def edge_probability(i: int, j: int, p: float) -> float:
    """Probability 1 - (1-p)^(i*j) that super-vertices of sizes i, j connect.

    Evaluated as -expm1(i*j*log1p(-p)), which stays accurate when p is tiny
    (sparse regime has p = c/n, easily 1e-6 at desk scale).
    """
    if i < 1 or j < 1:
        raise ValueError("sizes must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p!r} outside [0, 1]")
    if p == 1.0:
        return 1.0
    return -math.expm1(i * j * math.log1p(-p))


@dataclass(frozen=True)
class SuperGraph:
    """A sampled realization: per-node sizes and a canonical edge array.

    ``edges`` has shape (m, 2) with u < v per row, rows sorted
    lexicographically, no duplicates, no self loops. Arrays are marked
    read-only; instances are safe to share between threads.
    """

    sizes: np.ndarray
    edges: np.ndarray

    def __post_init__(self):
        sizes = np.ascontiguousarray(self.sizes, np.int64)
        edges = np.ascontiguousarray(self.edges, np.int64).reshape(-1, 2)
        n = sizes.shape[0]
        if n < 1 or (sizes < 1).any():
            raise ValueError("sizes must be a nonempty vector of integers >= 1")
        if edges.shape[0]:
            if (edges[:, 0] >= edges[:, 1]).any():
                raise ValueError("edges must satisfy u < v (no self loops)")
            if edges[:, 0].min() < 0 or edges[:, 1].max() >= n:
                raise ValueError("edge endpoints out of range")
            order = np.lexsort((edges[:, 1], edges[:, 0]))
            edges = edges[order]
            dup = (np.diff(edges[:, 0]) == 0) & (np.diff(edges[:, 1]) == 0)
            if dup.any():
                raise ValueError("duplicate edges")
        sizes.setflags(write=False)
        edges.setflags(write=False)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "edges", edges)

    @property
    def num_super(self) -> int:
        return self.sizes.shape[0]

    @property
    def num_vertices(self) -> int:
        return int(self.sizes.sum())

    @property
    def edge_count(self) -> int:
        return self.edges.shape[0]


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValueError(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < _SEED_LIMIT:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return int(seed)


def _build(config: SizeConfiguration, p: float, seed: int, constructive: bool) -> SuperGraph:
    class_sizes, class_counts, class_offsets = config.size_classes()
    eu, ev = kernels.sample_edges(class_sizes, class_counts, class_offsets, p, seed,
                                  constructive=constructive)
    sizes = np.repeat(class_sizes, class_counts)
    return SuperGraph(sizes=sizes, edges=np.column_stack((eu, ev)))


def sample_direct(config: SizeConfiguration, params: ModelParams, seed: int) -> SuperGraph:
    """Draw each super-vertex pair as an independent Bernoulli(p_ij)."""
    return _build(config, params.p, _check_seed(seed), constructive=False)


def sample_constructive(config: SizeConfiguration, params: ModelParams, seed: int) -> SuperGraph:
    """Collapse an underlying G(n, p): a super edge iff >= 1 cross edge."""
    return _build(config, params.p, _check_seed(seed), constructive=True)


def write_edge_list(graph: SuperGraph, out: TextIO) -> None:
    """Write the export format: a header line, then one "u v" line per edge."""
    sizes, counts = np.unique(graph.sizes, return_counts=True)
    spec = ",".join(f"{int(i)}x{int(k)}" for i, k in zip(sizes, counts))
    out.write(f"# N={graph.num_super} sizes={spec}\n")
    for u, v in graph.edges.tolist():
        out.write(f"{u} {v}\n")
