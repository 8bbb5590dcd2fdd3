"""Seeded graph generators for tests and benchmarks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpec, RejectionExhausted
from .graph import Graph, build_graph

MODELS = ("gnp", "random_regular", "complete", "complete_bipartite", "hypercube")


@dataclass(frozen=True)
class GenSpec:
    """A generator request: which model plus its parameters.

    Used by the CLI and the benchmark sweep; the per-model functions below
    can also be called directly.
    """

    model: str
    n: int = 0
    p: float = 0.0
    d: int = 0
    a: int = 0
    b: int = 0
    dim: int = 0
    seed: int = 0

    def check(self) -> None:
        if self.model not in MODELS:
            raise InvalidSpec(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.model == "gnp":
            if self.n < 0 or not 0.0 <= self.p <= 1.0:
                raise InvalidSpec(f"gnp requires n >= 0 and 0 <= p <= 1, got n={self.n} p={self.p}")
        elif self.model == "random_regular":
            if self.n < 0 or self.d < 0 or self.d >= max(self.n, 1) or (self.n * self.d) % 2:
                raise InvalidSpec(
                    f"random_regular requires 0 <= d < n and n*d even, got n={self.n} d={self.d}"
                )
        elif self.model == "complete":
            if self.n < 0:
                raise InvalidSpec(f"complete requires n >= 0, got {self.n}")
        elif self.model == "complete_bipartite":
            if self.a < 0 or self.b < 0:
                raise InvalidSpec(f"complete_bipartite requires a, b >= 0, got {self.a}, {self.b}")
        elif self.model == "hypercube":
            if self.dim < 1:
                raise InvalidSpec(f"hypercube requires dim >= 1, got {self.dim}")


def generate(spec: GenSpec) -> Graph:
    """Build the graph described by ``spec``; deterministic given its seed."""
    spec.check()
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    if spec.model == "gnp":
        return gnp(spec.n, spec.p, rng)
    if spec.model == "random_regular":
        return random_regular(spec.n, spec.d, rng)
    if spec.model == "complete":
        return complete(spec.n)
    if spec.model == "complete_bipartite":
        return complete_bipartite(spec.a, spec.b)
    return hypercube(spec.dim)


def gnp(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi G(n, p)."""
    pairs = []
    if p > 0.0:
        for u in range(n - 1):
            hits = np.nonzero(rng.random(n - 1 - u) < p)[0]
            pairs.extend((u, u + 1 + int(v)) for v in hits)
    return build_graph(pairs, n)


def complete(n: int) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return build_graph(pairs, n)


def complete_bipartite(a: int, b: int) -> Graph:
    pairs = [(u, a + v) for u in range(a) for v in range(b)]
    return build_graph(pairs, a + b)


def hypercube(dim: int) -> Graph:
    n = 1 << dim
    pairs = []
    for v in range(n):
        for bit in range(dim):
            w = v ^ (1 << bit)
            if w > v:
                pairs.append((v, w))
    return build_graph(pairs, n)


def random_regular(n: int, d: int, rng, max_attempts: int = 50) -> Graph:
    """d-regular graph on n vertices via the pairing model.

    Stubs (d copies of each vertex) are shuffled and paired; pairs forming
    loops or repeated edges are rejected and their stubs re-shuffled into the
    next round.  A stuck attempt restarts from scratch; after
    ``max_attempts`` restarts the generator raises RejectionExhausted.
    """
    if d < 0 or d >= max(n, 1) or (n * d) % 2:
        raise InvalidSpec(f"random_regular requires 0 <= d < n and n*d even, got n={n} d={d}")
    if d == 0 or n == 0:
        return build_graph([], n)

    base = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(max_attempts):
        stubs = base.copy()
        rng.shuffle(stubs)
        accepted_u: list[np.ndarray] = []
        accepted_keys = np.empty(0, dtype=np.int64)
        stalls = 0
        for _round in range(200):
            u = stubs[0::2]
            v = stubs[1::2]
            lo = np.minimum(u, v)
            hi = np.maximum(u, v)
            keys = lo * n + hi
            ok = lo != hi
            # Keep only the first occurrence of each key within this round.
            _, first_idx = np.unique(keys, return_index=True)
            first = np.zeros(len(keys), dtype=bool)
            first[first_idx] = True
            ok &= first
            if len(accepted_keys):
                ok &= ~np.isin(keys, accepted_keys)
            if ok.any():
                accepted_u.append(np.stack([lo[ok], hi[ok]], axis=1))
                accepted_keys = np.concatenate([accepted_keys, keys[ok]])
                stalls = 0
            else:
                stalls += 1
            bad = ~ok
            if not bad.any():
                pairs = np.concatenate(accepted_u)
                return build_graph(pairs.tolist(), n)
            if stalls >= 5:
                break  # this attempt is stuck; restart with a fresh shuffle
            stubs = np.concatenate([u[bad], v[bad]])
            rng.shuffle(stubs)
    raise RejectionExhausted(
        f"could not realize a {d}-regular graph on {n} vertices in {max_attempts} attempts"
    )
