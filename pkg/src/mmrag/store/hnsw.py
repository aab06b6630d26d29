"""Hierarchical navigable small world graph for approximate top-k search.

Multi-layer greedy search: upper layers hold progressively fewer nodes and
provide long-range hops; layer 0 holds everything. Similarity is a dot
product over whatever vectors the owning index stores (unit-normalized for
cosine), so higher is better throughout. Level draws come from a PRNG seeded
at construction, which makes builds reproducible for a fixed insertion
order.
"""

from __future__ import annotations

import heapq
import math

import numpy as np


class HnswGraph:
    def __init__(self, dim: int, m: int = 16, ef_construction: int = 200, seed: int = 42):
        self.dim = dim
        self.m = m
        self.m0 = 2 * m
        self.ef_construction = ef_construction
        self.level_mult = 1.0 / math.log(m)
        self._rng = np.random.default_rng(seed)
        self._vectors = np.empty((1024, dim), dtype=np.float64)
        # neighbors[level][node] -> list of node indices
        self._neighbors: list[dict[int, list[int]]] = []
        self._node_level: list[int] = []
        self._entry: int | None = None

    def __len__(self) -> int:
        return len(self._node_level)

    def _sims(self, query: np.ndarray, candidates: list[int]) -> np.ndarray:
        return self._vectors[candidates] @ query

    def _search_layer(self, query: np.ndarray, entry: int, ef: int, level: int) -> list[tuple[float, int]]:
        """Best-first search on one layer; returns up to ef (sim, node) pairs."""
        visited = {entry}
        entry_sim = float(self._vectors[entry] @ query)
        # max-heap of candidates by sim (store negated), min-heap of results by sim
        candidates = [(-entry_sim, entry)]
        results = [(entry_sim, entry)]
        adjacency = self._neighbors[level]
        while candidates:
            neg_sim, node = heapq.heappop(candidates)
            if -neg_sim < results[0][0] and len(results) >= ef:
                break
            unvisited = [n for n in adjacency.get(node, ()) if n not in visited]
            if not unvisited:
                continue
            visited.update(unvisited)
            sims = self._sims(query, unvisited)
            for sim, neighbor in zip(sims, unvisited):
                sim = float(sim)
                if len(results) < ef or sim > results[0][0]:
                    heapq.heappush(candidates, (-sim, neighbor))
                    heapq.heappush(results, (sim, neighbor))
                    if len(results) > ef:
                        heapq.heappop(results)
        return results

    def _select_neighbors(self, pairs: list[tuple[float, int]], count: int) -> list[int]:
        return [node for _, node in sorted(pairs, key=lambda p: -p[0])[:count]]

    def add(self, vector: np.ndarray):
        node = len(self._node_level)
        level = int(-math.log(max(self._rng.random(), 1e-12)) * self.level_mult)
        self._node_level.append(level)
        if node >= self._vectors.shape[0]:  # grow by doubling
            grown = np.empty((2 * self._vectors.shape[0], self.dim), dtype=np.float64)
            grown[:node] = self._vectors[:node]
            self._vectors = grown
        self._vectors[node] = vector
        while len(self._neighbors) <= level:
            self._neighbors.append({})
        for lvl in range(level + 1):
            self._neighbors[lvl].setdefault(node, [])

        if self._entry is None:
            self._entry = node
            return

        entry = self._entry
        max_level = self._node_level[self._entry]
        query = vector
        for lvl in range(max_level, level, -1):
            entry = self._search_layer(query, entry, 1, lvl)[0][1] if lvl < len(self._neighbors) else entry
        for lvl in range(min(level, max_level), -1, -1):
            found = self._search_layer(query, entry, self.ef_construction, lvl)
            limit = self.m0 if lvl == 0 else self.m
            chosen = self._select_neighbors(found, limit)
            self._neighbors[lvl][node] = chosen
            for other in chosen:
                links = self._neighbors[lvl][other]
                links.append(node)
                if len(links) > limit:
                    sims = self._sims(self._vectors[other], links)
                    pairs = list(zip(sims.tolist(), links))
                    self._neighbors[lvl][other] = self._select_neighbors(pairs, limit)
            entry = chosen[0] if chosen else entry

        if level > max_level:
            self._entry = node

    def search(self, query: np.ndarray, k: int, ef_search: int = 128) -> list[tuple[float, int]]:
        """Approximate top-k as (similarity, node) pairs, best first."""
        if self._entry is None:
            return []
        entry = self._entry
        for lvl in range(self._node_level[self._entry], 0, -1):
            entry = max(self._search_layer(query, entry, 1, lvl), key=lambda p: p[0])[1]
        results = self._search_layer(query, entry, max(ef_search, k), 0)
        return sorted(results, key=lambda p: -p[0])[:k]
