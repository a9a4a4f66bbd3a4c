"""Interaction graphs and graph-based communication quantities."""

from __future__ import annotations

import heapq

import numpy as np

from .world import WorldConfig, displacement


def pairwise_distances(positions, world: WorldConfig):
    """[N, N] matrix of inter-agent distances (minimal image on the torus)."""
    positions = np.asarray(positions, dtype=np.float64)
    diff = displacement(positions[:, None, :], positions[None, :, :], world)
    return np.sqrt(np.sum(diff * diff, axis=-1))


def build_adjacency(positions, world: WorldConfig, observability: str, d_c: float):
    """Symmetric neighbor mask; edge iff distance <= d_c (local) or always (global)."""
    n = len(positions)
    if observability == "global":
        adj = np.ones((n, n), dtype=bool)
    else:
        adj = pairwise_distances(positions, world) <= d_c
    np.fill_diagonal(adj, False)
    return adj


def disconnected_sentinel(world: WorldConfig) -> float:
    """Path value reported when no agent-evader path exists."""
    return 2.0 * (world.x_max + world.y_max)


def shortest_path_to_evader(positions, evader_xy, adj, world: WorldConfig, d_o: float):
    """Shortest-path distance from every agent to the evader.

    The path graph has agent-agent edges wherever the interaction graph has
    them (weighted by distance) and agent-evader edges where the evader is
    within the observation radius d_o.  Unreachable agents get the sentinel
    2*(x_max + y_max).
    """
    positions = np.asarray(positions, dtype=np.float64)
    n = len(positions)
    dmat = pairwise_distances(positions, world)
    d_ev = np.sqrt(
        np.sum(displacement(positions, np.asarray(evader_xy)[None, :], world) ** 2, axis=-1)
    )
    sentinel = disconnected_sentinel(world)
    # Dijkstra from the evader node over agents 0..n-1
    dist = np.full(n, np.inf)
    heap = []
    for i in np.flatnonzero(d_ev <= d_o):
        dist[i] = d_ev[i]
        heapq.heappush(heap, (d_ev[i], int(i)))
    visited = np.zeros(n, dtype=bool)
    while heap:
        d_u, u = heapq.heappop(heap)
        if visited[u]:
            continue
        visited[u] = True
        for v in np.flatnonzero(adj[u]):
            alt = d_u + dmat[u, v]
            if alt < dist[v]:
                dist[v] = alt
                heapq.heappush(heap, (alt, int(v)))
    return np.where(np.isfinite(dist), dist, sentinel)
