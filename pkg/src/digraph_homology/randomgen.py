"""Seeded random objects for the property suites.

Everything takes an explicit random.Random so runs are reproducible from
a single seed: digraphs, subdigraphs, grid maps with boundary conditions,
shrinking maps, direct-homotopy moves, and certificate chains.
"""

from __future__ import annotations

import random
from typing import Optional

from .digraphs import Digraph, build_digraph
from .grids import (
    CertificateStep,
    GridMap,
    ShrinkingMap,
    constant_grid_map,
    direct_homotopy,
    grid_map_violation,
    shrink_by_pair_insertions,
    subdivide,
)


def random_digraph(
    rng: random.Random,
    max_vertices: int = 5,
    max_arrows: int = 8,
    arrow_prob: float = 0.35,
    min_vertices: int = 1,
) -> Digraph:
    nv = rng.randint(min_vertices, max_vertices)
    pairs = [(i, j) for i in range(nv) for j in range(nv) if i != j]
    rng.shuffle(pairs)
    arrows = []
    for p in pairs:
        if len(arrows) >= max_arrows:
            break
        if rng.random() < arrow_prob:
            arrows.append(p)
    arrows.sort()
    return build_digraph(range(nv), arrows)


def random_subdigraph(rng: random.Random, g: Digraph, keep_vertex=None) -> Digraph:
    verts = [v for v in g.vertices if rng.random() < 0.7]
    if keep_vertex is not None and keep_vertex not in verts:
        verts.append(keep_vertex)
    vset = set(verts)
    arrows = [a for a in g.arrows if a[0] in vset and a[1] in vset and rng.random() < 0.7]
    ordered = [v for v in g.vertices if v in vset]
    return build_digraph(ordered, arrows)


def random_grid_map(
    rng: random.Random,
    target: Digraph,
    base,
    lengths: tuple[int, ...],
    mode: str = "pair",
    sub: Optional[Digraph] = None,
    tries: int = 200,
) -> Optional[GridMap]:
    """Backtracking fill of a standard grid with the mode's boundary
    conditions; returns None when no valid map is found in the budget."""
    template = constant_grid_map(target, base, lengths, mode, sub)
    indices = list(template.indices())
    succ = {v: (v,) + target.out_neighbors(v) for v in target.vertices}

    for _ in range(tries):
        values: dict[tuple, object] = {}
        ok = True
        for idx in indices:
            cands = None
            for k in range(len(lengths)):
                if idx[k] == 0:
                    continue
                prev = list(idx)
                prev[k] -= 1
                pv = values[tuple(prev)]
                if template.axes[k].forward_at(idx[k] - 1):
                    step = set(succ[pv])
                else:
                    step = {pv} | {w for w in target.vertices if target.has_arrow(w, pv)}
                cands = step if cands is None else cands & step
            if cands is None:
                cands = set(target.vertices)
            from .grids import on_collapsed_part, on_outer_boundary

            if mode in ("pair", "triple") and (
                (mode == "pair" and on_outer_boundary(idx, lengths))
                or (mode == "triple" and on_collapsed_part(idx, lengths))
            ):
                cands = cands & {base}
            elif mode == "triple" and on_outer_boundary(idx, lengths):
                cands = cands & set(sub.vertices)
            if not cands:
                ok = False
                break
            values[idx] = rng.choice(sorted(cands, key=str))
        if not ok:
            continue
        candidate = template.with_values([values[idx] for idx in indices])
        if grid_map_violation(candidate) is None:
            return candidate
    return None


def random_shrinking(
    rng: random.Random, lengths: tuple[int, ...], max_insertions: int = 2
) -> ShrinkingMap:
    insertions = []
    for m in lengths:
        k = rng.randint(0, max_insertions)
        insertions.append([rng.randint(0, m) for _ in range(k)])
    return shrink_by_pair_insertions(lengths, insertions)


def random_direct_move(rng: random.Random, f: GridMap, tries: int = 30) -> Optional[tuple]:
    """A valid grid map one direct-homotopy step away from f, with its
    direction; None if no move is found."""
    from .grids import on_outer_boundary

    idx_pool = [
        idx
        for idx in f.indices()
        if f.mode == "absolute" or not on_outer_boundary(idx, f.lengths)
    ]
    if not idx_pool:
        return None
    t = f.target
    for _ in range(tries):
        idx = idx_pool[rng.randrange(len(idx_pool))]
        cur = f.value(idx)
        fwd = list(t.out_neighbors(cur))
        bwd = list(t.in_neighbors(cur))
        options = [(w, "fwd") for w in fwd] + [(w, "bwd") for w in bwd]
        if not options:
            continue
        w, direction = options[rng.randrange(len(options))]
        values = list(f.values)
        values[f.flat_index(idx)] = w
        g = f.with_values(values)
        if grid_map_violation(g) is not None:
            continue
        rel = direct_homotopy(f, g)
        if direction in rel:
            return g, direction
    return None


def random_certificate_chain(
    rng: random.Random, f: GridMap, max_steps: int = 3
) -> tuple[GridMap, list[CertificateStep]]:
    """A grid map F-homotopic to f together with a verifying certificate.

    Steps alternate randomly between pair-insertion subdivisions (the
    subdivided map is one-step homotopic to the original via the shrink)
    and vertexwise direct moves.
    """
    current = f
    steps: list[CertificateStep] = []
    n_steps = rng.randint(1, max_steps)
    for _ in range(n_steps):
        if rng.random() < 0.5:
            h = random_shrinking(rng, current.lengths)
            nxt = subdivide(current, h)
            steps.append(CertificateStep(h, None, "fwd", nxt))
            current = nxt
        else:
            move = random_direct_move(rng, current)
            if move is None:
                continue
            nxt, direction = move
            steps.append(CertificateStep(None, None, direction, nxt))
            current = nxt
    if not steps:
        h = random_shrinking(rng, current.lengths)
        nxt = subdivide(current, h)
        steps.append(CertificateStep(h, None, "fwd", nxt))
        current = nxt
    # the final step's target is implied by the certificate contract
    last = steps[-1]
    steps[-1] = CertificateStep(last.left, last.right, last.direction, None)
    return current, steps
