"""Independent reference computations used by the tests."""
from __future__ import annotations

import numpy as np


def crossings_by_definition(labels) -> int:
    """Count crossing segments straight from conditions (i)-(iv)."""
    n = len(labels) - 1
    if n == 0:
        return int(labels[0] == 0)
    total = 0
    for i in range(n):
        a, b = labels[i], labels[i + 1]
        cond_i = (a > 0 and b < 0) or (a < 0 and b > 0)
        cond_ii = i == 0 and a == 0
        cond_iii = i > 0 and a == 0 and labels[i - 1] != 0
        cond_iv = i == n - 1 and a != 0 and b == 0
        total += cond_i or cond_ii or cond_iii or cond_iv
    return total


def sampled_line_labels(points, count: int, rng: np.random.Generator) -> np.ndarray:
    """Side labels (count, m) of the points for random lines crossing their bounding box.

    Half of the lines are generic; the other half pass exactly through a
    random point of the set (direction random), so zero labels occur too.
    """
    xy = np.array([[float(p.x), float(p.y)] for p in points])
    lo, hi = xy.min(axis=0) - 1, xy.max(axis=0) + 1
    theta = rng.uniform(0, np.pi, count)
    a, b = np.cos(theta), np.sin(theta)
    anchor = rng.uniform(lo, hi, size=(count, 2))
    through = rng.random(count) < 0.5
    anchor[through] = xy[rng.integers(0, len(xy), through.sum())]
    c = -(a * anchor[:, 0] + b * anchor[:, 1])
    vals = a[:, None] * xy[None, :, 0] + b[:, None] * xy[None, :, 1] + c[:, None]
    # for lines built through a point the value there is computed as x - x = 0 exactly
    labels = np.sign(vals).astype(int)
    return labels


def max_sampled_crossings(S, count: int, rng: np.random.Generator) -> int:
    distinct = sorted(set(S))
    index = {p: k for k, p in enumerate(distinct)}
    labels = sampled_line_labels(distinct, count, rng)
    seq = np.array([index[p] for p in S])
    lab = labels[:, seq]
    # vectorised version of crossings_by_definition over all sampled lines
    n = lab.shape[1] - 1
    if n == 0:
        return int((lab[:, 0] == 0).max())
    a, b = lab[:, :-1], lab[:, 1:]
    hit = (a * b) < 0
    hit[:, 0] |= a[:, 0] == 0
    if n > 1:
        hit[:, 1:] |= (a[:, 1:] == 0) & (lab[:, :-2] != 0)
    hit[:, -1] |= (a[:, -1] != 0) & (b[:, -1] == 0)
    return int(hit.sum(axis=1).max())


def closed_walk(pairs, multiplicity) -> list:
    """Closed walk using edge ``pairs[k]`` exactly ``multiplicity[k]`` times (all even).

    Hierholzer's algorithm on the multigraph; the edges with positive
    multiplicity must form a connected graph.
    """
    left = {}
    adj: dict = {}
    for (i, j), c in zip(pairs, multiplicity):
        if c:
            left[(i, j)] = int(c)
            adj.setdefault(i, []).append(j)
            adj.setdefault(j, []).append(i)
    if not left:
        return []
    stack, path = [next(iter(left))[0]], []
    while stack:
        v = stack[-1]
        for u in adj[v]:
            e = (min(u, v), max(u, v))
            if left.get(e, 0):
                left[e] -= 1
                stack.append(u)
                break
        else:
            path.append(stack.pop())
    if any(left.values()):
        raise ValueError("edge support is not connected")
    return path


def flow_walk(flow, pairs, scale: int) -> list:
    """Indices of a closed walk using pair k about ``2 * scale * flow[k]`` times."""
    mult = [2 * round(scale * float(y)) for y in flow]
    return closed_walk(pairs, mult)
