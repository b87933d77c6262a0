"""Shared test oracles.

The pixel flood fill is the independent reference for level-set component
counts: it rasterizes |Theta| on a uniform Cartesian grid and labels
4-connected sublevel pixels with a run-length union-find, entirely apart
from the package's quadtree path.
"""

import numpy as np


def brute_force_components(modulus_fn, eps, n=2048):
    xs = (np.arange(n) + 0.5) / n * 2.0 - 1.0
    X, Y = np.meshgrid(xs, xs)
    Z = X + 1j * Y
    mask = (np.abs(Z) < 1.0) & (modulus_fn(Z) < eps)
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    runs_prev, next_id = [], 0
    for i in range(n):
        row = mask[i]
        d = np.diff(row.astype(np.int8))
        starts = list(np.where(d == 1)[0] + 1)
        ends = list(np.where(d == -1)[0] + 1)
        if row[0]:
            starts = [0] + starts
        if row[-1]:
            ends = ends + [n]
        runs = []
        for s, e in zip(starts, ends):
            parent[next_id] = next_id
            runs.append((s, e, next_id))
            next_id += 1
        pi = 0
        for s, e, rid in runs:
            while pi < len(runs_prev) and runs_prev[pi][1] <= s:
                pi += 1
            j = pi
            while j < len(runs_prev) and runs_prev[j][0] < e:
                union(rid, runs_prev[j][2])
                j += 1
        runs_prev = runs
    return len({find(i) for i in range(next_id)})


def blaschke_modulus_fn(zeros):
    def fn(Z):
        out = np.ones_like(Z, dtype=np.complex128)
        for a in zeros:
            pref = abs(a) / a if a != 0 else 1.0
            out *= pref * (a - Z) / (1.0 - np.conj(a) * Z)
        return np.abs(out)
    return fn
