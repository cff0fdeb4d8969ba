#!/usr/bin/env python3
"""Timing smoke for the tree-of-hulls build and the min-max 2-clustering.

Prints the n log n consistency ratio for build_tree (2e5 vs 1e5 points) and
the wall time of the 2-clustering on 2000 Euclidean points.
"""

import time

import numpy as np

from normclust import avis_min_max_2cluster, build_tree, euclidean_plane


def main() -> int:
    plane = euclidean_plane()
    rng = np.random.default_rng(0)
    times = {}
    for n in (100_000, 200_000):
        pts = rng.uniform(0, 100, size=(n, 2))
        t0 = time.monotonic()
        tree = build_tree(plane, pts, 90.0)
        times[n] = time.monotonic() - t0
        print(f"build_tree n={n}: {times[n]:.2f}s  (root vertices: {len(tree.root.vertices)})")
    print(f"ratio 2e5/1e5: {times[200_000] / times[100_000]:.2f}  (n log n target < 2.6)")

    pts = rng.uniform(0, 100, size=(2000, 2))
    t0 = time.monotonic()
    d_star, _ = avis_min_max_2cluster(plane, pts)
    print(f"avis n=2000: {time.monotonic() - t0:.2f}s  (d* = {d_star:.3f}, target < 30s)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
