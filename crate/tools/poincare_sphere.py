"""Build a small triangulation of the Poincare homology sphere.

The binary icosahedral group I* (the 120 vertices of the 600-cell, viewed as
unit quaternions) acts freely on S^3 by left multiplication and permutes the
cells of the 600-cell.  Chains of 600-cell faces span the barycentric
subdivision; orbits of chains give the quotient S^3 / I* as a Delta-complex.
Subdividing that quotient once more (chains of chains) gives an honest
simplicial complex, which is then shrunk by bistellar moves.  Bistellar moves
preserve the PL type, so the result is still the Poincare homology sphere.
The move sequence is driven by a seeded RNG so the output is reproducible.

Usage: python3 tools/poincare_sphere.py > crates/core/data/poincare16.facets
"""

import itertools
import random
import sys
from collections import defaultdict

import numpy as np

PHI = (1 + 5 ** 0.5) / 2
TARGET_VERTICES = 16


def even_perms(v):
    out = []
    for p in itertools.permutations(range(4)):
        inv = sum(1 for a in range(4) for b in range(a + 1, 4) if p[a] > p[b])
        if inv % 2 == 0:
            out.append(tuple(v[p[i]] for i in range(4)))
    return out


def binary_icosahedral():
    pts = set()
    for i in range(4):
        for s in (1, -1):
            v = [0.0] * 4
            v[i] = s
            pts.add(tuple(v))
    for signs in itertools.product((0.5, -0.5), repeat=4):
        pts.add(signs)
    base = (0.0, 0.5, PHI / 2, 1 / (2 * PHI))
    for sa, sb, sc in itertools.product((1, -1), repeat=3):
        v = (0.0, sa * base[1], sb * base[2], sc * base[3])
        for w in even_perms(v):
            pts.add(tuple(round(x, 12) + 0.0 for x in w))
    pts = sorted(pts)
    assert len(pts) == 120, len(pts)
    return np.array(pts)


def qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def quotient_second_subdivision():
    g = binary_icosahedral()
    n = len(g)

    def index_of(v):
        d = np.abs(g - v).sum(axis=1)
        k = int(np.argmin(d))
        assert d[k] < 1e-9
        return k

    dots = g @ g.T
    adj = [{j for j in range(n) if j != i and abs(dots[i, j] - PHI / 2) < 1e-9} for i in range(n)]
    assert all(len(a) == 12 for a in adj)
    edges = sorted({tuple(sorted((i, j))) for i in range(n) for j in adj[i]})
    tris = sorted({tuple(sorted((i, j, k))) for (i, j) in edges for k in adj[i] & adj[j]})
    tets = sorted({tuple(sorted(t + (l,))) for t in tris for l in adj[t[0]] & adj[t[1]] & adj[t[2]]})
    assert (len(edges), len(tris), len(tets)) == (720, 1200, 600)
    mult = [[index_of(qmul(g[a], g[b])) for b in range(n)] for a in range(n)]

    def act(a, chain):
        return tuple(tuple(sorted(mult[a][v] for v in face)) for face in chain)

    # canonical orbit representative of a chain of faces
    canon = {}

    def orbit_id(chain):
        if chain not in canon:
            images = [act(a, chain) for a in range(n)]
            rep = min(images)
            for im in images:
                canon[im] = rep
        return canon[chain]

    facets = set()
    for t in tets:
        for perm in itertools.permutations(t):
            flag = [tuple(sorted(perm[:k])) for k in range(1, 5)]
            # faces of the flag simplex are its nonempty sub-chains; a maximal
            # chain of sub-chains is a permutation of the four flag entries
            for order in itertools.permutations(range(4)):
                simplex = []
                for k in range(1, 5):
                    sub = tuple(flag[i] for i in sorted(order[:k]))
                    simplex.append(orbit_id(sub))
                facets.add(frozenset(simplex))
    assert len(facets) == 120 * 24, len(facets)
    return facets


class Complex3:
    def __init__(self, facets):
        self.facets = set()
        self.by_vertex = defaultdict(set)
        self.by_edge = defaultdict(set)
        self.by_tri = defaultdict(set)
        for f in facets:
            self.add(f)

    def add(self, f):
        assert f not in self.facets
        self.facets.add(f)
        for v in f:
            self.by_vertex[v].add(f)
        for e in itertools.combinations(sorted(f), 2):
            self.by_edge[frozenset(e)].add(f)
        for t in itertools.combinations(sorted(f), 3):
            self.by_tri[frozenset(t)].add(f)

    def remove(self, f):
        self.facets.remove(f)
        for v in f:
            self.by_vertex[v].discard(f)
            if not self.by_vertex[v]:
                del self.by_vertex[v]
        for e in itertools.combinations(sorted(f), 2):
            s = self.by_edge[frozenset(e)]
            s.discard(f)
            if not s:
                del self.by_edge[frozenset(e)]
        for t in itertools.combinations(sorted(f), 3):
            s = self.by_tri[frozenset(t)]
            s.discard(f)
            if not s:
                del self.by_tri[frozenset(t)]

    def nvertices(self):
        return len(self.by_vertex)

    def try_remove_vertex(self, v):
        star = self.by_vertex[v]
        if len(star) != 4:
            return False
        rest = frozenset().union(*star) - {v}
        if len(rest) != 4 or rest in self.facets:
            return False
        for f in list(star):
            self.remove(f)
        self.add(rest)
        return True

    def try_edge_collapse(self, e):
        """3-2 move on an edge of degree 3."""
        star = self.by_edge.get(e)
        if not star or len(star) != 3:
            return False
        tri = frozenset().union(*star) - e
        if len(tri) != 3 or tri in self.by_tri:
            return False
        a, b = sorted(e)
        for f in list(star):
            self.remove(f)
        self.add(tri | {a})
        self.add(tri | {b})
        return True

    def try_triangle_flip(self, t):
        """2-3 move on an interior triangle."""
        star = self.by_tri.get(t)
        if not star or len(star) != 2:
            return False
        f, h = sorted(star, key=sorted)
        a = next(iter(f - t))
        b = next(iter(h - t))
        if frozenset((a, b)) in self.by_edge:
            return False
        self.remove(f)
        self.remove(h)
        for x in itertools.combinations(sorted(t), 2):
            self.add(frozenset(x) | {a, b})
        return True


def reduce_vertices(facets, rng, target):
    c = Complex3(facets)
    stall = 0
    while c.nvertices() > target:
        progress = False
        for v in sorted(c.by_vertex):
            if c.try_remove_vertex(v):
                progress = True
        if progress:
            stall = 0
            continue
        # lower the degree of some vertex by collapsing degree-3 edges at it
        edges = sorted(c.by_edge, key=sorted)
        rng.shuffle(edges)
        collapsed = 0
        for e in edges:
            if e in c.by_edge and c.try_edge_collapse(e):
                collapsed += 1
        if collapsed:
            stall = 0
            continue
        stall += 1
        tris = sorted(c.by_tri, key=sorted)
        rng.shuffle(tris)
        flips = 0
        for t in tris:
            if flips >= 1 + stall // 10:
                break
            if t in c.by_tri and c.try_triangle_flip(t):
                flips += 1
        if stall % 200 == 0:
            print("vertices", c.nvertices(), "facets", len(c.facets), "stall", stall, file=sys.stderr)
        if stall > 20000:
            break
    return c.facets


def main():
    facets = quotient_second_subdivision()
    print("second subdivision:", len({v for f in facets for v in f}), "vertices", file=sys.stderr)
    facets = reduce_vertices(facets, random.Random(20240501), TARGET_VERTICES)
    labels = {v: i + 1 for i, v in enumerate(sorted({v for f in facets for v in f}))}
    out = sorted(sorted(labels[v] for v in f) for f in facets)
    print("# Poincare homology sphere S^3 / I*: %d vertices, %d facets." % (len(labels), len(out)))
    print("# Generated by tools/poincare_sphere.py: the quotient of the 600-cell by the")
    print("# binary icosahedral group, subdivided twice and reduced by bistellar moves.")
    for f in out:
        print(" ".join(str(v) for v in f))


if __name__ == "__main__":
    main()
