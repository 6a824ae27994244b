"""Shared test helpers: independent brute-force oracles.

Everything here is deliberately naive. These functions exist to check
the real implementations against methods too simple to be wrong, so they
must not share code or ideas with the modules under test.
"""

from __future__ import annotations

import itertools

from raagcrypt.graphs import SimplicialGraph
from raagcrypt.words import Word, free_reduce


def brute_force_three_colorable(g: SimplicialGraph) -> bool:
    """Try all 3^n assignments; True iff some makes every edge bichromatic."""
    n = len(g.vertices)
    edges = [(g.index_of(u), g.index_of(v)) for u, v in g.edge_list()]
    for colors in itertools.product(range(3), repeat=n):
        if all(colors[i] != colors[j] for i, j in edges):
            return True
    return False


def brute_force_homomorphism_exists(source: SimplicialGraph, target: SimplicialGraph) -> bool:
    """Try all |T|^n assignments against the strict edge condition."""
    src = source.vertices
    edges = source.edge_list()
    for images in itertools.product(target.vertices, repeat=len(src)):
        f = dict(zip(src, images))
        if all(target.has_edge(f[u], f[v]) for u, v in edges):
            return True
    return False


def _syllable_reduce_free_product(word, left_gens: set[str]) -> bool:
    """Word problem in (Z^2) * Z style free products: repeatedly drop
    maximal one-factor syllables that evaluate to the factor identity.
    ``left_gens`` generate the abelian factor; the rest is the other factor.
    Returns True iff the word is trivial."""
    letters = list(word)
    while True:
        if not letters:
            return True
        # split into maximal same-factor runs
        runs = []
        for gen, sign in letters:
            side = gen in left_gens
            if runs and runs[-1][0] == side:
                runs[-1][1].append((gen, sign))
            else:
                runs.append([side, [(gen, sign)]])
        dropped = False
        out = []
        for side, run in runs:
            if side:
                sums = {}
                for gen, sign in run:
                    sums[gen] = sums.get(gen, 0) + sign
                if any(sums.values()):
                    out.extend(run)
                else:
                    dropped = True
            else:
                reduced = free_reduce(tuple(run))
                if reduced:
                    out.extend(reduced)
                else:
                    dropped = True
        if not dropped:
            return False
        letters = out


def structure_is_trivial(g: SimplicialGraph, w: Word) -> bool:
    """Exact triviality for graphs with at most 3 vertices, decided by the
    direct/free product structure of the group rather than by any search.

    Shapes: free groups (free reduction), free abelian (exponent sums),
    path on 3 vertices (center times free group of rank 2), one edge plus
    an isolated vertex (free product of Z^2 and Z).
    """
    n = len(g.vertices)
    assert n <= 3, "structure oracle only covers up to 3 vertices"
    edges = g.edge_list()
    sums: dict[str, int] = {}
    for gen, sign in w:
        sums[gen] = sums.get(gen, 0) + sign

    if len(edges) == n * (n - 1) // 2:  # complete: free abelian
        return not any(sums.values())
    if not edges:  # empty: free
        return not free_reduce(w)
    if n == 3 and len(edges) == 2:  # path: center x F2
        degree = {v: 0 for v in g.vertices}
        for u, v in edges:
            degree[u] += 1
            degree[v] += 1
        center = max(degree, key=degree.get)
        if sums.get(center, 0) != 0:
            return False
        projected = tuple(l for l in w if l[0] != center)
        return not free_reduce(projected)
    # one edge, one isolated vertex: Z^2 * Z
    assert n == 3 and len(edges) == 1
    left = {edges[0][0], edges[0][1]}
    return _syllable_reduce_free_product(free_reduce(w), left)


def quadratic_is_trivial(g: SimplicialGraph, w: Word) -> bool:
    """Triviality by repeated deletion of cancelable pairs: x^e ... x^-e
    where everything in between commutes with x. Deletion preserves the
    group element and a stuck nonempty word is never trivial, so greedy
    deletion is exact. Quadratic, but reaches word lengths the
    breadth-first oracle cannot."""
    letters = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters)):
            gi, si = letters[i]
            adj = g.adjacency[gi]
            for j in range(i + 1, len(letters)):
                gj, sj = letters[j]
                if gj == gi:
                    if sj == -si:
                        del letters[j]
                        del letters[i]
                        changed = True
                    break  # same-sign occurrence blocks the scan
                if gj not in adj:
                    break  # non-commuting letter blocks the scan
            if changed:
                break
    return not letters


def normal_closure_ball(g: SimplicialGraph, cap: int) -> set[Word]:
    """All freely reduced words of length <= cap reachable from the empty
    word by inserting cancelling pairs or defining commutators anywhere.
    Every member is a product of conjugates of relators, hence trivial."""
    inserts: list[Word] = []
    for v in g.vertices:
        inserts.append(((v, 1), (v, -1)))
        inserts.append(((v, -1), (v, 1)))
    for a, b in g.edge_list():
        inserts.append(((a, 1), (b, 1), (a, -1), (b, -1)))
        inserts.append(((b, 1), (a, 1), (b, -1), (a, -1)))
    ball: set[Word] = {()}
    frontier: list[Word] = [()]
    while frontier:
        base = frontier.pop()
        for piece in inserts:
            for k in range(len(base) + 1):
                candidate = free_reduce(base[:k] + piece + base[k:])
                if len(candidate) <= cap and candidate not in ball:
                    ball.add(candidate)
                    frontier.append(candidate)
    return ball
