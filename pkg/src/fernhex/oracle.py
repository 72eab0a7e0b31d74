"""Exact tiling counts by brute force.

Two independent backends:

* ``profile``: strip-by-strip transfer DP.  The state is the set of down
  triangles in the current strip already paired with the up triangle above.
* ``det``: Kasteleyn-style signed bipartite adjacency matrix, signs found by
  solving the face parity conditions over GF(2), determinant by Bareiss
  elimination.
"""

from __future__ import annotations

import math
from collections import defaultdict, namedtuple

from .lattice import Region, is_up, neighbours, rotate60

DEFAULT_MAX_AREA = 200
# above this area the determinant backend is usually faster
AUTO_PROFILE_AREA = 200

Lozenge = namedtuple("Lozenge", "first second")


class AreaCeilingExceeded(RuntimeError):
    pass


class LimitExceeded(RuntimeError):
    pass


def count_tilings(r: Region, backend: str = "profile", max_area: int = DEFAULT_MAX_AREA) -> int:
    if max_area is not None and len(r) > max_area:
        raise AreaCeilingExceeded(f"region has {len(r)} triangles, ceiling is {max_area}")
    if not r.is_balanced():
        return 0
    if backend == "auto":
        backend = "profile" if len(r) <= AUTO_PROFILE_AREA else "det"
    if backend in ("profile", "profile_dp"):
        return count_profile(r.cells)
    if backend in ("det", "signed_determinant"):
        return count_det(r.cells)
    raise ValueError(f"unknown backend {backend!r}")


# -- profile DP ----------------------------------------------------------------

def _strip_width(cells) -> int:
    per = defaultdict(int)
    for h, _ in cells:
        per[h] += 1
    return max(per.values(), default=0)


def _best_orientation(cells):
    """Rotate by 0, 60 or 120 degrees to get the narrowest strips."""
    best = frozenset(cells)
    cur = Region(cells)
    w = _strip_width(best)
    for _ in range(2):
        cur = rotate60(cur)
        w2 = _strip_width(cur.cells)
        if w2 < w:
            best, w = cur.cells, w2
    return best


def count_profile(cells) -> int:
    cells = _best_orientation(cells)
    if not cells:
        return 1
    strips = defaultdict(list)
    for h, k in cells:
        strips[h].append(k)
    hs = sorted(strips, reverse=True)
    # incoming masks are sets of k, stored as frozensets for clarity
    states = {frozenset(): 1}
    for h in range(hs[0], hs[-1] - 1, -1):
        ks = sorted(strips.get(h, ()))
        row = set(ks)
        below = set(strips.get(h - 1, ()))
        new = defaultdict(int)
        for inc, cnt in states.items():
            if not inc <= row:
                continue
            for out, ways in _strip_moves(h, ks, row, below, inc).items():
                new[out] += cnt * ways
        states = new
        if not states:
            return 0
    return states.get(frozenset(), 0)


def _strip_moves(h, ks, row, below, inc):
    """All ways to finish strip h given the cells already covered from above.

    Returns {set of down cells of strip h-1 covered from this strip: ways}.
    """
    # state: (carry into k, covered-below tuple) -> ways
    cur = {(None, ()): 1}
    for k in ks:
        up = (h + k) % 2 == 1
        nxt = defaultdict(int)
        for (carry, out), w in cur.items():
            taken = k in inc
            if carry is not None:
                if carry != k or taken:
                    continue
                nxt[(None, out)] += w
                continue
            if taken:
                nxt[(None, out)] += w
                continue
            if k + 1 in row and k + 1 not in inc:
                nxt[(k + 1, out)] += w
            if up and k in below:
                nxt[(None, out + (k,))] += w
        cur = nxt
        if not cur:
            return {}
    res = defaultdict(int)
    for (carry, out), w in cur.items():
        if carry is None:
            res[frozenset(out)] += w
    return res


# -- signed determinant ------------------------------------------------------

def _adjacency(cells):
    adj = {c: set() for c in cells}
    for c in cells:
        for d in neighbours(c):
            if d in adj:
                adj[c].add(d)
    return adj


def _remove_vertex(adj, v):
    for u in adj.pop(v):
        adj[u].discard(v)


def _components(adj, skip_edge=None):
    seen = set()
    comps = []
    for s in adj:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if skip_edge and {u, v} == skip_edge:
                    continue
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    stack.append(v)
        comps.append(comp)
    return comps


def _bridges(adj):
    """Bridges of an undirected graph (iterative low-link)."""
    disc, low = {}, {}
    out = []
    t = 0
    for root in adj:
        if root in disc:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for v in it:
                if v == parent:
                    continue
                if v in disc:
                    low[u] = min(low[u], disc[v])
                else:
                    disc[v] = low[v] = t
                    t += 1
                    stack.append((v, u, iter(adj[v])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        out.append((parent, u))
    return out


def _reduce(adj):
    """Strip forced pairs and bridges.  Returns False if no tiling exists."""
    while True:
        changed = True
        while changed:
            changed = False
            for v in list(adj):
                if v not in adj:
                    continue
                if not adj[v]:
                    return False
                if len(adj[v]) == 1:
                    (w,) = adj[v]
                    _remove_vertex(adj, v)
                    _remove_vertex(adj, w)
                    changed = True
        br = _bridges(adj)
        if not br:
            return True
        u, v = br[0]
        side = next(c for c in _components(adj, {u, v}) if u in c)
        excess = sum(1 if is_up(c) else -1 for c in side)
        if excess == 0:
            adj[u].discard(v)
            adj[v].discard(u)
        elif excess == (1 if is_up(u) else -1):
            _remove_vertex(adj, u)
            _remove_vertex(adj, v)
        else:
            return False


def _pos(c):
    h, k = c
    return (k, 3 * h + (1 if is_up(c) else 2))


def _faces(adj):
    """Faces of the straight-line embedding as lists of directed edges."""
    order = {}
    for v, nb in adj.items():
        x0, y0 = _pos(v)
        order[v] = sorted(nb, key=lambda w: math.atan2(_pos(w)[1] - y0, _pos(w)[0] - x0))
    used = set()
    faces = []
    for v in adj:
        for w in adj[v]:
            if (v, w) in used:
                continue
            face = []
            e = (v, w)
            while e not in used:
                used.add(e)
                face.append(e)
                a, b = e
                ring = order[b]
                i = ring.index(a)
                e = (b, ring[i - 1])   # next edge clockwise from b->a
            faces.append(face)
    return faces


def _signed_area(face):
    s = 0
    pts = [_pos(a) for a, _ in face]
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return s


def _solve_gf2(rows, nvars):
    """rows: list of (bitmask, rhs).  Returns one solution as a bitmask."""
    pivots = {}
    for mask, rhs in rows:
        for p, (pm, pr) in pivots.items():
            if mask >> p & 1:
                mask ^= pm
                rhs ^= pr
        if mask == 0:
            if rhs:
                raise ArithmeticError("face parity system is inconsistent")
            continue
        p = mask.bit_length() - 1
        for q in list(pivots):
            qm, qr = pivots[q]
            if qm >> p & 1:
                pivots[q] = (qm ^ mask, qr ^ rhs)
        pivots[p] = (mask, rhs)
    sol = 0
    for p, (pm, pr) in pivots.items():
        # free variables are zero, so the pivot takes the rhs
        if pr:
            sol |= 1 << p
    return sol


def bareiss_det(M):
    """Exact determinant of a square integer matrix (fraction-free)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def _count_block(comp, adj) -> int:
    ups = [c for c in comp if is_up(c)]
    downs = [c for c in comp if not is_up(c)]
    if len(ups) != len(downs):
        return 0
    if not ups:
        return 1
    sub = {v: adj[v] for v in comp}
    edges = {}
    for u in ups:
        for d in sub[u]:
            edges[(u, d)] = len(edges)
    rows = []
    faces = _faces(sub)
    for face in faces:
        if _signed_area(face) <= 0:
            continue   # the outer face
        mask = 0
        for a, b in face:
            key = (a, b) if is_up(a) else (b, a)
            mask ^= 1 << edges[key]
        half = len(face) // 2
        rows.append((mask, (half + 1) % 2))
    sol = _solve_gf2(rows, len(edges))
    ui = {u: i for i, u in enumerate(ups)}
    di = {d: i for i, d in enumerate(downs)}
    M = [[0] * len(downs) for _ in ups]
    for (u, d), e in edges.items():
        M[ui[u]][di[d]] = -1 if sol >> e & 1 else 1
    return abs(bareiss_det(M))


def count_det(cells) -> int:
    adj = _adjacency(cells)
    if not _reduce(adj):
        return 0
    total = 1
    for comp in _components(adj):
        total *= _count_block(comp, adj)
        if total == 0:
            return 0
    return total


# -- enumeration ---------------------------------------------------------------

def iter_tilings(r: Region):
    """Yield tilings one at a time as frozensets of Lozenge(up, down)."""
    cells = set(r.cells)
    if not r.is_balanced():
        return
    order = sorted(cells, key=lambda c: (-c[0], c[1]))
    chosen = []
    free = set(cells)

    def rec(i):
        while i < len(order) and order[i] not in free:
            i += 1
        if i == len(order):
            yield frozenset(chosen)
            return
        c = order[i]
        h, k = c
        partners = [(h, k + 1)]
        if is_up(c):
            partners.append((h - 1, k))
        for d in partners:
            if d in free:
                free.discard(c)
                free.discard(d)
                chosen.append(Lozenge(c, d) if is_up(c) else Lozenge(d, c))
                yield from rec(i + 1)
                chosen.pop()
                free.add(c)
                free.add(d)

    yield from rec(0)


def first_tiling(r: Region):
    """One tiling of ``r``, or None if it has none."""
    return next(iter_tilings(r), None)


def enumerate_tilings(r: Region, limit: int = 1000):
    """List every tiling; raises LimitExceeded past ``limit`` of them."""
    out = []
    for t in iter_tilings(r):
        if len(out) >= limit:
            raise LimitExceeded(f"more than {limit} tilings")
        out.append(t)
    return out
