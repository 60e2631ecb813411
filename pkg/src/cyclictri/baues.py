"""Polytopal subdivisions of a cyclic polytope (d <= 3), the map from a
subdivision to the interval of triangulations refining it, the inverse
construction from coatomic intervals, and the refinement poset.

Cells are vertex subsets; a subdivision is valid when cells are large enough,
pairwise meet in a common face (combinatorially: their intersection lies in a
facet of each cell, and cells are simplicial so any such subset spans a
face), the glued bottom triangulations of the cells form a triangulation of
the whole polytope, and cell volumes sum to the hull volume.  Together these
force the cell hulls to meet face to face.
"""

import json
from itertools import combinations
from math import ceil

from . import geometry, simplices, triangulations as tri
from .posets import FinitePoset, build_s2, interval_poset


class Subdivision:
    """Cells of a polytopal subdivision of C(n, d), canonically sorted."""

    __slots__ = ("n", "d", "cells")

    def __init__(self, n, d, cells):
        self.n = n
        self.d = d
        self.cells = tuple(sorted(tuple(sorted(set(c))) for c in cells))

    def key(self):
        return json.dumps({"n": self.n, "d": self.d,
                           "cells": [list(c) for c in self.cells]},
                          separators=(",", ":"))

    @staticmethod
    def from_json(text):
        doc = json.loads(text)
        return Subdivision(doc["n"], doc["d"], doc["cells"])

    def is_proper(self):
        return self.cells != (tuple(range(1, self.n + 1)),)

    def __eq__(self, other):
        return isinstance(other, Subdivision) and \
            (self.n, self.d, self.cells) == (other.n, other.d, other.cells)

    def __hash__(self):
        return hash((self.n, self.d, self.cells))

    def __repr__(self):
        return "Subdivision(%d, %d, %s)" % (self.n, self.d, list(self.cells))


def _relabel(t, labels):
    return tuple(tuple(labels[i - 1] for i in s) for s in t)


def cell_bottom(labels, d):
    """Bottom triangulation of the cyclic subpolytope on the given labels."""
    labels = sorted(labels)
    return _relabel(tri.bottom(len(labels), d).simplices, labels)


def cell_top(labels, d):
    labels = sorted(labels)
    return _relabel(tri.top(len(labels), d).simplices, labels)


def _cell_faces(labels, d):
    """Vertex sets of the proper faces of the subpolytope on the labels:
    every subset of a facet (the polytope is simplicial)."""
    labels = sorted(labels)
    out = set()
    for face in simplices.gale_facets(len(labels), d):
        out.add(frozenset(labels[i - 1] for i in face))
    return out


def validate_subdivision(cells, n, d):
    """None when the cells form a polytopal subdivision of C(n, d), else the
    first violation found."""
    if isinstance(cells, Subdivision):
        if (cells.n, cells.d) != (n, d):
            return tri.Violation("shape", cells, "ambient (n, d) mismatch")
        cells = cells.cells
    cells = [tuple(sorted(c)) for c in cells]
    if not cells:
        return tri.Violation("shape", (), "no cells")
    if len(set(cells)) != len(cells):
        return tri.Violation("shape", cells, "repeated cell")
    for c in cells:
        if len(set(c)) != len(c) or len(c) < d + 1:
            return tri.Violation("cell-size", c,
                                 "cell needs at least %d distinct vertices" % (d + 1))
        if c[0] < 1 or c[-1] > n:
            return tri.Violation("cell-size", c, "vertex label out of range")
    for a, b in combinations(range(len(cells)), 2):
        ca, cb = set(cells[a]), set(cells[b])
        if ca <= cb or cb <= ca:
            return tri.Violation("nesting", (cells[a], cells[b]),
                                 "one cell contains another")
        w = ca & cb
        if not w:
            continue
        for c in (cells[a], cells[b]):
            if not any(w <= f for f in _cell_faces(c, d)):
                return tri.Violation(
                    "face-to-face", (cells[a], cells[b]),
                    "shared vertices do not span a face of cell %s" % (c,))
    glued = set()
    for c in cells:
        glued.update(cell_bottom(c, d))
    v = tri.validate(glued, n, d)
    if v is not None:
        return tri.Violation("refinement", v.witness,
                             "glued cell triangulations fail: %s" % v.message)
    total = 0
    for c in cells:
        total += sum(geometry.normalized_volume(s, d) for s in cell_bottom(c, d))
    if total != geometry.cyclic_volume(n, d):
        return tri.Violation("coverage", cells,
                             "cell volumes sum to %d, hull needs %d" %
                             (total, geometry.cyclic_volume(n, d)))
    return None


def make_subdivision(n, d, cells):
    v = validate_subdivision(cells, n, d)
    if v is not None:
        raise ValueError("invalid subdivision: %s (%s)" % (v.message, v.rule))
    return Subdivision(n, d, cells)


def refines(t, delta):
    """Does every simplex of the triangulation sit inside some cell?"""
    return all(any(set(s) <= set(c) for c in delta.cells) for s in t)


def refinement_leq(d1, d2):
    """d1 refines d2: every cell of d1 is contained in a cell of d2."""
    if (d1.n, d1.d) != (d2.n, d2.d):
        raise ValueError("subdivisions live on different polytopes")
    return all(any(set(a) <= set(b) for b in d2.cells) for a in d1.cells)


def phi(delta):
    """The interval [T, T'] of triangulations refining the subdivision:
    T glues cell bottoms, T' glues cell tops.  Requires a proper subdivision
    of dimension at most 3."""
    if delta.d > 3:
        raise ValueError("interval map implemented for d <= 3 only")
    v = validate_subdivision(delta, delta.n, delta.d)
    if v is not None:
        raise ValueError("invalid subdivision: %s" % (v.message,))
    if not delta.is_proper():
        raise ValueError("trivial subdivision maps to the improper interval")
    low = set()
    high = set()
    for c in delta.cells:
        low.update(cell_bottom(c, delta.d))
        high.update(cell_top(c, delta.d))
    t_low = tri.make_triangulation(low, delta.n, delta.d)
    t_high = tri.make_triangulation(high, delta.n, delta.d)
    mid = ceil(delta.d / 2)
    if tri.submersion_mask(t_low, mid) & ~tri.submersion_mask(t_high, mid):
        raise AssertionError("glued bottom is not below glued top")
    if t_low == tri.bottom(delta.n, delta.d) and \
            t_high == tri.top(delta.n, delta.d):
        raise AssertionError("proper subdivision mapped to the improper interval")
    return t_low, t_high


def _coatomic_diagnostic(s2, i, j):
    """None when the interval [i, j] is coatomic (the meet of its coatoms is
    its bottom), else a dict naming the failing meet."""
    inner = s2.up[i] & s2.down[j]
    coatoms = []
    m = inner & ~(1 << j)
    k = 0
    while m:
        if m & 1:
            between = s2.up[k] & s2.down[j] & ~(1 << k) & ~(1 << j)
            if between & inner == 0:
                coatoms.append(k)
        m >>= 1
        k += 1
    cur = j if not coatoms else None
    for c in coatoms:
        cur = c if cur is None else s2.meet(cur, c)
    if cur != i:
        return {"coatoms": [s2.elements[c] for c in coatoms],
                "meet": None if cur is None else s2.elements[cur]}
    return None


def interval_to_subdivision(t_low, t_high, s2=None, check_coatomic=True):
    """Recover the subdivision whose refinements are exactly [t_low, t_high].

    Components of the graph on t_high's simplices, joined when they share a
    wall that is not a face of t_low, become the cells.  Rejects non-coatomic
    intervals (for which no such subdivision exists) with a diagnostic.
    """
    n, d = t_high.n, t_high.d
    if d > 3:
        raise ValueError("interval map implemented for d <= 3 only")
    if (t_low.n, t_low.d) != (n, d):
        raise ValueError("interval endpoints on different polytopes")
    if s2 is None:
        s2 = build_s2(n, d)
    i, j = s2.index[t_low.key()], s2.index[t_high.key()]
    if not s2.le(i, j):
        raise ValueError("endpoints are not ordered")
    if i == s2.bottom() and j == s2.top():
        raise ValueError("improper interval")
    if check_coatomic:
        diag = _coatomic_diagnostic(s2, i, j)
        if diag is not None:
            raise ValueError("interval is not coatomic; coatom meet is %s"
                             % (diag["meet"],))
    walls_low = set()
    for s in t_low:
        for f in combinations(s, d):
            walls_low.add(f)
    members = sorted(t_high)
    parent = list(range(len(members)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in combinations(range(len(members)), 2):
        shared = tuple(sorted(set(members[a]) & set(members[b])))
        if len(shared) == d and shared not in walls_low:
            parent[find(a)] = find(b)
    comps = {}
    for k, s in enumerate(members):
        comps.setdefault(find(k), set()).update(s)
    cells = [tuple(sorted(c)) for c in comps.values()]
    if d == 1:
        # triangulations of a segment may skip interior vertices, so cells
        # must pick up the vertices the fine end uses inside each span
        used = {v for s in t_low for v in s}
        cells = [tuple(sorted(set(c) | {v for v in used if c[0] < v < c[-1]}))
                 for c in cells]
    delta = make_subdivision(n, d, cells)
    back = phi(delta)
    if back != (t_low, t_high):
        raise AssertionError("interval does not come from a subdivision: "
                             "round trip gave %s" % (back,))
    return delta


def baues_poset(n, d, cap=None):
    """Proper polytopal subdivisions of C(n, d), ordered by refinement.

    Built from the proper coatomic intervals of the height order; the
    refinement order is checked against interval inclusion pair by pair.
    """
    if d > 3:
        raise ValueError("subdivision poset implemented for d <= 3 only")
    s2 = build_s2(n, d, cap)
    coat = interval_poset(s2, "proper_coatomic")
    entries = []
    for key in coat.elements:
        i, j = coat.data[key]
        t_low = s2.data[s2.elements[i]]
        t_high = s2.data[s2.elements[j]]
        delta = interval_to_subdivision(t_low, t_high, s2, check_coatomic=False)
        entries.append((delta.key(), delta, i, j))
    entries.sort(key=lambda e: e[0])
    if len({e[0] for e in entries}) != len(entries):
        raise AssertionError("interval map is not injective")
    m = len(entries)
    up = []
    for a in range(m):
        row = 0
        for b in range(m):
            fine = refinement_leq(entries[a][1], entries[b][1])
            nested = s2.le(entries[b][2], entries[a][2]) and \
                s2.le(entries[a][3], entries[b][3])
            if fine != nested:
                raise AssertionError(
                    "refinement disagrees with interval inclusion: %s vs %s"
                    % (entries[a][0], entries[b][0]))
            if fine:
                row |= 1 << b
        up.append(row)
    p = FinitePoset([e[0] for e in entries], up)
    for key, delta, i, j in entries:
        p.data[key] = delta
    return p


def _diagonals(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1)
            if not (i == 1 and j == n)]


def _crosses(a, b):
    return (a[0] < b[0] < a[1] < b[1]) or (b[0] < a[0] < b[1] < a[1])


def _regions(cycle, diags):
    if not diags:
        return [tuple(sorted(cycle))]
    (a, b) = diags[0]
    ia, ib = cycle.index(a), cycle.index(b)
    if ia > ib:
        ia, ib = ib, ia
    side1 = cycle[ia:ib + 1]
    side2 = cycle[ib:] + cycle[:ia + 1]
    rest = diags[1:]
    d1 = [d for d in rest if set(d) <= set(side1)]
    d2 = [d for d in rest if set(d) <= set(side2)]
    if len(d1) + len(d2) != len(rest):
        raise AssertionError("crossing diagonals in a noncrossing set")
    return _regions(side1, d1) + _regions(side2, d2)


def dissection_oracle_d2(n):
    """All proper subdivisions of a convex n-gon, generated independently as
    nonempty noncrossing diagonal sets split into regions."""
    if n < 4:
        raise ValueError("need at least a quadrilateral")
    diags = _diagonals(n)
    out = []

    def grow(chosen, start):
        if chosen:
            cells = _regions(list(range(1, n + 1)), chosen)
            out.append(Subdivision(n, 2, cells))
        for k in range(start, len(diags)):
            cand = diags[k]
            if all(not _crosses(cand, c) for c in chosen):
                grow(chosen + [cand], k + 1)

    grow([], 0)
    uniq = {s.key(): s for s in out}
    if len(uniq) != len(out):
        raise AssertionError("oracle generated a subdivision twice")
    return sorted(uniq.values(), key=lambda s: s.key())


def interval_product_check(n, d, cap=None):
    """Each subdivision's interval should factor as the product of the cell
    posets: compare element counts and Mobius values multiplicatively."""
    s2 = build_s2(n, d, cap)
    p = baues_poset(n, d, cap)
    bad = []
    for key in p.elements:
        delta = p.data[key]
        t_low, t_high = phi(delta)
        i, j = s2.index[t_low.key()], s2.index[t_high.key()]
        size = bin(s2.up[i] & s2.down[j]).count("1")
        mu = s2.mobius(i, j)
        want_size = 1
        want_mu = 1
        for c in delta.cells:
            sub = build_s2(len(c), d, cap)
            want_size *= len(sub.elements)
            want_mu *= sub.mobius_bottom_top()
        if size != want_size or mu != want_mu:
            bad.append({"subdivision": key, "size": (size, want_size),
                        "mobius": (mu, want_mu)})
    return bad
