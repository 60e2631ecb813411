"""Label combinatorics of cyclic polytopes.

Vertices of C(n, d) are the integer labels 1..n sitting on the moment curve;
everything in this module is pure bookkeeping on sorted label tuples.  The
geometric meaning of each predicate is pinned down by the exact-arithmetic
oracles in `geometry` and the agreement tests between the two routes.
"""

from itertools import combinations

EVEN = "even"
ODD = "odd"
LOWER = "lower"
UPPER = "upper"


def simplex(labels):
    """Canonical simplex: strictly increasing tuple of positive int labels."""
    t = tuple(sorted(labels))
    if len(t) != len(set(t)):
        raise ValueError("repeated label in simplex: %r" % (labels,))
    if not t:
        raise ValueError("empty simplex")
    if any((not isinstance(v, int)) or v < 1 for v in t):
        raise ValueError("labels must be positive integers: %r" % (labels,))
    return t


def gap_parity(face, label):
    """Parity of a gap: count labels of `face` lying above `label`."""
    if label in face:
        raise ValueError("label %d is not a gap of %r" % (label, face))
    above = sum(1 for j in face if j > label)
    return EVEN if above % 2 == 0 else ODD


def facet_class(face, vertices, d):
    """Classify a d-subset of `vertices` as a lower/upper facet of the
    cyclic subpolytope on `vertices`, or None if it is not a facet.

    A facet is lower iff every gap is even, upper iff every gap is odd.
    """
    face = simplex(face)
    vset = frozenset(vertices)
    if len(face) != d:
        raise ValueError("facet of a d-polytope needs d vertices")
    if not set(face) <= vset:
        raise ValueError("face %r not inside vertex set" % (face,))
    if len(vset) < d + 1:
        raise ValueError("vertex set too small for dimension %d" % d)
    saw_even = saw_odd = False
    for i in vset:
        if i in face:
            continue
        if gap_parity(face, i) == EVEN:
            saw_even = True
        else:
            saw_odd = True
        if saw_even and saw_odd:
            return None
    return UPPER if saw_odd else LOWER


def gale_facets(n, d):
    """All facets of C(n, d) with their class, as {facet_tuple: class}."""
    if n < d + 1:
        raise ValueError("C(n, d) needs n >= d+1")
    out = {}
    labels = range(1, n + 1)
    for face in combinations(labels, d):
        cls = facet_class(face, labels, d)
        if cls is not None:
            out[face] = cls
    return out


def facet_split(s):
    """Partition the facets of a simplex into (lower, upper).

    For s = {s_0 < ... < s_k}, the facet s \\ {s_j} is lower iff k - j is
    even; this is the gap rule applied inside the simplex itself.
    """
    s = simplex(s)
    if len(s) < 2:
        raise ValueError("simplex needs at least 2 vertices to have facets")
    k = len(s) - 1
    lower, upper = set(), set()
    for j in range(k + 1):
        facet = s[:j] + s[j + 1:]
        (lower if (k - j) % 2 == 0 else upper).add(facet)
    return frozenset(lower), frozenset(upper)


def zig_zag_admissible(s1, s2, d):
    """Whether two simplices intersect in a common (possibly empty) face
    when realized on the moment curve in dimension d.

    True iff there is no alternating path x_1 < ... < x_{d+2} whose odd
    positions lie in one simplex and even positions in the other.  A label
    present in both simplices may play either role.  Computed by a two-lane
    longest-alternating-path scan over the merged labels.
    """
    a = frozenset(s1)
    b = frozenset(s2)
    best1 = best2 = 0  # longest path ending in lane 1 / lane 2
    for x in sorted(a | b):
        n1 = best2 + 1 if x in a else 0
        n2 = best1 + 1 if x in b else 0
        if n1 > best1:
            best1 = n1
        if n2 > best2:
            best2 = n2
    return max(best1, best2) <= d + 1


def precedes(s, sp):
    """Immediate below-ness: s and sp share a facet that is upper in s and
    lower in sp (so sp sits just above s across their common wall)."""
    s = simplex(s)
    sp = simplex(sp)
    if len(s) != len(sp):
        return False
    shared = set(s) & set(sp)
    if len(shared) != len(s) - 1:
        return False
    lo_s, up_s = facet_split(s)
    lo_p, _ = facet_split(sp)
    f = tuple(sorted(shared))
    return f in up_s and f in lo_p
