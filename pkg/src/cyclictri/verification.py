"""Mechanical checks of the structural facts the flip and height orders are
supposed to satisfy: the suspension-map hypotheses, connecting sets of
(d+1)-simplices witnessing flip-order comparability, monotonicity of the
terminal simplex, and a brute-force enumeration oracle.
"""

from collections import deque
from itertools import combinations

from . import geometry, simplices, triangulations as tri
from .posets import build_s1, build_s2


def _poset(n, d, order, cap=None):
    if order == "s1":
        return build_s1(n, d, cap)
    if order == "s2":
        return build_s2(n, d, cap)
    raise ValueError("order must be s1 or s2, got %r" % (order,))


def verify_suspension(n, d, order="s1", cap=None):
    """Check the suspension-map hypotheses on the full poset for (n, d).

    f contracts the last vertex, i and j insert it back at the bottom and the
    top; green/red is membership parity of the terminal simplex.  Each entry
    of the report carries a pass flag and the first witness on failure.
    """
    if n <= d + 2:
        raise ValueError("need n > d+2 so the smaller poset is nontrivial")
    p = _poset(n, d, order, cap)
    q = _poset(n - 1, d, order, cap)
    p_elems = [p.data[k] for k in p.elements]
    q_elems = [q.data[k] for k in q.elements]
    f_of = {t.key(): tri.contract_last(t) for t in p_elems}
    i_of = {t.key(): tri.insert_bottom(t) for t in q_elems}
    j_of = {t.key(): tri.insert_top(t) for t in q_elems}
    report = {"n": n, "d": d, "order": order}

    def entry(name, witness):
        report[name] = {"pass": witness is None, "witness": witness}

    w = None
    green = {t.key() for t in p_elems if tri.color(t) == tri.GREEN}
    for a in range(len(p_elems)):
        if w:
            break
        if p.elements[a] not in green:
            continue
        m = p.down[a] & ~(1 << a)
        b = 0
        while m:
            if m & 1 and p.elements[b] not in green:
                w = (p.elements[b], p.elements[a])
                break
            m >>= 1
            b += 1
    entry("green_ideal", w)

    w = next((t.key() for t in q_elems
              if tri.contract_last(i_of[t.key()]) != t), None)
    entry("f_i_identity", w)
    w = next((t.key() for t in q_elems
              if tri.contract_last(j_of[t.key()]) != t), None)
    entry("f_j_identity", w)

    w = next((t.key() for t in q_elems
              if tri.color(i_of[t.key()]) != tri.GREEN), None)
    if w is None:
        w = next((t.key() for t in q_elems
                  if tri.color(j_of[t.key()]) != tri.RED), None)
    entry("image_colors", w)

    w = None
    for t in p_elems:
        low = i_of[f_of[t.key()].key()]
        high = j_of[f_of[t.key()].key()]
        if not p.le_keys(low.key(), t.key()) or not p.le_keys(t.key(), high.key()):
            w = t.key()
            break
    entry("sandwich", w)

    bot_p, top_p = tri.bottom(n, d), tri.top(n, d)
    bot_q, top_q = tri.bottom(n - 1, d), tri.top(n - 1, d)
    w = next((t.key() for t in p_elems
              if f_of[t.key()] == bot_q and t != bot_p and t.key() in green), None)
    entry("fiber_bottom", w)
    w = next((t.key() for t in p_elems
              if f_of[t.key()] == top_q and t != top_p and t.key() not in green),
             None)
    entry("fiber_top", w)

    # order preservation of the three maps, checked because the interval
    # conditions above only make sense for monotone data
    w = None
    for a in range(len(p_elems)):
        m = p.up[a] & ~(1 << a)
        b = 0
        while m:
            if m & 1 and not q.le_keys(f_of[p.elements[a]].key(),
                                       f_of[p.elements[b]].key()):
                w = (p.elements[a], p.elements[b])
                break
            m >>= 1
            b += 1
        if w:
            break
    entry("f_monotone", w)
    for name, mapping in (("i_monotone", i_of), ("j_monotone", j_of)):
        w = None
        for a in range(len(q_elems)):
            m = q.up[a] & ~(1 << a)
            b = 0
            while m:
                if m & 1 and not p.le_keys(mapping[q.elements[a]].key(),
                                           mapping[q.elements[b]].key()):
                    w = (q.elements[a], q.elements[b])
                    break
                m >>= 1
                b += 1
            if w:
                break
        entry(name, w)

    report["pass"] = all(v["pass"] for k, v in report.items()
                         if isinstance(v, dict))
    return report


def find_connecting_set(t, t2, order="s1"):
    """Union of the flip simplices along a shortest increasing-flip path from
    t to t2, or None when t2 is not reachable (t is not below t2)."""
    if order != "s1":
        raise ValueError("connecting sets witness the flip order only")
    if (t.n, t.d) != (t2.n, t2.d):
        raise ValueError("triangulations on different polytopes")
    if t == t2:
        return frozenset()
    frontier = deque([t])
    back = {t: (None, None)}
    while frontier:
        cur = frontier.popleft()
        for cand in tri.increasing_flips(cur):
            nxt = tri.apply_flip(cur, cand)
            if nxt in back:
                continue
            back[nxt] = (cur, cand)
            if nxt == t2:
                flips = []
                node = nxt
                while back[node][0] is not None:
                    node, cand = back[node]
                    flips.append(cand)
                return frozenset(flips)
            frontier.append(nxt)
    return None


def verify_connecting_set(t, t2, tilde):
    """Check the six conditions making a set of (d+1)-simplices a witness
    for t <= t2 in the flip order; returns the first failure if any."""
    d = t.d
    tilde = sorted(tuple(sorted(s)) for s in tilde)
    for s in tilde:
        if len(s) != d + 2 or len(set(s)) != d + 2:
            raise ValueError("connecting sets consist of (d+2)-vertex simplices")
    result = {"pass": True, "condition": None, "witness": None}

    def fail(cond, witness):
        result.update({"pass": False, "condition": cond, "witness": witness})
        return result

    for a, b in combinations(tilde, 2):
        if not simplices.zig_zag_admissible(a, b, d + 1):
            return fail("i", (a, b))
    for s in tilde:
        lower, upper = simplices.facet_split(s)
        for face in lower:
            if not any(set(face) < set(o) for o in tilde if o != s) \
                    and face not in t:
                return fail("ii", (s, face))
        for face in upper:
            if not any(set(face) < set(o) for o in tilde if o != s) \
                    and face not in t2:
                return fail("iii", (s, face))
    only_t = t._set - t2._set
    only_t2 = t2._set - t._set
    for face in sorted(only_t):
        if not any(face in simplices.facet_split(s)[0] for s in tilde):
            return fail("iv", face)
    for face in sorted(only_t2):
        if not any(face in simplices.facet_split(s)[1] for s in tilde):
            return fail("v", face)
    for face in sorted(only_t | only_t2):
        if sum(1 for s in tilde if set(face) < set(s)) > 1:
            return fail("vi", face)
    return result


def connecting_a(t):
    """The witness set for i(f(t)) <= t: members containing the last vertex
    but not the second-to-last, widened by the second-to-last."""
    n = t.n
    return frozenset(tuple(sorted(set(s) | {n - 1}))
                     for s in t if n in s and n - 1 not in s)


def connecting_b(t):
    """The witness set for t <= j(f(t)): members containing the
    second-to-last vertex but not the last, widened by the last."""
    n = t.n
    return frozenset(tuple(sorted(set(s) | {n}))
                     for s in t if n - 1 in s and n not in s)


def verify_s0_monotone(n, d, order="s1", cap=None):
    """Terminal-simplex membership is monotone along the order: upward for
    even d, downward for odd d.  Returns pass or the first witness pair."""
    p = _poset(n, d, order, cap)
    s0 = tri.terminal_simplex(n, d)
    has = [s0 in p.data[k] for k in p.elements]
    for a in range(len(p.elements)):
        m = p.up[a] & ~(1 << a)
        b = 0
        while m:
            if m & 1:
                ok = (not has[a] or has[b]) if d % 2 == 0 else \
                    (not has[b] or has[a])
                if not ok:
                    return {"pass": False,
                            "witness": (p.elements[a], p.elements[b])}
            m >>= 1
            b += 1
    return {"pass": True, "witness": None}


def brute_force_triangulations(n, d, max_candidates=25):
    """Independent enumeration oracle: depth-first search for sets of
    pairwise-admissible d-simplices with exact total volume, validating each
    hit.  Guarded, since the search is exponential in the candidate count."""
    cands = list(combinations(range(1, n + 1), d + 1))
    if len(cands) > max_candidates:
        raise ValueError("%d candidate simplices exceed the guard %d"
                         % (len(cands), max_candidates))
    vols = [geometry.normalized_volume(s, d) for s in cands]
    target = geometry.cyclic_volume(n, d)
    ok = [[simplices.zig_zag_admissible(a, b, d) for b in cands] for a in cands]
    found = []

    def grow(start, chosen, remaining):
        if remaining == 0:
            if tri.validate(chosen, n, d) is None:
                found.append(tri.make_triangulation(chosen, n, d))
            return
        for k in range(start, len(cands)):
            if vols[k] <= remaining and all(ok[k][j] for j in chosen_idx):
                chosen_idx.append(k)
                grow(k + 1, chosen + [cands[k]], remaining - vols[k])
                chosen_idx.pop()

    chosen_idx = []
    grow(0, [], target)
    return tuple(sorted(found, key=lambda t: t.key()))
