"""Order complexes and exact integral homology.

Chains of a finite poset become simplices (vertex set = poset elements); the
boundary matrices are reduced over the integers, so Betti numbers and torsion
are exact.  Free-face collapsing shrinks the complex first; the reduced Euler
characteristic is always taken from the uncollapsed face counts so it stays
an independent cross-check against the Mobius function.

The empty face is kept as a dimension -1 simplex throughout, which makes all
homology reduced and gives the empty complex H~_{-1} = Z.
"""

import json
import os
from collections import deque
from math import gcd

from .posets import ResourceBudgetError

DEFAULT_FACE_BUDGET = 2 * 10 ** 6


def _face_budget(budget):
    if budget is not None:
        return budget
    env = os.environ.get("CYCLICTRI_FACE_BUDGET")
    return int(env) if env else DEFAULT_FACE_BUDGET


class SimplicialComplex:
    """Explicit face list graded by dimension (including the empty face).

    faces_by_dim maps dim -> sorted list of vertex-index tuples; vertices are
    0..n_vertices-1 and labels, when given, name them for reports.
    """

    def __init__(self, faces_by_dim, n_vertices, labels=None):
        self.faces_by_dim = {k: sorted(v) for k, v in faces_by_dim.items() if v}
        if -1 not in self.faces_by_dim:
            self.faces_by_dim[-1] = [()]
        self.n_vertices = n_vertices
        self.labels = labels

    @property
    def dim(self):
        return max(self.faces_by_dim)

    def counts(self):
        """Face counts per dimension, empty face included at -1."""
        return {k: len(v) for k, v in sorted(self.faces_by_dim.items())}

    def euler_reduced(self):
        c = self.counts()
        return sum((-1) ** k * c[k] for k in c if k >= 0) - 1


def complex_from_maximal(faces):
    """Close a list of vertex-tuples under subsets (test helper and oracle)."""
    verts = sorted({v for f in faces for v in f})
    ind = {v: i for i, v in enumerate(verts)}
    seen = set()
    by_dim = {}
    stack = [tuple(sorted(ind[v] for v in f)) for f in faces]
    for f in stack:
        if len(f) != len(set(f)):
            raise ValueError("repeated vertex in face %r" % (f,))
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        by_dim.setdefault(len(f) - 1, []).append(f)
        for i in range(len(f)):
            stack.append(f[:i] + f[i + 1:])
    return SimplicialComplex(by_dim, len(verts), labels=verts)


def chain_counts(p, budget=None):
    """Number of chains per size (index = number of elements; entry 0 is the
    empty chain).  Raises when the running total crosses the face budget,
    naming the dimension that blew up."""
    budget = _face_budget(budget)
    n = len(p.elements)
    strict_down = [p.down[i] & ~(1 << i) for i in range(n)]
    counts = [1]
    cur = [1] * n
    total = 1
    while True:
        s = sum(cur)
        if s == 0:
            break
        total += s
        counts.append(s)
        if total > budget:
            raise ResourceBudgetError(
                "face budget %d exceeded at dimension %d" % (budget, len(counts) - 2))
        nxt = [0] * n
        for j in range(n):
            m = strict_down[j]
            i = 0
            acc = 0
            while m:
                if m & 1:
                    acc += cur[i]
                m >>= 1
                i += 1
            nxt[j] = acc
        cur = nxt
    return counts


def order_complex(p, budget=None):
    """All chains of the poset as a simplicial complex on element indices."""
    budget = _face_budget(budget)
    chain_counts(p, budget)
    n = len(p.elements)
    topo = p.topo_order()
    pos = [0] * n
    for q, i in enumerate(topo):
        pos[i] = q
    succ = []
    for i in range(n):
        ups = [j for j in range(n) if j != i and p.le(i, j)]
        ups.sort(key=lambda j: pos[j])
        succ.append(ups)
    by_dim = {-1: [()]}
    stack = [(i,) for i in sorted(range(n), key=lambda i: pos[i])]
    while stack:
        f = stack.pop()
        by_dim.setdefault(len(f) - 1, []).append(f)
        for j in succ[f[-1]]:
            stack.append(f + (j,))
    return SimplicialComplex(by_dim, n, labels=list(p.elements))


# ---------------------------------------------------------------------------
# Collapsing and Smith normal form.

def _collapse(faces_by_dim):
    """Greedy free-face collapse; returns the surviving faces per dimension.

    A face is free when it has exactly one coface of one higher dimension;
    that coface is then automatically maximal, so removing the pair keeps a
    subcomplex and preserves homology.
    """
    alive = {}
    cofaces = {}
    for k, fs in faces_by_dim.items():
        for f in fs:
            alive[f] = True
            cofaces[f] = set()
    for f in alive:
        if len(f) == 0:
            continue
        for i in range(len(f)):
            sub = f[:i] + f[i + 1:]
            cofaces[sub].add(f)
    queue = deque(f for f, cs in cofaces.items() if len(cs) == 1)
    while queue:
        f = queue.popleft()
        if not alive.get(f) or len(cofaces[f]) != 1:
            continue
        (g,) = cofaces[f]
        alive[f] = False
        alive[g] = False
        for h in (f, g):
            for i in range(len(h)):
                sub = h[:i] + h[i + 1:]
                if alive.get(sub):
                    cofaces[sub].discard(h)
                    if len(cofaces[sub]) == 1:
                        queue.append(sub)
    out = {}
    for k, fs in faces_by_dim.items():
        keep = [f for f in fs if alive[f]]
        if keep:
            out[k] = keep
    return out


def _boundary_columns(upper, index_low):
    cols = []
    for f in upper:
        col = {}
        for i in range(len(f)):
            sub = f[:i] + f[i + 1:]
            col[index_low[sub]] = 1 if i % 2 == 0 else -1
        cols.append(col)
    return cols


def _eliminate_units(cols):
    """Pivot out all +-1 entries; returns (unit_rank, residual dense matrix)."""
    live = set(range(len(cols)))
    row_cols = {}
    for c, col in enumerate(cols):
        for r in col:
            row_cols.setdefault(r, set()).add(c)
    queue = deque()
    for c, col in enumerate(cols):
        for r, v in col.items():
            if v in (1, -1):
                queue.append((r, c))
    rank = 0
    dead_rows = set()
    while queue:
        r, c = queue.popleft()
        if c not in live or r in dead_rows:
            continue
        v = cols[c].get(r)
        if v not in (1, -1):
            continue
        piv = cols[c]
        for c2 in list(row_cols.get(r, ())):
            if c2 == c or c2 not in live:
                continue
            w = cols[c2].get(r)
            if w is None:
                continue
            f = w * v
            col2 = cols[c2]
            for rr, vv in piv.items():
                nv = col2.get(rr, 0) - f * vv
                if nv:
                    col2[rr] = nv
                    row_cols.setdefault(rr, set()).add(c2)
                    if nv in (1, -1):
                        queue.append((rr, c2))
                elif rr in col2:
                    del col2[rr]
                    row_cols[rr].discard(c2)
        for rr in piv:
            row_cols.get(rr, set()).discard(c)
        live.discard(c)
        dead_rows.add(r)
        rank += 1
    rows = sorted({r for c in live for r in cols[c] if r not in dead_rows})
    rind = {r: i for i, r in enumerate(rows)}
    dense = [[0] * len(live) for _ in rows]
    for j, c in enumerate(sorted(live)):
        for r, v in cols[c].items():
            if r not in dead_rows:
                dense[rind[r]][j] = v
    return rank, dense


def _dense_snf(a):
    """Invariant factors (positive, each dividing the next) of a small dense
    integer matrix, by textbook row/column reduction."""
    a = [row[:] for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    t = 0
    while t < min(nr, nc):
        pr = pc = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pr, pc = v, i, j
        if best is None:
            break
        a[t], a[pr] = a[pr], a[t]
        for row in a:
            row[t], row[pc] = row[pc], row[t]
        while True:
            redo = False
            for i in range(t + 1, nr):
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    redo = True
                    break
            if redo:
                continue
            for j in range(t + 1, nc):
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    redo = True
                    break
            if not redo:
                break
        t += 1
    diag = [abs(a[i][i]) for i in range(t)]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[j] % diag[i]:
                    g = gcd(diag[i], diag[j])
                    diag[i], diag[j] = g, diag[i] * diag[j] // g
                    changed = True
    return sorted(diag)


class HomologyResult:
    """Reduced integral homology: betti[k] and torsion[k] per dimension."""

    def __init__(self, betti, torsion, face_counts, euler):
        self.betti = dict(betti)
        self.torsion = {k: tuple(v) for k, v in torsion.items() if v}
        self.face_counts = dict(face_counts)
        self.euler = euler

    def groups(self):
        """Nontrivial part only: {dim: (betti, torsion tuple)}."""
        out = {}
        for k in sorted(set(self.betti) | set(self.torsion)):
            b = self.betti.get(k, 0)
            t = self.torsion.get(k, ())
            if b or t:
                out[k] = (b, t)
        return out

    def is_trivial(self):
        return not self.groups()

    def is_sphere(self, k):
        return self.groups() == {k: (1, ())}

    def betti_euler(self):
        return sum((-1) ** k * b for k, b in self.betti.items() if k >= 0) - \
            self.betti.get(-1, 0)

    def to_json(self, extra=None):
        dims = {}
        top = max([k for k in self.betti] + [0])
        for k in range(-1, top + 1):
            b = self.betti.get(k, 0)
            t = list(self.torsion.get(k, ()))
            if k >= 0 or b or t:
                dims[str(k)] = {"betti": b, "torsion": t}
        doc = {"dims": dims, "euler": self.euler}
        if extra:
            doc.update(extra)
        return json.dumps(doc, separators=(",", ":"), sort_keys=True)

    def __eq__(self, other):
        return isinstance(other, HomologyResult) and self.groups() == other.groups()

    def __repr__(self):
        g = self.groups()
        if not g:
            return "HomologyResult(trivial)"
        bits = []
        for k, (b, t) in g.items():
            s = "Z^%d" % b if b != 1 else "Z"
            if b == 0:
                s = ""
            for d in t:
                s += ("+" if s else "") + "Z/%d" % d
            bits.append("H~%d=%s" % (k, s))
        return "HomologyResult(%s)" % ", ".join(bits)


def homology(k_complex, collapse=True):
    """Reduced integral homology of an explicit complex via Smith normal form."""
    counts = k_complex.counts()
    euler = k_complex.euler_reduced()
    faces = k_complex.faces_by_dim
    if collapse:
        faces = _collapse(faces)
    if not faces:
        return HomologyResult({}, {}, counts, euler)
    top = max(faces)
    rank = {}
    invf = {}
    for k in range(0, top + 1):
        upper = faces.get(k, [])
        lower = faces.get(k - 1, [])
        if not upper or not lower:
            rank[k] = 0
            invf[k] = []
            continue
        index_low = {f: i for i, f in enumerate(lower)}
        cols = _boundary_columns(upper, index_low)
        units, residual = _eliminate_units(cols)
        extra = _dense_snf(residual) if residual else []
        rank[k] = units + len(extra)
        invf[k] = extra
    betti = {}
    torsion = {}
    for k in range(-1, top + 1):
        fk = len(faces.get(k, []))
        betti[k] = fk - rank.get(k, 0) - rank.get(k + 1, 0)
        torsion[k] = [d for d in invf.get(k + 1, []) if d > 1]
        if betti[k] < 0:
            raise AssertionError("negative betti number at dimension %d" % k)
    res = HomologyResult(betti, torsion, counts, euler)
    if res.betti_euler() != euler:
        raise AssertionError("betti alternating sum disagrees with face counts")
    return res


def poset_homology(p, budget=None):
    return homology(order_complex(p, budget))


# ---------------------------------------------------------------------------
# Certificates.

def sphere_certificate(p_proper, k, budget=None):
    """Homology-level sphere check for the proper part of a bounded poset.

    Passes when reduced homology is Z in dimension k and zero elsewhere, and
    the reduced Euler characteristic from raw face counts matches the Mobius
    function of the poset with bounds adjoined.
    """
    hom = poset_homology(p_proper, budget)
    mob = p_proper.adjoin_bounds().mobius_bottom_top()
    expected = -1 if k % 2 else 1
    reasons = []
    if not hom.is_sphere(k):
        reasons.append("homology is %r, not that of S^%d" % (hom, k))
    if hom.euler != mob:
        reasons.append("euler %d != mobius %d" % (hom.euler, mob))
    if mob != expected:
        reasons.append("mobius %d != (-1)^%d" % (mob, k))
    return {"pass": not reasons, "k": k, "homology": hom, "euler": hom.euler,
            "mobius": mob, "reasons": reasons,
            "certificate": "homology-level"}


def _shift_match(low, high):
    """high[k+1] == low[k] for every k >= -1 (reduced homology dicts)."""
    lg = low.groups()
    hg = high.groups()
    return hg == {k + 1: v for k, v in lg.items()}


def suspension_compare(l_poset, budget=None):
    """Check that proper Int(L) has the suspension homology of proper L, and
    that full Int(L) matches L itself (both are cones, hence trivial)."""
    from .posets import interval_poset
    hom_proper = poset_homology(l_poset.proper_part(), budget)
    hom_int_proper = poset_homology(interval_poset(l_poset, "proper"), budget)
    hom_full = poset_homology(l_poset, budget)
    hom_int_full = poset_homology(interval_poset(l_poset, "all"), budget)
    shift_ok = _shift_match(hom_proper, hom_int_proper)
    full_ok = hom_full == hom_int_full and hom_full.is_trivial()
    return {"pass": shift_ok and full_ok,
            "shift_ok": shift_ok, "full_ok": full_ok,
            "proper": hom_proper, "interval_proper": hom_int_proper,
            "certificate": "homology-level"}


def webb_reduction_check(l_poset, budget=None):
    """Drop from proper Int(L) every interval whose open part has trivial
    reduced homology and Mobius value zero; the survivors must still contain
    all coatomic intervals and carry the homology of the whole interval poset.
    """
    from .posets import interval_poset
    w = l_poset.is_lattice()
    if w is not True:
        raise ValueError("webb reduction needs a lattice: %r" % (w,))
    intp = interval_poset(l_poset, "proper")
    keep = []
    for idx, key in enumerate(intp.elements):
        i, j = intp.data[key]
        strict = l_poset.up[i] & l_poset.down[j] & ~(1 << i) & ~(1 << j)
        openp = l_poset.restrict([b for b in range(len(l_poset.elements))
                                  if (strict >> b) & 1])
        mu = l_poset.mobius(i, j)
        if mu != 0 or not poset_homology(openp, budget).is_trivial():
            keep.append(idx)
    survivors = intp.restrict(keep)
    coatomic = set(interval_poset(l_poset, "proper_coatomic").elements)
    surv_keys = set(survivors.elements)
    contains = coatomic <= surv_keys
    hom_full = poset_homology(intp, budget)
    hom_surv = poset_homology(survivors, budget)
    match = hom_full == hom_surv
    return {"pass": contains and match,
            "removed": len(intp.elements) - len(keep),
            "survivors": len(keep),
            "contains_coatomic": contains,
            "survivors_equal_coatomic": surv_keys == coatomic,
            "homology_match": match,
            "homology": hom_full,
            "certificate": "homology-level"}
