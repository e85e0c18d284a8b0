"""Inverting the tropical pattern map on the reference network.

The reduced weightings below put weights only on the diagonals and on the
last horizontal edge of every line of the reference network; all other
horizontals are zero.  On a full-dimensional cone of patterns (the chamber)
the map w -> tropical_gz(w) is linear and invertible: every pattern slot is
computed by one fixed path system, the one that threads the top i sources of
the bottom-k subnetwork through the longest available staircases down to the
bottom i lines.  find_delta0_chamber builds that selection, inverts its
incidence matrix exactly, and then refuses to return anything that does not
verify on random interior patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .hive import GZ, TROPICAL_GZ, HornTriple, Tableau, gz_check, gz_margin
from .network import DIAGONAL, build_gamma0, compose_weightings, concatenate
from .paths import (MultiPath, _subnets_of, enumerate_kpaths, m_k,
                    multipath_weight, tropical_gz)
from .semiring import BOTTOM, TROPICAL, as_rational

_ZERO = Fraction(0)


@dataclass(frozen=True)
class WbarWeighting:
    """Weights on the diagonals (drawing order) and on the sink-adjacent
    horizontals (by height, bottom line first); everything else is zero."""

    n: int
    diagonals: tuple
    sink_horizontals: tuple

    def __post_init__(self):
        n = self.n
        d = tuple(as_rational(x) for x in self.diagonals)
        h = tuple(as_rational(x) for x in self.sink_horizontals)
        if len(d) != n * (n - 1) // 2:
            raise ValueError("expected %d diagonal weights" % (n * (n - 1) // 2,))
        if len(h) != n:
            raise ValueError("expected %d sink-horizontal weights" % n)
        object.__setattr__(self, "diagonals", d)
        object.__setattr__(self, "sink_horizontals", h)

    def coordinates(self):
        return self.diagonals + self.sink_horizontals

    def embed(self, g):
        """The full edge weighting on the given reference network."""
        w = {e: _ZERO for e in g.edges}
        for x, e in zip(self.diagonals, g.diagonals()):
            w[e] = x
        for h in range(1, self.n + 1):
            w[g.sink_horizontal(h)] = self.sink_horizontals[h - 1]
        return w


def wbar_to_json(w):
    return {"n": w.n,
            "diagonals": [str(x) for x in w.diagonals],
            "sink_horizontals": [str(x) for x in w.sink_horizontals]}


def wbar_from_json(d):
    return WbarWeighting(d["n"],
                         tuple(Fraction(x) for x in d["diagonals"]),
                         tuple(Fraction(x) for x in d["sink_horizontals"]))


# -- module-level topology caches (pure, rebuilt on demand) ------------------

_G0 = {}
_CONCAT = {}
_CHAMBER = {}


def gamma0_cached(n):
    if n not in _G0:
        _G0[n] = build_gamma0(n)
    return _G0[n]


def concat_cached(n):
    if n not in _CONCAT:
        _CONCAT[n] = concatenate(gamma0_cached(n), gamma0_cached(n))
    return _CONCAT[n]


def _slots(n):
    return [(k, i) for k in range(1, n + 1) for i in range(1, k + 1)]


def _coord_index(g):
    """Edge -> coordinate position for the reduced weighting of g."""
    idx = {}
    for j, e in enumerate(g.diagonals()):
        idx[e] = j
    base = len(idx)
    for h in range(1, g.rank + 1):
        idx[g.sink_horizontal(h)] = base + (h - 1)
    return idx


def _staircase_starts(n):
    starts = {}
    x = 1
    for j in range(1, n):
        starts[j] = x
        x += (n - j) + 1
    return starts, max(x, 1)


def _walk_right(g, node, until_x):
    edges = []
    while g.xy(node)[0] < until_x:
        step = None
        for e in g.out_edges(node):
            if e.tag != DIAGONAL:
                step = e
                break
        if step is None:
            raise RuntimeError("horizontal walk ran off the network")
        edges.append(step)
        node = step.head
    return edges, node


def _canonical_multipath(g, sub, k, i):
    """The selected i-system on the bottom-k subnetwork.

    Path j starts at the j-th source from the top, rides its line to the
    staircase whose bottom is line i + 1 - j, descends it all the way, and
    exits along that line.  Lower paths take longer staircases, so the
    family is vertex-disjoint by construction.
    """
    n = g.rank
    starts, width = _staircase_starts(n)
    paths = []
    for j in range(1, i + 1):
        h = k + 1 - j
        target = i + 1 - j
        node = sub.source_of_label(j)
        edges = []
        if target < h:
            a = target  # staircase index: its lowest line is the exit line
            run, node = _walk_right(sub, node, starts[a] + (n - h))
            edges.extend(run)
            for t in range(h, target, -1):
                step = None
                for e in sub.out_edges(node):
                    if e.tag == DIAGONAL:
                        step = e
                        break
                if step is None:
                    raise RuntimeError("expected a diagonal at height %d" % t)
                edges.append(step)
                node = step.head
        run, node = _walk_right(sub, node, width)
        edges.extend(run)
        paths.append(tuple(edges))
    rows = tuple(range(1, i + 1))
    cols = tuple(range(k + 1 - i, k + 1))
    return MultiPath(tuple(paths), rows, cols)


def _incidence_row(mp, coord_index, ncols):
    row = [_ZERO] * ncols
    for e in mp.edges():
        j = coord_index.get(e)
        if j is not None:
            row[j] += 1
    return row


def _invert_exact(mat):
    n = len(mat)
    a = [list(row) + [Fraction(1) if i == j else _ZERO for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class ChamberMap:
    """A verified linear inverse of the tropical pattern map."""

    n: int
    slots: tuple
    selections: dict
    matrix: tuple
    inverse: tuple

    def weighting_of(self, xi):
        """Solve for the reduced weighting whose pattern is xi (no checks)."""
        vec = [as_rational(xi.value(k, i)) for (k, i) in self.slots]
        coords = [sum(r * v for r, v in zip(row, vec)) for row in self.inverse]
        d = self.n * (self.n - 1) // 2
        return WbarWeighting(self.n, tuple(coords[:d]), tuple(coords[d:]))


def random_interior_pattern(n, rng, denom=1 << 16):
    """A strictly interlacing pattern with exact dyadic entries."""
    lam = sorted((int(v) for v in rng.integers(0, denom, size=n)), reverse=True)
    lam = [Fraction(v - 2 * j, denom) for j, v in enumerate(lam)]  # force strict
    rows = {n: lam}
    for k in range(n - 1, 0, -1):
        above = rows[k + 1]
        row = []
        for j in range(k):
            u = Fraction(int(rng.integers(1, 1023)), 1024)
            row.append(above[j] * u + above[j + 1] * (1 - u))
        rows[k] = row
    out = [(Fraction(0),)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        row = [Fraction(0)]
        for v in rows[k]:
            acc += v
            row.append(acc)
        out.append(tuple(row))
    return Tableau(n, tuple(out), TROPICAL_GZ)


def _argmax_selection(g, subs, w):
    """Argmax system per slot under a weighting; None on any tie."""
    sel = {}
    for k in range(1, g.rank + 1):
        sub = subs[k]
        for i in range(1, k + 1):
            best = None
            best_mp = None
            tie = False
            labels = range(1, k + 1)
            for rows in combinations(labels, i):
                for cols in combinations(labels, i):
                    for mp in enumerate_kpaths(sub, rows, cols):
                        v = multipath_weight(w, mp, TROPICAL)
                        if v is BOTTOM:
                            continue
                        if best is None or v > best:
                            best, best_mp, tie = v, mp, False
                        elif v == best:
                            tie = True
            if tie or best_mp is None:
                return None
            sel[(k, i)] = best_mp
    return sel


def find_delta0_chamber(n, verify_points=100):
    """Build and certify the chamber for the rank-n reference network.

    The canonical staircase selection is checked to be the unique argmax at
    a random generic weighting (falling back to the enumerated argmax if
    not), its incidence matrix is inverted exactly, and the resulting
    linear inverse must reproduce tropical_gz on random strictly interior
    patterns; any failure raises rather than returning a broken map.
    """
    if n in _CHAMBER:
        return _CHAMBER[n]
    g = gamma0_cached(n)
    subs = _subnets_of(g)
    rng = np.random.default_rng(0xA11CE + n)
    slots = tuple(_slots(n))
    coord_index = _coord_index(g)
    ncols = len(coord_index)

    selection = {(k, i): _canonical_multipath(g, subs[k], k, i) for (k, i) in slots}

    # probe: inside the dominant chamber the canonical system must be the
    # argmax.  Diagonals are drawn from [64, 65) against sink horizontals in
    # [0, 1): dropping to a lower line always pays more than any sink edge
    # can, so the maximal-drop system wins and only exact ties can spoil it.
    for _ in range(10):
        probe = WbarWeighting(
            n,
            tuple(Fraction((64 << 20) + int(v), 1 << 20)
                  for v in rng.integers(0, 1 << 20, size=n * (n - 1) // 2)),
            tuple(Fraction(int(v), 1 << 20)
                  for v in rng.integers(0, 1 << 20, size=n)),
        )
        wdict = probe.embed(g)
        enumerated = _argmax_selection(g, subs, wdict)
        if enumerated is None:
            continue
        for slot in slots:
            want = multipath_weight(wdict, enumerated[slot], TROPICAL)
            got = multipath_weight(wdict, selection[slot], TROPICAL)
            if want != got:
                selection = enumerated
                break
        break
    else:
        raise RuntimeError("no generic probe weighting found")

    matrix = [_incidence_row(selection[slot], coord_index, ncols) for slot in slots]
    inverse = _invert_exact(matrix)
    if inverse is None:
        raise RuntimeError("selected systems are linearly dependent")

    chamber = ChamberMap(n, slots, selection,
                         tuple(tuple(r) for r in matrix),
                         tuple(tuple(r) for r in inverse))

    for t in range(verify_points):
        xi = random_interior_pattern(n, rng)
        w = chamber.weighting_of(xi)
        got = tropical_gz(g, w.embed(g))
        if got.rows != xi.rows:
            raise RuntimeError("chamber fails to invert on an interior pattern")
    _CHAMBER[n] = chamber
    return chamber


def lt_inverse(xi, chamber=None):
    """The reduced weighting whose pattern triangle is exactly xi.

    xi must lie in the interlacing cone.  The solve is a single exact
    matrix-vector product; the result is then pushed back through
    tropical_gz and compared slot by slot, so a wrong answer cannot
    escape silently.
    """
    if chamber is None:
        chamber = find_delta0_chamber(xi.n)
    if xi.n != chamber.n:
        raise ValueError("pattern size does not match the chamber")
    vals = tuple(tuple(as_rational(v) for v in row) for row in xi.rows)
    exact = Tableau(xi.n, vals, GZ if xi.role != TROPICAL_GZ else TROPICAL_GZ)
    if not gz_check(exact, 0):
        raise ValueError("pattern is not in the interlacing cone")
    w = chamber.weighting_of(exact)
    g = gamma0_cached(chamber.n)
    got = tropical_gz(g, w.embed(g))
    if got.rows != exact.rows:
        raise RuntimeError("pattern lies outside the chamber's validity cone")
    return w


def _m_vector(g, w):
    out = []
    for k in range(1, g.rank + 1):
        v = m_k(g, w, k, TROPICAL)
        if v is BOTTOM:
            raise ValueError("no k-system exists; weighting degenerate")
        out.append(v)
    return tuple(out)


def kappa(u, v, chamber=None):
    """Tropical product spectrum of two patterns with matched inner edge.

    The patterns are inverted to reduced weightings, the second factor's
    network is glued on the left of the first's, and the minors of the
    composite are returned as a cumulative vector.
    """
    if chamber is None:
        chamber = find_delta0_chamber(u.n)
    wu = lt_inverse(u, chamber)
    wv = lt_inverse(v, chamber)
    return kappa_weightings(wu, wv, chamber)


def kappa_weightings(wu, wv, chamber):
    n = chamber.n
    g = gamma0_cached(n)
    gc = concat_cached(n)
    wc = compose_weightings(gc, wv.embed(g), wu.embed(g))
    return _m_vector(gc, wc)


def horn_triple_tropical(w1, w2):
    """The boundary triple of a pair of reduced weightings: factor spectra
    and the spectrum of their concatenation (first factor on the left)."""
    if w1.n != w2.n:
        raise ValueError("ranks differ")
    n = w1.n
    g = gamma0_cached(n)
    gc = concat_cached(n)
    a = _m_vector(g, w1.embed(g))
    b = _m_vector(g, w2.embed(g))
    wc = compose_weightings(gc, w1.embed(g), w2.embed(g))
    c = _m_vector(gc, wc)
    return HornTriple(a, b, c)


# -- genericity ---------------------------------------------------------------


@dataclass(frozen=True)
class GenericityReport:
    generic: bool
    min_separation: object
    min_margin: object
    delta: object


def _support_profiles(g, support):
    """Deduplicated incidence vectors of every i-system of every bottom
    subnetwork, restricted to the support edges.  Cached per topology."""
    key = tuple(support)
    cache = getattr(g, "_profile_cache", None)
    if cache is None:
        cache = {}
        g._profile_cache = cache
    if key in cache:
        return cache[key]
    idx = {e: j for j, e in enumerate(support)}
    subs = _subnets_of(g)
    profiles = {}
    for k in range(1, g.rank + 1):
        sub = subs[k]
        for i in range(1, k + 1):
            seen = set()
            labels = range(1, k + 1)
            for rows in combinations(labels, i):
                for cols in combinations(labels, i):
                    for mp in enumerate_kpaths(sub, rows, cols):
                        counts = [0] * len(support)
                        for e in mp.edges():
                            j = idx.get(e)
                            if j is not None:
                                counts[j] += 1
                        seen.add(tuple(counts))
            profiles[(k, i)] = tuple(sorted(seen))
    cache[key] = profiles
    return profiles


def _min_separation(g, wdict, support):
    profiles = _support_profiles(g, support)
    sep = None
    weights = [wdict[e] for e in support]
    for vecs in profiles.values():
        vals = sorted({sum(c * x for c, x in zip(vec, weights) if c) for vec in vecs})
        for a, b in zip(vals, vals[1:]):
            d = b - a
            if sep is None or d < sep:
                sep = d
    return sep


def _wbar_support(g):
    return tuple(_coord_index(g).keys())


def genericity_check(w1, delta, w2=None):
    """Are all path-system values well separated and the patterns strictly
    interior, with margin exceeding delta?

    With one weighting the reference network alone is examined; with two,
    both factors and their concatenation (first on the left) are.
    """
    delta = as_rational(delta)
    n = w1.n
    g = gamma0_cached(n)
    support = _wbar_support(g)
    jobs = [(g, w1.embed(g), support)]
    if w2 is not None:
        gc = concat_cached(n)
        jobs.append((g, w2.embed(g), support))
        csupport = tuple([gc.left_map[e] for e in support]
                         + [gc.right_map[e] for e in support])
        jobs.append((gc, compose_weightings(gc, w1.embed(g), w2.embed(g)), csupport))
    sep = None
    margin = None
    for net, wdict, sup in jobs:
        s = _min_separation(net, wdict, sup)
        if s is not None and (sep is None or s < sep):
            sep = s
        m = gz_margin(tropical_gz(net, wdict))
        if m is not None and (margin is None or m < margin):
            margin = m
    ok = ((sep is None or sep > delta) and (margin is None or margin > delta))
    return GenericityReport(ok, sep, margin, delta)
