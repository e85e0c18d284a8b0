"""Triangular tableaux, hive and interlacing inequalities, cone membership.

A tableau of size n is a triangle of values l[k][i], 0 <= i <= k <= n, stored
as rows of growing length.  Three inequality families act on it:

  A(k,i):  l[k+1][i] + l[k][i-1] >= l[k+1][i-1] + l[k][i]
  B(k,i):  l[k+1][i] + l[k][i]   >= l[k+1][i+1] + l[k][i-1]
  C(k,i):  l[k][i]   + l[k][i-1] >= l[k+1][i]   + l[k-1][i-1]

each for 0 < i <= k < n.  A and B alone, together with a zero left edge,
cut out the interlacing (Gelfand-Zeitlin) cone; all three cut out hives.

Membership of a boundary triple in the hive cone is decided by an exact
rational LP, so the answer at slack zero is a theorem, not a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .semiring import BOTTOM, as_rational
from .simplex import feasible_point

HIVE = "hive"
GZ = "gz"
TROPICAL_GZ = "tropical-gz"

_ROLES = (HIVE, GZ, TROPICAL_GZ)


@dataclass(frozen=True)
class Tableau:
    """Immutable triangle of values; rows[k] has k + 1 entries.

    role distinguishes hives (arbitrary left edge) from interlacing
    patterns (left edge pinned to zero).  Entries are Fractions for exact
    work, floats for spectral data; tropical-gz rows may contain BOTTOM.
    """

    n: int
    rows: tuple
    role: str

    def __post_init__(self):
        if self.role not in _ROLES:
            raise ValueError("unknown role %r" % (self.role,))
        if self.n < 1:
            raise ValueError("size must be positive")
        if len(self.rows) != self.n + 1:
            raise ValueError("expected %d rows" % (self.n + 1,))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        for k, row in enumerate(self.rows):
            if len(row) != k + 1:
                raise ValueError("row %d must have %d entries" % (k, k + 1))
        if self.role in (GZ, TROPICAL_GZ):
            for row in self.rows:
                if not (row[0] == 0):
                    raise ValueError("left edge of a %s tableau must be 0" % self.role)

    def value(self, k, i):
        return self.rows[k][i]

    def top(self):
        """The longest row, without its leading entry."""
        return self.rows[self.n][1:]


def _entries_finite(t):
    return all(v is not BOTTOM for row in t.rows for v in row)


def _family_slacks(t, families):
    n = t.n
    r = t.rows
    out = []
    for k in range(1, n):
        for i in range(1, k + 1):
            if "A" in families:
                out.append(r[k + 1][i] + r[k][i - 1] - r[k + 1][i - 1] - r[k][i])
            if "B" in families:
                out.append(r[k + 1][i] + r[k][i] - r[k + 1][i + 1] - r[k][i - 1])
            if "C" in families:
                out.append(r[k][i] + r[k][i - 1] - r[k + 1][i] - r[k - 1][i - 1])
    return out


def hive_check(t):
    """All three inequality families hold (weakly)."""
    if not _entries_finite(t):
        raise ValueError("hive entries must be finite")
    return all(s >= 0 for s in _family_slacks(t, "ABC"))


def gz_check(t, delta=0):
    """Interlacing test for patterns with zero left edge.

    delta == 0 asks for the weak inequalities; delta > 0 asks for every
    slack of families A and B to exceed delta (strict interiority with
    margin).
    """
    if t.role == HIVE:
        raise ValueError("gz_check applies to gz-role tableaux")
    if not _entries_finite(t):
        raise ValueError("pattern entries must be finite")
    slacks = _family_slacks(t, "AB")
    if delta == 0:
        return all(s >= 0 for s in slacks)
    return all(s > delta for s in slacks)


def gz_margin(t):
    """Smallest slack over families A and B; None when n == 1 (no rows)."""
    slacks = _family_slacks(t, "AB")
    if not slacks:
        return None
    return min(slacks)


@dataclass(frozen=True)
class HornTriple:
    """Three weakly ordered partial-sum vectors (a, b, c) of equal length."""

    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        a, b, c = (tuple(as_rational(x) for x in v) for v in (self.a, self.b, self.c))
        if not (len(a) == len(b) == len(c)) or not a:
            raise ValueError("a, b, c must be nonempty and of equal length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def n(self):
        return len(self.a)


def scale_triple(t, factor):
    f = as_rational(factor)
    return HornTriple(tuple(f * x for x in t.a),
                      tuple(f * x for x in t.b),
                      tuple(f * x for x in t.c))


def boundary(t):
    """Read off the (a, b, c) boundary of a hive.

    a lives on the long row, b on the diagonal measured against the last
    entry of the long row, c on the left edge read bottom up.
    """
    n = t.n
    r = t.rows
    a = tuple(r[n][i] for i in range(1, n + 1))
    b = tuple(r[n - i][n - i] - r[n][n] for i in range(1, n + 1))
    c = tuple(r[n - i][0] for i in range(1, n + 1))
    return HornTriple(a, b, c)


def _kt_pins(triple):
    """Boundary slots fixed by a triple; the top-left corner stays free."""
    n = triple.n
    a, b, c = triple.a, triple.b, triple.c
    pins = {}
    for i in range(1, n + 1):
        pins[(n, i)] = a[i - 1]
    for i in range(1, n):
        pins[(n - i, n - i)] = b[i - 1] + a[n - 1]
    for i in range(1, n + 1):
        pins[(n - i, 0)] = c[i - 1]
    return pins


def _hive_inequalities(n):
    """Each inequality as {slot: coefficient}; value must be >= 0."""
    rows = []
    for k in range(1, n):
        for i in range(1, k + 1):
            rows.append({(k + 1, i): 1, (k, i - 1): 1, (k + 1, i - 1): -1, (k, i): -1})
            rows.append({(k + 1, i): 1, (k, i): 1, (k + 1, i + 1): -1, (k, i - 1): -1})
            rows.append({(k, i): 1, (k, i - 1): 1, (k + 1, i): -1, (k - 1, i - 1): -1})
    return rows


def kt_witness(triple, slack=0):
    """A hive with the given boundary and all inequalities >= -slack, or None.

    The closing identity a_n + b_n = c_n is checked first, to tolerance
    |slack|; without it no hive can exist.  A negative slack tightens the
    inequality families instead (every slack must reach |slack|), which is
    useful for falsification tests.  The search itself is an exact phase-1
    simplex over the rationals, so a None answer is a certificate of
    infeasibility at that slack.
    """
    eps = as_rational(slack)
    n = triple.n
    gap = triple.a[n - 1] + triple.b[n - 1] - triple.c[n - 1]
    if abs(gap) > abs(eps):
        return None

    pins = _kt_pins(triple)
    free = sorted(
        (k, i) for k in range(n + 1) for i in range(k + 1) if (k, i) not in pins
    )
    index = {slot: j for j, slot in enumerate(free)}

    rows_a = []
    rows_b = []
    for ineq in _hive_inequalities(n):
        const = Fraction(0)
        coeffs = [Fraction(0)] * len(free)
        for slot, cf in ineq.items():
            if slot in pins:
                const += cf * pins[slot]
            else:
                coeffs[index[slot]] += cf
        lo = -eps - const
        if any(coeffs):
            rows_a.append(coeffs)
            rows_b.append(lo)
        elif lo > 0:
            return None

    if rows_a:
        x = feasible_point(rows_a, rows_b)
        if x is None:
            return None
    else:
        x = [Fraction(0)] * len(free)
    values = dict(pins)
    for slot, j in index.items():
        values[slot] = x[j]
    rows = tuple(tuple(values[(k, i)] for i in range(k + 1)) for k in range(n + 1))
    return Tableau(n, rows, HIVE)


def kt_member(triple, slack=0):
    """Whether a triple admits a hive with that boundary, up to slack."""
    return kt_witness(triple, slack) is not None


# -- serialization ----------------------------------------------------------


def _value_out(v):
    if v is BOTTOM:
        return None
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return float(v)


def _value_in(v):
    if v is None:
        return BOTTOM
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool):
        raise ValueError("boolean is not a tableau value")
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def tableau_to_json(t):
    return {"n": t.n, "role": t.role,
            "rows": [[_value_out(v) for v in row] for row in t.rows]}


def tableau_from_json(d):
    rows = tuple(tuple(_value_in(v) for v in row) for row in d["rows"])
    return Tableau(d["n"], rows, d.get("role", GZ))


def parse_number(s):
    """Exact if possible: 'p/q' and integer literals become Fractions,
    anything else goes through float first."""
    s = s.strip()
    if "/" in s:
        return Fraction(s)
    try:
        return Fraction(int(s))
    except ValueError:
        return as_rational(float(s))


def format_number(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else str(v)
    return repr(float(v))


def triple_csv_header(n):
    cols = ["a%d" % i for i in range(1, n + 1)]
    cols += ["b%d" % i for i in range(1, n + 1)]
    cols += ["c%d" % i for i in range(1, n + 1)]
    return ",".join(cols)


def triple_to_csv(t):
    vals = list(t.a) + list(t.b) + list(t.c)
    return ",".join(format_number(v) for v in vals)


def triple_from_csv(line, n):
    parts = [p for p in line.strip().split(",") if p != ""]
    if len(parts) != 3 * n:
        raise ValueError("expected %d fields, got %d" % (3 * n, len(parts)))
    vals = [parse_number(p) for p in parts]
    return HornTriple(vals[:n], vals[n:2 * n], vals[2 * n:])
