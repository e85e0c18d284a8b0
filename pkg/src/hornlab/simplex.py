"""Exact rational feasibility via phase-1 simplex.

Decides whether A x >= b has a solution over the rationals and returns one
when it does.  Bland's pivoting rule keeps the method finite; everything is
Fraction arithmetic, so there are no tolerances anywhere.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def feasible_point(a, b):
    """Solve A x >= b exactly; returns a list of Fractions or None.

    Free variables are split as x = u - v with u, v >= 0, each row gets a
    surplus variable, and rows whose right side stays positive after sign
    normalization get an artificial variable.  Phase 1 minimizes the sum of
    artificials; feasibility is equivalent to that minimum being zero.
    """
    m = len(a)
    nvar = len(a[0]) if m else 0
    if nvar == 0:
        return [] if all(Fraction(x) <= 0 for x in b) else None
    if m == 0:
        return [ZERO] * nvar

    # columns: u (nvar) | v (nvar) | surplus (m) | artificials (as needed)
    ncols = 2 * nvar + m
    rows = []
    art_of_row = {}
    for i in range(m):
        coeffs = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            # negate so the surplus column can serve as the basic variable
            row = [-c for c in coeffs] + [c for c in coeffs] + [ZERO] * m
            row[2 * nvar + i] = ONE
            rows.append((row, -rhs, 2 * nvar + i))
        else:
            row = [c for c in coeffs] + [-c for c in coeffs] + [ZERO] * m
            row[2 * nvar + i] = -ONE
            art_of_row[i] = ncols + len(art_of_row)
            rows.append((row, rhs, art_of_row[i]))

    nart = len(art_of_row)
    width = ncols + nart
    tab = []
    basis = []
    for row, rhs, bcol in rows:
        full = row + [ZERO] * nart
        if bcol >= ncols:
            full[bcol] = ONE
        tab.append(full + [rhs])
        basis.append(bcol)

    # phase-1 objective: minimize the sum of artificial variables.  With the
    # artificials basic, the reduced-cost row is minus the sum of their rows
    # on non-artificial columns.
    cost = [ZERO] * (width + 1)
    for i, bcol in enumerate(basis):
        if bcol >= ncols:
            for j in range(width + 1):
                cost[j] -= tab[i][j]
    for i in range(ncols, width):
        cost[i] += ONE

    while True:
        enter = -1
        for j in range(width):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][width] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise RuntimeError("phase-1 objective unbounded; malformed input")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter

    if -cost[width] != 0:
        return None

    values = [ZERO] * width
    for i, bcol in enumerate(basis):
        values[bcol] = tab[i][width]
    return [values[j] - values[nvar + j] for j in range(nvar)]
