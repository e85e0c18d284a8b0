"""Dense Hermitian and triangular linear algebra at desk scale.

Everything works on small nested lists of Python complex.  Eigenvalues come
from a two-sided Jacobi iteration, singular values from a one-sided Jacobi
on columns (chosen for its relative accuracy on badly scaled matrices: the
sweeps compare column Grams, not absolute magnitudes, so a singular value
of 1e-13 next to one of 1e+13 still comes out to full relative precision).
numpy is used only as a random-number and QR backend for Haar sampling.

The matrix size never exceeds a handful here, so the quadratic little loops
are both fast enough and easy to audit.
"""

from __future__ import annotations

import cmath
import math
from itertools import combinations

import numpy as np

from .hive import GZ, Tableau

_EIGH_TOL = 1e-13
_MAX_SWEEPS = 100


def dagger(a):
    n = len(a)
    m = len(a[0])
    return [[a[i][j].conjugate() for i in range(n)] for j in range(m)]


def mat_mul_c(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = 0j
            for t in range(k):
                acc += ai[t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def frobenius(a):
    return math.sqrt(sum(abs(x) ** 2 for row in a for x in row))


def _rotation(app, aqq, apq):
    """Parameters (c, s, e) of the plane rotation that kills a 2x2 Hermitian
    off-diagonal entry apq; columns transform as
        p' = c p + e s q,   q' = -s p + e c q,   e = conj(apq)/|apq|."""
    ab = abs(apq)
    theta = 0.5 * math.atan2(2.0 * ab, app - aqq)
    return math.cos(theta), math.sin(theta), apq.conjugate() / ab


def eigh(k):
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Classical cyclic Jacobi; terminates when the off-diagonal Frobenius
    norm drops below 1e-13 of the matrix norm.  Eigenvectors are returned
    as columns, each normalized so its largest-magnitude entry (first such
    index on ties) is real and positive, which makes the output a pure
    function of the input.
    """
    n = len(k)
    nrm = frobenius(k)
    herm_defect = math.sqrt(sum(abs(k[i][j] - k[j][i].conjugate()) ** 2
                                for i in range(n) for j in range(n)))
    if herm_defect > 1e-10 * max(1.0, nrm):
        raise ValueError("matrix is not Hermitian")
    m = [[complex(x) for x in row] for row in k]
    # symmetrize exactly so rounding in the input cannot bias the sweeps
    for i in range(n):
        m[i][i] = complex(m[i][i].real, 0.0)
        for j in range(i + 1, n):
            avg = 0.5 * (m[i][j] + m[j][i].conjugate())
            m[i][j] = avg
            m[j][i] = avg.conjugate()
    u = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    if nrm == 0.0:
        return [0.0] * n, u

    for _ in range(_MAX_SWEEPS):
        off = math.sqrt(2.0 * sum(abs(m[i][j]) ** 2
                                  for i in range(n) for j in range(i + 1, n)))
        if off <= _EIGH_TOL * nrm:
            break
        for p in range(n):
            for q in range(p + 1, n):
                b = m[p][q]
                if b == 0j:
                    continue
                c, s, e = _rotation(m[p][p].real, m[q][q].real, b)
                es = e * s
                ec = e * c
                for i in range(n):
                    mp, mq = m[i][p], m[i][q]
                    m[i][p] = c * mp + es * mq
                    m[i][q] = -s * mp + ec * mq
                ce = e.conjugate()
                for j in range(n):
                    mp, mq = m[p][j], m[q][j]
                    m[p][j] = c * mp + ce * s * mq
                    m[q][j] = -s * mp + ce * c * mq
                for i in range(n):
                    up, uq = u[i][p], u[i][q]
                    u[i][p] = c * up + es * uq
                    u[i][q] = -s * up + ec * uq
    else:
        raise RuntimeError("Jacobi iteration failed to converge")

    pairs = sorted(((m[j][j].real, j) for j in range(n)),
                   key=lambda t: -t[0])
    vals = [v for v, _ in pairs]
    cols = []
    for _, j in pairs:
        col = [u[i][j] for i in range(n)]
        piv = 0
        for i in range(1, n):
            if abs(col[i]) > abs(col[piv]):
                piv = i
        ph = col[piv]
        if ph != 0j:
            f = ph.conjugate() / abs(ph)
            col = [x * f for x in col]
        cols.append(col)
    vecs = [[cols[j][i] for j in range(n)] for i in range(n)]
    return vals, vecs


def l_map(k):
    """Cumulative sums of the eigenvalues, largest first."""
    vals, _ = eigh(k)
    out = []
    acc = 0.0
    for v in vals:
        acc += v
        out.append(acc)
    return tuple(out)


def _block(a, idx):
    return [[a[i][j] for j in idx] for i in idx]


def gz_H(k, leading=False):
    """Pattern of cumulative spectra of nested principal blocks.

    Row j comes from the trailing j x j block (bottom-right corner); pass
    leading=True for the mirrored convention.
    """
    n = len(k)
    rows = [(0.0,)]
    for j in range(1, n + 1):
        idx = range(j) if leading else range(n - j, n)
        rows.append((0.0,) + l_map(_block(k, idx)))
    return Tableau(n, tuple(rows), GZ)


def singular_l(a):
    """Cumulative logs of the singular values of an invertible matrix.

    Equivalently half the cumulative log-eigenvalues of a a*.  One-sided
    Jacobi: columns are rotated until pairwise orthogonal, with a relative
    convergence test, then the norms are the singular values.
    """
    n = len(a)
    cols = [[complex(a[i][j]) for i in range(n)] for j in range(n)]
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for p in range(n):
            for q in range(p + 1, n):
                cp, cq = cols[p], cols[q]
                app = sum(abs(x) ** 2 for x in cp)
                aqq = sum(abs(x) ** 2 for x in cq)
                if app == 0.0 or aqq == 0.0:
                    raise ValueError("matrix is singular")
                apq = sum(x.conjugate() * y for x, y in zip(cp, cq))
                if abs(apq) <= 1e-15 * math.sqrt(app * aqq):
                    continue
                c, s, e = _rotation(app, aqq, apq)
                es = e * s
                ec = e * c
                for i in range(n):
                    xp, xq = cp[i], cq[i]
                    cp[i] = c * xp + es * xq
                    cq[i] = -s * xp + ec * xq
                rotated = True
        if not rotated:
            break
    else:
        raise RuntimeError("one-sided Jacobi failed to converge")
    sig = sorted((math.sqrt(sum(abs(x) ** 2 for x in col)) for col in cols),
                 reverse=True)
    if sig[-1] == 0.0 or not all(map(math.isfinite, sig)):
        raise ValueError("matrix is singular")
    out = []
    acc = 0.0
    for v in sig:
        acc += math.log(v)
        out.append(acc)
    return tuple(out)


def gz_B(a, leading=False):
    """Pattern of cumulative log singular values of nested blocks."""
    n = len(a)
    rows = [(0.0,)]
    for j in range(1, n + 1):
        idx = range(j) if leading else range(n - j, n)
        rows.append((0.0,) + tuple(singular_l(_block(a, idx))))
    return Tableau(n, tuple(rows), GZ)


def haar_unitary(n, rng):
    """Haar-distributed unitary via QR of a complex Ginibre matrix, with the
    R diagonal phase fixed so the distribution is exactly invariant."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    z *= 1.0 / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return [[complex(q[i, j]) for j in range(n)] for i in range(n)]


def spectrum_of(r):
    """Gaps of a cumulative vector: the spectrum it encodes."""
    out = []
    prev = 0.0
    for v in r:
        out.append(float(v) - prev)
        prev = float(v)
    return out


def sample_H_r(r, rng):
    """Random Hermitian matrix with spectrum given by the gaps of r."""
    lam = spectrum_of(r)
    n = len(lam)
    u = haar_unitary(n, rng)
    k = [[sum(u[i][t] * lam[t] * u[j][t].conjugate() for t in range(n))
          for j in range(n)] for i in range(n)]
    for i in range(n):
        k[i][i] = complex(k[i][i].real, 0.0)
        for j in range(i + 1, n):
            avg = 0.5 * (k[i][j] + k[j][i].conjugate())
            k[i][j] = avg
            k[j][i] = avg.conjugate()
    return k


def upper_cholesky(p):
    """Upper-triangular a with positive diagonal and a a* = p.

    Reverse both index orders, take the classical lower Cholesky factor,
    and reverse back; positive definiteness is required.
    """
    n = len(p)
    rp = [[p[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]
    low = [[0j] * n for _ in range(n)]
    for j in range(n):
        acc = rp[j][j].real - sum(abs(low[j][t]) ** 2 for t in range(j))
        if acc <= 0.0:
            raise ValueError("matrix is not positive definite")
        low[j][j] = complex(math.sqrt(acc), 0.0)
        for i in range(j + 1, n):
            v = rp[i][j] - sum(low[i][t] * low[j][t].conjugate() for t in range(j))
            low[i][j] = v / low[j][j]
    return [[low[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]


def _bordered(k, lam, theta):
    """Extend a Hermitian matrix by one row and column so the new spectrum
    is lam while the old one survives as the trailing block.

    In the eigenbasis of k the border magnitudes are forced: with mu the
    current spectrum, |b_j|^2 = -prod_i(mu_j - lam_i) / prod_{i != j}
    (mu_j - mu_i), which is positive exactly when lam strictly interlaces
    mu; theta supplies the free phases.
    """
    kk = len(k)
    mu, vecs = eigh(k)
    a00 = sum(lam) - sum(mu)
    cvec = []
    for j in range(kk):
        num = 1.0
        for lv in lam:
            num *= (mu[j] - lv)
        num = -num
        den = 1.0
        for i in range(kk):
            if i != j:
                den *= (mu[j] - mu[i])
        w2 = num / den
        if not (w2 > 0.0) or not math.isfinite(w2):
            raise ValueError("spectra do not strictly interlace")
        cvec.append(math.sqrt(w2) * cmath.exp(1j * theta[j]))
    b = [sum(vecs[i][j] * cvec[j] for j in range(kk)) for i in range(kk)]
    out = [[0j] * (kk + 1) for _ in range(kk + 1)]
    out[0][0] = complex(a00, 0.0)
    for i in range(kk):
        out[i + 1][0] = b[i]
        out[0][i + 1] = b[i].conjugate()
        for j in range(kk):
            out[i + 1][j + 1] = k[i][j]
    return out


def _reconstruct_from_spectra(spectra, angles):
    k = [[complex(spectra[0][0], 0.0)]]
    for lvl in range(1, len(spectra)):
        k = _bordered(k, spectra[lvl], angles[lvl - 1])
    return k


def reconstruct_H(xi, angles):
    """A Hermitian matrix whose trailing-block pattern is xi.

    xi must be strictly interior (consecutive rows strictly interlace) and
    angles supplies the torus coordinates of the fiber: row k of angles has
    k phases, k = 1..n-1.
    """
    n = xi.n
    if len(angles) != n - 1 or any(len(angles[k]) != k + 1 for k in range(n - 1)):
        raise ValueError("angles must have rows of lengths 1..n-1")
    spectra = [spectrum_of(xi.rows[k][1:]) for k in range(1, n + 1)]
    return _reconstruct_from_spectra(spectra, angles)


def sample_B_r(r, rng, chain=None):
    """Random upper-triangular matrix with positive diagonal whose
    cumulative log singular values equal r.

    A pattern is drawn uniformly below the top row, a positive matrix with
    exponentiated trailing spectra is rebuilt with uniform phases, and its
    reversed Cholesky factor is returned.
    """
    from .polytope import PolytopeSampler

    n = len(r)
    if chain is None:
        chain = PolytopeSampler(r, rng)
    u = chain.draw()
    spectra = [[math.exp(2.0 * g) for g in spectrum_of(u.rows[k][1:])]
               for k in range(1, n + 1)]
    angles = [list(rng.uniform(0.0, 2.0 * math.pi, size=k)) for k in range(1, n)]
    p = _reconstruct_from_spectra(spectra, angles)
    return upper_cholesky(p)


def _det(a):
    n = len(a)
    m = [row[:] for row in a]
    det = 1.0 + 0j
    for col in range(n):
        piv = max(range(col, n), key=lambda i: abs(m[i][col]))
        if m[piv][col] == 0j:
            return 0j
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1.0 / m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] * inv
            for j in range(col, n):
                m[i][j] -= f * m[col][j]
    return det


def sigma_values(a):
    """Elementary symmetric functions of the squared singular values,
    k = 1..n, via sums of squared minors (Cauchy-Binet)."""
    n = len(a)
    out = []
    for k in range(1, n + 1):
        total = 0.0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                sub = [[a[i][j] for j in cols] for i in rows]
                total += abs(_det(sub)) ** 2
        out.append(total)
    return tuple(out)
