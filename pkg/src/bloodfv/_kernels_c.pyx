# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled step kernels (preferred backend).

Mirrors `_kernels_py` statement-for-statement; compiled with
-ffp-contract=off so both backends agree bitwise.
"""

from libc.math cimport M_PI, fabs, fmax, fmin, isnan, sqrt

import numpy as np

cdef double SQPI = sqrt(M_PI)

NAME = "compiled"
HAS_COMPILED = True


cdef inline double _ppot(double A, double k, double rho) noexcept nogil:
    return k * A * sqrt(A) / (3.0 * rho * SQPI)


cdef inline double _cel(double A, double k, double rho) noexcept nogil:
    return sqrt(k * sqrt(A) / (2.0 * rho * SQPI))


cdef inline double _minmod(double x, double y) noexcept nogil:
    if x >= 0.0 and y >= 0.0:
        return fmin(x, y)
    if x <= 0.0 and y <= 0.0:
        return fmax(x, y)
    return 0.0


cdef inline void _phys(double A, double Q, double k, double rho,
                       double* fa, double* fq) noexcept nogil:
    fa[0] = Q
    fq[0] = (Q * Q / A if A > 0.0 else 0.0) + _ppot(A, k, rho)


cdef inline void _rusanov(double AL, double QL, double AR, double QR,
                          double k, double rho, double* fa, double* fq) noexcept nogil:
    cdef double uL = QL / AL if AL > 0.0 else 0.0
    cdef double uR = QR / AR if AR > 0.0 else 0.0
    cdef double cL = _cel(AL, k, rho)
    cdef double cR = _cel(AR, k, rho)
    cdef double c = fmax(fabs(uL) + cL, fabs(uR) + cR)
    cdef double faL, fqL, faR, fqR
    _phys(AL, QL, k, rho, &faL, &fqL)
    _phys(AR, QR, k, rho, &faR, &fqR)
    fa[0] = 0.5 * (faL + faR) - 0.5 * c * (AR - AL)
    fq[0] = 0.5 * (fqL + fqR) - 0.5 * c * (QR - QL)


cdef inline void _flux(int fid, double AL, double QL, double AR, double QR,
                       double k, double rho, double* fa, double* fq) noexcept nogil:
    cdef double uL, uR, cL, cR, c1, c2, den
    cdef double faL, fqL, faR, fqR, faS, fqS
    cdef double ct, ut, ustar, cstar, astar, qstar, lam1, lam2, w
    cdef double sL, sR, Mp, Mm, mp, mm, wL, wR

    if AL == AR and QL == QR:
        fa[0] = QL
        fq[0] = (QL * QL / AL if AL > 0.0 else 0.0) + _ppot(AL, k, rho)
        return

    if fid == 0:  # Rusanov
        _rusanov(AL, QL, AR, QR, k, rho, fa, fq)
        return

    uL = QL / AL if AL > 0.0 else 0.0
    uR = QR / AR if AR > 0.0 else 0.0
    cL = _cel(AL, k, rho)
    cR = _cel(AR, k, rho)

    if fid == 1:  # HLL
        c1 = fmin(uL - cL, uR - cR)
        c2 = fmax(uL + cL, uR + cR)
        _phys(AL, QL, k, rho, &faL, &fqL)
        _phys(AR, QR, k, rho, &faR, &fqR)
        if 0.0 <= c1:
            fa[0] = faL
            fq[0] = fqL
        elif c2 <= 0.0:
            fa[0] = faR
            fq[0] = fqR
        else:
            den = c2 - c1
            fa[0] = (c2 * faL - c1 * faR) / den + c1 * c2 / den * (AR - AL)
            fq[0] = (c2 * fqL - c1 * fqR) / den + c1 * c2 / den * (QR - QL)
        return

    if fid == 2:  # VFRoe-ncv with Rusanov entropy correction
        if (uL - cL < 0.0 and 0.0 < uR - cR) or (uL + cL < 0.0 and 0.0 < uR + cR):
            _rusanov(AL, QL, AR, QR, k, rho, fa, fq)
            return
        ct = 0.5 * (cL + cR)
        ut = 0.5 * (uL + uR)
        if ct - 0.125 * (uR - uL) < 0.0:
            _rusanov(AL, QL, AR, QR, k, rho, fa, fq)
            return
        ustar = ut - 2.0 * (cR - cL)
        cstar = fmax(ct - 0.125 * (uR - uL), 0.0)
        w = 2.0 * rho / k
        astar = cstar * cstar * cstar * cstar * M_PI * (w * w)
        qstar = astar * ustar
        lam1 = ut - ct
        lam2 = ut + ct
        if lam1 > 0.0:
            _phys(AL, QL, k, rho, fa, fq)
        elif lam2 < 0.0:
            _phys(AR, QR, k, rho, fa, fq)
        else:
            _phys(astar, qstar, k, rho, fa, fq)
        return

    # kinetic
    sL = sqrt(k * sqrt(AL) / (rho * SQPI))
    sR = sqrt(k * sqrt(AR) / (rho * SQPI))
    Mp = fmax(0.0, uL + sL)
    Mm = fmax(0.0, uL - sL)
    mp = fmin(0.0, uR + sR)
    mm = fmin(0.0, uR - sR)
    wL = AL / (2.0 * sL) if AL > 0.0 else 0.0
    wR = AR / (2.0 * sR) if AR > 0.0 else 0.0
    fa[0] = wL * 0.5 * (Mp * Mp - Mm * Mm) + wR * 0.5 * (mp * mp - mm * mm)
    fq[0] = wL * (Mp * Mp * Mp - Mm * Mm * Mm) / 3.0 + wR * (mp * mp * mp - mm * mm * mm) / 3.0


def max_wavespeed(double[::1] A, double[::1] Q, double k, double rho, int kinetic):
    cdef Py_ssize_t i, n = A.shape[0]
    cdef double s, c, best = 0.0
    with nogil:
        for i in range(n):
            if kinetic:
                c = sqrt(k * sqrt(A[i]) / (rho * SQPI))
            else:
                c = sqrt(k * sqrt(A[i]) / (2.0 * rho * SQPI))
            s = fabs(Q[i] / A[i]) + c
            if s > best:
                best = s
    return best


def state_stats(double[::1] A, double[::1] Q):
    cdef Py_ssize_t i, n = A.shape[0]
    cdef double amin, umax, u
    with nogil:
        amin = A[0]
        umax = fabs(Q[0] / A[0])
        for i in range(1, n):
            if A[i] < amin:
                amin = A[i]
            u = fabs(Q[i] / A[i])
            if u > umax:
                umax = u
            elif isnan(u):
                umax = u
                break
    return amin, umax


def step_hydro_first(double[::1] Ae, double[::1] Qe, double[::1] sa0e,
                     double dtdx, double k, double rho, int flux_id):
    cdef Py_ssize_t n = Ae.shape[0]          # interior + 2 ghosts
    cdef Py_ssize_t m = n - 1                 # interfaces
    cdef Py_ssize_t j, i
    fa_np = np.empty(m)
    fq_np = np.empty(m)
    sl_np = np.empty(m)
    sr_np = np.empty(m)
    A1_np = np.empty(n - 2)
    Q1_np = np.empty(n - 2)
    cdef double[::1] fa = fa_np, fq = fq_np, sl = sl_np, sr = sr_np
    cdef double[::1] A1 = A1_np, Q1 = Q1_np
    cdef double dsa0, tl, tr, AL, AR, QL, QR
    with nogil:
        for j in range(m):
            dsa0 = sa0e[j + 1] - sa0e[j]
            if dsa0 == 0.0:
                AL = Ae[j]
                AR = Ae[j + 1]
                QL = Qe[j]
                QR = Qe[j + 1]
            else:
                tl = fmax(sqrt(Ae[j]) + fmin(dsa0, 0.0), 0.0)
                tr = fmax(sqrt(Ae[j + 1]) - fmax(dsa0, 0.0), 0.0)
                AL = tl * tl
                AR = tr * tr
                QL = AL * (Qe[j] / Ae[j])
                QR = AR * (Qe[j + 1] / Ae[j + 1])
            _flux(flux_id, AL, QL, AR, QR, k, rho, &fa[j], &fq[j])
            sl[j] = _ppot(Ae[j], k, rho) - _ppot(AL, k, rho)
            sr[j] = _ppot(Ae[j + 1], k, rho) - _ppot(AR, k, rho)
        for i in range(n - 2):
            A1[i] = Ae[i + 1] - dtdx * (fa[i + 1] - fa[i])
            Q1[i] = Qe[i + 1] - dtdx * ((fq[i + 1] + sl[i + 1]) - (fq[i] + sr[i]))
    return A1_np, Q1_np


cdef void _slopes(double[::1] s, double dx, int slope_id, double th_eno,
                  double th_enom, double[::1] d) noexcept nogil:
    cdef Py_ssize_t i, n = s.shape[0]
    cdef double dl, dr, dm, d2m, d2p, de, dx2 = dx * dx
    cdef double th = th_eno * 0.5 * dx
    for i in range(n):
        d[i] = 0.0
    for i in range(1, n - 1):
        dl = (s[i] - s[i - 1]) / dx
        dr = (s[i + 1] - s[i]) / dx
        dm = _minmod(dl, dr)
        if slope_id == 0:
            d[i] = dm
        elif 2 <= i <= n - 3:
            d2m = _minmod((s[i] - 2.0 * s[i - 1] + s[i - 2]) / dx2,
                          (s[i + 1] - 2.0 * s[i] + s[i - 1]) / dx2)
            d2p = _minmod((s[i + 1] - 2.0 * s[i] + s[i - 1]) / dx2,
                          (s[i + 2] - 2.0 * s[i + 1] + s[i]) / dx2)
            de = _minmod(dl + th * d2m, dr - th * d2p)
            d[i] = de if slope_id == 1 else _minmod(de, 2.0 * th_enom * dm)
    # first-order fallback at ghosts and the outermost interior cells
    d[1] = 0.0
    d[n - 2] = 0.0


def phi_second(double[::1] Ae, double[::1] Qe, double[::1] sa0e, double dx,
               double k, double rho, int flux_id, int slope_id,
               double th_eno, double th_enom):
    cdef Py_ssize_t n = Ae.shape[0]
    cdef Py_ssize_t m = n - 1
    cdef Py_ssize_t i, j
    work = np.empty((13, n))
    cdef double[:, ::1] w = work
    cdef double[::1] u = w[0], psi = w[1], da = w[2], du = w[3], dpsi = w[4]
    cdef double[::1] a_lo = w[5], a_hi = w[6], u_lo = w[7], u_hi = w[8]
    cdef double[::1] psi_lo = w[9], psi_hi = w[10], sa0_lo = w[11], sa0_hi = w[12]
    iface = np.empty((3, m))
    cdef double[:, ::1] wf = iface
    cdef double[::1] fa = wf[0], gl = wf[1], gr = wf[2]
    phia_np = np.empty(n - 2)
    phiq_np = np.empty(n - 2)
    cdef double[::1] phia = phia_np, phiq = phiq_np
    cdef double h = 0.5 * dx
    cdef double coef = k / (3.0 * rho * SQPI)
    cdef double s_lo_i, s_hi_i, sa0_min, tl, tr, AL, AR, QL, QR
    cdef double fqj, sp, sm, abar, dsa0_c, cent
    with nogil:
        for i in range(n):
            u[i] = Qe[i] / Ae[i]
            psi[i] = sqrt(Ae[i]) - sa0e[i]
        _slopes(Ae, dx, slope_id, th_eno, th_enom, da)
        _slopes(u, dx, slope_id, th_eno, th_enom, du)
        _slopes(psi, dx, slope_id, th_eno, th_enom, dpsi)
        for i in range(n):
            a_lo[i] = fmax(Ae[i] - h * da[i], 0.0)
            a_hi[i] = fmax(Ae[i] + h * da[i], 0.0)
            u_lo[i] = u[i] - (a_hi[i] / Ae[i]) * (h * du[i])
            u_hi[i] = u[i] + (a_lo[i] / Ae[i]) * (h * du[i])
            psi_lo[i] = psi[i] - h * dpsi[i]
            psi_hi[i] = psi[i] + h * dpsi[i]
            s_lo_i = sqrt(a_lo[i])
            s_hi_i = sqrt(a_hi[i])
            sa0_lo[i] = s_lo_i - psi_lo[i]
            sa0_hi[i] = s_hi_i - psi_hi[i]
        for j in range(m):
            sa0_min = fmin(sa0_hi[j], sa0_lo[j + 1])
            tl = fmax(psi_hi[j] + sa0_min, 0.0)
            tr = fmax(psi_lo[j + 1] + sa0_min, 0.0)
            AL = tl * tl
            AR = tr * tr
            QL = AL * u_hi[j]
            QR = AR * u_lo[j + 1]
            _flux(flux_id, AL, QL, AR, QR, k, rho, &fa[j], &fqj)
            gl[j] = fqj - _ppot(AL, k, rho)
            gr[j] = fqj - _ppot(AR, k, rho)
        for i in range(1, n - 1):
            sp = sqrt(a_hi[i])
            sm = sqrt(a_lo[i])
            abar = sp * sp + sp * sm + sm * sm
            dsa0_c = sa0_hi[i] - sa0_lo[i]
            cent = coef * abar * ((sp - sm) - dsa0_c)
            phia[i - 1] = -(fa[i] - fa[i - 1]) / dx
            phiq[i - 1] = -(gl[i] - gr[i - 1] + cent) / dx
    return phia_np, phiq_np
