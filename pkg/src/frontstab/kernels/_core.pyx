# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 stepper for the reaction-diffusion system.

Hot path of the nonlinear simulations; mirrors _ref.run_steps exactly.
"""

from libc.math cimport fabs

DEF MAX_CHANNELS = 8
DEF BLOWUP_LIMIT = 1e6


cdef void _rhs(double[:, ::1] u, double[:, ::1] v,
               double[:, ::1] du, double[:, ::1] dv,
               double inv_dz2, double inv_dr2, double gamma, double eps,
               double kgain, double[:, :, ::1] psi, double[:, ::1] mix,
               long long[::1] siz, long long[::1] sir,
               double[:, ::1] sw, double[::1] setp) noexcept nogil:
    cdef Py_ssize_t nz = u.shape[0]
    cdef Py_ssize_t nr = u.shape[1]
    cdef Py_ssize_t eta = psi.shape[0]
    cdef Py_ssize_t i, jr, d, c, iu, idn, ju, jd
    cdef double dev[MAX_CHANNELS]
    cdef double coef[MAX_CHANNELS]
    cdef double uc, lam, acc
    cdef long long bz, br

    for d in range(eta):
        bz = siz[d]
        br = sir[d]
        dev[d] = (sw[d, 0] * u[bz, br] + sw[d, 1] * u[bz, br + 1]
                  + sw[d, 2] * u[bz + 1, br] + sw[d, 3] * u[bz + 1, br + 1]
                  - setp[d])
    for d in range(eta):
        acc = 0.0
        for c in range(eta):
            acc += mix[d, c] * dev[c]
        coef[d] = kgain * acc

    for i in range(nz):
        iu = i - 1 if i > 0 else 1
        idn = i + 1 if i < nz - 1 else nz - 2
        for jr in range(nr):
            ju = jr - 1 if jr > 0 else 1
            jd = jr + 1 if jr < nr - 1 else nr - 2
            uc = u[i, jr]
            lam = 0.0
            for d in range(eta):
                lam += coef[d] * psi[d, i, jr]
            du[i, jr] = ((u[iu, jr] - 2.0 * uc + u[idn, jr]) * inv_dz2
                         + (u[i, ju] - 2.0 * uc + u[i, jd]) * inv_dr2
                         + (-uc * uc * uc + uc + v[i, jr]) + lam)
            dv[i, jr] = -eps * (gamma * uc + v[i, jr])


def run_steps(double[:, ::1] y, double[:, ::1] th, int nsteps, double dt,
              double inv_dz2, double inv_dr2, double gamma, double eps,
              double kgain, double[:, :, ::1] psi, double[:, ::1] mix,
              long long[::1] siz, long long[::1] sir,
              double[:, ::1] sw, double[::1] setp,
              double[:, ::1] sy, double[:, ::1] sth,
              double[:, ::1] accy, double[:, ::1] accth,
              double[:, ::1] dy, double[:, ::1] dth):
    """Advance (y, th) in place by up to nsteps RK4 steps.

    Returns the number of completed steps; fewer than nsteps means the
    activator state stopped being finite after the last completed step.
    """
    cdef Py_ssize_t nz = y.shape[0]
    cdef Py_ssize_t nr = y.shape[1]
    cdef Py_ssize_t i, jr
    cdef int s
    cdef int completed = nsteps
    cdef double val
    cdef bint bad
    if psi.shape[0] > MAX_CHANNELS:
        raise ValueError("at most %d feedback channels are supported" % MAX_CHANNELS)

    with nogil:
        for s in range(nsteps):
            _rhs(y, th, dy, dth, inv_dz2, inv_dr2, gamma, eps, kgain,
                 psi, mix, siz, sir, sw, setp)
            for i in range(nz):
                for jr in range(nr):
                    accy[i, jr] = dy[i, jr]
                    accth[i, jr] = dth[i, jr]
                    sy[i, jr] = y[i, jr] + 0.5 * dt * dy[i, jr]
                    sth[i, jr] = th[i, jr] + 0.5 * dt * dth[i, jr]

            _rhs(sy, sth, dy, dth, inv_dz2, inv_dr2, gamma, eps, kgain,
                 psi, mix, siz, sir, sw, setp)
            for i in range(nz):
                for jr in range(nr):
                    accy[i, jr] += 2.0 * dy[i, jr]
                    accth[i, jr] += 2.0 * dth[i, jr]
                    sy[i, jr] = y[i, jr] + 0.5 * dt * dy[i, jr]
                    sth[i, jr] = th[i, jr] + 0.5 * dt * dth[i, jr]

            _rhs(sy, sth, dy, dth, inv_dz2, inv_dr2, gamma, eps, kgain,
                 psi, mix, siz, sir, sw, setp)
            for i in range(nz):
                for jr in range(nr):
                    accy[i, jr] += 2.0 * dy[i, jr]
                    accth[i, jr] += 2.0 * dth[i, jr]
                    sy[i, jr] = y[i, jr] + dt * dy[i, jr]
                    sth[i, jr] = th[i, jr] + dt * dth[i, jr]

            _rhs(sy, sth, dy, dth, inv_dz2, inv_dr2, gamma, eps, kgain,
                 psi, mix, siz, sir, sw, setp)
            bad = False
            for i in range(nz):
                for jr in range(nr):
                    accy[i, jr] += dy[i, jr]
                    accth[i, jr] += dth[i, jr]
                    val = y[i, jr] + (dt / 6.0) * accy[i, jr]
                    y[i, jr] = val
                    th[i, jr] = th[i, jr] + (dt / 6.0) * accth[i, jr]
                    if not (fabs(val) <= BLOWUP_LIMIT):
                        bad = True
            if bad:
                completed = s
                break
    return completed
