"""Pure-NumPy reference kernels for the explicit RK4 time stepper.

Semantics match the compiled core exactly: mirrored-ghost Neumann
Laplacian, cubic kinetics, optional point-sensor feedback evaluated at
every stage, and a blowup guard |y| <= 1e6 after each step.
"""

import numpy as np

BLOWUP_LIMIT = 1e6


def _rhs(u, v, du, dv, inv_dz2, inv_dr2, gamma, eps, kgain, psi, mix, siz, sir, sw, setp):
    du[1:-1, :] = (u[:-2, :] - 2.0 * u[1:-1, :] + u[2:, :]) * inv_dz2
    du[0, :] = 2.0 * (u[1, :] - u[0, :]) * inv_dz2
    du[-1, :] = 2.0 * (u[-2, :] - u[-1, :]) * inv_dz2
    du[:, 1:-1] += (u[:, :-2] - 2.0 * u[:, 1:-1] + u[:, 2:]) * inv_dr2
    du[:, 0] += 2.0 * (u[:, 1] - u[:, 0]) * inv_dr2
    du[:, -1] += 2.0 * (u[:, -2] - u[:, -1]) * inv_dr2
    du += -(u**3) + u + v
    eta = psi.shape[0]
    if eta:
        dev = np.empty(eta)
        for d in range(eta):
            iz, ir = siz[d], sir[d]
            dev[d] = (
                sw[d, 0] * u[iz, ir]
                + sw[d, 1] * u[iz, ir + 1]
                + sw[d, 2] * u[iz + 1, ir]
                + sw[d, 3] * u[iz + 1, ir + 1]
                - setp[d]
            )
        coef = kgain * (mix @ dev)
        du += np.tensordot(coef, psi, axes=1)
    dv[:] = -eps * (gamma * u + v)


def run_steps(
    y, th, nsteps, dt, inv_dz2, inv_dr2, gamma, eps, kgain,
    psi, mix, siz, sir, sw, setp,
    sy, sth, accy, accth, dy, dth,
):
    """Advance (y, th) in place by up to nsteps RK4 steps.

    Returns the number of completed steps; a value below nsteps means the
    state stopped being finite (or exceeded the blowup limit) after the
    last completed step.
    """
    args = (inv_dz2, inv_dr2, gamma, eps, kgain, psi, mix, siz, sir, sw, setp)
    for s in range(nsteps):
        _rhs(y, th, dy, dth, *args)
        accy[:] = dy
        accth[:] = dth
        np.multiply(dy, 0.5 * dt, out=sy)
        sy += y
        np.multiply(dth, 0.5 * dt, out=sth)
        sth += th

        _rhs(sy, sth, dy, dth, *args)
        accy += 2.0 * dy
        accth += 2.0 * dth
        np.multiply(dy, 0.5 * dt, out=sy)
        sy += y
        np.multiply(dth, 0.5 * dt, out=sth)
        sth += th

        _rhs(sy, sth, dy, dth, *args)
        accy += 2.0 * dy
        accth += 2.0 * dth
        np.multiply(dy, dt, out=sy)
        sy += y
        np.multiply(dth, dt, out=sth)
        sth += th

        _rhs(sy, sth, dy, dth, *args)
        accy += dy
        accth += dth
        y += (dt / 6.0) * accy
        th += (dt / 6.0) * accth

        peak = np.max(np.abs(y))
        if not peak <= BLOWUP_LIMIT:
            return s
    return nsteps
