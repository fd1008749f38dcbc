# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the `_fallback` kernels.

Same algorithms, same rotation formulas, same convergence rule; only
the loop mechanics differ.  Keep edits mirrored in `_fallback.py`.
"""

import numpy as np

from .errors import ConvergenceError

from libc.math cimport sqrt, fabs

JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(mat, double rel_tol=1e-13, int max_sweeps=100):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Reads the upper triangle (the lower is assumed conjugate).  Returns
    ``(w, v)`` with eigenvalues ascending, eigenvectors in columns of v.
    """
    b_arr = np.array(mat, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = b_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.ascontiguousarray(b_arr.real.reshape(1)), v_arr

    cdef double complex[:, ::1] b = b_arr
    cdef double complex[:, ::1] v = v_arr
    cdef double fro = 0.0, off2, app, aqq, r, tau, t, c, sigma, sgn
    cdef double complex apq, phase, s, sc, bkp, bkq, vkp, vkq
    cdef Py_ssize_t p, q, k, sweep
    cdef bint converged = 0

    for p in range(n):
        for q in range(n):
            fro += b[p, q].real * b[p, q].real + b[p, q].imag * b[p, q].imag
    fro = sqrt(fro)
    if fro == 0.0:
        return np.zeros(n), v_arr

    cdef double off_target = rel_tol * fro
    # Entries at or below this cannot lift the off-diagonal mass above
    # the convergence target, so rotating on them is wasted work.
    cdef double skip = off_target / (2.0 * n)

    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off2 += b[p, q].real * b[p, q].real + b[p, q].imag * b[p, q].imag
        if sqrt(off2 if off2 > 0.0 else 0.0) <= off_target:
            converged = 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = b[p, q]
                r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                if r <= skip:
                    continue
                app = b[p, p].real
                aqq = b[q, q].real
                phase = apq / r
                tau = (aqq - app) / (2.0 * r)
                if tau != 0.0:
                    sgn = 1.0 if tau > 0.0 else -1.0
                    t = sgn / (fabs(tau) + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0
                c = 1.0 / sqrt(1.0 + t * t)
                sigma = t * c
                s = sigma * phase
                sc = s.conjugate()

                for k in range(n):
                    if k == p or k == q:
                        continue
                    bkp = b[k, p]
                    bkq = b[k, q]
                    b[k, p] = c * bkp - sc * bkq
                    b[k, q] = s * bkp + c * bkq
                    b[p, k] = b[k, p].conjugate()
                    b[q, k] = b[k, q].conjugate()
                b[p, p] = c * c * app + sigma * sigma * aqq - 2.0 * c * sigma * r
                b[q, q] = sigma * sigma * app + c * c * aqq + 2.0 * c * sigma * r
                b[p, q] = 0.0
                b[q, p] = 0.0

                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sc * vkq
                    v[k, q] = s * vkp + c * vkq

    if not converged:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps"
        )

    w_arr = np.ascontiguousarray(np.diagonal(b_arr).real)
    order = np.argsort(w_arr, kind="stable")
    return w_arr[order], v_arr[:, order]


def moments_pure(mats, psi):
    """First/second moments of Hermitian ``mats`` in pure state ``psi``.

    seconds[m] = ||mats[m] psi||^2; max_imag tracks the means' residue.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    cdef const double complex[:, :, ::1] a = mats
    cdef const double complex[::1] x = psi
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    means_arr = np.empty(m)
    seconds_arr = np.empty(m)
    cdef double[::1] means = means_arr
    cdef double[::1] seconds = seconds_arr
    cdef double max_imag = 0.0, second, im
    cdef double complex wk, mean
    cdef Py_ssize_t i, k, l

    for i in range(m):
        mean = 0.0
        second = 0.0
        for k in range(n):
            wk = 0.0
            for l in range(n):
                wk = wk + a[i, k, l] * x[l]
            mean = mean + x[k].conjugate() * wk
            second += wk.real * wk.real + wk.imag * wk.imag
        means[i] = mean.real
        seconds[i] = second
        im = fabs(mean.imag)
        if im > max_imag:
            max_imag = im
    return means_arr, seconds_arr, max_imag


def moments_density(mats, rho):
    """Moments of Hermitian ``mats`` in density matrix ``rho`` via traces."""
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const double complex[:, :, ::1] a = mats
    cdef const double complex[:, ::1] d = rho
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    means_arr = np.empty(m)
    seconds_arr = np.empty(m)
    cdef double[::1] means = means_arr
    cdef double[::1] seconds = seconds_arr
    cdef double max_imag = 0.0, im
    cdef double complex mean, second, rjk
    cdef Py_ssize_t i, j, k, l

    for i in range(m):
        mean = 0.0
        second = 0.0
        for j in range(n):
            for k in range(n):
                rjk = d[j, k]
                mean = mean + rjk * a[i, k, j]
                # second accumulates Tr(rho A A) = sum_jkl rho_jk A_kl A_lj
                for l in range(n):
                    second = second + rjk * a[i, k, l] * a[i, l, j]
        means[i] = mean.real
        seconds[i] = second.real
        im = fabs(mean.imag)
        if im > max_imag:
            max_imag = im
        im = fabs(second.imag)
        if im > max_imag:
            max_imag = im
    return means_arr, seconds_arr, max_imag
