"""Pure numpy implementations of the hot kernels.

Same contracts as the compiled module ``_kernels``; `_backend` picks
whichever is importable.  Keep the two in algorithmic lockstep: the
Jacobi sweep order and rotation formulas must match so both backends
produce the same spectra up to roundoff.
"""

import numpy as np

from .errors import ConvergenceError

JACOBI_REL_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(mat, rel_tol=JACOBI_REL_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Reads the upper triangle (the lower is assumed conjugate).  Returns
    ``(w, v)`` with eigenvalues ``w`` ascending and eigenvectors in the
    columns of ``v``.  Converged when the off-diagonal Frobenius mass
    drops below ``rel_tol`` times the Frobenius norm of the input.
    """
    b = np.array(mat, dtype=np.complex128)
    n = b.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return b.real.reshape(1).copy(), v
    fro = float(np.linalg.norm(b))
    if fro == 0.0:
        return np.zeros(n), v
    off_target = rel_tol * fro
    # Rotations on entries already this small cannot push the off-diagonal
    # mass above the convergence target, so skip them.
    skip = off_target / (2.0 * n)

    for _ in range(max_sweeps):
        # Sum off-diagonal squares directly: subtracting the diagonal from
        # the total cancels catastrophically once the mass is near eps*fro^2.
        abs2 = b.real**2 + b.imag**2
        np.fill_diagonal(abs2, 0.0)
        off2 = float(abs2.sum())
        if np.sqrt(off2) <= off_target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = b[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                app = b[p, p].real
                aqq = b[q, q].real
                phase = apq / r
                tau = (aqq - app) / (2.0 * r)
                t = np.sign(tau) / (abs(tau) + np.hypot(1.0, tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                sigma = t * c
                s = sigma * phase

                col_p = b[:, p].copy()
                col_q = b[:, q].copy()
                b[:, p] = c * col_p - np.conj(s) * col_q
                b[:, q] = s * col_p + c * col_q
                row_p = b[p, :].copy()
                row_q = b[q, :].copy()
                b[p, :] = c * row_p - s * row_q
                b[q, :] = np.conj(s) * row_p + c * row_q
                # These are exact by construction; writing them kills drift.
                b[p, p] = c * c * app + sigma * sigma * aqq - 2.0 * c * sigma * r
                b[q, q] = sigma * sigma * app + c * c * aqq + 2.0 * c * sigma * r
                b[p, q] = 0.0
                b[q, p] = 0.0

                vcol_p = v[:, p].copy()
                vcol_q = v[:, q].copy()
                v[:, p] = c * vcol_p - np.conj(s) * vcol_q
                v[:, q] = s * vcol_p + c * vcol_q
    else:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps"
        )

    w = np.diagonal(b).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def moments_pure(mats, psi):
    """First and second moments of Hermitian ``mats`` in pure state ``psi``.

    Returns ``(means, seconds, max_imag)`` where ``seconds[m]`` is
    ``<psi| mats[m]^2 |psi>`` computed as ``||mats[m] psi||^2`` and
    ``max_imag`` is the largest imaginary residue seen in the means.
    """
    w = mats @ psi
    means_c = np.einsum("k,mk->m", np.conj(psi), w)
    seconds = np.einsum("mk,mk->m", np.conj(w), w).real
    max_imag = float(np.max(np.abs(means_c.imag), initial=0.0))
    return np.ascontiguousarray(means_c.real), np.ascontiguousarray(seconds), max_imag


def moments_density(mats, rho):
    """Moments of Hermitian ``mats`` in density matrix ``rho`` via traces."""
    means_c = np.einsum("ij,mji->m", rho, mats)
    tmp = rho @ mats
    seconds_c = np.einsum("mik,mki->m", tmp, mats)
    max_imag = float(
        max(
            np.max(np.abs(means_c.imag), initial=0.0),
            np.max(np.abs(seconds_c.imag), initial=0.0),
        )
    )
    return (
        np.ascontiguousarray(means_c.real),
        np.ascontiguousarray(seconds_c.real),
        max_imag,
    )
