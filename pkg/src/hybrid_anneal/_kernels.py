"""Compiled inner loops for the statevector engine.

The Hamiltonian is ``H = diag(E) + B * sum_i X_i`` in the computational
basis; ``X_i`` maps index ``a`` to ``a ^ (1 << i)``. Nothing here builds a
matrix of size 2**N x 2**N.
"""

import numpy as np
from numba import njit

# Lanczos convergence is checked at every size from _FIRST_CHECK up to
# _DENSE_CHECKS, then every _CHECK_EVERY vectors, and always at m_max.
_FIRST_CHECK = 4
_DENSE_CHECKS = 16
_CHECK_EVERY = 4
_BREAKDOWN = 1e-13
_MAX_RESTARTS = 10_000


@njit(cache=True)
def hamiltonian_matvec(energies, field, n_qubits, x, out):
    dim = x.size
    for a in range(dim):
        s = 0j
        for i in range(n_qubits):
            s += x[a ^ (1 << i)]
        out[a] = energies[a] * x[a] + field * s


@njit(cache=True)
def _vnorm(x):
    s = 0.0
    for k in range(x.size):
        s += x[k].real * x[k].real + x[k].imag * x[k].imag
    return np.sqrt(s)


@njit(cache=True)
def tridiag_edge_eig(diag, off, m):
    """Eigenvalues of the leading m x m symmetric tridiagonal block, with the
    first and last rows of its eigenvector matrix.

    Implicit-shift QL; only two rows of the rotation product are tracked, so
    the cost is O(m^2). Returns ``(lam, first_row, last_row, ok)``.
    """
    d = diag[:m].copy()
    e = np.zeros(m)
    for i in range(m - 1):
        e[i] = off[i]
    z0 = np.zeros(m)
    z1 = np.zeros(m)
    z0[0] = 1.0
    z1[m - 1] = 1.0
    eps = 2.220446049250313e-16
    for l in range(m):
        it = 0
        while True:
            mm = l
            while mm < m - 1:
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= eps * dd:
                    break
                mm += 1
            if mm == l:
                break
            it += 1
            if it > 60:
                return d, z0, z1, False
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.sqrt(g * g + 1.0)
            g = d[mm] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = mm - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.sqrt(f * f + g * g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[mm] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z0[i + 1]
                z0[i + 1] = s * z0[i] + c * f
                z0[i] = c * z0[i] - s * f
                f = z1[i + 1]
                z1[i + 1] = s * z1[i] + c * f
                z1[i] = c * z1[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[mm] = 0.0
    return d, z0, z1, True


@njit(cache=True)
def _tail_error(beta_m, u_last, u_first, lam, sign_dt):
    # |beta_m * e_m^T exp(-i T dt) e_1|, the standard a-posteriori estimate
    acc = 0j
    for k in range(lam.size):
        acc += u_last[k] * u_first[k] * np.exp(-1j * sign_dt * lam[k])
    return beta_m * abs(acc)


@njit(cache=True)
def krylov_propagate(energies, field, n_qubits, psi, t, tol, m_max):
    """Return ``(exp(-i H t) psi, n_matvec, last_error, ok)``.

    Lanczos with restarts: each restart builds a subspace of at most
    ``m_max`` vectors and advances by the largest substep whose error
    estimate stays within ``tol * substep / |t|``. ``ok`` is False when no
    positive substep satisfies that bound.
    """
    dim = psi.size
    m_max = min(m_max, dim)
    V = np.empty((m_max, dim), dtype=np.complex128)
    w = np.empty(dim, dtype=np.complex128)
    out = psi.copy()
    n_matvec, last_err, ok = _krylov_inplace(energies, field, n_qubits, out, t, tol, V, w)
    return out, n_matvec, last_err, ok


@njit(cache=True)
def adiabatic_integrate(energies, n_qubits, psi, total_time, dt, field0, decay, tol, m_max):
    """Piecewise-constant propagation under ``diag(E) + field0 exp(-t/decay) sum X``.

    The field of each step is sampled at the step midpoint; the state is
    renormalized after every step. Returns ``(psi, max_drift, total_drift,
    n_steps, ok, err)`` where drift is ``| ||psi|| - 1 |`` before renormalizing.
    """
    dim = psi.size
    m_max = min(m_max, dim)
    V = np.empty((m_max, dim), dtype=np.complex128)
    w = np.empty(dim, dtype=np.complex128)
    out = psi.copy()
    n_steps = 0
    if total_time > 0:
        n_steps = int(np.ceil(total_time / dt - 1e-9))
    max_drift = 0.0
    total_drift = 0.0
    t = 0.0
    for k in range(n_steps):
        h = dt
        if k == n_steps - 1:
            h = min(dt, total_time - t)
        field = field0 * np.exp(-(t + 0.5 * h) / decay)
        _, err, ok = _krylov_inplace(energies, field, n_qubits, out, h, tol, V, w)
        if not ok:
            return out, max_drift, total_drift, k, False, err
        nrm = _vnorm(out)
        drift = abs(nrm - 1.0)
        max_drift = max(max_drift, drift)
        total_drift += drift
        for i in range(dim):
            out[i] /= nrm
        t = (k + 1) * dt
    return out, max_drift, total_drift, n_steps, True, 0.0


@njit(cache=True)
def _krylov_inplace(energies, field, n_qubits, out, t, tol, V, w):
    dim = out.size
    m_max = V.shape[0]
    alpha = np.zeros(m_max)
    beta = np.zeros(m_max)
    sign = 1.0 if t >= 0 else -1.0
    t_abs = abs(t)
    t_done = 0.0
    n_matvec = 0
    last_err = 0.0
    if t_abs == 0.0:
        return n_matvec, last_err, True

    restarts = 0
    while t_done < t_abs:
        restarts += 1
        if restarts > _MAX_RESTARTS:
            return n_matvec, last_err, False
        remaining = t_abs - t_done
        nrm = _vnorm(out)
        for k in range(dim):
            V[0, k] = out[k] / nrm

        m = 0
        step = 0.0
        for j in range(m_max):
            hamiltonian_matvec(energies, field, n_qubits, V[j], w)
            n_matvec += 1
            a = 0.0
            for k in range(dim):
                a += (V[j, k].conjugate() * w[k]).real
            alpha[j] = a
            if j > 0:
                bprev = beta[j - 1]
                for k in range(dim):
                    w[k] -= a * V[j, k] + bprev * V[j - 1, k]
            else:
                for k in range(dim):
                    w[k] -= a * V[j, k]
            b = _vnorm(w)
            beta[j] = b
            m = j + 1

            scale = abs(a) + (beta[j - 1] if j > 0 else 0.0) + 1.0
            invariant = b < _BREAKDOWN * scale
            check = (
                invariant
                or m == m_max
                or (m >= _FIRST_CHECK and (m <= _DENSE_CHECKS or m % _CHECK_EVERY == 0))
            )
            if check:
                lam, u_first, u_last, qk = tridiag_edge_eig(alpha, beta, m)
                if not qk:
                    return n_matvec, np.inf, False
                if invariant:
                    step = remaining
                    last_err = 0.0
                    break
                err = _tail_error(b, u_last, u_first, lam, sign * remaining)
                if err <= tol * remaining / t_abs:
                    step = remaining
                    last_err = err
                    break
                if m == m_max:
                    # shrink the substep until the estimate fits the budget,
                    # then bisect back up towards the largest admissible one
                    lo = 0.0
                    hi = remaining
                    trial = remaining
                    for _ in range(60):
                        trial *= 0.5
                        e = _tail_error(b, u_last, u_first, lam, sign * trial)
                        if e <= tol * trial / t_abs:
                            lo = trial
                            last_err = e
                            break
                        hi = trial
                    if lo == 0.0:
                        return n_matvec, err, False
                    for _ in range(12):
                        mid = 0.5 * (lo + hi)
                        e = _tail_error(b, u_last, u_first, lam, sign * mid)
                        if e <= tol * mid / t_abs:
                            lo = mid
                            last_err = e
                        else:
                            hi = mid
                    step = lo
                    break
            if j + 1 < m_max:
                for k in range(dim):
                    V[j + 1, k] = w[k] / b

        T = np.zeros((m, m))
        for i in range(m):
            T[i, i] = alpha[i]
            if i + 1 < m:
                T[i, i + 1] = beta[i]
                T[i + 1, i] = beta[i]
        lam, U = np.linalg.eigh(T)
        # out = nrm * V_m^T U exp(-i lam step) U^T e_1
        coef = np.zeros(m, dtype=np.complex128)
        for i in range(m):
            acc = 0j
            for k in range(m):
                acc += U[i, k] * U[0, k] * np.exp(-1j * sign * step * lam[k])
            coef[i] = nrm * acc
        for k in range(dim):
            out[k] = 0j
        for i in range(m):
            c = coef[i]
            for k in range(dim):
                out[k] += c * V[i, k]
        t_done += step
        if remaining - step <= 1e-14 * t_abs:
            break

    return n_matvec, last_err, True
