"""Pure-numpy Metropolis block kernel.

This is the import-time fallback for the compiled core.  The arithmetic is
written to match the compiled loop operation for operation (same pair order,
same expression trees), vectorized across chains only, so both backends
consume one random stream and produce the same chains.
"""

import numpy as np


def log_density(u, x, alpha):
    """log h at log-coordinates u (x = e^u precomputed), per chain.

    sum_{i<j} [2 ln|x_i - x_j| - ln(x_i + x_j)] + sum_i [(alpha+1) u_i - x_i];
    the (alpha+1) term includes the Jacobian of the log transform.
    """
    n_chains, m = x.shape
    acc = np.zeros(n_chains)
    with np.errstate(divide="ignore"):
        for i in range(m):
            for j in range(i + 1, m):
                acc += 2.0 * np.log(np.abs(x[:, i] - x[:, j])) - np.log(x[:, i] + x[:, j])
    for i in range(m):
        acc += (alpha + 1.0) * u[:, i] - x[:, i]
    return acc


def metropolis_blocks(u, x, logp, sigma, alpha, normals, logu, accepts):
    """Advance every chain through normals.shape[0] full-vector proposals.

    u, x, logp and accepts are updated in place; normals has shape
    (steps, chains, m) and logu (steps, chains) holds pre-drawn ln(uniform).
    """
    steps = normals.shape[0]
    for b in range(steps):
        u_new = u + sigma * normals[b]
        x_new = np.exp(u_new)
        lp_new = log_density(u_new, x_new, alpha)
        accept = logu[b] < lp_new - logp
        u[accept] = u_new[accept]
        x[accept] = x_new[accept]
        logp[accept] = lp_new[accept]
        accepts += accept
