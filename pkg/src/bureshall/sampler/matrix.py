"""Matrix-model sampler for physical (m, n): the second, independent route.

Per sample: an m x n standard complex Gaussian coefficient matrix Z is
superposed with its image under a random unitary, giving the reduced matrix
W = (I + U) Z Z^dag (I + U)^dag, whose normalized spectrum is a constrained-
ensemble draw.  U carries the weighted unitary measure with density
proportional to |det(I + U)|^(2 (n - m)) against Haar; it is sampled by
independence Metropolis with fresh Haar proposals (QR of a complex Ginibre
matrix with the R-diagonal phase fix), several updates per emitted sample.
At m = n the weight is identically 1 and U is exact Haar with no rejection.
"""

from typing import Optional

import numpy as np

from ..errors import ParameterError, TuningError
from ..moments import params_from_dims
from .mcmc import SampleBatch

MIN_U_ACCEPTANCE = 1e-3


def _haar_unitary(rng, size: int, m: int) -> np.ndarray:
    z = (rng.standard_normal((size, m, m)) + 1j * rng.standard_normal((size, m, m)))
    z /= np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.einsum("...ii->...i", r)
    return q * (d / np.abs(d))[:, None, :]


def _u_steps_default(nu: int) -> int:
    # heavier tails of the weight at larger nu need more decorrelation
    return max(3, nu * (nu + 1) + 1)


def sample_matrix_model(m: int, n: int, count: int, seed: int,
                        chains: int = 64,
                        u_steps: Optional[int] = None) -> SampleBatch:
    """Constrained-ensemble entropy samples through the matrix model."""
    if not 1 <= m <= n:
        raise ParameterError(f"require 1 <= m <= n, got m={m}, n={n}")
    if count < 1:
        raise ParameterError("count must be positive")
    params = params_from_dims(m, n)
    nu = n - m
    rng = np.random.default_rng(seed)
    k = min(chains, count)
    steps = u_steps if u_steps is not None else _u_steps_default(nu)
    rounds = (count + k - 1) // k

    eye = np.eye(m)
    if nu > 0:
        u_mat = _haar_unitary(rng, k, m)
        logw = 2.0 * nu * np.linalg.slogdet(eye + u_mat)[1]
        accepted = 0
        proposed = 0
    s_chunks = []
    emitted = 0
    for _ in range(rounds):
        if nu > 0:
            for _ in range(steps):
                cand = _haar_unitary(rng, k, m)
                logw_cand = 2.0 * nu * np.linalg.slogdet(eye + cand)[1]
                take = np.log(rng.random(k)) < logw_cand - logw
                u_mat[take] = cand[take]
                logw[take] = logw_cand[take]
                accepted += int(take.sum())
                proposed += k
            a = eye + u_mat
        else:
            a = eye + _haar_unitary(rng, k, m)
        z = (rng.standard_normal((k, m, n)) + 1j * rng.standard_normal((k, m, n)))
        z /= np.sqrt(2.0)
        az = a @ z
        w = az @ np.conjugate(np.swapaxes(az, -1, -2))
        w = 0.5 * (w + np.conjugate(np.swapaxes(w, -1, -2)))
        lam = np.linalg.eigvalsh(w)
        lam = np.clip(lam, 0.0, None)
        lam /= lam.sum(axis=1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(lam > 0.0, lam * np.log(lam), 0.0)
        s_chunks.append(-terms.sum(axis=1))
        emitted += k

    values = np.concatenate(s_chunks)[:count]
    if nu > 0:
        rate = accepted / proposed
        if rate < MIN_U_ACCEPTANCE:
            raise TuningError(
                f"independence-Metropolis acceptance {rate:.2e} too low at "
                f"(m={m}, n={n}); the weighted unitary measure is out of reach "
                "of Haar proposals at this size")
    else:
        rate = 1.0
    return SampleBatch(params=params, kind="constrained", values=values,
                       seed=seed, method="matrix", acceptance_rate=rate,
                       spectra=None, backend="matrix")
