# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Metropolis block kernel.

Same contract and same floating-point expression trees as _fallback.py; the
only difference is that the chain loop runs in C.  Keep the two in sync.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, log

cnp.import_array()


cdef double _log_density_one(double* u, double* x, Py_ssize_t m, double alpha) nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t i, j
    for i in range(m):
        for j in range(i + 1, m):
            acc += 2.0 * log(fabs(x[i] - x[j])) - log(x[i] + x[j])
    for i in range(m):
        acc += (alpha + 1.0) * u[i] - x[i]
    return acc


def log_density(double[:, ::1] u, double[:, ::1] x, double alpha):
    cdef Py_ssize_t n_chains = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    out = np.empty(n_chains)
    cdef double[::1] o = out
    cdef Py_ssize_t c
    for c in range(n_chains):
        o[c] = _log_density_one(&u[c, 0], &x[c, 0], m, alpha)
    return out


def metropolis_blocks(double[:, ::1] u, double[:, ::1] x, double[::1] logp,
                      double sigma, double alpha,
                      double[:, :, ::1] normals, double[:, ::1] logu,
                      cnp.int64_t[::1] accepts):
    cdef Py_ssize_t steps = normals.shape[0]
    cdef Py_ssize_t n_chains = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    cdef Py_ssize_t b, c, i
    cdef double lp_new
    u_new_arr = np.empty(m)
    x_new_arr = np.empty(m)
    cdef double[::1] u_new = u_new_arr
    cdef double[::1] x_new = x_new_arr
    with nogil:
        for b in range(steps):
            for c in range(n_chains):
                for i in range(m):
                    u_new[i] = u[c, i] + sigma * normals[b, c, i]
                    x_new[i] = exp(u_new[i])
                lp_new = _log_density_one(&u_new[0], &x_new[0], m, alpha)
                if logu[b, c] < lp_new - logp[c]:
                    for i in range(m):
                        u[c, i] = u_new[i]
                        x[c, i] = x_new[i]
                    logp[c] = lp_new
                    accepts[c] += 1
