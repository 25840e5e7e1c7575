# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernel.

Twin of ``_kernel_py.simulate_runs``: identical floating-point operations in
identical order through libm, so outputs are bit-identical to the fallback.
Keep any edit synchronized.  Built without FMA contraction (see setup.py).
"""

from libc.math cimport erfc, exp, log, pow, sqrt

BACKEND_NAME = "compiled"

cdef double _SQRT2 = sqrt(2.0)
cdef double _SQRT_2PI = sqrt(2.0 * 3.141592653589793)
cdef double _P_LOW = 0.02425

cdef double _A0 = -3.969683028665376e+01
cdef double _A1 = 2.209460984245205e+02
cdef double _A2 = -2.759285104469687e+02
cdef double _A3 = 1.383577518672690e+02
cdef double _A4 = -3.066479806614716e+01
cdef double _A5 = 2.506628277459239e+00
cdef double _B0 = -5.447609879822406e+01
cdef double _B1 = 1.615858368580409e+02
cdef double _B2 = -1.556989798598866e+02
cdef double _B3 = 6.680131188771972e+01
cdef double _B4 = -1.328068155288572e+01
cdef double _C0 = -7.784894002430293e-03
cdef double _C1 = -3.223964580411365e-01
cdef double _C2 = -2.400758277161838e+00
cdef double _C3 = -2.549732539343734e+00
cdef double _C4 = 4.374664141464968e+00
cdef double _C5 = 2.938163982698783e+00
cdef double _D0 = 7.784695709041462e-03
cdef double _D1 = 3.224671290700398e-01
cdef double _D2 = 2.445134137142996e+00
cdef double _D3 = 3.754408661907416e+00


cdef double _ppf_half(double u) noexcept nogil:
    cdef double q, r, z, e, t
    if u < _P_LOW:
        q = sqrt(-2.0 * log(u))
        z = (((((_C0 * q + _C1) * q + _C2) * q + _C3) * q + _C4) * q + _C5) / \
            ((((_D0 * q + _D1) * q + _D2) * q + _D3) * q + 1.0)
    else:
        q = u - 0.5
        r = q * q
        z = (((((_A0 * r + _A1) * r + _A2) * r + _A3) * r + _A4) * r + _A5) * q / \
            (((((_B0 * r + _B1) * r + _B2) * r + _B3) * r + _B4) * r + 1.0)
    if z > -37.5:
        e = 0.5 * erfc(-z / _SQRT2) - u
        t = e * _SQRT_2PI * exp(z * z / 2.0)
        z = z - t / (1.0 + z * t / 2.0)
    return z


cdef double _ppf(double u) noexcept nogil:
    if u > 0.5:
        return -_ppf_half(1.0 - u)
    return _ppf_half(u)


def inverse_normal_cdf(double u):
    """Exposed for kernel-equivalence tests; u must lie in (0, 1)."""
    return _ppf(u)


def simulate_runs(double[:, ::1] u3, double a, double beta, double sigma,
                  double x, double i_beta, double i_sigma,
                  double[::1] x_tilde, double[::1] demand,
                  double[::1] counteroffer, double[::1] alpha,
                  double[::1] attacker, double[::1] defender,
                  unsigned char[::1] kind):
    """Play one game per row of u3; see the pure-Python twin for semantics."""
    cdef Py_ssize_t i, n = u3.shape[0]
    cdef double cost = i_beta + i_sigma
    cdef double k = a * beta / (1.0 + a)
    cdef double c_max = k * x
    cdef double z, xt, r, c, al
    cdef bint full, aggressive

    with nogil:
        for i in range(n):
            z = _ppf(u3[i, 0])
            xt = x * exp(sigma * z)
            r = k * xt
            full = r <= c_max
            if full:
                c = r
                al = 0.0
                aggressive = False
            else:
                c = c_max
                al = 1.0 - pow(c / r, a)
                aggressive = u3[i, 1] < al
            x_tilde[i] = xt
            demand[i] = r
            counteroffer[i] = c
            alpha[i] = al
            if aggressive:
                kind[i] = 0
                attacker[i] = -cost
                defender[i] = -x
            else:
                attacker[i] = c - cost
                if u3[i, 2] < beta:
                    kind[i] = 3 if full else 1
                    defender[i] = -c
                else:
                    kind[i] = 4 if full else 2
                    defender[i] = -x - c
