# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the per-frequency kernels (see ``_pykernels``)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport M_PI, cos, sin, sqrt, fabs, INFINITY

cnp.import_array()

ctypedef double complex cplx

cdef inline double cabs(cplx z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def junction_y(freqs, double l0, double w0, double sigma, double gamma,
               double loss_rate, double wm):
    shape = np.shape(freqs)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] fr = np.ascontiguousarray(
        np.atleast_1d(np.asarray(freqs, dtype=np.float64)).ravel())
    cdef Py_ssize_t n = fr.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] y11 = np.empty(n, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] y21 = np.empty(n, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] y31 = np.empty(n, np.complex128)
    cdef double res = sigma * w0 * w0
    cdef double coupling = (w0 * w0 * gamma) * (w0 * w0 * gamma) / 4.0
    cdef cplx a = cos(2.0 * M_PI / 3.0) + 1j * sin(2.0 * M_PI / 3.0)
    cdef cplx ac = a.conjugate()
    cdef cplx d0, dp, dn, bp, bm, lead, ip, im
    cdef double w, wp, wn, lo = INFINITY, v
    with nogil:
        for i in range(n):
            w = 2.0 * M_PI * fr[i]
            d0 = (w * w - res) - 1j * (loss_rate * w)
            if coupling == 0.0:
                bp = d0
                bm = d0
                v = cabs(d0)
                if v < lo:
                    lo = v
            else:
                wp = w + wm
                wn = w - wm
                dp = (wp * wp - res) - 1j * (loss_rate * wp)
                dn = (wn * wn - res) - 1j * (loss_rate * wn)
                bp = d0 - coupling / dp
                bm = d0 - coupling / dn
                v = cabs(dp)
                if v < lo:
                    lo = v
                v = cabs(dn)
                if v < lo:
                    lo = v
                v = cabs(bp)
                if v < lo:
                    lo = v
                v = cabs(bm)
                if v < lo:
                    lo = v
            lead = -1j * w / (3.0 * l0)
            ip = lead / bp
            im = lead / bm
            y11[i] = 2.0 * (ip + im)
            y21[i] = 2.0 * (a * ip + ac * im)
            y31[i] = 2.0 * (ac * ip + a * im)
    return y11.reshape(shape), y21.reshape(shape), y31.reshape(shape), lo / res


def cyclic_convert(d, f, b, double y0, bint to_admittance):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dd, ff, bb
    dd, ff, bb = [np.ascontiguousarray(arr, dtype=np.complex128).ravel()
                  for arr in np.broadcast_arrays(np.atleast_1d(d), np.atleast_1d(f), np.atleast_1d(b))]
    cdef Py_ssize_t n = dd.shape[0], i, k
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] od = np.empty(n, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] of = np.empty(n, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ob = np.empty(n, np.complex128)
    cdef cplx a = cos(2.0 * M_PI / 3.0) + 1j * sin(2.0 * M_PI / 3.0)
    cdef cplx ac = a.conjugate()
    cdef cplx lam[3]
    cdef cplx out[3]
    cdef cplx den
    cdef double hi, lo, v, cond = 1.0
    with nogil:
        for i in range(n):
            lam[0] = dd[i] + ff[i] + bb[i]
            lam[1] = dd[i] + ff[i] * ac + bb[i] * a
            lam[2] = dd[i] + ff[i] * a + bb[i] * ac
            hi = 0.0
            lo = INFINITY
            for k in range(3):
                if to_admittance:
                    den = 1.0 + lam[k]
                    out[k] = y0 * (1.0 - lam[k]) / den
                else:
                    den = y0 + lam[k]
                    out[k] = (y0 - lam[k]) / den
                v = cabs(den)
                if v > hi:
                    hi = v
                if v < lo:
                    lo = v
            if lo > 0.0:
                v = hi / lo
            else:
                v = INFINITY
            if v > cond:
                cond = v
            od[i] = (out[0] + out[1] + out[2]) / 3.0
            of[i] = (out[0] + out[1] * a + out[2] * ac) / 3.0
            ob[i] = (out[0] + out[1] * ac + out[2] * a) / 3.0
    shape = np.broadcast(np.asarray(d), np.asarray(f), np.asarray(b)).shape
    return od.reshape(shape), of.reshape(shape), ob.reshape(shape), cond


def mason(s11, s21, s31, r, t, m):
    arrs = np.broadcast_arrays(*(np.asarray(arr, dtype=np.complex128) for arr in (s11, s21, s31, r, t, m)))
    shape = arrs[0].shape
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] a11, a21, a31, ar, at, am
    a11, a21, a31, ar, at, am = [np.ascontiguousarray(arr).ravel() for arr in arrs]
    cdef Py_ssize_t n = a11.shape[0], i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] o11 = np.empty(n, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] o21 = np.empty(n, np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] o31 = np.empty(n, np.complex128)
    cdef cplx st, x, c, d1, delta, m2, one, s21c, s31c, tt
    cdef double lo = INFINITY, v
    with nogil:
        for i in range(n):
            st = a11[i] * at[i]
            tt = at[i] * at[i]
            x = a21[i] * a31[i] * tt
            s21c = a21[i] * a21[i] * a21[i]
            s31c = a31[i] * a31[i] * a31[i]
            # forward and backward three-port loops
            c = (s21c + s31c) * tt * at[i]
            d1 = 1.0 + st * st - (2.0 * st + x)
            delta = 1.0 - st * st * st + (3.0 * st * st + 3.0 * st * x) - (3.0 * st + 3.0 * x + c)
            v = cabs(delta)
            if v < lo:
                lo = v
            m2 = am[i] * am[i]
            one = 1.0 - st
            o11[i] = ar[i] + (d1 * m2 * a11[i] + 2.0 * m2 * a21[i] * a31[i] * at[i] * one
                              + m2 * (s21c + s31c) * tt) / delta
            o21[i] = m2 * (a21[i] * one + a31[i] * a31[i] * at[i]) / delta
            o31[i] = m2 * (a31[i] * one + a21[i] * a21[i] * at[i]) / delta
    return o11.reshape(shape), o21.reshape(shape), o31.reshape(shape), lo
