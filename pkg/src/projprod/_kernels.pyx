# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled power-norm kernel: ||A^m - L||_2 for m = 1, 2, ... via BLAS/LAPACK."""

import numpy as np

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy
from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zgesvd


cdef class _SVDWork:
    cdef int n
    cdef int lwork
    cdef double complex *work
    cdef double *rwork
    cdef double *s
    cdef double complex *scratch
    cdef double complex dummy

    def __cinit__(self, int n):
        cdef int info = 0, lwork = -1, one = 1
        cdef double complex query
        cdef char job = b'N'
        self.n = n
        self.s = <double *> malloc(n * sizeof(double))
        self.rwork = <double *> malloc(5 * n * sizeof(double))
        self.scratch = <double complex *> malloc(n * n * sizeof(double complex))
        if self.s == NULL or self.rwork == NULL or self.scratch == NULL:
            raise MemoryError()
        zgesvd(&job, &job, &n, &n, self.scratch, &n, self.s, &self.dummy, &one,
               &self.dummy, &one, &query, &lwork, self.rwork, &info)
        self.lwork = max(<int> query.real, 1)
        self.work = <double complex *> malloc(self.lwork * sizeof(double complex))
        if self.work == NULL:
            raise MemoryError()

    def __dealloc__(self):
        free(self.s)
        free(self.rwork)
        free(self.scratch)
        free(self.work)

    cdef double largest_sv(self, double complex *a) nogil:
        # singular values of A^T equal those of A, so row-major storage is fine
        cdef int info = 0, one = 1
        cdef int n = self.n
        cdef char job = b'N'
        memcpy(self.scratch, a, n * n * sizeof(double complex))
        zgesvd(&job, &job, &n, &n, self.scratch, &n, self.s, &self.dummy, &one,
               &self.dummy, &one, self.work, &self.lwork, self.rwork, &info)
        if info != 0:
            return -1.0
        return self.s[0]


def power_norms(a, limit, double tol_stop, int max_iter):
    """Return ``||A^m - L||_2`` for m = 1.. until the value is <= tol_stop or m = max_iter."""
    cdef double complex[:, ::1] A = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex[:, ::1] L = np.ascontiguousarray(limit, dtype=np.complex128)
    cdef int n = A.shape[0]
    out = np.zeros(max_iter, dtype=np.float64)
    cdef double[::1] res = out
    if n == 0:
        return out[:1]
    cdef double complex[:, ::1] X = np.array(A, copy=True)
    cdef double complex[:, ::1] Y = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] D = np.empty((n, n), dtype=np.complex128)
    cdef double complex *px = &X[0, 0]
    cdef double complex *py = &Y[0, 0]
    cdef double complex *pd = &D[0, 0]
    cdef double complex *pl = &L[0, 0]
    cdef double complex *pa = &A[0, 0]
    cdef double complex *tmp
    cdef _SVDWork svd = _SVDWork(n)
    cdef double complex alpha = 1.0, beta = 0.0
    cdef char trans = b'N'
    cdef int m = 0, k, nn = n * n
    cdef double r = 0.0
    with nogil:
        while m < max_iter:
            for k in range(nn):
                pd[k] = px[k] - pl[k]
            r = svd.largest_sv(pd)
            res[m] = r
            m += 1
            if r < 0.0 or r <= tol_stop:
                break
            # row-major Y = X A  <=>  column-major Y^T = A^T X^T
            zgemm(&trans, &trans, &n, &n, &n, &alpha, pa, &n, px, &n, &beta, py, &n)
            tmp = px
            px = py
            py = tmp
    if r < 0.0:
        raise ArithmeticError("zgesvd did not converge")
    return out[:m]
