# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice-character sweep kernel.

Same contract as excol._sweep_np.count_support_masks, with an odometer loop
that updates the ray pairings incrementally along the last axis.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def count_support_masks(lo, hi, rays, coeffs):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] lo_a = np.ascontiguousarray(lo, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hi_a = np.ascontiguousarray(hi, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] rays_a = np.ascontiguousarray(rays, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] c_a = np.ascontiguousarray(coeffs, dtype=np.int64)

    cdef Py_ssize_t n = lo_a.shape[0]
    cdef Py_ssize_t nrays = rays_a.shape[0]
    cdef Py_ssize_t nmasks = 1 << nrays
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(nmasks, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] shell = np.zeros(nmasks, dtype=np.int64)

    cdef cnp.ndarray[cnp.int64_t, ndim=1] u = lo_a.copy()
    # dots[r] = <u, v_r> maintained incrementally
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dots = np.zeros(nrays, dtype=np.int64)
    cdef Py_ssize_t r, d, axis
    cdef long long mask
    cdef long long last = n - 1
    cdef bint outer_shell, on_shell, done

    for r in range(nrays):
        for d in range(n):
            dots[r] += lo_a[d] * rays_a[r, d]

    done = False
    while not done:
        outer_shell = False
        for d in range(n - 1):
            if u[d] == lo_a[d] or u[d] == hi_a[d]:
                outer_shell = True
                break
        # inner sweep over the last axis
        while True:
            mask = 0
            for r in range(nrays):
                if dots[r] < -c_a[r]:
                    mask |= (<long long>1) << r
            counts[mask] += 1
            on_shell = outer_shell or u[last] == lo_a[last] or u[last] == hi_a[last]
            if on_shell:
                shell[mask] += 1
            if u[last] == hi_a[last]:
                break
            u[last] += 1
            for r in range(nrays):
                dots[r] += rays_a[r, last]
        # odometer carry into the outer axes
        axis = last - 1
        while axis >= 0 and u[axis] == hi_a[axis]:
            axis -= 1
        if axis < 0:
            done = True
        else:
            u[axis] += 1
            for d in range(axis + 1, n):
                u[d] = lo_a[d]
            for r in range(nrays):
                dots[r] = 0
                for d in range(n):
                    dots[r] += u[d] * rays_a[r, d]
    return counts, shell
