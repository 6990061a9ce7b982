# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels for the collision loop and the fixed-step RK4 integrator.

Matches qcollide._kernels_py bit-for-bit in structure; only the inner loops
are hand-rolled over the fixed 2x2/4x4 dimensions.
"""
import numpy as np


def collision_trajectory(u, r0, t, Py_ssize_t n):
    cdef const double complex[:, ::1] um = np.ascontiguousarray(u, dtype=np.complex128)
    cdef const double[::1] r0v = np.ascontiguousarray(r0, dtype=np.float64)
    cdef const double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)

    states_arr = np.empty((n + 1, 3), dtype=np.float64)
    res_arr = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] states = states_arr
    cdef double[:, ::1] res = res_arr

    cdef double complex rho[2][2]
    cdef double complex xi[2][2]
    cdef double complex big[4][4]
    cdef double complex tmp[4][4]
    cdef double complex out[4][4]
    cdef double complex acc
    cdef double rx, ry, rz
    cdef Py_ssize_t step, i, j, k, l, a, b, c

    xi[0][0] = 0.5 + tv[2]
    xi[0][1] = tv[0] - 1j * tv[1]
    xi[1][0] = tv[0] + 1j * tv[1]
    xi[1][1] = 0.5 - tv[2]

    rx = r0v[0]; ry = r0v[1]; rz = r0v[2]
    states[0, 0] = rx; states[0, 1] = ry; states[0, 2] = rz

    for step in range(n):
        rho[0][0] = 0.5 + rz
        rho[0][1] = rx - 1j * ry
        rho[1][0] = rx + 1j * ry
        rho[1][1] = 0.5 - rz

        # big = rho (x) xi
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        big[2 * i + k][2 * j + l] = rho[i][j] * xi[k][l]

        # out = um @ big @ um^H
        for a in range(4):
            for b in range(4):
                acc = 0
                for c in range(4):
                    acc = acc + um[a, c] * big[c][b]
                tmp[a][b] = acc
        for a in range(4):
            for b in range(4):
                acc = 0
                for c in range(4):
                    acc = acc + tmp[a][c] * um[b, c].conjugate()
                out[a][b] = acc

        # system slot: trace over environment indices
        rho[0][0] = out[0][0] + out[1][1]
        rho[0][1] = out[0][2] + out[1][3]
        rho[1][0] = out[2][0] + out[3][1]
        rho[1][1] = out[2][2] + out[3][3]
        rx = 0.5 * (rho[0][1].real + rho[1][0].real)
        ry = 0.5 * (rho[1][0].imag - rho[0][1].imag)
        rz = 0.5 * (rho[0][0].real - rho[1][1].real)
        states[step + 1, 0] = rx
        states[step + 1, 1] = ry
        states[step + 1, 2] = rz

        # environment slot: trace over system indices
        tmp[0][0] = out[0][0] + out[2][2]
        tmp[0][1] = out[0][1] + out[2][3]
        tmp[1][0] = out[1][0] + out[3][2]
        tmp[1][1] = out[1][1] + out[3][3]
        res[step, 0] = 0.5 * (tmp[0][1].real + tmp[1][0].real)
        res[step, 1] = 0.5 * (tmp[1][0].imag - tmp[0][1].imag)
        res[step, 2] = 0.5 * (tmp[0][0].real - tmp[1][1].real)

    return states_arr, res_arr


def rk4_propagate(g, v0, double h, Py_ssize_t steps):
    cdef const double[:, ::1] gm = np.ascontiguousarray(g, dtype=np.float64)
    out_arr = np.array(v0, dtype=np.float64, copy=True)
    cdef double[::1] v = out_arr

    cdef double k1[4]
    cdef double k2[4]
    cdef double k3[4]
    cdef double k4[4]
    cdef double w[4]
    cdef double acc
    cdef Py_ssize_t step, i, j

    for step in range(steps):
        for i in range(4):
            acc = 0
            for j in range(4):
                acc += gm[i, j] * v[j]
            k1[i] = acc
        for i in range(4):
            w[i] = v[i] + 0.5 * h * k1[i]
        for i in range(4):
            acc = 0
            for j in range(4):
                acc += gm[i, j] * w[j]
            k2[i] = acc
        for i in range(4):
            w[i] = v[i] + 0.5 * h * k2[i]
        for i in range(4):
            acc = 0
            for j in range(4):
                acc += gm[i, j] * w[j]
            k3[i] = acc
        for i in range(4):
            w[i] = v[i] + h * k3[i]
        for i in range(4):
            acc = 0
            for j in range(4):
                acc += gm[i, j] * w[j]
            k4[i] = acc
        for i in range(4):
            v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])

    return out_arr
