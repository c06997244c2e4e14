"""Printed representation matrices A_1, A_2, A_3 and Berger blocks T for k = 1..4, as numpy arrays."""
import numpy as np

i = 1j
r2, r3, r6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)


def _blockdiag(*blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    at = 0
    for b in blocks:
        s = b.shape[0]
        out[at:at + s, at:at + s] = b
        at += s
    return out


def _antidiag(signs):
    n = len(signs)
    out = np.zeros((n, n))
    for r, s in enumerate(signs):
        out[r, n - 1 - r] = s
    return out


def _blocks(grid, size):
    return np.block([[g if not np.isscalar(g) else g * np.eye(size) for g in row] for row in grid])


def k1():
    I2 = np.eye(2)
    A1 = i * _blockdiag(I2, -I2)
    A2 = _antidiag([1, -1, 1, -1]).astype(complex)
    A3 = i * _antidiag([-1, 1, 1, -1])
    T = 8 * np.eye(4)
    return A1, A2, A3, T


def k2():
    I3, O3 = np.eye(3), np.zeros((3, 3))
    A1 = 2 * i * _blockdiag(I3, -I3, O3)
    beta = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1], [0, 0, -1], [1, 0, 0], [0, 1, 0]], dtype=float)
    gamma = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1], [0, 0, 1], [-1, 0, 0], [0, -1, 0]], dtype=float)
    A2 = r2 * np.block([[np.zeros((6, 6)), -beta], [beta.T, O3]]).astype(complex)
    A3 = r2 * i * np.block([[np.zeros((6, 6)), gamma], [gamma.T, O3]])
    T = _blockdiag(28 * np.eye(6), 8 * I3)
    return A1, A2, A3, T


def k3():
    I4 = np.eye(4)
    A1 = i * _blockdiag(3 * I4, -3 * I4, I4, -I4)
    J1 = r3 * np.diag([1, -1, -1, -1, 1, -1, -1, -1])
    K1 = 2 * _antidiag([1, 1, -1, -1, 1, 1, -1, -1])
    J2 = r3 * i * np.diag([-1, 1, 1, 1, 1, -1, -1, -1])
    K2 = 2 * i * _antidiag([-1, -1, 1, 1, 1, 1, -1, -1])
    O8 = np.zeros((8, 8))
    A2 = np.block([[O8, J1], [-J1, K1]]).astype(complex)
    A3 = np.block([[O8, J2], [J2, K2]])
    T = _blockdiag(60 * np.eye(8), 20 * np.eye(8))
    return A1, A2, A3, T


def k4():
    I5 = np.eye(5)
    O = np.zeros((5, 5))
    A1 = i * _blockdiag(4 * I5, -4 * I5, 2 * I5, -2 * I5, O)
    J1 = _antidiag([1, -1, 1, -1, 1])
    A2 = np.block([
        [O, O, -2 * I5, O, O],
        [O, O, O, -2 * I5, O],
        [2 * I5, O, O, O, -r6 * I5],
        [O, 2 * I5, O, O, -r6 * J1],
        [O, O, r6 * I5, r6 * J1, O],
    ]).astype(complex)
    A3 = i * np.block([
        [O, O, 2 * I5, O, O],
        [O, O, O, -2 * I5, O],
        [2 * I5, O, O, O, r6 * I5],
        [O, -2 * I5, O, O, -r6 * J1],
        [O, O, r6 * I5, -r6 * J1, O],
    ])
    T = _blockdiag(104 * np.eye(10), 44 * np.eye(10), 24 * I5)
    return A1, A2, A3, T


PRINTED = {1: k1, 2: k2, 3: k3, 4: k4}
