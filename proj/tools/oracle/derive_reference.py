#!/usr/bin/env python3
"""Independent numpy/scipy reference for the frozen regression values.

Rebuilds both algebras from their bracket tables, evaluates the Besse
formula for Ricci directly, and integrates the closed-form parameter ODEs
with scipy's DOP853. Prints the Killing tables, spot values and the
extinction / scal-threshold times used as regression baselines.

    python3 tools/oracle/derive_reference.py
"""
import numpy as np
from scipy.integrate import solve_ivp


def structure_constants(case):
    c = np.zeros((6, 6, 6))

    def br(i, j, k, v):
        c[i, j, k] += v
        c[j, i, k] -= v

    if case == "so3r3":
        E, c3, c1, c2, F, G = range(6)
        br(E, c1, c2, -1); br(E, c2, c1, 1); br(E, F, G, -1); br(E, G, F, 1)
        br(c3, F, c1, -1); br(c3, G, c2, -1); br(c1, F, c3, 1); br(c2, G, c3, 1)
        br(F, G, E, -1)
    else:
        X, A, B, C, D, E = range(6)
        br(X, B, C, 2); br(X, C, B, -2); br(X, D, E, -2); br(X, E, D, 2)
        br(A, B, B, 2); br(A, C, C, 2); br(A, D, D, -2); br(A, E, E, -2)
        br(B, D, A, 1); br(B, E, X, 1); br(C, D, X, 1); br(C, E, A, -1)
        # Table above uses the usual matrix for E; switch to E -> -E.
        for i in range(6):
            for j in range(6):
                for k in range(6):
                    c[i, j, k] *= (-1) ** [i, j, k].count(E)
    return c


def killing(c):
    ad = [c[i].T for i in range(6)]
    return np.array([[np.trace(ad[i] @ ad[j]) for j in range(6)] for i in range(6)])


def shaped(a, b, g, m, n):
    return np.array([[a, 0, 0, 0, 0], [0, b, 0, m, n], [0, 0, b, -n, m],
                     [0, m, -n, g, 0], [0, n, m, 0, g]], float)


def ricci(case, p):
    c = structure_constants(case)
    K = killing(c)[1:, 1:]
    G = shaped(*p)
    w, V = np.linalg.eigh(G)
    X = V / np.sqrt(w)

    def br(u, v):
        U = np.concatenate([[0.0], u])
        W = np.concatenate([[0.0], v])
        return np.einsum("i,j,ijk->k", U, W, c)[1:]

    R = np.zeros((5, 5))
    e = np.eye(5)
    for a in range(5):
        for b in range(5):
            s2 = sum(br(e[a], X[:, i]) @ G @ br(e[b], X[:, i]) for i in range(5))
            s3 = sum((br(X[:, i], X[:, j]) @ G @ e[a]) * (br(X[:, i], X[:, j]) @ G @ e[b])
                     for i in range(5) for j in range(5))
            R[a, b] = -0.5 * K[a, b] - 0.5 * s2 + 0.25 * s3
    return R


def slots(R):
    return [R[0, 0], R[1, 1], R[3, 3], R[1, 3], R[1, 4]]


def closed(case, a, b, g, m, n):
    t = m * m + n * n
    d = b * g - t
    if case == "so3r3":
        return [(a * a - b * b) / d + 2 * a * a * n * n / d ** 2,
                b / (2 * a) * (b * b - a * a) / d,
                2 - b / a + g / (2 * a) * (b * b - a * a) / d,
                m / (2 * a * d) * (b * b - a * a),
                n / (2 * a * d) * (a * a + b * b)]
    return [(a * a - 16 * b * g) / d,
            b * (16 * t - a * a) / (2 * a * d),
            g * (16 * t - a * a) / (2 * a * d),
            -4 + m / (2 * a * d) * (16 * b * g - a * a),
            n / (2 * a * d) * (16 * b * g - a * a)]


def rhs(case):
    def f(_t, y):
        a, b, g, m, n = y
        t = m * m + n * n
        d = b * g - t
        if case == "so3r3":
            return [2 * (b * b - a * a) / d - 4 * a * a * n * n / d ** 2,
                    b / a * (a * a - b * b) / d,
                    -4 + 2 * b / a + g / a * (a * a - b * b) / d,
                    m / (a * d) * (a * a - b * b),
                    -n / (a * d) * (a * a + b * b)]
        return [2 * (16 * b * g - a * a) / d,
                -b * (16 * t - a * a) / (a * d),
                -g * (16 * t - a * a) / (a * d),
                8 - m / (a * d) * (16 * b * g - a * a),
                -n / (a * d) * (16 * b * g - a * a)]
    return f


def scal(case, y):
    return np.trace(np.linalg.solve(shaped(*y), shaped(*closed(case, *y))))


def lambda_min(y):
    a, b, g, m, n = y
    t = m * m + n * n
    return min(a, (b * g - t) / ((b + g) / 2 + 0.5 * np.sqrt(4 * t + (b - g) ** 2)))


def extinction(case, y0, threshold=1.0):
    def collapse(_t, y):
        return min(lambda_min(y) - 1e-8 * lambda_min(y0), y[0] - 1e-8 * y0[0])
    collapse.terminal = True

    def crossing(_t, y):
        return scal(case, y) - threshold

    s = solve_ivp(rhs(case), (0, 1e3), y0, method="DOP853", rtol=1e-12, atol=1e-14,
                  events=[collapse, crossing])
    t_ext = s.t_events[0][0] if len(s.t_events[0]) else None
    t_g = s.t_events[1][0] if len(s.t_events[1]) else (0.0 if scal(case, y0) >= threshold else None)
    return t_ext, t_g


def main():
    np.set_printoptions(precision=6, suppress=True)
    for case in ("so3r3", "sl2c"):
        print(case, "Killing form on p:")
        print(killing(structure_constants(case))[1:, 1:])
    for case in ("so3r3", "sl2c"):
        p = (1, 1, 1, 0, 0)
        R = ricci(case, p)
        print(case, p, "Ric slots", np.round(slots(R), 14), "Ric(C,E)", round(R[2, 4], 14),
              "scal", np.trace(np.linalg.solve(shaped(*p), R)))
    for case, y0 in (("sl2c", [1, 1, 1, 0, 0]), ("so3r3", [1, 2, 3, 0, 0.5]),
                     ("so3r3", [1, 1, 1, 0, 0])):
        t_ext, t_g = extinction(case, y0)
        print(case, y0, "extinction %.14g" % t_ext, "t_g", t_g if t_g is None else "%.11g" % t_g)


if __name__ == "__main__":
    main()
