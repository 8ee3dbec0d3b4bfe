#!/usr/bin/env python3
"""Fit Riemann-Siegel remainder coefficients C_j(p) numerically from mpmath.

Model:  Z(t) = mainsum(t) + (-1)^(m-1) * a^(-1/2) * sum_j C_j(p) a^(-j)
with a = sqrt(t/2pi), m = floor(a), p = a - m.

For each p on a Chebyshev grid, evaluate the remainder at many a values with
that exact fractional part, solve for C_j(p) (least squares in 1/a), then
Chebyshev-fit each C_j over z = 2p-1 in [-1,1].

Cross-checks: C0(p) == Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p),
C1(p) == -Psi'''(p)/(96 pi^2).
"""
import json, math, sys, time
import mpmath
from mpmath import mp

mp.dps = 40

M_VALUES = [16, 19, 23, 27, 32, 38, 45, 54, 64, 76, 90, 107, 127]
N_P = 40          # chebyshev nodes in p
J_FIT = 10        # fit C_0..C_10
J_KEEP = 7        # freeze C_0..C_6

def mainsum(t):
    th = mpmath.siegeltheta(t)
    a = mpmath.sqrt(t / (2 * mp.pi))
    m = int(mpmath.floor(a))
    s = mp.mpf(0)
    for n in range(1, m + 1):
        s += mpmath.cos(th - t * mpmath.log(n)) / mpmath.sqrt(n)
    return 2 * s

def psi(p):
    return mpmath.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mpmath.cos(2 * mp.pi * p)

def main():
    t0 = time.time()
    # Chebyshev nodes (first kind) mapped to p in [0,1]
    p_nodes = [mp.mpf(0.5) + mp.mpf(0.5) * mpmath.cos(mp.pi * (2 * i + 1) / (2 * N_P))
               for i in range(N_P)]
    C = [[None] * N_P for _ in range(J_FIT + 1)]
    for ip, p in enumerate(p_nodes):
        rows, rhs = [], []
        for m in M_VALUES:
            a = m + p
            t = 2 * mp.pi * a * a
            Z = mpmath.siegelz(t)
            R = Z - mainsum(t)
            sign = 1 if (m - 1) % 2 == 0 else -1
            S = R * sign * mpmath.sqrt(a)
            rows.append([a ** (-j) for j in range(J_FIT + 1)])
            rhs.append(S)
        A = mp.matrix(rows)
        b = mp.matrix(rhs)
        x = mpmath.qr_solve(A, b)[0]
        for j in range(J_FIT + 1):
            C[j][ip] = x[j]
        if ip % 8 == 0:
            print(f"  p-node {ip}/{N_P}  ({time.time()-t0:.0f}s)", flush=True)

    # cross-check against analytic C0, C1
    err0 = max(abs(C[0][i] - psi(p_nodes[i])) for i in range(N_P))
    err1 = max(abs(C[1][i] + mpmath.diff(psi, p_nodes[i], 3) / (96 * mp.pi ** 2))
               for i in range(N_P))
    print(f"cross-check: max|C0 - Psi| = {mpmath.nstr(err0, 3)}")
    print(f"cross-check: max|C1 + Psi'''/(96 pi^2)| = {mpmath.nstr(err1, 3)}")

    # magnitudes
    for j in range(J_FIT + 1):
        mx = max(abs(v) for v in C[j])
        print(f"  sup|C_{j}| ~ {mpmath.nstr(mx, 4)}")

    # Chebyshev fit over z = 2p-1
    import numpy as np
    import numpy.polynomial.chebyshev as cheb
    z = np.array([float(2 * p - 1) for p in p_nodes])
    out = {}
    for j in range(J_KEEP):
        y = np.array([float(v) for v in C[j]])
        cf = cheb.chebfit(z, y, N_P - 1)
        # truncate tiny coefficients
        keep = len(cf)
        while keep > 1 and abs(cf[keep - 1]) < 1e-18:
            keep -= 1
        out[f"C{j}"] = list(cf[:keep])
        resid = np.max(np.abs(cheb.chebval(z, cf[:keep]) - y))
        print(f"  C_{j}: {keep} cheb coeffs, node resid {resid:.2e}, tail |c| {abs(cf[keep-1]):.2e}")
    with open("rs_coeffs.json", "w") as f:
        json.dump(out, f)
    print(f"done in {time.time()-t0:.0f}s -> rs_coeffs.json")

if __name__ == "__main__":
    main()
