"""Recompute the frozen reference values in ../data/oracles.json.

Everything here is written directly from the defining equations in
mpmath at 40 digits and shares no code with the package.

    python3 tests/oracles/generate.py
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
PI = mp.pi
OUT = Path(__file__).resolve().parents[1] / "data" / "oracles.json"


def theta(q, t):
    s = mp.sqrt(1 - t**2)
    return -mp.fsum(mp.atan(s * mp.sin(j * PI / q) / (1 - mp.cos(j * PI / q))) for j in range(1, q))


def kappa(q, r):
    return mp.mpf(0) if (q - r) % 2 == 0 else mp.mpf(1) / 2


def quant(q, r, L, M, n, sigma):
    lam = n * PI / M
    t = lam / sigma
    return (mp.sqrt(sigma**2 - lam**2) * L + theta(q, t) + theta(r, t)) / PI + kappa(q, r)


def surface_root(q, r, m, n, guess):
    L = M = PI
    return mp.findroot(lambda s: quant(q, r, L, M, n, s) - m, guess)


def pi4_root(n, m, kind):
    L = M = PI
    lam = n * PI / M

    def cond(chi):
        eta = mp.sqrt(chi**2 + lam**2)
        if kind == "cos":
            return -chi * mp.tan(chi * L / 2) - eta * mp.tanh(eta * L / 2)
        return chi * mp.cot(chi * L / 2) - eta * mp.coth(eta * L / 2)

    if kind == "cos":
        a, b = (2 * m - 1) * PI / L, 2 * m * PI / L
    else:
        a, b = 2 * m * PI / L, (2 * m + 1) * PI / L
    chi = mp.findroot(cond, (a + mp.mpf("1e-30"), b - mp.mpf("1e-30")), solver="anderson")
    return -chi * mp.tan(chi * L / 2) if kind == "cos" else chi * mp.cot(chi * L / 2)


def lattice(sigma, L, M):
    total = 0
    for m in range(1, 10 * int(sigma) + 10):
        for n in range(0, 10 * int(sigma) + 10):
            if (m * PI / L) ** 2 + (n * PI / M) ** 2 < sigma**2:
                total += 1
    return total


def main():
    r2 = mp.sqrt(2)
    data = {
        "pi4_coshcosh_n1": mp.tanh(PI / (2 * r2)) / r2,
        "pi4_sinhsinh_n1": 1 / mp.tanh(PI / (2 * r2)) / r2,
        "pi4_xy": 2 / PI,
        "pi4_cos_n0_m1": pi4_root(0, 1, "cos"),
        "pi4_cos_n2_m3": pi4_root(2, 3, "cos"),
        "pi4_sin_n1_m2": pi4_root(1, 2, "sin"),
        "cuboid_m1_n0_R1": mp.tanh(1),
        "theta_integral_q2_r2": mp.quad(lambda t: theta(2, t) + theta(2, t), [0, 1]),
        "theta_integral_q3_r9": mp.quad(lambda t: theta(3, t) + theta(9, t), [0, 1]),
        "surface_q2_r3_m1_n0": surface_root(2, 3, 1, 0, 1.25),
        "surface_q2_r3_m4_n3": surface_root(2, 3, 4, 3, 4.5),
        "surface_q5_r5_m2_n2": surface_root(5, 5, 2, 2, 3.5),
        "surface_q3_r9_m6_n5": surface_root(3, 9, 6, 5, 7.0),
        "lattice_sigma10": lattice(10, PI, PI),
        "lattice_sigma7_L2_M3": lattice(7, 2, 3),
    }
    OUT.write_text(json.dumps({k: mp.nstr(v, 25) if not isinstance(v, int) else v for k, v in data.items()}, indent=2) + "\n")
    print(OUT.read_text())


if __name__ == "__main__":
    main()
