"""Regenerates digamma_grid.csv: psi(z) at 30 significant digits on a 10 x 10 complex grid."""

import mpmath

mpmath.mp.dps = 30

REAL = [-9.7, -4.3, -0.6, 0.3, 1.0, 2.5, 7.1, 15.0, 80.0, 1.0e4]
IMAG = [-300.0, -12.0, -1.5, -0.2, 0.01, 0.7, 3.3, 25.0, 1.0e3, 2.0e5]

with open("digamma_grid.csv", "w") as f:
    f.write("re,im,psi_re,psi_im\n")
    for x in REAL:
        for y in IMAG:
            w = mpmath.digamma(mpmath.mpc(x, y))
            f.write(f"{x!r},{y!r},{mpmath.nstr(w.real, 25)},{mpmath.nstr(w.imag, 25)}\n")
