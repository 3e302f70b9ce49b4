"""Reference values of E_{a,d}(z) for the Mittag-Leffler fixtures.

Direct Taylor summation in mpmath with the working precision raised past the
cancellation of the largest term (about exp(rho), rho = |z|^(1/a)) and far
enough to resolve results as small as exp(-rho).
"""
import csv
import sys

import mpmath as mp


def ml(a, d, z):
    a = mp.mpf(a)
    d = mp.mpf(d)
    rho = float(abs(z)) ** (1.0 / float(a))
    dps = int(2.0 * rho / 2.302585 + 40)
    with mp.workdps(dps):
        z = mp.mpc(z)
        tot = mp.mpc(0)
        k = 0
        peak = mp.mpf(0)
        pw = mp.mpc(1)
        while True:
            t = pw * mp.rgamma(a * k + d)
            tot += t
            peak = max(peak, abs(t))
            if k > 5 and a * k + d > rho + 5 and abs(t) < mp.mpf(10) ** (-dps + 5) * peak:
                break
            pw *= z
            k += 1
        return tot


CASES = []
for a, d in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (0.5, 1.0), (0.5, 2.0), (0.9, 1.0),
             (0.9, 2.0), (1.5, 1.0), (1.5, 2.0), (1.95, 1.0), (1.95, 2.0), (0.3, 1.0),
             (0.75, 0.5), (1.2, 3.0)]:
    rmax = 30.0 if a >= 1 else min(30.0, 40.0 ** a)
    pts = [-0.5, -1.0, -3.0, -7.5, -15.0, -rmax, 0.25, 1.0, complex(0, 1), complex(-2, 3) * min(1.0, 20.0 ** a / 3.6)]
    # points in the decaying sector, far out
    pts += [complex(0, 300.0 ** a) if a < 1 else -200.0, -1000.0 if a >= 1.5 else -(300.0 ** a)]
    # series/asymptotic switch points in rho = |z|^(1/a)
    for rho in (25.0, 35.0, 45.0, 60.0):
        pts.append(-(rho ** a))
    for z in pts:
        if abs(z) ** (1.0 / a) > 400.0:
            continue
        CASES.append((a, d, complex(z)))

w = csv.writer(sys.stdout, lineterminator="\n")
w.writerow(["alpha", "delta", "re_z", "im_z", "re_E", "im_E", "tol"])
for a, d, z in CASES:
    v = ml(a, d, z)
    w.writerow([repr(a), repr(d), repr(z.real), repr(z.imag),
                mp.nstr(v.real, 20), mp.nstr(v.imag, 20), "1e-9"])
    sys.stdout.flush()
