"""Reference values of the two-parameter Mittag-Leffler function.

Sums the Taylor series in high-precision arithmetic (mpmath) and writes
crates/core/fixtures/ml_reference.json.  Run from the repository root:

    python3 scripts/ml_reference.py
"""

import json
from pathlib import Path

import mpmath as mp


def ml(z, phi, psi):
    z = mp.mpc(z)
    growth = float(abs(z)) ** (1.0 / phi)
    # the peak term is about exp(growth) and the result can be as small as
    # exp(-growth), so both must fit in the working precision
    mp.mp.dps = 60 + int(2 * growth / 2.3)
    total = mp.mpc(0)
    zk = mp.mpc(1)
    k = 0
    tiny = mp.mpf(10) ** (-(mp.mp.dps - 10))
    while True:
        term = zk * mp.rgamma(mp.mpf(phi) * k + mp.mpf(psi))
        total += term
        if k * phi > 3 * growth + 50 and abs(term) < tiny:
            return total
        zk *= z
        k += 1


def main():
    params = [(0.5, 1.0), (0.5, 2.0), (0.7, 1.3), (0.8, 1.0), (0.8, 2.0),
              (1.0, 1.0), (1.0, 2.0), (1.0, 0.5), (1.5, 1.0), (1.5, 2.0),
              (2.0, 1.0), (2.0, 3.5), (0.3, 0.7), (1.2, 4.0)]
    radii = [0.01, 0.5, 1.0, 3.0, 5.0, 10.0, 14.0, 20.0, 40.0, 80.0, 150.0, 400.0, 1000.0]
    angles = [1.0, 0.75, 0.5, 0.0]  # multiples of pi
    rows = []
    for phi, psi in params:
        for r in radii:
            # direct summation cost grows like |z|^(1/phi)
            if r ** (1.0 / phi) > 400:
                continue
            for ang in angles:
                mp.mp.dps = 30
                if ang == 1.0:
                    z = mp.mpc(-r, 0)
                elif ang == 0.0:
                    z = mp.mpc(r, 0)
                else:
                    z = mp.mpf(r) * mp.expjpi(ang)
                v = ml(z, phi, psi)
                if not mp.isfinite(v.real) or abs(v) > mp.mpf(10) ** 300:
                    continue
                rows.append({
                    "phi": phi, "psi": psi,
                    "z": [float(z.real), float(z.imag)],
                    "value": [float(v.real), float(v.imag)],
                })
    out = Path(__file__).resolve().parent.parent / "crates/core/fixtures/ml_reference.json"
    out.write_text(json.dumps(rows, indent=0) + "\n")
    print(f"wrote {len(rows)} values to {out}")


if __name__ == "__main__":
    main()
