#!/usr/bin/env python3
"""Generate frozen reference data for the test and verification suites.

Everything here is computed with mpmath and written twice: as CSVs under
tests/data (consumed by the unit tests) and as an embedded header
include/zladder/detail/reference_values.hpp (consumed by the CLI verify
suites, which must run without the source tree).

Usage:
  gen_reference_data.py            regenerate CSVs (slow: quadratures) + header
  gen_reference_data.py --header   regenerate only the header from the CSVs
"""
import math
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "tests", "data")
HEADER = os.path.join(HERE, "..", "include", "zladder", "detail",
                      "reference_values.hpp")


def gen_csvs():
    import mpmath
    from mpmath import mp
    mp.dps = 30

    with open(os.path.join(DATA, "zeta_zeros.csv"), "w") as f:
        f.write("n,gamma\n")
        for n in range(1, 31):
            g = mpmath.zetazero(n).imag
            f.write(f"{n},{mpmath.nstr(g, 25)}\n")

    with open(os.path.join(DATA, "z_values.csv"), "w") as f:
        f.write("t,z\n")
        lo, hi = math.log(10.0), math.log(5000.0)
        for i in range(50):
            t = mp.mpf(math.exp(lo + (hi - lo) * i / 49.0))
            f.write(f"{mpmath.nstr(t, 17)},{mpmath.nstr(mpmath.siegelz(t), 25)}\n")
        for t in [20.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0]:
            f.write(f"{mpmath.nstr(mp.mpf(t), 17)},{mpmath.nstr(mpmath.siegelz(t), 25)}\n")

    with open(os.path.join(DATA, "theta_values.csv"), "w") as f:
        f.write("t,theta\n")
        for t in [0.5, 1.0, 2.0, 5.0, 2 * math.pi, 10.0, 17.845599540551,
                  30.0, 100.0, 400.0, 1000.0, 10000.0, 1000000.0]:
            f.write(f"{mpmath.nstr(mp.mpf(t), 17)},{mpmath.nstr(mpmath.siegeltheta(t), 25)}\n")
        g0 = mpmath.grampoint(0)
        f.write(f"# grampoint0,{mpmath.nstr(g0, 25)}\n")

    mp.dps = 25
    with open(os.path.join(DATA, "hl_values.csv"), "w") as f:
        f.write("T,F\n")
        for T in [100, 1000]:
            pieces = [mpmath.quad(lambda u: mpmath.siegelz(u) ** 2, [k, k + 5])
                      for k in range(0, T, 5)]
            f.write(f"{T},{mpmath.nstr(mpmath.fsum(pieces), 20)}\n")


def read_csv(name):
    rows, tagged = [], {}
    with open(os.path.join(DATA, name)) as f:
        next(f)
        for line in f:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                tag, val = line[2:].split(",")
                tagged[tag] = float(val)
                continue
            a, b = line.split(",")
            rows.append((float(a), float(b)))
    return rows, tagged


def gen_header():
    z, _ = read_csv("z_values.csv")
    zeros, _ = read_csv("zeta_zeros.csv")
    theta, tagged = read_csv("theta_values.csv")
    hl, _ = read_csv("hl_values.csv")
    out = []
    out.append("#pragma once")
    out.append("")
    out.append("// Frozen mpmath reference values; generated by")
    out.append("// tools/gen_reference_data.py, do not edit by hand.")
    out.append("")
    out.append("#include <cstddef>")
    out.append("")
    out.append("namespace zladder::detail {")
    out.append("")
    out.append("struct RefPair { double x; double y; };")
    out.append("")

    def table(name, rows):
        out.append(f"inline constexpr RefPair {name}[{len(rows)}] = {{")
        for x, y in rows:
            out.append(f"    {{{x!r}, {y!r}}},")
        out.append("};")
        out.append("")

    table("kRefZ", z)
    table("kRefZeros", zeros)
    table("kRefTheta", theta)
    table("kRefHl", hl)
    out.append(f"inline constexpr double kRefGramPoint0 = {tagged['grampoint0']!r};")
    out.append("")
    out.append("}  // namespace zladder::detail")
    with open(HEADER, "w") as f:
        f.write("\n".join(out) + "\n")
    print(f"wrote {HEADER}")


if __name__ == "__main__":
    if "--header" not in sys.argv:
        gen_csvs()
    gen_header()
