#!/usr/bin/env python3
"""Generate frozen Airy reference data (tests/oracles/airy_oracle_data.hpp).

Reference values come from mpmath at 40 significant digits and are rounded to
the nearest binary64. Grid arguments are computed in binary64 so the C++ test
can reproduce them bit-exactly from the stored doubles.

Run from the repository root:  python3 tests/oracles/gen_airy.py
"""
import sys
from mpmath import mp, mpf, airyai, findroot

mp.dps = 40

OUT = "tests/oracles/airy_oracle_data.hpp"


def d(x):
    """Shortest decimal that round-trips to the same binary64."""
    return repr(float(x))


def airy_pair(zf):
    z = mpf(zf)  # exact: zf is a binary64
    return float(airyai(z)), float(airyai(z, derivative=1))


def main():
    rows = []
    # acceptance grid: 10^4 uniform points in [-1000, 10]
    for i in range(10000):
        zf = -1000.0 + 1010.0 * i / 9999.0
        ai, aip = airy_pair(zf)
        rows.append((zf, ai, aip))

    # crossover bands for the series/asymptotic agreement check
    band = []
    for i in range(25):
        zf = -17.5 + 3.0 * i / 24.0
        ai, aip = airy_pair(zf)
        band.append((zf, ai, aip))
    for i in range(13):
        zf = 10.0 + 1.0 * i / 12.0
        ai, aip = airy_pair(zf)
        band.append((zf, ai, aip))

    # double-double splits of Ai(0), Ai'(0)
    ai0 = airyai(mpf(0))
    aip0 = airyai(mpf(0), derivative=1)
    ai0_hi = float(ai0)
    ai0_lo = float(ai0 - mpf(ai0_hi))
    aip0_hi = float(aip0)
    aip0_lo = float(aip0 - mpf(aip0_hi))

    # location and value of the global maximum of Ai on the negative axis
    y_max = findroot(lambda y: airyai(y, derivative=1), mpf("-1.0188"))
    m_ai = airyai(y_max)

    with open(OUT, "w") as f:
        f.write("// Frozen Airy reference values. Generated by gen_airy.py; do not edit.\n")
        f.write("// Source: mpmath 1.3.0 at 40 significant digits, rounded to binary64.\n")
        f.write("#pragma once\n\n")
        f.write("namespace turnwkb::oracle {\n\n")
        f.write("struct AiryRow { double z, ai, aip; };\n\n")
        f.write("// 10^4 uniform samples of [-1000, 10]: z_i = -1000 + 1010*i/9999 in binary64\n")
        f.write("inline const AiryRow kAiryGrid[] = {\n")
        for zf, ai, aip in rows:
            f.write("  {%s, %s, %s},\n" % (d(zf), d(ai), d(aip)))
        f.write("};\n\n")
        f.write("// crossover-band samples: z in [-17.5, -14.5] and [10, 11]\n")
        f.write("inline const AiryRow kAiryBand[] = {\n")
        for zf, ai, aip in band:
            f.write("  {%s, %s, %s},\n" % (d(zf), d(ai), d(aip)))
        f.write("};\n\n")
        f.write("// double-double split of Ai(0) and Ai'(0)\n")
        f.write("inline constexpr double kAi0Hi  = %s;\n" % d(ai0_hi))
        f.write("inline constexpr double kAi0Lo  = %s;\n" % d(ai0_lo))
        f.write("inline constexpr double kAip0Hi = %s;\n" % d(aip0_hi))
        f.write("inline constexpr double kAip0Lo = %s;\n" % d(aip0_lo))
        f.write("\n// argmax and max of Ai on the negative real axis\n")
        f.write("inline constexpr double kAiryArgmax = %s;\n" % d(float(y_max)))
        f.write("inline constexpr double kAiryMax    = %s;\n" % d(float(m_ai)))
        f.write("\n}  // namespace turnwkb::oracle\n")
    print("wrote", OUT, "(", len(rows), "grid rows,", len(band), "band rows )")
    print("Ai(0)  =", mp.nstr(ai0, 35))
    print("Ai'(0) =", mp.nstr(aip0, 35))
    print("y_max  =", mp.nstr(y_max, 25), " Ai(y_max) =", mp.nstr(m_ai, 25))


if __name__ == "__main__":
    sys.exit(main())
