#!/usr/bin/env python3
"""Regenerate core/src/sobol_table_data.cpp from SciPy's Sobol data.

SciPy redistributes the Joe & Kuo (2008) "new-joe-kuo-6" primitive
polynomials and initial direction numbers for 21201 dimensions. We embed
the first NDIM rows as a C++ translation unit so the library needs no
runtime data file.
"""
import os
import textwrap

import numpy as np
import scipy.stats

NDIM = 512
OUT = os.path.join(os.path.dirname(__file__), "..", "core", "src",
                   "sobol_table_data.cpp")


def main():
    path = os.path.join(os.path.dirname(scipy.stats.__file__),
                        "_sobol_direction_numbers.npz")
    data = np.load(path)
    poly, vinit = data["poly"], data["vinit"]

    lines = [
        "// Sobol direction-number seed data, dimensions 1..%d." % NDIM,
        "// Primitive polynomials and initial values m_i from the Joe & Kuo (2008)",
        "// \"new-joe-kuo-6\" table (the first %d rows), as redistributed by SciPy." % NDIM,
        "// Regenerate with tools/extract_sobol_table.py against a SciPy checkout.",
        "",
        "#include \"sobol_table.hpp\"",
        "",
        "namespace gsq::detail {",
        "",
        "const int kSobolTableDims = %d;" % NDIM,
        "",
    ]

    polys = ", ".join(str(int(poly[i])) for i in range(NDIM))
    lines.append("const unsigned kSobolPoly[] = {")
    lines.extend(textwrap.wrap(polys, width=76, initial_indent="    ",
                               subsequent_indent="    "))
    lines.append("};")
    lines.append("")

    mflat = []
    for i in range(NDIM):
        if i == 0:
            mflat.append(1)  # dimension 1 is the identity / van der Corput
            continue
        deg = int(poly[i]).bit_length() - 1
        mflat.extend(int(v) for v in vinit[i][:deg])

    lines.append("const unsigned kSobolMinit[] = {")
    ms = ", ".join(str(v) for v in mflat)
    lines.extend(textwrap.wrap(ms, width=76, initial_indent="    ",
                               subsequent_indent="    "))
    lines.append("};")
    lines.append("")
    lines.append("const int kSobolMinitCount = %d;" % len(mflat))
    lines.append("")
    lines.append("}  // namespace gsq::detail")

    with open(OUT, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote %s (%d m values)" % (OUT, len(mflat)))


if __name__ == "__main__":
    main()
