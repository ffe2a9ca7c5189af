#!/usr/bin/env python3
"""Regenerate the bundled diagram corpus and its manifest.

Every entry is constructed programmatically (braid closures, pretzels,
composites) or taken from a standard PD code, then re-verified against its
expected invariant signature before being written.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qalt.bracket import determinant, jones, span
from qalt.construct import braid_closure, pretzel, torus2
from qalt.diagram import (connected_sum, is_alternating, mirror, parse_pd,
                          to_pd, writhe)
from qalt.laurent import render_jones

TREFOIL_LEFT = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
FIGURE8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
FIVE2 = "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]"
SIX2 = "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]"
SEVEN4 = ("X[210,225,216,202] X[208,207,202,215] X[207,208,212,211] "
          "X[222,210,211,212] X[220,219,215,216] X[219,220,224,223] "
          "X[225,222,223,224]")
BRAID_8_21 = [1, 1, 1, 2, -1, -1, 2, 2]


def build():
    tref_l = parse_pd(TREFOIL_LEFT)
    tref_r = mirror(tref_l)
    entries = [
        # name, diagram, prime?, (2,n) torus?, notes
        ("unknot", parse_pd("O"), True, False, "crossingless unknot"),
        ("trefoil_left", tref_l, True, True, "3_1, writhe -3"),
        ("trefoil_right", tref_r, True, True, "mirror 3_1, writhe +3"),
        ("figure8", parse_pd(FIGURE8), True, False, "4_1"),
        ("torus2_2", torus2(2), True, True, "Hopf link"),
        ("torus2_3", torus2(3), True, True, "(2,3) torus = trefoil"),
        ("torus2_4", torus2(4), True, True, "(2,4) torus link"),
        ("torus2_5", torus2(5), True, True, "(2,5) torus = 5_1"),
        ("torus2_6", torus2(6), True, True, "(2,6) torus link"),
        ("torus2_7", torus2(7), True, True, "(2,7) torus = 7_1"),
        ("5_2", parse_pd(FIVE2), True, False, "5_2 alternating table diagram"),
        ("p2_1_m3", pretzel(2, 1, -3), True, False,
         "P(2,1,-3) pretzel presentation of 5_2, 6 crossings"),
        ("6_2", parse_pd(SIX2), True, False, "6_2"),
        ("7_4", parse_pd(SEVEN4), True, False, "7_4"),
        ("8_20", pretzel(3, -3, 2), True, False, "8_20 as P(3,-3,2)"),
        ("8_21", braid_closure(BRAID_8_21, 3), True, False,
         "8_21 as a 3-braid closure"),
        ("9_47_candidate", pretzel(3, -3, 2, 1), True, False,
         "P(3,-3,2,1): det 27, 9 crossings, non-alternating; matches the "
         "9_47 invariant signature but census identification is out of scope"),
        ("granny", connected_sum(tref_r, tref_r), False, False,
         "trefoil # trefoil"),
        ("square", connected_sum(tref_r, tref_l), False, False,
         "trefoil # mirror trefoil"),
    ]
    return entries


def write_sample_tangles(root: pathlib.Path) -> None:
    """Five- and six-crossing sample tangles, both signs, standing in for
    user-supplied tangle files in the extension examples.  Preference goes
    to tangles with every crossing nontrivial (the non-algebraic kind)."""
    from qalt.tangle import (CrossingClass, classify_crossing,
                             enumerate_alternating_tangles, is_twist_tangle,
                             to_tangle_text)

    def all_nontrivial(t):
        return all(classify_crossing(t, c) is CrossingClass.NONTRIVIAL
                   for c in range(t.n))

    out = root / "tangles"
    out.mkdir(exist_ok=True)
    for sign, tag in ((+1, "pos"), (-1, "neg")):
        for size in (5, 6):
            pool = [t for t in enumerate_alternating_tangles(size, sign)
                    if t.n == size and not is_twist_tangle(t)]
            picked = [t for t in pool if all_nontrivial(t)][:2] or pool[:2]
            for i, t in enumerate(picked):
                name = f"sample_{size}c_{tag}_{i}.tangle"
                (out / name).write_text(to_tangle_text(t) + "\n")


def main():
    root = pathlib.Path(__file__).resolve().parents[1] / "corpus"
    root.mkdir(exist_ok=True)
    write_sample_tangles(root)
    manifest = []
    for name, d, prime, torus, notes in build():
        pd_text = to_pd(d) if d.n else "O"
        (root / f"{name}.pd").write_text(pd_text + "\n")
        manifest.append({
            "file": f"{name}.pd",
            "name": name,
            "crossings": d.n,
            "components": d.components,
            "writhe": writhe(d),
            "det": determinant(d),
            "span": span(d),
            "alternating": is_alternating(d),
            "prime": prime,
            "torus2": torus,
            "jones": render_jones(jones(d)),
            "notes": notes,
        })
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    for row in manifest:
        print(f"{row['name']:>16}: n={row['crossings']:>2} comps={row['components']} "
              f"det={row['det']:>2} span={row['span']:>2} alt={row['alternating']}")


if __name__ == "__main__":
    main()
