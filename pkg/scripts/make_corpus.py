"""Regenerate the shipped example corpus in src/suppvar/corpus/.

Run from the repository root:

    python3 scripts/make_corpus.py
"""
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from suppvar.complexes import koszul_complex, resolve_quotient
from suppvar.fdalgebra import CIAlgebra, carlson_module, direct_sum, syzygy_module
from suppvar.groebner import Ideal
from suppvar.linalg import GF
from suppvar.localcoh import MultigradedModule
from suppvar.poly import Ring
from suppvar.serialize import canonical_json, encode, ideal_to_json


def build():
    docs = {}

    C2 = CIAlgebra(GF(2), [2])
    V4 = CIAlgebra(GF(2), [2, 2])
    Z2cube = CIAlgebra(GF(2), [2, 2, 2])

    docs["c2_k"] = C2.trivial_module()
    docs["c2_A"] = C2.regular_module()
    docs["c2_omega1_k"] = syzygy_module(C2.trivial_module())

    kV4 = V4.trivial_module()
    docs["v4_k"] = kV4
    docs["v4_A"] = V4.regular_module()
    docs["v4_omega1_k"] = syzygy_module(kV4)
    docs["v4_omega2_k"] = syzygy_module(syzygy_module(kV4))
    docs["v4_Lx"] = carlson_module(V4, 1, [1, 0])
    docs["v4_Ly"] = carlson_module(V4, 1, [0, 1])
    docs["v4_Lxy"] = carlson_module(V4, 1, [1, 1])
    docs["v4_Lx_plus_Ly"] = direct_sum([docs["v4_Lx"], docs["v4_Ly"]])

    docs["z2cube_k"] = Z2cube.trivial_module()

    R = Ring(GF(2), ["x", "y"])
    x, y = R.gens()
    docs["cx_koszul_xy"] = koszul_complex(R, [x, y])
    docs["cx_quotient_x2_xy"] = resolve_quotient(Ideal(R, [x * x, x * y]))
    docs["cx_quotient_y"] = resolve_quotient(Ideal(R, [y]))

    Rm = Ring(GF(2), ["x", "y"], multigraded=True)
    xm, ym = Rm.gens()
    docs["plane_free"] = MultigradedModule.free(Rm)
    docs["plane_mod_x"] = MultigradedModule.quotient_by_ideal(Ideal(Rm, [xm]))
    docs["plane_mod_xy"] = MultigradedModule.quotient_by_ideal(Ideal(Rm, [xm * ym]))

    out = {}
    for name, obj in docs.items():
        out[name] = encode(obj)
    out["ideal_empty"] = ideal_to_json(Ideal(R, []))
    out["ideal_plane_maximal"] = ideal_to_json(Ideal(R, [x, y]))
    return out


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    root = os.path.dirname(here)
    targets = [os.path.join(root, "src", "suppvar", "corpus")]
    docs = build()
    for target in targets:
        os.makedirs(target, exist_ok=True)
        for name, doc in sorted(docs.items()):
            path = os.path.join(target, f"{name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(canonical_json(doc))
                fh.write("\n")
        print(f"wrote {len(docs)} files to {target}")


if __name__ == "__main__":
    main()
