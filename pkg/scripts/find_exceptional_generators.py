#!/usr/bin/env python3
"""Search for reflection roots extending G(2,1,4) to G29 and G(4,2,4) to G31.

The catalog needs explicit matrices for the primitive groups G29 and G31.
Both contain the obvious monomial subgroups, so we look for a single extra
order-2 unitary reflection whose root has entries in {1, i}: candidates are
classified up to the monomial action by the number of imaginary slots.  A
candidate is accepted only if the closure has the right order AND the full
numerology (reflection count, center, hyperplane count, Molien series vs
degree product) matches the reference data.

Run from the repository root:  python scripts/find_exceptional_generators.py
The accepted roots are printed as JSON ready for src/crg/data/catalog.json.
"""

import json
import sys
import time

sys.path.insert(0, "src")

from crg.cyclotomic import Cyclotomic
from crg.groups import ClosureCapExceeded, ReflectionGroup
from crg.catalog import imprimitive_generators, unitary_reflection

I = Cyclotomic.root_of_unity(4)
ONE = Cyclotomic.one(4)


def candidates():
    for k in range(4):  # number of trailing i-slots
        yield [ONE] * (4 - k) + [I] * k


def try_extend(name, base_gens, root, meta, cap):
    gens = [g.lift(4) for g in base_gens] + [unitary_reflection(root, 4)]
    g = ReflectionGroup(name, gens, closure_cap=cap, **meta)
    t0 = time.time()
    try:
        g.enumerate()
    except ClosureCapExceeded:
        print(f"  root {root}: closure blew the cap")
        return None
    order = g.order
    print(f"  root {root}: |G| = {order}  ({time.time()-t0:.1f}s)")
    if order != meta["expected_order"]:
        return None
    checks = g.verify_numerology(N=30)
    ok = checks["all_pass"]
    print(f"    numerology: {'PASS' if ok else 'FAIL'}")
    return root if ok else None


def main():
    found = {}
    print("G29 = <G(2,1,4), s_r> search")
    base = imprimitive_generators(2, 1)
    meta = dict(degrees=[4, 8, 12, 20], codegrees=[0, 8, 12, 16],
                expected_order=7680)
    for root in candidates():
        hit = try_extend("G29?", base, root, meta, cap=60000)
        if hit:
            found["G29"] = [x.to_json() for x in hit]
            break

    print("G31 = <G(4,2,4), s_r> search")
    base = imprimitive_generators(4, 2)
    meta = dict(degrees=[8, 12, 20, 24], codegrees=[0, 12, 16, 28],
                expected_order=46080)
    for root in candidates():
        hit = try_extend("G31?", base, root, meta, cap=200000)
        if hit:
            found["G31"] = [x.to_json() for x in hit]
            break

    print(json.dumps(found, indent=1))


if __name__ == "__main__":
    main()
