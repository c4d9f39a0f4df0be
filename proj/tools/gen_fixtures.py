#!/usr/bin/env python3
"""Export newform q-expansions from PARI/GP into the eiscong fixture format.

Each newform orbit is written as one JSON file.  The coefficient field is
presented as Q(a) with a = a_f(2) whenever a_f(2) generates the field, so
the defining polynomial is the characteristic polynomial of a_f(2).
Atkin-Lehner signs come from mfatkineigenvalues, independent of a_f(p).

Labels follow the usual N.k.a.x convention: orbits are ordered by
dimension, then lexicographically by the traces of a_f(1), a_f(2), ...

Requires the `cypari` wheel (bundles PARI 2.15).

    python3 tools/gen_fixtures.py fixtures/
"""
import itertools
import json
import math
import os
import sys

from cypari import pari

PARI_VERSION = ""

# (level, weight, complete, selection, moduli) -- selection filters the
# written orbits by a_f(2) charpoly prefix when the space is not exported in
# full; moduli are the primes the fixture must support reduction modulo.
SPACES = [
    (15, 6, True, None, (13,)),
    (38, 2, True, None, (5,)),
    (57, 2, True, None, (5,)),
    (57, 6, True, None, (5,)),
    (93, 6, True, None, (13,)),
    (114, 2, True, None, (5,)),
    (465, 6, False, "x^13 - 7*x^12 - 290*x^11 + 1776*x^10", (13,)),
]


def sturm_index_bound(k, n):
    num, den = k * n, 12
    for p in map(int, pari(f"factor({n})[,1]~")):
        num *= p + 1
        den *= p
    return -(-num // den)


# When a modulus divides the index [O_K : Z[a]], reduction modulo a
# degree-one prime cannot be done by evaluating the power-basis
# representation at a root, so another primitive element is chosen.
def bad_index_primes(poly_var, moduli, nf="K"):
    pari(f"{nf}=nfinit({poly_var}); Ix=sqrtint(poldisc({poly_var})/{nf}.disc);")
    return [p for p in moduli if int(pari(f"Ix%{p}")) == 0]


def rebase_generator(moduli):
    """Replace the field generator by an integral element b whose index
    avoids SMALL_PRIMES; rewrites Q and C in place (PARI globals)."""
    deg = int(pari("poldegree(Q)"))
    for bound in range(1, 4):
        for vec in itertools.product(range(-bound, bound + 1), repeat=deg):
            if max(map(abs, vec)) != bound or vec[1] <= 0:
                continue
            pari(f"b=Mod(K.zk*{list(vec)}~, Q); Qb=charpoly(b);")
            if not int(pari("issquarefree(Qb)")):
                continue
            if bad_index_primes("Qb", moduli, nf="Kb"):
                continue
            pari("R=subst(lift(modreverse(b)),y,x);"
                 "C=vector(#C,n, lift(Mod(subst(C[n],x,R),Qb))); Q=Qb;")
            return "a = " + str(pari("lift(b)")).replace("x", "a_f(2)")
    raise RuntimeError("no suitable generator found")


def letters(i):
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def export_space(level, weight, complete, selection, moduli, outdir, nmax):
    pari(f"mf=mfinit([{level},{weight}],0); L=mfeigenbasis(mf);")
    count = int(pari("#L"))
    primes = [int(p) for p in pari(f"factor({level})[,1]~")]
    orbits = []
    for i in range(1, count + 1):
        pari(f"c=mfcoefs(L[{i}],{nmax}); a2=c[3];")
        if str(pari("type(a2)")).strip('"') == "t_POLMOD":
            pari("Q=charpoly(a2); if(!issquarefree(Q), error(\"a2 does not generate\"));"
                 "R=subst(lift(modreverse(a2)),y,x);"
                 "C=vector(#c-1,n, my(v=c[n+1]); if(type(v)==\"t_POLMOD\","
                 " lift(Mod(subst(lift(v),y,R),Q)), v));")
            generator = "a = a_f(2)"
            if bad_index_primes("Q", moduli):
                generator = rebase_generator(moduli)
            poly = [int(v) for v in pari("Vecrev(Q)")]
            deg = len(poly) - 1
            an = []
            for n in range(1, nmax + 1):
                pari(f"P=C[{n}]*1; d=denominator(content(P)); P=P*d;")
                if str(pari("denominator(content(P))")) != "1":
                    raise RuntimeError("non-integral numerator")
                num = [int(v) for v in pari(f"Vecrev(P,{deg})")]
                den = int(pari("d"))
                an.append({"den": den, "num": num})
            traces = [int(pari(f"trace(Mod(C[{n}],Q))")) for n in range(1, 21)]
        else:
            generator = "rational"
            poly = [0, 1]
            an = [int(v) for v in pari("c[2..#c]")]
            deg = 1
            traces = an[:20]
        signs = {}
        for p in primes:
            vals = set(int(v) for v in pari(f"mfatkineigenvalues(mf,{p})[{i}]"))
            if len(vals) != 1:
                raise RuntimeError(f"non-constant AL sign at {level}.{weight} form {i}")
            signs[str(p)] = vals.pop()
        orbits.append((deg, traces, poly, an, signs))
    orbits.sort(key=lambda o: (o[0], o[1]))
    labels = []
    for idx, (deg, traces, poly, an, signs) in enumerate(orbits):
        if selection is not None:
            cp = pari(f"Polrev({poly})")
            if not str(cp).startswith(selection):
                continue
        label = f"{level}.{weight}.a.{letters(idx)}"
        record = {
            "label": label,
            "weight": weight,
            "level": level,
            "al_signs": signs,
            "field_poly": poly,
            "an": an,
            "source": f"PARI/GP {PARI_VERSION} mfinit([{level},{weight}],0) via tools/gen_fixtures.py; {generator}",
        }
        with open(os.path.join(outdir, label + ".json"), "w") as fh:
            json.dump(record, fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")
        labels.append(label)
    return {"level": level, "weight": weight, "complete": complete,
            "newform_count": len(orbits), "labels": labels}


def main():
    global PARI_VERSION
    PARI_VERSION = ".".join(str(v) for v in pari("version()")[:3])
    outdir = sys.argv[1] if len(sys.argv) > 1 else "fixtures"
    os.makedirs(outdir, exist_ok=True)
    pari.allocatemem(2 * 10**9)
    manifest = []
    for level, weight, complete, selection, moduli in SPACES:
        nmax = max(100, sturm_index_bound(weight, level) + 16)
        manifest.append(export_space(level, weight, complete, selection, moduli, outdir, nmax))
        print(manifest[-1], file=sys.stderr)
    with open(os.path.join(outdir, "manifest.json"), "w") as fh:
        json.dump({"spaces": manifest}, fh, sort_keys=True, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
