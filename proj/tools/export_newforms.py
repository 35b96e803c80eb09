#!/usr/bin/env python3
"""Export weight-2 trivial-character newform classes of a given level to the
JSON shape read by `twf` (one file per level).

Eigenvalue data is computed with PARI/GP through cypari2 (`pip install
cypari2`).  The same shape can be produced from any modular-forms database
that lists, per Galois orbit, a defining polynomial of the coefficient field
and the Hecke eigenvalues a_p as polynomials in its generator.

    {"level": N,
     "classes": [{"label": str, "degree": d,
                  "min_poly": [c0, ..., 1],
                  "index_coprime_to": [l, ...],
                  "eigenvalues": {"p": [[num, den], ...]}}]}

Integers that do not fit in 64 bits are written as decimal strings.

usage: export_newforms.py LEVEL [LEVEL ...] --out DIR [--bound 600] [--skip-existing]
"""
import argparse
import json
import os
import sys

try:
    import cypari2
except ImportError:  # pragma: no cover
    sys.stderr.write("export_newforms.py needs cypari2 (pip install cypari2)\n")
    sys.exit(2)

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def as_json_int(v):
    v = int(v)
    return v if -(2**63) <= v < 2**63 else str(v)


def poly_coeffs(q, var):
    """Ascending rational coefficients of a polynomial (or constant) in var."""
    q = pari.lift(q)
    if pari.type(q) in ("t_INT", "t_FRAC") or q == 0:
        return [pari(q)]
    d = int(pari.poldegree(q, var))
    return [pari.polcoef(q, i, var) for i in range(d + 1)]


def index_of(poly):
    disc = pari.poldisc(poly)
    field_disc = pari.nfdisc(poly)
    return pari.sqrtint(pari.abs(disc // field_disc))


def candidate_generators(P, coeffs, level):
    """Yield (Q, y_in_theta) pairs: Q monic integral, y expressed in a root of Q."""
    y = pari("y")
    yield P, y
    red = pari.polredbest(P, 1)
    yield red[0], pari.lift(red[1])
    for p in SMALL_PRIMES:
        if level % p == 0 or p >= len(coeffs):
            continue
        ap = pari.Mod(pari.lift(coeffs[p]), P)
        cp = pari.charpoly(ap, "y")
        if pari.poldegree(pari.gcd(cp, pari.deriv(cp, "y")), "y") != 0:
            continue
        if any(pari.denominator(c) != 1 for c in pari.Vec(cp)):
            continue
        yield cp, pari.lift(pari.modreverse(ap))


def export_level(level, bound):
    mf = pari.mfinit([level, 2], 0)
    forms = pari.mfeigenbasis(mf)
    out = []
    for i, F in enumerate(forms):
        coeffs = pari.mfcoefs(F, bound)
        P = pari.mfsplit(mf, 0, 1)[1][i]
        if pari.poldegree(P, "y") < 1:
            P = pari("y")
        degree = int(pari.poldegree(P, "y"))
        best = None
        for Q, y_theta in candidate_generators(P, coeffs, level):
            if pari.pollead(Q) != 1:
                continue
            idx = index_of(Q)
            coprime = [l for l in SMALL_PRIMES if idx % l != 0]
            score = (3 in coprime, len(coprime))
            if best is None or score > best[0]:
                best = (score, Q, y_theta, coprime)
        _, Q, y_theta, coprime = best
        eig = {}
        for p in pari.primes([2, bound]):
            p = int(p)
            a = pari.lift(coeffs[p])
            a = pari.subst(a, "y", y_theta)
            a = pari.lift(pari.Mod(a, pari.subst(Q, pari.variable(Q), "y")))
            eig[str(p)] = [[as_json_int(pari.numerator(c)), as_json_int(pari.denominator(c))]
                           for c in poly_coeffs(a, "y")]
        Qy = pari.subst(Q, pari.variable(Q), "y")
        out.append({
            "label": f"{level}.{i + 1}",
            "degree": degree,
            "min_poly": [as_json_int(c) for c in pari.Vecrev(Qy)],
            "index_coprime_to": coprime,
            "eigenvalues": eig,
        })
    return {"level": level, "classes": out}


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("levels", type=int, nargs="+")
    ap.add_argument("--out", required=True)
    ap.add_argument("--bound", type=int, default=600)
    ap.add_argument("--skip-existing", action="store_true", help="keep level files already present")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for level in args.levels:
        path = os.path.join(args.out, f"level_{level}.json")
        if args.skip_existing and os.path.exists(path):
            print(f"{path}: kept")
            continue
        data = export_level(level, args.bound)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print(f"{path}: {len(data['classes'])} classes")


if __name__ == "__main__":
    main()
