"""Write generator files for a few transitive groups of degree 6.

PSL(2,5) and PGL(2,5) act on the projective line over F_5, with the points
0..4 labelled 1..5 and infinity labelled 6.
"""
import argparse
from pathlib import Path

from aloops.perm import Permutation, format_generators

INF = 5


def moebius(a, b, c, d, p=5):
    """Permutation of the projective line induced by x -> (ax + b)/(cx + d)."""
    def image(x):
        if x == INF:
            return INF if c == 0 else a * pow(c, -1, p) % p
        den = (c * x + d) % p
        if den == 0:
            return INF
        return (a * x + b) * pow(den, -1, p) % p
    return Permutation([image(x) for x in range(p + 1)])


def groups():
    shift = moebius(1, 1, 0, 1)
    flip = moebius(0, -1 % 5, 1, 0)
    return {
        "psl2_5": ("PSL(2,5) on the projective line", [shift, moebius(4, 0, 0, 1), flip]),
        "pgl2_5": ("PGL(2,5) on the projective line", [shift, moebius(2, 0, 0, 1), flip]),
        "a6": ("A6", [Permutation.from_cycles(6, (0, 1, 2)), Permutation.from_cycles(6, (1, 2, 3, 4, 5))]),
        "s6": ("S6", [Permutation.from_cycles(6, (0, 1)), Permutation.from_cycles(6, (0, 1, 2, 3, 4, 5))]),
        "c6": ("cyclic, regular", [Permutation.from_cycles(6, (0, 1, 2, 3, 4, 5))]),
        "s3wrs2": ("S3 wr S2, imprimitive",
                   [Permutation.from_cycles(6, (0, 1)), Permutation.from_cycles(6, (0, 1, 2)),
                    Permutation.from_cycles(6, (0, 3), (1, 4), (2, 5))]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="data/groups/deg6")
    args = ap.parse_args(argv)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (header, gens) in groups().items():
        (out / f"{name}.gens").write_text(format_generators(gens, header))
        print(out / f"{name}.gens")


if __name__ == "__main__":
    main()
