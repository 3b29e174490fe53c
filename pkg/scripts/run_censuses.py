"""Print class counts for the small census families.

Usage: python3 scripts/run_censuses.py [--primes 3 5 7]
"""
import argparse
from dataclasses import dataclass, field

from aloops.search import census_2p, census_p3, census_pq, field_ext_census


@dataclass
class CensusConfig:
    primes_2p: list[int] = field(default_factory=lambda: [3, 5, 7])
    primes_p3: list[int] = field(default_factory=lambda: [3])
    pq_pairs: list[tuple[int, int]] = field(default_factory=lambda: [(5, 3), (7, 3), (11, 7), (13, 3)])
    field_primes: list[int] = field(default_factory=lambda: [2, 3])


def summarize(name: str, records) -> str:
    nonassoc = sum(not r.representative.is_associative for r in records)
    return f"{name:<16} classes={len(records):<3} nonassociative={nonassoc}"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+")
    args = ap.parse_args()
    cfg = CensusConfig()
    if args.primes:
        cfg.primes_2p = args.primes
    for p in cfg.primes_2p:
        print(summarize(f"order 2*{p}", census_2p(p)))
    for p in cfg.primes_p3:
        print(summarize(f"order {p}^3", census_p3(p)))
    for p, q in cfg.pq_pairs:
        print(summarize(f"order {p}*{q}", census_pq(p, q)))
    for p in cfg.field_primes:
        print(summarize(f"field ext p={p}", field_ext_census(p)))


if __name__ == "__main__":
    main()
