"""Reproduce the two worked septic examples and the small-degree constructions.

Writes one JSON document per example into --out (default: ./results).
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from fanolift.exact.poly import UniPoly, proportional
from fanolift.pencil import Pencil, certify, lift, pencil_discriminant
from fanolift.smalldeg import d4_pencil, d5_pencil, d6_condition, v4_factor, v4_q

TRINKS = UniPoly([3, -7, 0, 0, 0, 0, 0, 1])
TRINKS_Q = UniPoly([2, -1, -1, -1, -1, 2])
SPLIT_ROOTS = [0, 1, -1, 2, -2, 3, -3]
SPLIT_Q = UniPoly([-151380, -192228, -22709, 93494, 28812, -18578, -259])


@dataclass(frozen=True)
class Config:
    out: Path
    digits: int


def trinks(cfg: Config) -> dict:
    start = time.perf_counter()
    rep = lift(TRINKS, digits=cfg.digits)
    disc = pencil_discriminant(Pencil(TRINKS, TRINKS_Q))
    expected = (UniPoly([7, -5, 1], "T") * UniPoly([3087, -441, 21, 800], "T")) ** 2 * 81
    return {"lift": rep.to_json(), "seconds": round(time.perf_counter() - start, 2),
            "discriminant_matches": disc == expected,
            "certification": certify(TRINKS, TRINKS_Q, 100).to_json()}


def split_septic(cfg: Config) -> dict:
    rep = lift(UniPoly.from_roots(SPLIT_ROOTS), digits=cfg.digits)
    hits = [c.index for c in rep.certified if proportional(c.Q, SPLIT_Q) is not None]
    return {"status": rep.status, "classes": rep.classes(), "structures_matching_published_Q": hits}


def small_degree(_: Config) -> dict:
    P = UniPoly.from_roots([0, 1, 2, 6])
    r = v4_q(P)
    f = v4_factor(P, r.Q, roots=[0, 1, 2, 6])
    d4 = d4_pencil([0, 1, 3, 7])
    d5 = d5_pencil([0, 1, 3, 7, 12])
    return {
        "v4": {"Q": r.Q.to_json(), "involutions": [h.to_json() for h in f.involutions]},
        "d4": {"Q1": d4.Q1.to_json(), "Q2": d4.Q2.to_json()},
        "d5": {"Q": d5.Q.to_json(), "F": d5.F.to_json(), "G": d5.G.to_json()},
        "d6": {"condition_at_reference_hexagon": str(d6_condition([2, 3, 5, "1/2", "1/3", "1/5"]))},
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--digits", type=int, default=200)
    a = ap.parse_args()
    cfg = Config(a.out, a.digits)
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name, fn in (("trinks", trinks), ("split_septic", split_septic), ("small_degree", small_degree)):
        doc = fn(cfg)
        (cfg.out / f"{name}.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"{name}: written to {cfg.out / (name + '.json')}")


if __name__ == "__main__":
    main()
