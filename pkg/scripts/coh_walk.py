"""Random mutation walk through tilting sets on a weighted projective line."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from tiltkit import lattice as lat
from tiltkit import rigid as rg
from tiltkit import sheaves as sh


@dataclass(frozen=True)
class WalkConfig:
    weights: str = "(2,3)"
    steps: int = 200
    seed: int = 0
    involution_every: int = 10


def degree_span(s: rg.RigidSet) -> tuple[int, int]:
    degs = [e.x.l for e in s.elements if isinstance(e, sh.LineBundle)]
    return (min(degs), max(degs)) if degs else (0, 0)


def run_walk(cfg: WalkConfig) -> dict:
    backend = rg.CohBackend(lat.WeightType.parse(cfg.weights))
    rng = random.Random(cfg.seed)
    current = rg.canonical_tilting(backend)
    seen = {current.key}
    blocked = 0
    lo, hi = degree_span(current)
    for step in range(cfg.steps):
        k = rng.randrange(len(current.elements))
        try:
            after = rg.mutate(current, k)
        except rg.ComplementNotInWindow:
            blocked += 1
            continue
        if cfg.involution_every and step % cfg.involution_every == 0:
            added = next(e for e in after.elements if e not in current.elements)
            back = rg.mutate(after, after.elements.index(added))
            assert back == current, "mutation failed to be an involution"
        current = after
        seen.add(current.key)
        slo, shi = degree_span(current)
        lo, hi = min(lo, slo), max(hi, shi)
    return {
        "weights": cfg.weights,
        "steps": cfg.steps,
        "distinct_sets": len(seen),
        "blocked_mutations": blocked,
        "degree_range": (lo, hi),
        "final": current.key,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--weights", default=WalkConfig.weights)
    parser.add_argument("--steps", type=int, default=WalkConfig.steps)
    parser.add_argument("--seed", type=int, default=WalkConfig.seed)
    args = parser.parse_args()
    cfg = WalkConfig(weights=args.weights, steps=args.steps, seed=args.seed)

    report = run_walk(cfg)
    for key, value in report.items():
        print(f"{key:>18}: {value}")


if __name__ == "__main__":
    main()
