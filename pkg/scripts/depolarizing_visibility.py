"""Fringe visibility and Bloch shrink factor across the depolarizing family."""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from phasekit import BlochVector, apply_kraus, bloch_to_density, cp_phase, density_to_bloch, depolarizing
from phasekit.sampling import random_bloch


@dataclass(frozen=True)
class Config:
    steps: int = 11
    states: int = 20
    seed: int = 0


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    rs = [np.asarray(random_bloch(rng)) for _ in range(cfg.states)]
    rows = []
    for p in np.linspace(0, 1, cfg.steps):
        k = depolarizing(float(p))
        vis, shrink = [], []
        for r in rs:
            rho = bloch_to_density(BlochVector(*r))
            vis.append(cp_phase(k, rho).visibility)
            out = density_to_bloch(apply_kraus(k, rho)).as_array()
            shrink.append(float(out @ r) / float(r @ r))
        rows.append((float(p), float(np.mean(vis)), math.sqrt(1 - p), float(np.mean(shrink)), 1 - 4 * p / 3))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=Config.steps)
    ap.add_argument("--states", type=int, default=Config.states)
    ap.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'p':>5} {'visibility':>12} {'sqrt(1-p)':>12} {'shrink':>10} {'1-4p/3':>10}")
    for p, v, v_ref, s, s_ref in run(cfg):
        print(f"{p:5.2f} {v:12.9f} {v_ref:12.9f} {s:10.6f} {s_ref:10.6f}")


if __name__ == "__main__":
    main()
