"""One joint unitary, many ancilla preparations: the channel and the phase both move.

For a fixed random dilation the script sweeps the ancilla over a great
circle and reports the phase, the visibility and the Choi distance of the
induced channel from the one induced by |0⟩.
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from phasekit import PureState, ancilla_phase, basis_state, choi_distance, extract_kraus
from phasekit.sampling import random_density, random_dilation


@dataclass(frozen=True)
class Config:
    sys_dim: int = 2
    steps: int = 9
    seed: int = 11


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    dil = random_dilation(rng, cfg.sys_dim, 2)
    rho = random_density(rng, cfg.sys_dim)
    ref = extract_kraus(dil, basis_state(2, 0))
    rows = []
    for t in np.linspace(0, math.pi, cfg.steps):
        a = PureState.normalized([math.cos(t / 2), 1j * math.sin(t / 2)])
        pr = ancilla_phase(dil, a, rho)
        rows.append((float(t), pr, choi_distance(ref, extract_kraus(dil, a))))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sys-dim", dest="sys_dim", type=int, default=Config.sys_dim)
    ap.add_argument("--steps", type=int, default=Config.steps)
    ap.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'t':>7} {'phase':>10} {'visibility':>11} {'choi dist':>10}")
    for t, pr, dist in run(cfg):
        print(f"{t:7.4f} {pr.phase:10.6f} {pr.visibility:11.6f} {dist:10.2e}")


if __name__ == "__main__":
    main()
