"""Phase and visibility under full randomization over a grid of input states.

The output state is always I/2, yet the interferometric phase tracks the
input: the amplitude is (|α|² + α*β)/2 for ψ = α|0⟩ + β|1⟩.
"""
import argparse
import math
from dataclasses import dataclass

import numpy as np

from phasekit import PureState, ancilla_phase, apply_dilation, randomizing


@dataclass(frozen=True)
class Config:
    polar: int = 7
    azimuth: int = 8


def run(cfg: Config):
    _, dil, anc = randomizing()
    rows = []
    for theta in np.linspace(0, math.pi, cfg.polar):
        for phi in np.linspace(0, 2 * math.pi, cfg.azimuth, endpoint=False):
            psi = PureState.normalized([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
            rho = psi.projector()
            out = apply_dilation(dil, anc, rho).matrix
            pr = ancilla_phase(dil, anc, rho)
            rows.append((theta, phi, pr, float(np.max(np.abs(out - np.eye(2) / 2)))))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--polar", type=int, default=Config.polar)
    ap.add_argument("--azimuth", type=int, default=Config.azimuth)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'theta':>7} {'phi':>7} {'phase':>10} {'visibility':>11} {'|out - I/2|':>12}")
    for theta, phi, pr, dev in run(cfg):
        phase = f"{pr.phase:10.6f}" if pr.defined else f"{'undef':>10}"
        print(f"{theta:7.4f} {phi:7.4f} {phase} {pr.visibility:11.6f} {dev:12.1e}")


if __name__ == "__main__":
    main()
