"""Phase mismatch along two-step sequences against the Bargmann argument."""
import argparse
from dataclasses import dataclass

import numpy as np

from phasekit import circular_distance, sequence_report
from phasekit.sampling import random_density, random_dilation, random_pure_state


@dataclass(frozen=True)
class Config:
    cases: int = 200
    seed: int = 3
    shared_ancilla: bool = False


def run(cfg: Config):
    rng = np.random.default_rng(cfg.seed)
    mismatches, errors, skipped = [], [], 0
    for _ in range(cfg.cases):
        dim = int(rng.integers(2, 5))
        k1 = int(rng.integers(1, 4))
        k2 = k1 if cfg.shared_ancilla else int(rng.integers(1, 4))
        d1, d2 = random_dilation(rng, dim, k1), random_dilation(rng, dim, k2)
        rep = sequence_report(
            random_density(rng, dim), d1, random_pure_state(rng, k1), d2, random_pure_state(rng, k2),
            shared_ancilla=cfg.shared_ancilla,
        )
        if not rep.defined:
            skipped += 1
            continue
        mismatches.append(abs(rep.mismatch))
        errors.append(circular_distance(rep.mismatch, rep.bargmann_phase.phase))
    return np.array(mismatches), np.array(errors), skipped


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=Config.cases)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--shared-ancilla", dest="shared_ancilla", action="store_true")
    cfg = Config(**vars(ap.parse_args()))
    m, e, skipped = run(cfg)
    print(f"sequences with defined phases: {m.size} (skipped {skipped})")
    print(f"|mismatch|: mean {m.mean():.4f}, max {m.max():.4f}")
    print(f"circular distance to Arg Bargmann: max {e.max():.2e}")


if __name__ == "__main__":
    main()
