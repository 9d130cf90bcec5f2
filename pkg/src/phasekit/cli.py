"""Command line interface: ``phasekit <command> scene.json ...``.

Exit codes: 0 success, 1 validation failure, 2 undefined phase,
3 not in phase, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .channel import apply_dilation, apply_kraus, choi_distance, completeness_defect, dilate, extract_kraus
from .compose import sequence_report
from .errors import PhaseKitError
from .matcore import EQ_TOL, ORACLE_TOL, dagger, hermiticity_defect, unitarity_defect
from .phase import VISIBILITY_FLOOR, PhaseResult, circular_distance, cp_phase_mu, fringe, fringe_grid, in_phase
from .purify import purified_phase
from .scene import Scene, SceneSyntaxError, SceneValidationError, dilation_scene, load_scene

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_UNDEFINED = 2
EXIT_NOT_IN_PHASE = 3
EXIT_IO = 4


class _IOFailure(Exception):
    pass


def fmt(x: float) -> str:
    """Fixed 12-decimal rendering with negative zero folded to zero."""
    s = f"{x:.12f}"
    if s.startswith("-") and float(s) == 0.0:
        s = s[1:]
    return s


def _angle(x: float, degrees: bool) -> str:
    return f"{fmt(math.degrees(x))} deg" if degrees else fmt(x)


def _load(path) -> Scene:
    try:
        return load_scene(path)
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from None


def _phase_line(name: str, pr: PhaseResult, degrees: bool) -> str:
    if pr.defined:
        return f"{name} {_angle(pr.phase, degrees)}, visibility {fmt(pr.visibility)}"
    return f"{name} undefined (visibility < {VISIBILITY_FLOOR:g}), visibility {fmt(pr.visibility)}"


def cmd_phase(args, out) -> int:
    scene = _load(args.scene)
    pr = scene.phase(args.mu)
    print(_phase_line("phase", pr, args.degrees), file=out)
    return EXIT_OK if pr.defined else EXIT_UNDEFINED


def fringe_csv(pr: PhaseResult, samples: int) -> str:
    rows = ["chi,intensity"]
    rows += [f"{fmt(chi)},{fmt(val)}" for chi, val in fringe(pr, fringe_grid(samples))]
    return "\n".join(rows) + "\n"


def cmd_fringe(args, out) -> int:
    scene = _load(args.scene)
    if args.samples < 2:
        print("error: --samples must be at least 2", file=sys.stderr)
        return EXIT_VALIDATION
    text = fringe_csv(scene.phase(args.mu), args.samples)
    if args.out:
        _write(args.out, text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_compose(args, out) -> int:
    first = _load(args.scene1)
    second = _load(args.scene2)
    if first.sys_dim != second.sys_dim:
        raise SceneValidationError("system_dim", f"scenes act on dimensions {first.sys_dim} and {second.sys_dim}")
    try:
        rep = sequence_report(
            first.rho, first.dilation, first.ancilla, second.dilation, second.ancilla,
            shared_ancilla=args.shared_ancilla,
        )
    except PhaseKitError as exc:
        raise SceneValidationError("channel", str(exc)) from None
    for name, pr in (("phi_12", rep.phi_12), ("phi_23", rep.phi_23), ("phi_13", rep.phi_13)):
        print(_phase_line(name, pr, args.degrees), file=out)
    if not rep.defined:
        print("mismatch undefined", file=out)
        return EXIT_UNDEFINED
    barg = rep.bargmann_phase
    print(f"mismatch {_angle(rep.mismatch, args.degrees)}", file=out)
    print(f"bargmann_arg {_angle(barg.phase, args.degrees)}", file=out)
    naive = rep.naive_kraus_phase
    naive_text = _angle(naive.phase, args.degrees) if naive.defined else "undefined"
    print(f"trace_form_arg {_angle(PhaseResult.from_amplitude(rep.trace_product).phase, args.degrees)}", file=out)
    print(f"index0_kraus_arg {naive_text}", file=out)
    if circular_distance(rep.mismatch, barg.phase) > ORACLE_TOL:
        print("error: mismatch disagrees with the Bargmann invariant", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_inphase(args, out) -> int:
    scene = _load(args.scene)
    tol = args.tol if args.tol is not None else scene.tol
    if in_phase(scene.dilation, scene.ancilla, scene.rho, tol):
        print("in-phase", file=out)
        return EXIT_OK
    pr = scene.phase()
    text = _angle(pr.phase, args.degrees) if pr.defined else "undefined"
    print(f"not in-phase, phase {text}, visibility {fmt(pr.visibility)}", file=out)
    return EXIT_NOT_IN_PHASE


def cmd_check(args, out) -> int:
    scene = _load(args.scene)
    rho = scene.rho.matrix
    lines = [
        f"system_dim {scene.sys_dim}",
        f"state.hermiticity_defect {hermiticity_defect(rho):.3e}",
        f"state.trace_defect {abs(np.trace(rho) - 1):.3e}",
        f"state.min_eigenvalue {float(np.linalg.eigvalsh((rho + dagger(rho)) / 2)[0]):.3e}",
        f"channel.kraus_count {len(scene.kraus)}",
        f"channel.completeness_defect {completeness_defect(list(scene.kraus))[0]:.3e}",
        f"channel.anc_dim {scene.dilation.anc_dim}",
        f"channel.unitarity_defect {unitarity_defect(scene.dilation.unitary):.3e}",
        f"ancilla.norm_defect {abs(np.linalg.norm(scene.ancilla.amplitudes) - 1):.3e}",
    ]
    rebuilt = extract_kraus(scene.dilation, scene.ancilla)
    lines.append(
        "channel.dilation_roundtrip_defect "
        f"{max(float(np.max(np.abs(a - b))) for a, b in zip(rebuilt, scene.kraus)):.3e}"
    )
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_equal(args, out) -> int:
    a = _load(args.scene_a)
    b = _load(args.scene_b)
    if a.sys_dim != b.sys_dim:
        raise SceneValidationError("system_dim", f"scenes act on dimensions {a.sys_dim} and {b.sys_dim}")
    dist = choi_distance(a.kraus, b.kraus)
    print(f"choi_distance {dist:.3e}", file=out)
    print("equal" if dist <= args.tol else "not equal", file=out)
    return EXIT_OK


def cmd_dilate(args, out) -> int:
    scene = _load(args.scene)
    dil = dilate(scene.kraus)
    text = json.dumps(dilation_scene(scene, dil), indent=1) + "\n"
    if args.out:
        _write(args.out, text)
        print(f"wrote {args.out}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    from .sampling import random_density, random_dilation, random_pure_state

    rng = np.random.default_rng(args.seed)
    worst_channel = worst_phase = worst_barg = 0.0
    for _ in range(args.cases):
        d = int(rng.integers(2, 5))
        k = int(rng.integers(1, 5))
        dil = random_dilation(rng, d, k)
        a = random_pure_state(rng, k)
        rho = random_density(rng, d)
        kraus = extract_kraus(dil, a)
        worst_channel = max(
            worst_channel,
            float(np.max(np.abs(apply_dilation(dil, a, rho).matrix - apply_kraus(kraus, rho).matrix))),
        )
        for mu in range(k):
            x, y = cp_phase_mu(kraus, rho, mu), purified_phase(dil, rho, a, mu)
            worst_phase = max(worst_phase, abs(x.amplitude - y.amplitude))
        dil2 = random_dilation(rng, d, int(rng.integers(1, 4)))
        a2 = random_pure_state(rng, dil2.anc_dim)
        rep = sequence_report(rho, dil, a, dil2, a2)
        if rep.defined:
            worst_barg = max(worst_barg, circular_distance(rep.mismatch, rep.bargmann_phase.phase))
    print(f"cases {args.cases}, seed {args.seed}", file=out)
    print(f"channel_route_defect {worst_channel:.3e}", file=out)
    print(f"purified_amplitude_defect {worst_phase:.3e}", file=out)
    print(f"bargmann_defect {worst_barg:.3e}", file=out)
    ok = worst_channel <= 1e-10 and worst_phase <= ORACLE_TOL and worst_barg <= ORACLE_TOL
    print("ok" if ok else "FAILED", file=out)
    return EXIT_OK if ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phasekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase", help="relative phase and visibility of a scene")
    p.add_argument("scene")
    p.add_argument("--mu", type=int, default=None, help="Kraus index of the reference ancilla state")
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("fringe", help="interference fringe as CSV")
    p.add_argument("scene")
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--out", default=None)
    p.add_argument("--mu", type=int, default=None)
    p.set_defaults(func=cmd_fringe)

    p = sub.add_parser("compose", help="phases along a sequence of two operations")
    p.add_argument("scene1")
    p.add_argument("scene2")
    p.add_argument("--shared-ancilla", action="store_true", help="reuse one ancilla register for both")
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("inphase", help="test whether Tr(rho <A|U|A>) is real and positive")
    p.add_argument("scene")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_inphase)

    p = sub.add_parser("check", help="print invariant defects of a scene")
    p.add_argument("scene")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("equal", help="compare two channels by their Choi matrices")
    p.add_argument("scene_a")
    p.add_argument("scene_b")
    p.add_argument("--tol", type=float, default=EQ_TOL)
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("dilate", help="write a dilation scene for a Kraus scene")
    p.add_argument("scene")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("selftest", help="randomised cross-checks of independent routes")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--cases", type=int, default=100)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SceneSyntaxError, SceneValidationError, PhaseKitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
