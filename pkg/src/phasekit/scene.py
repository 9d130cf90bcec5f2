"""Scene files: a JSON description of a state, a channel and options.

Example::

    {
      "system_dim": 2,
      "state": {"kind": "bloch", "r": [0, 0, 1]},
      "channel": {"kind": "builtin", "name": "depolarizing", "p": 0.3},
      "ancilla": {"amplitudes": [1, 0, 0, 0]},
      "options": {"mu": 0, "tol": 1e-9}
    }

Complex numbers are written as ``[re, im]`` pairs (a bare real number is
also accepted); matrices are row-major nested lists of those.

State kinds: ``bloch`` (``r``), ``pure`` (``amplitudes``), ``density``
(``matrix``), ``ensemble`` (``weights`` and ``states``, a list of amplitude
vectors).

Channel kinds: ``kraus`` (``operators``), ``dilation`` (``anc_dim``,
``unitary``) and ``builtin`` (``name`` plus parameters, see ``BUILTINS``).

Everything is validated at parse time.  Errors name the offending field.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import builtin
from .channel import (
    Dilation,
    KrausSet,
    completeness_defect,
    dilate,
    extract_kraus,
    identity_dilation,
    make_kraus_set,
    unitary_dilation,
)
from .errors import PhaseKitError
from .matcore import EQ_TOL, BlochVector, DensityMatrix, PureState, basis_state, bloch_to_density
from .phase import PhaseResult, ancilla_phase, cp_phase, cp_phase_mu

BUILTINS = (
    "identity",
    "depolarizing",
    "randomizing",
    "dephasing",
    "dephasing_projective",
    "conditional_unitary",
    "phase_gate",
    "pauli_rotation",
)


class SceneSyntaxError(ValueError):
    pass


class SceneValidationError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True, eq=False)
class Scene:
    sys_dim: int
    rho: DensityMatrix
    kraus: KrausSet
    dilation: Dilation
    ancilla: PureState
    # True when ``kraus`` is exactly what the file gave and the ancilla is |0⟩
    direct_kraus: bool = False
    mu: int | None = None
    tol: float = EQ_TOL
    source: dict = field(default_factory=dict)

    def phase(self, mu: int | None = None) -> PhaseResult:
        mu = self.mu if mu is None else mu
        if mu is not None:
            return cp_phase_mu(self.kraus, self.rho, mu)
        if self.direct_kraus:
            return cp_phase(self.kraus, self.rho)
        return ancilla_phase(self.dilation, self.ancilla, self.rho)


def _require(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise SceneSyntaxError(f"{path}: expected an object")
    if key not in obj:
        raise SceneSyntaxError(f"{path}.{key}: missing field")
    return obj[key]


def parse_complex(x, path: str) -> complex:
    if isinstance(x, bool):
        raise SceneSyntaxError(f"{path}: expected a number or [re, im] pair")
    if isinstance(x, (int, float)):
        z = complex(x)
    elif isinstance(x, list) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        z = complex(x[0], x[1])
    else:
        raise SceneSyntaxError(f"{path}: expected a number or [re, im] pair, got {x!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SceneValidationError(path, "non-finite value")
    return z


def parse_vector(x, path: str) -> np.ndarray:
    if not isinstance(x, list) or not x:
        raise SceneSyntaxError(f"{path}: expected a non-empty list")
    return np.array([parse_complex(v, f"{path}[{i}]") for i, v in enumerate(x)], dtype=complex)


def parse_matrix(x, path: str) -> np.ndarray:
    if not isinstance(x, list) or not x or not all(isinstance(row, list) for row in x):
        raise SceneSyntaxError(f"{path}: expected a non-empty list of rows")
    rows = [parse_vector(row, f"{path}[{i}]") for i, row in enumerate(x)]
    if len({r.size for r in rows}) != 1:
        raise SceneSyntaxError(f"{path}: rows have unequal lengths")
    return np.array(rows)


def _square(m: np.ndarray, n: int, path: str):
    if m.shape != (n, n):
        raise SceneValidationError(path, f"expected a {n}x{n} matrix, got {m.shape[0]}x{m.shape[1]}")


def _pure(x, n: int, path: str) -> PureState:
    amps = parse_vector(x, path)
    if amps.size != n:
        raise SceneValidationError(path, f"expected {n} amplitudes, got {amps.size}")
    try:
        return PureState(amps)
    except PhaseKitError as exc:
        raise SceneValidationError(path, str(exc)) from None


def parse_state(obj, n: int, path: str = "state") -> DensityMatrix:
    kind = _require(obj, "kind", path)
    try:
        if kind == "bloch":
            if n != 2:
                raise SceneValidationError(f"{path}.kind", "Bloch states need system_dim 2")
            r = _require(obj, "r", path)
            if not isinstance(r, list) or len(r) != 3:
                raise SceneSyntaxError(f"{path}.r: expected three real numbers")
            vals = []
            for i, v in enumerate(r):
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise SceneSyntaxError(f"{path}.r[{i}]: expected a real number")
                vals.append(float(v))
            try:
                return bloch_to_density(BlochVector(*vals))
            except PhaseKitError as exc:
                raise SceneValidationError(f"{path}.r", str(exc)) from None
        if kind == "pure":
            return _pure(_require(obj, "amplitudes", path), n, f"{path}.amplitudes").projector()
        if kind == "density":
            m = parse_matrix(_require(obj, "matrix", path), f"{path}.matrix")
            _square(m, n, f"{path}.matrix")
            try:
                return DensityMatrix(m)
            except PhaseKitError as exc:
                raise SceneValidationError(f"{path}.matrix", str(exc)) from None
        if kind == "ensemble":
            weights = _require(obj, "weights", path)
            states = _require(obj, "states", path)
            if not isinstance(weights, list) or not isinstance(states, list) or len(weights) != len(states):
                raise SceneSyntaxError(f"{path}: weights and states must be lists of equal length")
            ws = [float(parse_complex(w, f"{path}.weights[{i}]").real) for i, w in enumerate(weights)]
            if abs(sum(ws) - 1) > EQ_TOL or min(ws) < 0:
                raise SceneValidationError(f"{path}.weights", f"weights must be non-negative and sum to 1, got {sum(ws):.12g}")
            psis = [_pure(s, n, f"{path}.states[{i}]") for i, s in enumerate(states)]
            return DensityMatrix.mixture(ws, psis)
    except PhaseKitError as exc:
        raise SceneValidationError(path, str(exc)) from None
    raise SceneValidationError(f"{path}.kind", f"unknown state kind {kind!r}")


def _param(obj: dict, key: str, path: str, default=None) -> float:
    if key not in obj:
        if default is None:
            raise SceneSyntaxError(f"{path}.{key}: missing field")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SceneSyntaxError(f"{path}.{key}: expected a real number")
    return float(v)


def _qubit_only(n: int, name: str, path: str):
    if n != 2:
        raise SceneValidationError(f"{path}.name", f"builtin {name!r} needs system_dim 2")


def parse_channel(obj, n: int, path: str = "channel"):
    """Return ``(kraus_or_None, dilation, default_ancilla_or_None)``."""
    kind = _require(obj, "kind", path)
    if kind == "kraus":
        ops_raw = _require(obj, "operators", path)
        if not isinstance(ops_raw, list) or not ops_raw:
            raise SceneSyntaxError(f"{path}.operators: expected a non-empty list of matrices")
        ops = [parse_matrix(m, f"{path}.operators[{i}]") for i, m in enumerate(ops_raw)]
        for i, m in enumerate(ops):
            _square(m, n, f"{path}.operators[{i}]")
        fro, op_norm = completeness_defect(ops)
        if fro > EQ_TOL:
            raise SceneValidationError(
                f"{path}.operators", f"completeness defect {op_norm:.6g} (operator norm; Frobenius {fro:.6g})"
            )
        k = make_kraus_set(ops)
        return k, dilate(k), None
    if kind == "dilation":
        anc = _require(obj, "anc_dim", path)
        if isinstance(anc, bool) or not isinstance(anc, int) or anc < 1:
            raise SceneSyntaxError(f"{path}.anc_dim: expected a positive integer")
        u = parse_matrix(_require(obj, "unitary", path), f"{path}.unitary")
        _square(u, n * anc, f"{path}.unitary")
        try:
            return None, Dilation(n, anc, u), None
        except PhaseKitError as exc:
            raise SceneValidationError(f"{path}.unitary", str(exc)) from None
    if kind == "builtin":
        name = _require(obj, "name", path)
        try:
            return _builtin(obj, name, n, path)
        except PhaseKitError as exc:
            raise SceneValidationError(path, str(exc)) from None
    raise SceneValidationError(f"{path}.kind", f"unknown channel kind {kind!r}")


def _builtin(obj: dict, name: str, n: int, path: str):
    if name == "identity":
        return make_kraus_set([np.eye(n)]), identity_dilation(n), None
    if name in ("depolarizing", "dephasing", "dephasing_projective", "randomizing", "phase_gate", "pauli_rotation"):
        _qubit_only(n, name, path)
    if name == "depolarizing":
        p = _param(obj, "p", path)
        if not 0 <= p <= 1:
            raise SceneValidationError(f"{path}.p", f"probability must lie in [0, 1], got {p}")
        k = builtin.depolarizing(p)
        return k, dilate(k), None
    if name == "dephasing":
        q = _param(obj, "q", path, default=0.5)
        if not 0 <= q <= 1:
            raise SceneValidationError(f"{path}.q", f"probability must lie in [0, 1], got {q}")
        k = builtin.dephasing_mixture(q)
        return k, dilate(k), None
    if name == "dephasing_projective":
        k = builtin.dephasing_projective()
        return k, dilate(k), None
    if name == "randomizing":
        _, d, a = builtin.randomizing()
        return None, d, a
    if name == "phase_gate":
        return None, unitary_dilation(builtin.phase_gate(_param(obj, "theta", path))), None
    if name == "pauli_rotation":
        axis = obj.get("axis")
        if axis not in ("x", "y", "z"):
            raise SceneValidationError(f"{path}.axis", f"expected 'x', 'y' or 'z', got {axis!r}")
        return None, unitary_dilation(builtin.pauli_rotation(axis, _param(obj, "theta", path))), None
    if name == "conditional_unitary":
        raw = _require(obj, "unitaries", path)
        if not isinstance(raw, list) or len(raw) != n:
            raise SceneValidationError(f"{path}.unitaries", f"expected {n} ancilla unitaries, one per system basis state")
        mats = [parse_matrix(m, f"{path}.unitaries[{i}]") for i, m in enumerate(raw)]
        try:
            spec = builtin.ConditionalUnitarySpec(tuple(mats))
        except PhaseKitError as exc:
            raise SceneValidationError(f"{path}.unitaries", str(exc)) from None
        return None, builtin.conditional_unitary(spec), None
    raise SceneValidationError(f"{path}.name", f"unknown builtin {name!r}; known: {', '.join(BUILTINS)}")


def scene_from_dict(doc) -> Scene:
    if not isinstance(doc, dict):
        raise SceneSyntaxError("scene: expected a JSON object")
    n = _require(doc, "system_dim", "scene")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SceneSyntaxError("system_dim: expected a positive integer")
    rho = parse_state(_require(doc, "state", "scene"), n)
    kraus, dil, default_anc = parse_channel(_require(doc, "channel", "scene"), n)

    anc_obj = doc.get("ancilla")
    if anc_obj is None:
        ancilla = default_anc or basis_state(dil.anc_dim, 0)
        explicit = default_anc is not None
    elif isinstance(anc_obj, dict) and "index" in anc_obj:
        idx = anc_obj["index"]
        if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < dil.anc_dim:
            raise SceneValidationError("ancilla.index", f"expected an integer in [0, {dil.anc_dim})")
        ancilla = basis_state(dil.anc_dim, idx)
        explicit = idx != 0
    else:
        ancilla = _pure(_require(anc_obj, "amplitudes", "ancilla"), dil.anc_dim, "ancilla.amplitudes")
        explicit = True

    direct = kraus is not None and not explicit
    if not direct:
        try:
            kraus = extract_kraus(dil, ancilla)
        except PhaseKitError as exc:
            raise SceneValidationError("ancilla", str(exc)) from None

    opts = doc.get("options", {}) or {}
    if not isinstance(opts, dict):
        raise SceneSyntaxError("options: expected an object")
    mu = opts.get("mu")
    if mu is not None and (isinstance(mu, bool) or not isinstance(mu, int) or not 0 <= mu < len(kraus)):
        raise SceneValidationError("options.mu", f"expected an integer in [0, {len(kraus)})")
    tol = opts.get("tol", EQ_TOL)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise SceneValidationError("options.tol", "expected a positive number")
    return Scene(n, rho, kraus, dil, ancilla, direct, mu, float(tol), doc)


def parse_scene(text: str) -> Scene:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneSyntaxError(f"malformed JSON: {exc}") from None
    return scene_from_dict(doc)


def load_scene(path) -> Scene:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in row] for row in np.asarray(m)]


def dilation_scene(scene: Scene, dil: Dilation) -> dict:
    """A scene document that keeps ``scene``'s state but uses ``dil`` as the channel."""
    return {
        "system_dim": scene.sys_dim,
        "state": scene.source.get("state", {"kind": "density", "matrix": matrix_to_json(scene.rho.matrix)}),
        "channel": {"kind": "dilation", "anc_dim": dil.anc_dim, "unitary": matrix_to_json(dil.unitary)},
    }
