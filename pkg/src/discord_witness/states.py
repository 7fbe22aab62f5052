"""Separable two-qubit in-states and the named example states.

A separable state is a weighted mixture of pure product components
``|A_nu><A_nu| (x) |B_nu><B_nu|`` with each qubit ket given by its Bloch
angles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .qcore import bloch_from_angles, ket_from_angles, projector, tensor

WEIGHT_SUM_TOL = 1e-12
MIN_WEIGHT = 1e-12


class StateError(ValueError):
    pass


class StateParseError(StateError):
    """Malformed state configuration text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class PureComponent:
    weight: float
    theta_a: float
    phi_a: float = 0.0
    theta_b: float = 0.0
    phi_b: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.weight) or self.weight < 0:
            raise StateError(f"component weight must be finite and >= 0, got {self.weight}")

    @property
    def ket_a(self) -> np.ndarray:
        return ket_from_angles(self.theta_a, self.phi_a)

    @property
    def ket_b(self) -> np.ndarray:
        return ket_from_angles(self.theta_b, self.phi_b)

    @property
    def bloch_a(self) -> np.ndarray:
        return bloch_from_angles(self.theta_a, self.phi_a)

    @property
    def bloch_b(self) -> np.ndarray:
        return bloch_from_angles(self.theta_b, self.phi_b)


@dataclass(frozen=True)
class SeparableState:
    """Validated mixture of pure product components.

    Components with weight below 1e-12 are dropped; the remaining weights
    must sum to one within 1e-12.
    """

    components: tuple[PureComponent, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        comps = tuple(c for c in self.components if c.weight >= MIN_WEIGHT)
        if not comps:
            raise StateError("a separable state needs at least one component with positive weight")
        total = sum(c.weight for c in comps)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise StateError(f"component weights sum to {total!r}, expected 1")
        object.__setattr__(self, "components", comps)

    def __len__(self):
        return len(self.components)

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components])

    @property
    def kets_a(self) -> np.ndarray:
        return np.array([c.ket_a for c in self.components])

    @property
    def kets_b(self) -> np.ndarray:
        return np.array([c.ket_b for c in self.components])

    @property
    def bloch_a(self) -> np.ndarray:
        return np.array([c.bloch_a for c in self.components])

    @classmethod
    def from_tuples(cls, rows, name: str = "") -> "SeparableState":
        """Build from ``(weight, (theta_a, phi_a), (theta_b, phi_b))`` rows."""
        comps = []
        for w, a, b in rows:
            comps.append(PureComponent(float(w), float(a[0]), float(a[1]), float(b[0]), float(b[1])))
        return cls(tuple(comps), name=name)


def assemble_density(state: SeparableState) -> np.ndarray:
    """4x4 density matrix sum_nu w_nu |A_nu B_nu><A_nu B_nu|."""
    if not isinstance(state, SeparableState):
        raise TypeError("assemble_density expects a SeparableState")
    rho = np.zeros((4, 4), dtype=complex)
    for c in state.components:
        rho += c.weight * tensor(projector(c.ket_a), projector(c.ket_b))
    return rho


def _preset_rows(name: str, params: dict) -> list:
    p = np.pi
    h = 0.5
    if name == "fig2a":
        return [(h, (0, 0), (0, 0)), (h, (p / 2, 0), (p / 2, 0))]
    if name == "fig2b":
        return [(h, (p / 2, 0), (p / 2, 0)), (h, (-p / 2, 0), (-p / 2, 0))]
    if name == "phase":
        phi2 = params.get("phi2", p / 2)
        return [(h, (p / 2, 0), (p / 2, 0)), (h, (-p / 2, phi2), (-p / 2, 0))]
    if name == "three":
        th = params.get("theta", p / 2)
        t = 1.0 / 3.0
        return [(t, (0, 0), (0, 0)), (t, (p, 0), (p, 0)), (1.0 - 2 * t, (th, 0), (th, 0))]
    if name == "rho_theta":
        th = params.get("theta", p / 2)
        return [(h, (0, 0), (0, 0)), (h, (th, 0), (th, 0))]
    if name == "fig6a":
        # |+>,|-> on A with a shared phase: orthogonal A kets, classical correlations only
        phi = params.get("phi", p / 4)
        return [(0.2, (p / 2, phi), (p / 2, 0)), (0.8, (-p / 2, phi), (-p / 2, 0))]
    if name == "fig6b":
        # uncorrelated: both components share the same B ket
        return [(h, (0, 0), (p, 0)), (h, (p / 2, 0), (p, 0))]
    raise StateError(f"unknown preset {name!r}; known presets: {', '.join(PRESETS)}")


PRESETS = {
    "fig2a": "1/2 |up up> + 1/2 |++>  (discorded)",
    "fig2b": "1/2 |++> + 1/2 |-->  (classically correlated, no A-discord)",
    "phase": "1/2 |++;0> + 1/2 |--;phi2>  (A-discorded unless phi2 = 0 mod pi), param phi2",
    "three": "1/3 |up up> + 1/3 |down down> + 1/3 |theta theta>, param theta",
    "rho_theta": "1/2 |up up> + 1/2 |theta theta>, param theta",
    "fig6a": "1/5 |++> + 4/5 |--> with common A phase phi (no A-discord), param phi",
    "fig6b": "(1/2 |up><up| + 1/2 |+><+|) (x) |down><down|  (uncorrelated)",
}

PRESET_PARAMS = {
    "phase": ("phi2",),
    "three": ("theta",),
    "rho_theta": ("theta",),
    "fig6a": ("phi",),
}


def preset(name: str, **params: float) -> SeparableState:
    """Named example state. Unknown names or parameters raise StateError."""
    allowed = PRESET_PARAMS.get(name, ())
    extra = set(params) - set(allowed)
    if name in PRESETS and extra:
        raise StateError(f"preset {name!r} does not take parameter(s) {sorted(extra)}")
    rows = _preset_rows(name, {k: float(v) for k, v in params.items()})
    return SeparableState.from_tuples(rows, name=name)


_CONFIG_KEYS = {
    "weight": "weight",
    "A.theta": "theta_a",
    "A.phi": "phi_a",
    "B.theta": "theta_b",
    "B.phi": "phi_b",
}
_REQUIRED_KEYS = ("weight", "A.theta", "B.theta")


def parse_state_config(text: str) -> SeparableState:
    """Parse the key-value state format.

    Grammar (``#`` starts a comment, blank lines ignored)::

        component
          weight  = 0.5
          A.theta = 1.5707963267948966
          A.phi   = 0        # optional, default 0
          B.theta = 1.5707963267948966
          B.phi   = 0        # optional, default 0
        component
          ...

    Angles are radians. Unknown keys, repeated keys, missing required keys
    and non-numeric values are errors.
    """
    blocks: list[tuple[int, dict]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.rstrip(":") == "component":
            current = {}
            blocks.append((lineno, current))
            continue
        if "=" not in line:
            raise StateParseError(f"expected 'key = value' or 'component', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if current is None:
            raise StateParseError(f"key {key!r} appears before any 'component' line", lineno)
        if key not in _CONFIG_KEYS:
            raise StateParseError(f"unknown key {key!r}; allowed: {', '.join(_CONFIG_KEYS)}", lineno)
        if key in current:
            raise StateParseError(f"duplicate key {key!r}", lineno)
        try:
            number = float(value)
        except ValueError:
            raise StateParseError(f"value for {key!r} is not a number: {value!r}", lineno) from None
        if not np.isfinite(number):
            raise StateParseError(f"value for {key!r} is not finite", lineno)
        current[key] = number
    if not blocks:
        raise StateParseError("no 'component' blocks found")
    comps = []
    for lineno, block in blocks:
        missing = [k for k in _REQUIRED_KEYS if k not in block]
        if missing:
            raise StateParseError(f"component is missing {', '.join(missing)}", lineno)
        try:
            comps.append(PureComponent(**{_CONFIG_KEYS[k]: v for k, v in block.items()}))
        except StateError as exc:
            raise StateParseError(str(exc), lineno) from None
    try:
        return SeparableState(tuple(comps))
    except StateError as exc:
        raise StateParseError(str(exc)) from None


def load_state_config(path) -> SeparableState:
    text = Path(path).read_text()
    state = parse_state_config(text)
    return SeparableState(state.components, name=Path(path).stem)


def format_state_config(state: SeparableState) -> str:
    lines = []
    for c in state.components:
        lines.append("component")
        lines.append(f"  weight = {c.weight!r}")
        lines.append(f"  A.theta = {c.theta_a!r}")
        lines.append(f"  A.phi = {c.phi_a!r}")
        lines.append(f"  B.theta = {c.theta_b!r}")
        lines.append(f"  B.phi = {c.phi_b!r}")
    return "\n".join(lines) + "\n"
