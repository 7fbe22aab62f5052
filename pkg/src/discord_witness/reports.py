"""Plain-text exports: CSV tables (',' delimiter, '.' decimal, LF endings,
17 significant digits) and ``key=value`` summaries."""
from __future__ import annotations

import hashlib
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if np.isnan(x):
        return "nan"
    return format(x, ".17g")


def csv_text(header, rows, comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def keyvalue_text(pairs) -> str:
    return "".join(f"{k}={v if isinstance(v, str) else fmt(v)}\n" for k, v in pairs)


def parse_keyvalue(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if line and not line.startswith("#"):
            key, value = line.split("=", 1)
            out[key] = value
    return out


def landscape_csv(landscape) -> str:
    g = landscape.grid
    fixed = ";".join(f"{k}:{fmt(v)}" for k, v in sorted(g.fixed.items()))
    comment = (
        f"axis1={g.axis1} range1={fmt(g.range1[0])}:{fmt(g.range1[1])} steps1={g.steps1} "
        f"axis2={g.axis2} range2={fmt(g.range2[0])}:{fmt(g.range2[1])} steps2={g.steps2} "
        f"endpoint={int(g.endpoint)} fixed={fixed or '-'}"
    )
    a1, a2 = landscape.axis1, landscape.axis2

    def rows():
        for i, x in enumerate(a1):
            for j, y in enumerate(a2):
                yield x, y, landscape.values[i, j], bool(landscape.mask[i, j])

    return csv_text([g.axis1, g.axis2, "visibility", "masked"], rows(), comment)


def read_csv(text: str):
    """(header, float array) from a CSV produced here; comment lines skipped."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    return header, data.reshape(-1, len(header))


def zeroline_csv(line) -> str:
    rows = zip(line.beta, line.alpha0, line.phi_a0, line.residual, line.valid)
    return csv_text(["beta", "alpha0", "phiA0", "residual", "valid"], rows, f"mode={line.mode} phiB={fmt(line.phi_b)}")


def quantifier_text(result, threshold: float = 1e-8) -> str:
    return keyvalue_text(
        [
            ("delta2_alpha", result.delta2_alpha),
            ("delta2_phi", result.delta2_phi),
            ("sum", result.total),
            ("valid_fraction", result.valid_fraction),
            ("verdict", "discorded" if result.is_discorded(threshold) else "non-discorded"),
        ]
    )


def discord_text(result) -> str:
    return keyvalue_text(
        [
            ("discord", result.value),
            ("measured", result.measured),
            ("basis_theta", result.basis.theta),
            ("basis_phi", result.basis.phi),
            ("mutual_information", result.mutual_information),
            ("conditional_entropy", result.conditional_entropy),
        ]
    )


def shot_csv(est) -> str:
    rows = zip(est.phases, [est.trials] * len(est.phases), est.counts, est.k_hat, est.k_stderr)
    return csv_text(["phi_d", "trials", "coincidences", "k_hat", "k_stderr"], rows)


def shot_summary_text(est) -> str:
    return keyvalue_text(
        [
            ("v_hat", est.visibility),
            ("stderr", est.stderr),
            ("offset_C", est.offset),
            ("amplitude_A", est.amplitude),
            ("delta", est.delta),
            ("trials_per_point", est.trials),
            ("points", len(est.phases)),
            ("seed", est.seed),
        ]
    )


def digest(obj) -> str:
    """SHA-256 of a canonical JSON rendering (floats via repr)."""
    text = json.dumps(obj, sort_keys=True, default=repr, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    input_digest: str
    outputs: list = field(default_factory=list)
    version: str = ""
    duration_s: float = 0.0

    def missing_outputs(self) -> list:
        return [p for p in self.outputs if not Path(p).exists()]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=repr) + "\n"
