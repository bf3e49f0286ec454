"""Run provenance: what was computed, from which bytes, with which knobs."""

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__
from .preprocess import DiscretizationSpec, InterpolationSpec

ENGINE = "radquant"
MESHER_ID = "midpoint-mc/apex-0.0022"


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    """Provenance emitted with every extraction output.

    Identical inputs and configuration produce an identical manifest
    apart from the timestamp.
    """

    inputs: dict  # role -> {"path": str, "sha256": str}
    discretization: DiscretizationSpec | None = None
    interpolation: InterpolationSpec | None = None
    aggregation: str | None = None
    ngldm_alpha: float | None = None
    distance: int | None = None
    extra: dict = field(default_factory=dict)

    @staticmethod
    def digest_inputs(paths: dict) -> dict:
        return {role: {"path": str(p), "sha256": file_digest(p)}
                for role, p in paths.items()}

    def to_json_dict(self, timestamp=True) -> dict:
        disc = None
        if self.discretization is not None:
            disc = {
                "method": self.discretization.method,
                "n_bins": self.discretization.n_bins,
                "bin_width": self.discretization.bin_width,
                "shift_mode": self.discretization.shift_mode,
            }
        interp = None
        if self.interpolation is not None:
            interp = {
                "target_spacing": list(self.interpolation.target_spacing),
                "kernel": self.interpolation.kernel,
            }
        out = {
            "engine": ENGINE,
            "version": __version__,
            "mesher": MESHER_ID,
            "inputs": self.inputs,
            "discretization": disc,
            "interpolation": interp,
            "aggregation": self.aggregation,
            "ngldm_alpha": self.ngldm_alpha,
            "distance": self.distance,
        }
        out.update(self.extra)
        if timestamp:
            out["timestamp"] = datetime.now(timezone.utc).isoformat()
        return out

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
