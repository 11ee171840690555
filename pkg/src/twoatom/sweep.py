"""Steady-state sweeps over the field intensity and their CSV/JSON output."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import astuple, dataclass, fields

import numpy as np

from . import witness
from .dicke import XStateParams
from .fields import FieldKind, FieldParams, steady_state


@dataclass(frozen=True)
class SweepConfig:
    kind: FieldKind
    n_min: float
    n_max: float
    steps: int
    scale: str = "linear"
    output_path: str | None = None
    format: str = "csv"
    m_abs: float | None = None  # custom fields only
    m_arg: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", FieldKind(self.kind))
        if not (math.isfinite(self.n_min) and math.isfinite(self.n_max)):
            raise ValueError("n_min and n_max must be finite")
        if not self.n_min < self.n_max:
            raise ValueError(f"n_min ({self.n_min}) must be smaller than n_max ({self.n_max})")
        if self.n_min < 0.0:
            raise ValueError(f"n_min must be non-negative, got {self.n_min}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and self.n_min <= 0.0:
            raise ValueError("log scale needs n_min > 0")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be 'csv' or 'json', got {self.format!r}")

    def grid(self) -> np.ndarray:
        """Sample points, both endpoints included."""
        if self.scale == "log":
            return np.geomspace(self.n_min, self.n_max, int(self.steps))
        return np.linspace(self.n_min, self.n_max, int(self.steps))


@dataclass(frozen=True)
class SweepRow:
    n_bar: float
    rho_gg: float
    rho_ee: float
    rho_ss: float
    re_rho_eg: float
    im_rho_eg: float
    negativity_e: float
    xi_ku: float
    theta_opt: float
    criterion_coherence: bool
    criterion_population: bool

    @property
    def state(self) -> XStateParams:
        return XStateParams(self.rho_gg, self.rho_ee, self.rho_ss, complex(self.re_rho_eg, self.im_rho_eg))


FIELD_NAMES = tuple(f.name for f in fields(SweepRow))


def sweep_row(n_bar: float, state: XStateParams) -> SweepRow:
    ent = witness.entanglement_report(state)
    sq = witness.squeezing_ku(state)
    return SweepRow(
        n_bar=float(n_bar),
        rho_gg=state.rho_gg,
        rho_ee=state.rho_ee,
        rho_ss=state.rho_ss,
        re_rho_eg=state.rho_eg.real,
        im_rho_eg=state.rho_eg.imag,
        negativity_e=ent.negativity_e,
        xi_ku=sq.xi_ku,
        theta_opt=sq.theta_opt,
        criterion_coherence=ent.criterion_coherence,
        criterion_population=ent.criterion_population,
    )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """One row per grid point, in grid order.

    Raises :class:`twoatom.errors.UnphysicalField` if a custom ``|M|``
    exceeds the bound at some grid point.
    """
    rows = []
    for n in config.grid():
        f = FieldParams.of_kind(config.kind, float(n), config.m_abs, config.m_arg)
        rows.append(sweep_row(n, steady_state(f)))
    return rows


def _csv_value(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    return format(x, ".17g")


def render_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FIELD_NAMES)
    for row in rows:
        writer.writerow([_csv_value(x) for x in astuple(row)])
    return buf.getvalue()


def render_json(rows: list[SweepRow], config: SweepConfig) -> str:
    doc = {
        "field": config.kind.value,
        "scale": config.scale,
        "n_min": config.n_min,
        "n_max": config.n_max,
        "steps": int(config.steps),
        "rows": [dict(zip(FIELD_NAMES, astuple(r))) for r in rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def read_csv(path) -> list[SweepRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for rec in reader:
            kw = {}
            for name in FIELD_NAMES:
                if name.startswith("criterion_"):
                    kw[name] = rec[name] == "1"
                else:
                    kw[name] = float(rec[name])
            out.append(SweepRow(**kw))
    return out


def write_atomically(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory.

    Nothing is left behind if writing fails.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".sweep-", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
