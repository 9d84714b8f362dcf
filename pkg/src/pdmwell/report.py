"""Table assembly and serialization for the CLI.

Every command produces a header plus rows of plain Python values; CSV
and JSON writers render them deterministically (floats with 17
significant digits, exact on round-trip; UTF-8; LF line endings), so
identical run configurations yield byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .complexity import complexity_closed
from .deformed import DeformedWell, Space
from .errors import InvalidConfig
from .measures import MeasureContext, closed_measures, entropy_density, f_of_n
from .well import (
    ClassicalEnsemble,
    EigenState,
    classical_density,
    density_eta,
    density_k,
    density_x,
    eigenfunction_k,
    eigenfunction_x,
    eta_amplitude,
    eta_window,
)

__all__ = [
    "RunConfig",
    "Table",
    "eigenstate_table",
    "measures_table",
    "entropy_profile_table",
    "sweep_table",
    "figure_table",
    "render_csv",
    "render_json",
    "write_table",
]

_COMMANDS = ("eigenstate", "measures", "sweep", "figure", "verify")
_FORMATS = ("csv", "json")


@dataclass
class RunConfig:
    """Validated configuration of one CLI invocation."""

    command: str
    n_list: list[int] = field(default_factory=lambda: [1, 2, 3])
    gamma_a_list: list[float] = field(default_factory=lambda: [0.0, 0.4, 0.8])
    grid_points: int = 1001
    space_list: list[Space] = field(default_factory=lambda: [Space.POSITION])
    tol: float = 1e-6
    format: str = "csv"
    output_path: Optional[Path] = None
    figure_id: Optional[int] = None
    entropy_profile: bool = False
    render_plot: bool = True
    quick: bool = False

    def __post_init__(self) -> None:
        if self.command not in _COMMANDS:
            raise InvalidConfig(f"unknown command {self.command!r}")
        if self.format not in _FORMATS:
            raise InvalidConfig(f"unknown format {self.format!r}")
        if not self.n_list or any(
            not isinstance(n, (int, np.integer)) or n < 1 for n in self.n_list
        ):
            raise InvalidConfig(f"n values must be positive integers, got {self.n_list!r}")
        if not self.gamma_a_list or any(
            not math.isfinite(g) or abs(g) >= 1.0 for g in self.gamma_a_list
        ):
            raise InvalidConfig("gamma_a values must satisfy |gamma_a| < 1")
        if self.grid_points < 2:
            raise InvalidConfig("grid must have at least 2 points")
        if not self.tol > 0.0:
            raise InvalidConfig("tol must be positive")
        if self.command == "figure" and self.figure_id not in (1, 2, 3, 4):
            raise InvalidConfig("figure id must be 1, 2, 3 or 4")


Table = tuple[list[str], list[list]]


def _x_grid(well: DeformedWell, m: int) -> np.ndarray:
    return np.linspace(-well.a, well.a, m)


def _k_grid(state: EigenState, m: int) -> np.ndarray:
    kmax = (state.n + 8) * math.pi / state.L_gamma
    return np.linspace(-kmax, kmax, m)


def _states(cfg: RunConfig):
    for ga in cfg.gamma_a_list:
        well = DeformedWell(ga)
        for n in cfg.n_list:
            yield EigenState(well, n)


def eigenstate_table(cfg: RunConfig) -> Table:
    """Sampled eigenfunctions and densities, one row per grid point."""
    header = ["space", "n", "gamma_a", "z", "psi_real", "psi_imag", "rho"]
    rows: list[list] = []
    for space in cfg.space_list:
        for st in _states(cfg):
            ga = st.well.gamma_a
            if space is Space.POSITION:
                z = _x_grid(st.well, cfg.grid_points)
                psi = eigenfunction_x(st, z)
                rows += [[space.value, st.n, ga, zz, pp, 0.0, pp * pp]
                         for zz, pp in zip(z, psi)]
            elif space is Space.WAVEVECTOR:
                z = _k_grid(st, cfg.grid_points)
                psi = eigenfunction_k(st, z)
                rho = density_k(st, z)
                rows += [[space.value, st.n, ga, zz, pp.real, pp.imag, rr]
                         for zz, pp, rr in zip(z, psi, rho)]
            else:
                lo, hi = eta_window(st)
                z = np.linspace(lo, hi, cfg.grid_points)
                psi = eta_amplitude(st, z)
                rows += [[space.value, st.n, ga, zz, pp, 0.0, pp * pp]
                         for zz, pp in zip(z, psi)]
    return header, rows


def measures_table(cfg: RunConfig) -> Table:
    """Closed-form measure summary per (space, n, gamma_a) cell."""
    header = ["space", "n", "gamma_a", "shannon", "fisher", "disequilibrium",
              "l_heisenberg", "l_shannon", "l_fisher", "f_n"]
    rows: list[list] = []
    for space in cfg.space_list:
        if space is Space.DEFORMED_ETA:
            raise InvalidConfig("measures are reported for spaces x and k")
        for st in _states(cfg):
            m = closed_measures(st, space, MeasureContext(sigma=st.well.a))
            rows.append([space.value, st.n, st.well.gamma_a, m.shannon, m.fisher,
                         m.disequilibrium, m.l_heisenberg, m.l_shannon, m.l_fisher,
                         f_of_n(st.n)])
    return header, rows


def entropy_profile_table(cfg: RunConfig) -> Table:
    """Pointwise entropy densities on the grid (the data behind figure 3)."""
    header = ["space", "n", "gamma_a", "z", "rho", "entropy_density"]
    rows: list[list] = []
    for space in cfg.space_list:
        if space is Space.DEFORMED_ETA:
            raise InvalidConfig("entropy profiles are reported for spaces x and k")
        for st in _states(cfg):
            ctx = MeasureContext(sigma=st.well.a)
            if space is Space.POSITION:
                z = _x_grid(st.well, cfg.grid_points)
                rho = density_x(st, z)
            else:
                z = _k_grid(st, cfg.grid_points)
                rho = density_k(st, z)
            s = entropy_density(st, space, z, ctx)
            rows += [[space.value, st.n, st.well.gamma_a, zz, rr, ss]
                     for zz, rr, ss in zip(z, rho, s)]
    return header, rows


def sweep_table(cfg: RunConfig) -> Table:
    """Closed-form complexities versus gamma_a (the data behind figure 4)."""
    header = ["space", "n", "gamma_a", "c_cr", "c_fs", "c_lmc"]
    rows: list[list] = []
    for space in cfg.space_list:
        if space is Space.DEFORMED_ETA:
            raise InvalidConfig("complexities are reported for spaces x and k")
        for n in cfg.n_list:
            for ga in cfg.gamma_a_list:
                c = complexity_closed(EigenState(DeformedWell(ga), n), space)
                rows.append([space.value, n, ga, c.c_cr, c.c_fs, c.c_lmc])
    return header, rows


def figure_table(cfg: RunConfig) -> Table:
    """Exactly the series each published-style figure plots."""
    fig = cfg.figure_id
    if fig == 1:
        sub = RunConfig("eigenstate", cfg.n_list, cfg.gamma_a_list, cfg.grid_points,
                        [Space.POSITION, Space.WAVEVECTOR], cfg.tol, cfg.format)
        return eigenstate_table(sub)
    if fig == 2:
        header = ["space", "n", "gamma_a", "z", "rho", "rho_classical", "two_rho_classical"]
        rows: list[list] = []
        n = 10
        for ga in (0.8, 0.0):
            st = EigenState(DeformedWell(ga), n)
            ens = ClassicalEnsemble(st.well, st.E_n)
            z = _x_grid(st.well, cfg.grid_points)
            rho = density_x(st, z)
            rc = classical_density(ens, z)
            rows += [[Space.POSITION.value, n, ga, zz, rr, cc, 2.0 * cc]
                     for zz, rr, cc in zip(z, rho, rc)]
            zk = _k_grid(st, cfg.grid_points)
            rhok = density_k(st, zk)
            rows += [[Space.WAVEVECTOR.value, n, ga, zz, rr, None, None]
                     for zz, rr in zip(zk, rhok)]
        return header, rows
    if fig == 3:
        sub = RunConfig("measures", cfg.n_list, cfg.gamma_a_list, cfg.grid_points,
                        [Space.POSITION, Space.WAVEVECTOR], cfg.tol, cfg.format)
        return entropy_profile_table(sub)
    # figure 4: complexity sweep over the open deformation range
    ga = [float(v) for v in np.linspace(-0.95, 0.95, 191)]
    sub = RunConfig("sweep", cfg.n_list, ga, cfg.grid_points,
                    [Space.POSITION, Space.WAVEVECTOR], cfg.tol, cfg.format)
    return sweep_table(sub)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    v = float(value)
    if not math.isfinite(v):
        raise InvalidConfig(f"non-finite value {v!r} in output table")
    return f"{v:.17g}"


def render_csv(table: Table) -> str:
    header, rows = table
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render_json(table: Table) -> str:
    header, rows = table

    def clean(v):
        if v is None or isinstance(v, (str, int)):
            return v
        if isinstance(v, np.integer):
            return int(v)
        return float(v)

    records = [dict(zip(header, map(clean, row))) for row in rows]
    return json.dumps(records, indent=None, separators=(",", ":"), allow_nan=False) + "\n"


def write_table(table: Table, cfg: RunConfig) -> str:
    """Serialize the table per the config; write the file when a path is set.

    Returns the rendered text either way (the CLI prints it when no
    output path was given).
    """
    text = render_csv(table) if cfg.format == "csv" else render_json(table)
    if cfg.output_path is not None:
        path = Path(cfg.output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(text.encode("utf-8"))
    return text
