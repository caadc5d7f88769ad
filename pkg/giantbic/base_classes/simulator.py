""" This file contains the Simulator, which runs every subcommand for one configuration and writes its results."""

from __future__ import annotations

import functools
import logging
import os
import time
from importlib import metadata
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..configs import OUTPUT_FORMATS
from ..exceptions.dynamics_errors import InputError, ModelUnavailableError
from ..exceptions.model_errors import ConditionError, ConfigurationError, OutOfBandError, SingularParameterError
from ..exceptions.spectrum_errors import ClassificationError
from ..utils.beats import detect_peaks, fft_spectrum, match_beats, observable_series, settle
from ..utils.bic import analytic_bic, m_integral, m_integral_quad, residue_kernel, verify_bic
from ..utils.boc import boc_energies
from ..utils.evolution import bound_state_projection, evolve, long_time_populations, time_grid
from ..utils.io import ensure_directory, records_to_columns, write_json, write_table
from ..utils.model import build_hamiltonian
from ..utils.selfcheck import run_selfcheck
from ..utils.spectrum import bic_condition, classify_states, diagonalize, mirror_condition, momentum_profile
from .hamiltonian import HamiltonianMatrix
from .manifest import ResultManifest
from .run_config import RunConfig
from .spectrum import BoundStateSet, EigenDecomposition

logger = logging.getLogger(__name__)

PROFILE_PADDING = 10
SWEEP_POINT_ERRORS = (
    ConditionError,
    ConfigurationError,
    ModelUnavailableError,
    OutOfBandError,
    SingularParameterError,
    ClassificationError,
    InputError,
)


def versions() -> Dict[str, str]:
    found = {}
    for package in ("giantbic", "numpy", "scipy", "pydantic", "python-dotenv"):
        try:
            found[package] = metadata.version(package)
        except metadata.PackageNotFoundError:
            found[package] = "unknown"
    return found


# Timing Decorator
def _timed(func):
    @functools.wraps(func)
    def __timed(self: Simulator, *args, **kwargs):
        start = time.perf_counter()
        ret = func(self, *args, **kwargs)
        self.record_timing(func.__name__, time.perf_counter() - start)
        return ret

    return __timed


class Simulator:
    """Runs the subcommands for one validated configuration.

    The Hamiltonian, its decomposition and the classified bound states are
    computed once and shared by every subcommand run on the same instance.
    """

    def __init__(self, config: RunConfig, output_dir: str = None, fmt: str = None):
        if fmt is not None and fmt not in OUTPUT_FORMATS:
            raise ValueError(f"Invalid option for fmt. Options: {OUTPUT_FORMATS}")

        self.__config = config
        self.__output_dir = output_dir or config.output.directory
        self.__fmt = fmt or config.output.format
        self.__params = config.system_params()
        self.__lattice = config.build_lattice()
        self.__hamiltonian: Optional[HamiltonianMatrix] = None
        self.__decomp: Optional[EigenDecomposition] = None
        self.__bound_states: Optional[BoundStateSet] = None
        self.__timings: Dict[str, float] = {}

    @property
    def config(self) -> RunConfig:
        return self.__config

    @property
    def params(self):
        return self.__params

    @property
    def lattice(self):
        return self.__lattice

    @property
    def output_dir(self) -> str:
        return self.__output_dir

    def record_timing(self, name: str, seconds: float):
        self.__timings[name] = self.__timings.get(name, 0.0) + seconds
        logger.debug("%s took %.3f s", name, seconds)

    @_timed
    def hamiltonian(self) -> HamiltonianMatrix:
        if self.__hamiltonian is None:
            self.__hamiltonian = build_hamiltonian(self.__params, self.__lattice)
        return self.__hamiltonian

    @_timed
    def decomposition(self) -> EigenDecomposition:
        if self.__decomp is None:
            self.__decomp = diagonalize(self.hamiltonian())
        return self.__decomp

    @_timed
    def bound_states(self) -> BoundStateSet:
        if self.__bound_states is None:
            analysis = self.__config.analysis
            self.__bound_states = classify_states(
                self.decomposition(),
                self.__params,
                self.__lattice,
                analysis.tol_edge,
                analysis.localization,
                analysis.window,
            )
        return self.__bound_states

    def _path(self, name: str) -> str:
        return os.path.join(ensure_directory(self.__output_dir), name)

    def _table(self, name: str, columns: Dict[str, Any]) -> str:
        return os.path.basename(write_table(self._path(name), columns, self.__fmt))

    def _document(self, name: str, document: Any) -> str:
        return os.path.basename(write_json(self._path(f"{name}.json"), document))

    def _finish(self, subcommand: str, names: List[str], warnings=(), summary=None) -> ResultManifest:
        warnings = tuple(dict.fromkeys(tuple(self.__lattice.warnings) + tuple(warnings)))
        manifest = ResultManifest.collect(
            subcommand,
            self.__output_dir,
            self.__config.to_flat(),
            names,
            versions=versions(),
            timings=dict(self.__timings),
            warnings=warnings,
            summary=summary or {},
        )
        manifest.write()
        logger.info("Wrote %r", manifest)
        return manifest

    def _conditions(self) -> Dict[str, Any]:
        if not self.__params.in_band:
            return {"bic_condition": None, "mirror_condition": None}
        return {"bic_condition": bic_condition(self.__params)[1], "mirror_condition": mirror_condition(self.__params)[1]}

    def _bound_summary(self) -> Dict[str, Any]:
        bound_states = self.bound_states()
        summary = self._conditions()
        summary.update(
            {
                "has_bic": bound_states.bic is not None,
                "E_L": None if bound_states.lower_boc is None else bound_states.lower_boc.energy,
                "E_I": None if bound_states.bic is None else bound_states.bic.energy,
                "E_U": None if bound_states.upper_boc is None else bound_states.upper_boc.energy,
            }
        )
        return summary

    @_timed
    def spectrum(self) -> ResultManifest:
        """Writes the classified spectrum table and classification.json."""
        bound_states = self.bound_states()
        names = [
            self._table("spectrum", records_to_columns([row.to_dict() for row in bound_states.table])),
            self._document("classification", {**bound_states.to_dict(), **self._conditions()}),
        ]
        return self._finish("spectrum", names, bound_states.warnings, self._bound_summary())

    @_timed
    def bic(self) -> ResultManifest:
        """Writes the analytic and numeric BIC profiles, its momentum distribution and bic_report.json.

        Raises:
            OutOfBandError: The atom is not inside the band.
            ConditionError: G(K) = G(-K) = 0 does not hold.
        """
        params, lattice = self.__params, self.__lattice
        analytic = analytic_bic(params, lattice)
        bound_states = self.bound_states()
        report = verify_bic(analytic, self.hamiltonian(), bound_states)

        sites = np.arange(-PROFILE_PADDING, params.leg_separation + PROFILE_PADDING + 1)
        sites = sites[(sites + lattice.leg0_index >= 0) & (sites + lattice.leg0_index < lattice.total_sites)]
        beta = analytic.beta[lattice.leg0_index + sites]
        columns = {"site_index": sites, "re_beta": beta.real, "im_beta": beta.imag, "intensity": np.abs(beta) ** 2}
        if bound_states.bic is not None:
            numeric = bound_states.bic.state[1 + lattice.leg0_index + sites]
            columns.update(
                {
                    "re_beta_numeric": numeric.real,
                    "im_beta_numeric": numeric.imag,
                    "intensity_numeric": np.abs(numeric) ** 2,
                }
            )
        profile = momentum_profile(analytic.vector, lattice)

        document = {
            **report.to_dict(),
            **self._conditions(),
            "energy": analytic.energy,
            "K": analytic.K,
            "alpha": analytic.alpha,
            "residue_kernel": {"z1": residue_kernel(params).z1, "z2": residue_kernel(params).z2},
            "m_integral": {
                "principal": m_integral(params, "principal"),
                "residue": m_integral(params, "residue"),
                "quadrature": m_integral_quad(params),
            },
            "momentum_peak": profile.peak_momentum(),
            "numeric_energy": None if bound_states.bic is None else bound_states.bic.energy,
        }
        names = [
            self._table("bic_profile", columns),
            self._table("bic_momentum", {"k": profile.k, "weight": profile.weights}),
            self._document("bic_report", document),
        ]
        return self._finish("bic", names, bound_states.warnings, self._bound_summary())

    @_timed
    def boc(self) -> ResultManifest:
        """Writes the roots of the bound state equation next to the numeric extreme eigenvalues."""
        bound_states = self.bound_states()
        records = []
        for root in boc_energies(self.__params):
            bound = bound_states.lower_boc if root.side == "lower" else bound_states.upper_boc
            numeric = None if bound is None else bound.energy
            records.append(
                {
                    "side": root.side,
                    "energy": root.energy,
                    "numeric_energy": numeric,
                    "difference": None if numeric is None else abs(root.energy - numeric),
                }
            )
        columns = records_to_columns(records) or {"side": [], "energy": [], "numeric_energy": [], "difference": []}
        names = [self._table("boc_roots", columns)]
        return self._finish("boc", names, bound_states.warnings, self._bound_summary())

    def _trajectory(self):
        dynamics = self.__config.dynamics
        times = time_grid(dynamics.dt, dynamics.t_max)
        return evolve(self.decomposition(), dynamics.initial, times, dynamics.tracked_sites)

    @_timed
    def dynamics(self) -> ResultManifest:
        """Writes the exact trajectory, plus the long-time bound state model when all three bound states exist."""
        dynamics = self.__config.dynamics
        trajectory = self._trajectory()
        names = [self._table("trajectory", trajectory.columns())]
        warnings = list(trajectory.warnings)
        try:
            model = bound_state_projection(self.decomposition(), dynamics.initial, self.bound_states(), dynamics.tracked_sites)
        except ModelUnavailableError as error:
            logger.warning("Skipping the long-time model: %s", error)
            warnings.append(str(error))
        else:
            for variant in ("verbatim", "projector"):
                approximate = long_time_populations(model, trajectory.times, variant=variant)
                names.append(self._table(f"long_time_{variant}", approximate.columns()))
            names.append(self._document("bound_state_model", model.to_dict()))
        return self._finish("dynamics", names, warnings, self._bound_summary())

    @_timed
    def beats(self) -> ResultManifest:
        """Writes the spectra of P_e and the tracked site intensities and the matched peaks.

        Raises:
            ModelUnavailableError: One of the three bound states is absent.
        """
        dynamics, analysis = self.__config.dynamics, self.__config.analysis
        model = bound_state_projection(self.decomposition(), dynamics.initial, self.bound_states(), dynamics.tracked_sites)
        trajectory = settle(self._trajectory(), analysis.settle_time)

        names, peaks = [], {}
        for observable in ["P_e"] + [f"beta_{site}" for site in dynamics.tracked_sites]:
            spectrum = fft_spectrum(observable_series(trajectory, observable), times=trajectory.times)
            report = match_beats(detect_peaks(spectrum, analysis.rel_threshold, analysis.min_separation), model)
            peaks[observable] = report.to_records()
            names.append(self._table(f"spectrum_{observable}", spectrum.columns()))

        document = {
            "beat_frequencies": model.beat_frequencies,
            "resolution": 2 * np.pi / (trajectory.times.shape[0] * trajectory.dt),
            "settle_time": analysis.settle_time,
            "peaks": peaks,
        }
        names.append(self._document("peaks", document))
        summary = {**self._bound_summary(), "beat_frequencies": model.beat_frequencies}
        return self._finish("beats", names, trajectory.warnings, summary)

    @_timed
    def selfcheck(self) -> ResultManifest:
        """Writes selfcheck.json; the manifest summary records whether every applicable invariant passed."""
        checks = run_selfcheck(self.__config, self.decomposition(), self.bound_states())
        passed = all(check.passed is not False for check in checks)
        names = [self._document("selfcheck", {"passed": passed, "checks": [check.to_dict() for check in checks]})]
        return self._finish("selfcheck", names, summary={"passed": passed})

    @_timed
    def sweep(self, jobs: int = 1) -> ResultManifest:
        """Runs the sweep subcommand once per value into point_XXX directories and writes the index table.

        Args:
            jobs (int, optional): Worker processes. Defaults to 1 (in-process).

        Raises:
            ConfigurationError: The configuration has no sweep section.
        """
        sweep = self.__config.sweep
        if sweep is None:
            raise ConfigurationError("sweep", "a sweep section is required")

        tasks = [
            (self.__config.with_override(sweep.parameter, value).model_dump(), sweep.subcommand,
             os.path.join(self.__output_dir, f"point_{number:03d}"), self.__fmt)
            for number, value in enumerate(sweep.values)
        ]
        if jobs > 1:
            with Pool(processes=jobs) as pool:
                results = pool.map(run_sweep_point, tasks)
        else:
            results = [run_sweep_point(task) for task in tasks]

        records, levels = [], []
        for number, (value, result) in enumerate(zip(sweep.values, results)):
            point = f"point_{number:03d}"
            for level in result.pop("levels", []):
                levels.append({"point": point, sweep.parameter: value, **level})
            records.append({"point": point, sweep.parameter: value, **result})
        names = [self._table("sweep_index", records_to_columns(records))]
        if levels:
            # energy diagram: every eigenvalue against the swept parameter
            names.append(self._table("sweep_spectrum", records_to_columns(levels)))
        failed = [record["point"] for record in records if record["status"] != "ok"]
        if failed:
            logger.warning("Sweep points without results: %s", ", ".join(failed))
        return self._finish("sweep", names, summary={"points": len(records), "failed": failed})

    def run(self, subcommand: str, jobs: int = 1) -> ResultManifest:
        if subcommand == "sweep":
            return self.sweep(jobs)
        return getattr(self, subcommand)()

    def __repr__(self) -> str:
        return f"< giantbic.Simulator | params: {self.__params!r} | lattice: {self.__lattice!r} | out: {self.__output_dir} >"


def run_sweep_point(task: Tuple[Dict[str, Any], str, str, str]) -> Dict[str, Any]:
    """Runs one sweep point. Module level so worker processes can unpickle it."""
    dumped, subcommand, directory, fmt = task
    result = {"status": "ok", "bic_condition": None, "has_bic": None, "E_L": None, "E_U": None}
    try:
        simulator = Simulator(RunConfig.model_validate(dumped), directory, fmt)
        manifest = simulator.run(subcommand)
    except SWEEP_POINT_ERRORS as error:
        logger.warning("Sweep point %s failed: %s", directory, error)
        result["status"] = str(error)
        return result
    for key in ("bic_condition", "has_bic", "E_L", "E_U"):
        result[key] = manifest.summary.get(key)
    if subcommand == "spectrum":
        result["levels"] = [
            {"index": row.index, "energy": row.energy, "class": row.state_class.value, "atom_weight": row.atom_weight}
            for row in simulator.bound_states().table
        ]
    return result
