"""Quench dynamics by the spectral propagator and the three bound state long-time model."""

import logging
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ..base_classes.dynamics import BoundStateModel, Trajectory
from ..base_classes.hamiltonian import HamiltonianMatrix
from ..base_classes.spectrum import BoundStateSet, EigenDecomposition
from ..base_classes.system import Lattice
from ..configs import DEFAULT_DT, DEFAULT_T_MAX, DEFAULT_TRACKED_SITES, NORM_TOL, PROPAGATOR_CHUNK
from ..exceptions.dynamics_errors import InputError, ModelUnavailableError
from .spectrum import classify_states

logger = logging.getLogger(__name__)

InitialState = Union[str, np.ndarray]
LONG_TIME_VARIANTS = ("verbatim", "projector")


def prepare_initial_state(initial: InitialState, lattice: Lattice) -> np.ndarray:
    """Turns a state label or vector into a normalized vector in the [atom, sites] basis.

    Args:
        initial (str | np.ndarray): "atom" for sigma_+|G>, "site:<j>" for a photon on leg-relative site j,
            or an explicit vector.
        lattice (Lattice): Chain geometry.

    Raises:
        InputError: Unknown label, wrong length or a vector that is not normalized.

    Returns:
        np.ndarray: Complex state vector.
    """
    if isinstance(initial, str):
        vector = np.zeros(lattice.dimension, dtype=complex)
        label = initial.strip().lower()
        if label == "atom":
            vector[0] = 1.0
        elif label.startswith("site:"):
            vector[lattice.basis_index(int(label.split(":", 1)[1]))] = 1.0
        else:
            raise InputError(f"unknown initial state label '{initial}'. Options: ['atom', 'site:<j>']")
        return vector

    vector = np.asarray(initial, dtype=complex)
    if vector.shape != (lattice.dimension,):
        raise InputError(f"initial state has shape {vector.shape}, expected ({lattice.dimension},)")
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > NORM_TOL:
        raise InputError(f"initial state is not normalized (norm = {norm!r})")
    return vector


def time_grid(dt: float = DEFAULT_DT, t_max: float = DEFAULT_T_MAX) -> np.ndarray:
    """Uniform grid 0, dt, 2 dt, ..., t_max."""
    if dt <= 0 or t_max < 0:
        raise InputError(f"need dt > 0 and t_max >= 0, got dt={dt!r}, t_max={t_max!r}")
    return np.arange(int(round(t_max / dt)) + 1) * dt


def check_uniform(times: np.ndarray) -> float:
    """Returns the spacing of a uniform, strictly increasing grid.

    Raises:
        InputError: The grid is not strictly increasing or not uniformly spaced.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.shape[0] < 1:
        raise InputError("times must be a non-empty one-dimensional array")
    if times.shape[0] == 1:
        return 0.0
    steps = np.diff(times)
    dt = float(steps[0])
    slack = 1e-9 * abs(dt) + 8 * np.finfo(float).eps * abs(times[-1])
    if dt <= 0 or np.any(np.abs(steps - dt) > slack):
        raise InputError("times must be strictly increasing with uniform spacing")
    return dt


def evolve_state(decomp: EigenDecomposition, initial: InitialState, t: float) -> np.ndarray:
    """Full state exp(-iHt)|psi(0)> at a single time."""
    psi0 = prepare_initial_state(initial, decomp.lattice)
    coefficients = decomp.project(psi0) * np.exp(-1j * decomp.energies * t)
    return decomp.states @ coefficients


def evolve(
    decomp: EigenDecomposition,
    initial: InitialState = "atom",
    times: Optional[np.ndarray] = None,
    sites: Iterable[int] = DEFAULT_TRACKED_SITES,
    chunk: int = PROPAGATOR_CHUNK,
) -> Trajectory:
    """Evolves psi(t) = sum_n e^{-iE_n t} <v_n|psi(0)> v_n at every sample.

    Each sample is evaluated exactly from the decomposition, so there is no
    time-stepping error. Samples are processed in chunks of `chunk` times.

    Args:
        decomp (EigenDecomposition): Decomposition of the Hamiltonian.
        initial (str | np.ndarray, optional): Initial state. Defaults to "atom" (sigma_+|G>).
        times (np.ndarray, optional): Uniform time grid. Defaults to time_grid().
        sites (Iterable[int], optional): Leg-relative sites to record. Defaults to DEFAULT_TRACKED_SITES.
        chunk (int, optional): Samples per propagation block. Defaults to PROPAGATOR_CHUNK.

    Raises:
        InputError: Malformed initial state or non-uniform times.

    Returns:
        Trajectory: Atom population, site amplitudes and norm per sample.
    """
    lattice = decomp.lattice
    times = time_grid() if times is None else np.asarray(times, dtype=float)
    check_uniform(times)
    sites = tuple(int(site) for site in sites)
    rows = [lattice.basis_index(site) for site in sites]

    psi0 = prepare_initial_state(initial, lattice)
    coefficients = decomp.project(psi0)

    warnings = []
    horizon = lattice.causal_horizon(decomp.params.hopping)
    if times[-1] >= horizon:
        message = f"evolution to t={times[-1]:.6g} passes the causal horizon {horizon:.6g}; wall reflections may enter"
        logger.warning(message)
        warnings.append(message)

    n_times = times.shape[0]
    atom_population = np.empty(n_times)
    amplitudes = np.empty((n_times, len(sites)), dtype=complex)
    norm = np.empty(n_times)
    for start in range(0, n_times, chunk):
        block = times[start : start + chunk]
        weighted = coefficients[:, None] * np.exp(-1j * np.outer(decomp.energies, block))
        psi = decomp.states @ weighted
        atom_population[start : start + block.shape[0]] = np.abs(psi[0]) ** 2
        amplitudes[start : start + block.shape[0]] = psi[rows].T
        norm[start : start + block.shape[0]] = np.sum(np.abs(psi) ** 2, axis=0)

    logger.info("Evolved %d samples up to t=%.6g", n_times, times[-1])
    return Trajectory(times, atom_population, sites, amplitudes, norm, True, tuple(warnings))


def energy_expectation(hamiltonian: HamiltonianMatrix, state: np.ndarray) -> float:
    """<psi|H|psi>."""
    return float(np.real(np.vdot(state, hamiltonian.matrix @ state)))


def bound_state_projection(
    decomp: EigenDecomposition,
    initial: InitialState = "atom",
    bound_states: Optional[BoundStateSet] = None,
    sites: Iterable[int] = DEFAULT_TRACKED_SITES,
) -> BoundStateModel:
    """Projects the initial state on the lower BOC, the BIC and the upper BOC.

    Args:
        decomp (EigenDecomposition): Decomposition of the Hamiltonian.
        initial (str | np.ndarray, optional): Initial state. Defaults to "atom".
        bound_states (BoundStateSet, optional): Classification to use. Defaults to classify_states(decomp).
        sites (Iterable[int], optional): Sites at which to record d_{a,j}. Defaults to DEFAULT_TRACKED_SITES.

    Raises:
        ModelUnavailableError: One or more of the three bound states is absent.

    Returns:
        BoundStateModel: Energies, overlaps c_a and photon amplitudes d_{a,j}.
    """
    bound_states = classify_states(decomp) if bound_states is None else bound_states
    if not bound_states.is_complete:
        raise ModelUnavailableError(bound_states.missing())

    lattice = decomp.lattice
    psi0 = prepare_initial_state(initial, lattice)
    sites = tuple(int(site) for site in sites)
    members = {"L": bound_states.lower_boc, "I": bound_states.bic, "U": bound_states.upper_boc}

    energies, overlaps, atom_amplitudes, photon_amplitudes = {}, {}, {}, {}
    for label, bound in members.items():
        energies[label] = bound.energy
        overlaps[label] = complex(np.vdot(bound.state, psi0))
        atom_amplitudes[label] = complex(bound.state[0])
        photon_amplitudes[label] = {site: complex(np.conj(bound.state[lattice.basis_index(site)])) for site in sites}

    model = BoundStateModel(energies, overlaps, atom_amplitudes, photon_amplitudes, sites)
    logger.info("Bound state model: %r", model)
    return model


def long_time_populations(
    model: BoundStateModel,
    times: np.ndarray,
    sites: Optional[Sequence[int]] = None,
    variant: str = "verbatim",
) -> Trajectory:
    """Long-time atom population and site amplitudes carried by the three bound states.

    "verbatim" squares the overlaps as c_a^2 in P_e, with phases e^{i delta_L t}
    and e^{-i delta_U t} relative to the BIC. "projector" keeps the truncated
    state sum_a e^{-iE_a t} c_a |phi_a>, so P_e uses c_a <e|phi_a> and beta_j uses
    c_a <j|phi_a>. Both coincide when the bound states are real.

    Raises:
        ValueError: Unknown variant.
        InputError: A requested site is not stored in the model.

    Returns:
        Trajectory: Approximate trajectory (exact=False); norm holds the captured weight.
    """
    if variant not in LONG_TIME_VARIANTS:
        raise ValueError(f"Invalid option for variant. Options: {list(LONG_TIME_VARIANTS)}")
    times = np.asarray(times, dtype=float)
    sites = model.sites if sites is None else tuple(int(site) for site in sites)
    unknown = [site for site in sites if site not in model.sites]
    if unknown:
        raise InputError(f"sites {unknown} are not stored in the bound state model")

    phases = {label: np.exp(-1j * (model.energies[label] - model.energies["I"]) * times) for label in model.LABELS}
    c = model.overlaps
    if variant == "verbatim":
        atom = sum(phases[label] * c[label] ** 2 for label in model.LABELS)
        amplitudes = [
            sum(phases[label] * c[label] * model.photon_amplitudes[label][site] for label in model.LABELS)
            for site in sites
        ]
    else:
        atom = sum(phases[label] * c[label] * model.atom_amplitudes[label] for label in model.LABELS)
        amplitudes = [
            sum(phases[label] * c[label] * np.conj(model.photon_amplitudes[label][site]) for label in model.LABELS)
            for site in sites
        ]

    site_amplitudes = np.stack(amplitudes, axis=1) if sites else np.empty((times.shape[0], 0), dtype=complex)
    norm = np.full(times.shape[0], model.captured_weight)
    return Trajectory(times, np.abs(atom) ** 2, sites, site_amplitudes, norm, False)


def boundary_amplitude(decomp: EigenDecomposition, initial: InitialState, times: np.ndarray) -> np.ndarray:
    """Largest photon amplitude on the two wall sites at each time, for causality checks."""
    psi0 = prepare_initial_state(initial, decomp.lattice)
    coefficients = decomp.project(psi0)
    edges = decomp.states[[1, decomp.lattice.dimension - 1]]
    weighted = coefficients[:, None] * np.exp(-1j * np.outer(decomp.energies, np.asarray(times, dtype=float)))
    return np.max(np.abs(edges @ weighted), axis=0)


def rms_deviation(
    model: np.ndarray, exact: np.ndarray, times: Optional[np.ndarray] = None, window: Optional[tuple] = None
) -> float:
    """Root-mean-square difference between two sampled curves, optionally restricted to start <= t <= stop."""
    model, exact = np.asarray(model), np.asarray(exact)
    if window is not None:
        if times is None:
            raise InputError("a window needs the sample times")
        times = np.asarray(times)
        mask = (times >= window[0]) & (times <= window[1])
        model, exact = model[mask], exact[mask]
    if model.shape[0] == 0:
        raise InputError("no samples inside the window")
    return float(np.sqrt(np.mean(np.abs(model - exact) ** 2)))
