"""Named experiments, generic parameter sweeps, config files, and CSV output.

This is the batch-processing surface of the package: it wires the
manybody -> spectrum -> cascade -> lindblad -> metrics pipeline into
single evaluations and one-parameter sweeps, provides the stock two- and
three-emitter baselines, and persists results as deterministic CSV.

CSV conventions: header row with units, comma separator, '.' decimal,
17-significant-digit numbers (full round-trip precision).  Rows are
written incrementally in grid order; a grid point that fails to converge
produces a row with NaN metrics and the error name in the last column.
"""

from __future__ import annotations

import concurrent.futures
import time
from dataclasses import dataclass, field, replace

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import cascade, lindblad, metrics
from .coupling import CouplingSpec, EmitterConfig
from .spectrum import CompositeModel, build_hamiltonian, diagonalize

NAMED_EXPERIMENTS = ("bell_dx", "bell_G", "bell_theta", "bell_gd",
                     "ghz_dx", "ghz_G", "ghz_theta", "ghz_gd",
                     "populations_fig4")

SWEEP_PARAMETERS = ("d_x", "G_hyb", "theta", "gamma_d", "position_scale")

SWEEP_HEADER = ("value,eta,fidelity,fidelity_phase_opt,delta_e_min_eV,"
                "path_count,error")


class UsageError(ValueError):
    """Invalid configuration or experiment name."""


def bell_model(d_x: float = 6.0, g_hyb: float = 0.08, theta: float = 0.0,
               gamma_d: float = 0.0, separation: float = 40.0,
               omega: float = 1.0, epsilon_r: float = 1.0) -> CompositeModel:
    """Two identical emitters on the x axis; the second dipole rotated by theta.

    Defaults: transition energy 1 eV, dipole 6 e*Bohr, separation 40 Bohr,
    excited-state hybridization 80 meV, vacuum permittivity, no dephasing.
    """
    emitters = (
        EmitterConfig(omega, (d_x, 0.0, 0.0), (0.0, 0.0, 0.0)),
        EmitterConfig(omega, (d_x * np.cos(theta), d_x * np.sin(theta), 0.0),
                      (separation, 0.0, 0.0)),
    )
    hyb = np.array([[0.0, g_hyb], [g_hyb, 0.0]])
    return CompositeModel(emitters, CouplingSpec(epsilon_r, hyb),
                          dephasing=gamma_d)


def ghz_model(d_x: float = 6.0, g_hyb: float = 0.08, theta: float = 0.0,
              gamma_d: float = 0.0, spacing: float = 20.0,
              omega: float = 1.0, epsilon_r: float = 1.0) -> CompositeModel:
    """Three identical emitters in a chain at x = -spacing, 0, +spacing.

    The middle dipole is rotated by theta in the x-y plane; hybridization
    couples nearest neighbors only.
    """
    emitters = (
        EmitterConfig(omega, (d_x, 0.0, 0.0), (-spacing, 0.0, 0.0)),
        EmitterConfig(omega, (d_x * np.cos(theta), d_x * np.sin(theta), 0.0),
                      (0.0, 0.0, 0.0)),
        EmitterConfig(omega, (d_x, 0.0, 0.0), (spacing, 0.0, 0.0)),
    )
    hyb = np.zeros((3, 3))
    hyb[0, 1] = hyb[1, 0] = hyb[1, 2] = hyb[2, 1] = g_hyb
    return CompositeModel(emitters, CouplingSpec(epsilon_r, hyb),
                          dephasing=gamma_d)


@dataclass(frozen=True)
class EvaluationResult:
    """End-to-end scores of one composite-emitter configuration."""

    report: metrics.EntanglementReport
    path_count: int
    merged_path_count: int
    wall_time: float


def evaluate_model(model: CompositeModel, n_codewords: int = 2,
                   n_photons: int = None,
                   tol_grid: float = lindblad.GRID_CONVERGENCE_TOL,
                   compute_block: bool = True) -> EvaluationResult:
    """Full pipeline: diagonalize, cascade, photon block, entanglement scores.

    Efficiency comes from the classical path weights; fidelity from the
    quantum K x K photon block over the default logical target.  Set
    compute_block False to skip the (more expensive) fidelity part.
    """
    start = time.perf_counter()
    diagram = diagonalize(build_hamiltonian(model), model)
    rates = cascade.build_rate_matrix(diagram, model)
    liou = lindblad.build_liouvillian(diagram, model, rates)

    p0 = np.zeros(diagram.dim)
    p0[-1] = 1.0
    t_grid = cascade.default_time_grid(rates, p0, diagram.ground_index)
    trajectories = cascade.integrate_rate_equations(rates, p0, t_grid)
    fractions = cascade.flux_fractions(rates, trajectories, t_grid,
                                       diagram.ground_index)
    raw_paths = cascade.enumerate_decay_paths(diagram, rates)
    weighted = cascade.path_weights(raw_paths, fractions)
    merged = cascade.merge_paths_by_frequency(weighted, liou.bins)

    target = metrics.default_logical_target(merged, n_codewords, n_photons)
    eta, missing = metrics.efficiency(merged, target)
    if compute_block:
        block, info = lindblad.converged_photon_block(
            liou, lindblad.initial_state(diagram), list(target.sequences),
            t_grid[-1], tol=tol_grid)
        fid, fid_opt, phase = metrics.fidelity(block, target)
        meta = {"n_grid": info["n_grid"], "t_max": float(t_grid[-1])}
    else:
        fid = fid_opt = phase = float("nan")
        meta = {"t_max": float(t_grid[-1])}
    report = metrics.EntanglementReport(
        eta=eta, fidelity=fid, fidelity_phase_opt=fid_opt,
        optimal_phase=phase, delta_e_min=metrics.delta_e_min(target),
        path_weights=tuple(p.weight for p in merged),
        missing_codewords=missing, metadata=meta)
    return EvaluationResult(report=report, path_count=len(raw_paths),
                            merged_path_count=len(merged),
                            wall_time=time.perf_counter() - start)


def apply_parameter(base: CompositeModel, parameter: str, value: float,
                    rotated_emitter: int = 1) -> CompositeModel:
    """Return a copy of base with one swept parameter replaced.

    d_x rescales every dipole to the given magnitude; G_hyb sets every
    nonzero hybridization entry (keeping its sign); theta rotates the
    designated emitter's dipole in the x-y plane at fixed magnitude;
    gamma_d sets the dephasing rate; position_scale scales all positions.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise UsageError(f"unknown sweep parameter {parameter!r}; "
                         f"choose one of {SWEEP_PARAMETERS}")
    emitters = list(base.emitters)
    coupling = base.coupling
    dephasing = base.dephasing
    if parameter == "d_x":
        if value <= 0:
            raise UsageError("d_x must be positive")
        scaled = []
        for em in emitters:
            mag = em.dipole_magnitude
            if mag == 0:
                raise UsageError("cannot rescale a zero dipole")
            scaled.append(replace(
                em, dipole=tuple(value * x / mag for x in em.dipole)))
        emitters = scaled
    elif parameter == "G_hyb":
        if coupling.hybridization is None:
            raise UsageError("base model has no hybridization matrix")
        pattern = np.sign(coupling.hybridization)
        coupling = replace(coupling, hybridization=pattern * value)
    elif parameter == "theta":
        if not 0 <= rotated_emitter < len(emitters):
            raise UsageError(f"rotated emitter {rotated_emitter} out of range")
        em = emitters[rotated_emitter]
        mag = em.dipole_magnitude
        emitters[rotated_emitter] = replace(
            em, dipole=(mag * np.cos(value), mag * np.sin(value), 0.0))
    elif parameter == "gamma_d":
        if value < 0:
            raise UsageError("gamma_d must be nonnegative")
        dephasing = value
    elif parameter == "position_scale":
        if value <= 0:
            raise UsageError("position_scale must be positive")
        emitters = [replace(em, position=tuple(value * x for x in em.position))
                    for em in emitters]
    return CompositeModel(tuple(emitters), coupling,
                          rate_constant=base.rate_constant,
                          dephasing=dephasing)


@dataclass(frozen=True)
class SweepConfig:
    """One-dimensional parameter sweep over a base model."""

    base: CompositeModel
    parameter: str
    values: tuple
    rotated_emitter: int = 1
    n_codewords: int = 2
    n_photons: int = None
    tol_grid: float = lindblad.GRID_CONVERGENCE_TOL

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise UsageError(f"unknown sweep parameter {self.parameter!r}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise UsageError("sweep grid must be nonempty")
        diffs = np.diff(values)
        if len(values) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise UsageError("sweep grid must be strictly monotone")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class SweepRow:
    value: float
    eta: float = float("nan")
    fidelity: float = float("nan")
    fidelity_phase_opt: float = float("nan")
    delta_e_min: float = float("nan")
    path_count: int = 0
    wall_time: float = 0.0
    error: str = ""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _row_text(row: SweepRow) -> str:
    # wall_time is deliberately not written: output must be byte-identical
    # across reruns of the same configuration.
    return ",".join([
        _fmt(row.value), _fmt(row.eta), _fmt(row.fidelity),
        _fmt(row.fidelity_phase_opt), _fmt(row.delta_e_min),
        str(row.path_count), row.error])


def _evaluate_point(args) -> SweepRow:
    config, value = args
    start = time.perf_counter()
    try:
        model = apply_parameter(config.base, config.parameter, value,
                                config.rotated_emitter)
        result = evaluate_model(model, config.n_codewords, config.n_photons,
                                config.tol_grid)
        r = result.report
        return SweepRow(value=value, eta=r.eta, fidelity=r.fidelity,
                        fidelity_phase_opt=r.fidelity_phase_opt,
                        delta_e_min=r.delta_e_min,
                        path_count=result.path_count,
                        wall_time=time.perf_counter() - start)
    except Exception as exc:  # per-row error marker; caller exits nonzero
        return SweepRow(value=value, error=type(exc).__name__,
                        wall_time=time.perf_counter() - start)


def run_sweep(config: SweepConfig, csv_path=None, threads: int = 1) -> list:
    """Evaluate every grid point; optionally stream rows to csv_path.

    Returns the SweepRow list in grid order.  Rows are appended to the
    file as they complete so a crash leaves a usable prefix.
    """
    jobs = [(config, v) for v in config.values]
    out = open(csv_path, "w") if csv_path is not None else None
    rows = []
    try:
        if out is not None:
            out.write(SWEEP_HEADER + "\n")
            out.flush()
        if threads > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
                iterator = pool.map(_evaluate_point, jobs)
                for row in iterator:
                    rows.append(row)
                    if out is not None:
                        out.write(_row_text(row) + "\n")
                        out.flush()
        else:
            for job in jobs:
                row = _evaluate_point(job)
                rows.append(row)
                if out is not None:
                    out.write(_row_text(row) + "\n")
                    out.flush()
    finally:
        if out is not None:
            out.close()
    return rows


def _named_sweep_config(name: str, tol_grid: float) -> SweepConfig:
    if name.startswith("bell"):
        base = bell_model()
        n_codewords, n_photons = 2, 2
    else:
        base = ghz_model(theta=np.pi / 4)
        n_codewords, n_photons = 2, 3
    axis = name.split("_", 1)[1]
    if axis == "dx":
        values = np.linspace(0.5, 10.5, 41)
        parameter = "d_x"
    elif axis == "G":
        values = np.linspace(0.004, 0.164, 41)
        parameter = "G_hyb"
    elif axis == "theta":
        lo = np.pi / 4 if name.startswith("ghz") else 0.0
        values = np.linspace(lo, np.pi / 2, 41)
        parameter = "theta"
    elif axis == "gd":
        values = np.linspace(0.0, 2.0, 41)
        parameter = "gamma_d"
    else:
        raise UsageError(f"unknown experiment {name!r}")
    return SweepConfig(base=base, parameter=parameter, values=tuple(values),
                       rotated_emitter=1, n_codewords=n_codewords,
                       n_photons=n_photons, tol_grid=tol_grid)


def run_named_experiment(name: str, csv_path=None, threads: int = 1,
                         tol_grid: float = lindblad.GRID_CONVERGENCE_TOL) -> list:
    """Run one of the stock experiments and return its rows.

    The sweep experiments cover dipole magnitude, hybridization energy,
    dipole angle, and dephasing for both the two- and three-emitter
    baselines.  The *_gd dephasing sweeps fix theta at the fidelity
    optimum of the corresponding theta sweep.  populations_fig4 returns
    population-trajectory rows instead of sweep rows.
    """
    if name not in NAMED_EXPERIMENTS:
        raise UsageError(f"unknown experiment {name!r}; "
                         f"choose one of {NAMED_EXPERIMENTS}")
    if name == "populations_fig4":
        return population_comparison(bell_model(), csv_path)
    config = _named_sweep_config(name, tol_grid)
    if name == "ghz_gd":
        theta_rows = run_sweep(_named_sweep_config("ghz_theta", tol_grid),
                               threads=threads)
        valid = [r for r in theta_rows if not r.error]
        if not valid:
            raise cascade.ConvergenceError("ghz_theta sweep produced no "
                                           "usable rows to pick theta from")
        best = max(valid, key=lambda r: r.fidelity_phase_opt)
        base = ghz_model(theta=best.value)
        config = replace(config, base=base)
    elif name == "bell_gd":
        config = replace(config, base=bell_model(theta=0.0))
    return run_sweep(config, csv_path, threads)


def population_comparison(model: CompositeModel, csv_path=None,
                          n_output: int = 1001) -> list:
    """Classical and quantum populations side by side on a shared grid.

    Classical values come from the rate-equation RK4 trajectories,
    quantum values from the diagonal of the propagated density matrix;
    both are sampled on n_output uniform times across the decay horizon.
    Returns the rows as (t, p_classical..., p_quantum...) tuples.
    """
    diagram = diagonalize(build_hamiltonian(model), model)
    rates = cascade.build_rate_matrix(diagram, model)
    liou = lindblad.build_liouvillian(diagram, model, rates)
    p0 = np.zeros(diagram.dim)
    p0[-1] = 1.0
    fine = cascade.default_time_grid(rates, p0, diagram.ground_index)
    stride = max(1, (len(fine) - 1) // (n_output - 1))
    sample = fine[::stride]
    classical = cascade.integrate_rate_equations(rates, p0, fine)[::stride]
    quantum = lindblad.population_trajectories(
        liou, lindblad.initial_state(diagram), sample)
    rows = [(float(t),) + tuple(c) + tuple(q)
            for t, c, q in zip(sample, classical, quantum)]
    if csv_path is not None:
        d = diagram.dim
        header = ",".join(
            ["t_per_gamma0"]
            + [f"p{i}_classical" for i in range(d)]
            + [f"p{i}_quantum" for i in range(d)])
        with open(csv_path, "w") as f:
            f.write(header + "\n")
            for row in rows:
                f.write(",".join(_fmt(x) for x in row) + "\n")
    return rows


def _require(table: dict, key: str, context: str):
    if key not in table:
        raise UsageError(f"config missing {key!r} in {context}")
    return table[key]


def load_config(path):
    """Parse a TOML model/sweep config; returns (model, sweep_or_None).

    Schema (see README): an [[emitter]] table per emitter with omega
    (eV), dipole (e*Bohr), position (Bohr); a [coupling] table with
    epsilon_r, hybridization (N x N), optional ground_hybridization and
    dipole_coupling_enabled; optional scalar dephasing; optional [target]
    table (codewords, photons); optional [sweep] table (parameter,
    values or start/stop/count, rotated_emitter); optional [solver]
    table (tol_grid).
    """
    with open(path, "rb") as f:
        doc = tomllib.load(f)
    emitter_tables = _require(doc, "emitter", "top level")
    if not isinstance(emitter_tables, list) or not emitter_tables:
        raise UsageError("config needs at least one [[emitter]] table")
    emitters = tuple(
        EmitterConfig(_require(t, "omega", "[[emitter]]"),
                      tuple(_require(t, "dipole", "[[emitter]]")),
                      tuple(_require(t, "position", "[[emitter]]")))
        for t in emitter_tables)
    ctab = doc.get("coupling", {})
    coupling = CouplingSpec(
        epsilon_r=float(ctab.get("epsilon_r", 1.0)),
        hybridization=(np.array(ctab["hybridization"], dtype=float)
                       if "hybridization" in ctab else None),
        ground_hybridization=(np.array(ctab["ground_hybridization"], dtype=float)
                              if "ground_hybridization" in ctab else None),
        dipole_coupling_enabled=bool(ctab.get("dipole_coupling_enabled", True)))
    model = CompositeModel(emitters, coupling,
                           rate_constant=doc.get("rate_constant"),
                           dephasing=float(doc.get("dephasing", 0.0)))

    target = doc.get("target", {})
    solver = doc.get("solver", {})
    n_codewords = int(target.get("codewords", 2))
    n_photons = target.get("photons")
    tol_grid = float(solver.get("tol_grid", lindblad.GRID_CONVERGENCE_TOL))

    sweep = None
    if "sweep" in doc:
        stab = doc["sweep"]
        if "values" in stab:
            values = tuple(float(v) for v in stab["values"])
        else:
            values = tuple(np.linspace(
                float(_require(stab, "start", "[sweep]")),
                float(_require(stab, "stop", "[sweep]")),
                int(_require(stab, "count", "[sweep]"))))
        sweep = SweepConfig(
            base=model, parameter=_require(stab, "parameter", "[sweep]"),
            values=values,
            rotated_emitter=int(stab.get("rotated_emitter", 1)),
            n_codewords=n_codewords,
            n_photons=int(n_photons) if n_photons is not None else None,
            tol_grid=tol_grid)
    options = {"n_codewords": n_codewords,
               "n_photons": int(n_photons) if n_photons is not None else None,
               "tol_grid": tol_grid}
    return model, sweep, options


def path_table_csv(model: CompositeModel, csv_path=None) -> list:
    """Frequency-merged decay-path table: id, states, frequencies, weight."""
    diagram = diagonalize(build_hamiltonian(model), model)
    rates = cascade.build_rate_matrix(diagram, model)
    liou = lindblad.build_liouvillian(diagram, model, rates)
    p0 = np.zeros(diagram.dim)
    p0[-1] = 1.0
    t_grid = cascade.default_time_grid(rates, p0, diagram.ground_index)
    trajectories = cascade.integrate_rate_equations(rates, p0, t_grid)
    fractions = cascade.flux_fractions(rates, trajectories, t_grid,
                                       diagram.ground_index)
    weighted = cascade.path_weights(
        cascade.enumerate_decay_paths(diagram, rates), fractions)
    merged = cascade.merge_paths_by_frequency(weighted, liou.bins)
    if csv_path is not None:
        with open(csv_path, "w") as f:
            f.write("path_id,states,frequencies_eV,weight\n")
            for i, p in enumerate(merged):
                states = ">".join(str(s) for s in p.states)
                freqs = ";".join(_fmt(x) for x in p.frequencies)
                f.write(f"{i},{states},{freqs},{_fmt(p.weight)}\n")
    return merged
