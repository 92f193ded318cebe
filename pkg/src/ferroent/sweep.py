"""Parameter-grid sweeps and verification reports over spin-graph families.

A sweep covers the Cartesian grid of geometry x chain length x couplings
x temperature x field exactly once, computing the raw (unclamped) pair
concurrence of the thermal state at every point.  Results stream to a
JSON-lines file, one record per line, in ascending grid-index order, so
identical configs produce byte-identical files and an interrupted sweep
can resume from the line count.

Config files are JSON with the following keys (all grids nonempty):

    {
      "geometries": [
        {"kind": "ring"},
        {"kind": "open"},
        {"kind": "grid", "rows": 3, "cols": 3, "periodic": false,
         "coupling": -1.0},
        {"kind": "cube", "coupling": -1.0},
        {"kind": "star", "n_spins": 6, "coupling": -1.0},
        {"kind": "random", "edge_probability": 0.5,
         "j_range": [-2.0, -0.5], "seed": 7},
        {"kind": "file", "path": "graph.json"}
      ],
      "n_values": [4, 5, 6],          # consumed by ring/open/random kinds
      "g1": -1.0,                     # chain kinds only
      "g2_values": [0.0], "g3_values": [0.0],
      "t_grid": [0.0, 1.0] | {"points": 6, "max": "n"},
      "b_grid": [0.0]     | {"points": 6, "max": 4.0},
      "pairs": "all" | [[0, 1], [1, 2]]
    }

The {"points": k, "max": "n"} form expands to k evenly spaced values from
0 to the instance's spin count.  Grid/cube/star/file geometries fix their
own size and ignore n_values, g1, g2 and g3.
"""

from __future__ import annotations

import json
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from math import sqrt
from typing import IO, Iterable

import numpy as np

from .analytic import universal_rdm
from .graphs import (
    ChainParams,
    SpinGraph,
    cube_graph,
    grid_graph,
    is_connected,
    load_graph,
    open_chain,
    random_graph,
    ring_chain,
    star_graph,
)
from .rdm import (
    eigenstate_pair_entries,
    pair_rdm_mixed,
    pair_trace_tables,
)
from .spectra import (
    DEFAULT_DEGENERACY_TOL,
    SectorSpectrum,
    full_spectrum,
    ground_subspace,
)

RAW_CONCURRENCE_THRESHOLD = 1e-12
UNIVERSAL_RDM_TOL = 1e-10

_CHAIN_KINDS = ("ring", "open")
_SIZED_KINDS = ("ring", "open", "random")


@dataclass(frozen=True)
class GeometrySpec:
    """One geometry family of a sweep; see the module docstring for kinds."""

    kind: str
    rows: int = 0
    cols: int = 0
    periodic: bool = False
    coupling: float = -1.0
    n_spins: int = 0
    edge_probability: float = 0.5
    j_range: tuple[float, float] = (-1.0, -1.0)
    seed: int = 0
    path: str = ""

    def __post_init__(self) -> None:
        valid = _CHAIN_KINDS + ("grid", "cube", "star", "random", "file")
        if self.kind not in valid:
            raise ValueError(f"unknown geometry kind {self.kind!r}; expected one of {valid}")

    def label(self) -> str:
        if self.kind == "grid":
            suffix = "p" if self.periodic else ""
            return f"grid{self.rows}x{self.cols}{suffix}"
        if self.kind == "star":
            return f"star{self.n_spins}"
        if self.kind == "random":
            return f"random-s{self.seed}"
        if self.kind == "file":
            return f"file:{self.path}"
        return self.kind

    @classmethod
    def from_dict(cls, data: dict) -> "GeometrySpec":
        kwargs = dict(data)
        if "j_range" in kwargs:
            kwargs["j_range"] = tuple(float(x) for x in kwargs["j_range"])
        return cls(**kwargs)


def build_geometry(
    spec: GeometrySpec, n_spins: int, g1: float, g2: float, g3: float
) -> SpinGraph:
    """Instantiate one grid point's graph from its geometry family."""
    if spec.kind == "ring":
        return ring_chain(ChainParams(n_spins=n_spins, g1=g1, g2=g2, g3=g3, periodic=True))
    if spec.kind == "open":
        return open_chain(ChainParams(n_spins=n_spins, g1=g1, g2=g2, g3=g3, periodic=False))
    if spec.kind == "grid":
        return grid_graph(spec.rows, spec.cols, spec.periodic, spec.coupling)
    if spec.kind == "cube":
        return cube_graph(spec.coupling)
    if spec.kind == "star":
        return star_graph(spec.n_spins, spec.coupling)
    if spec.kind == "random":
        return random_graph(n_spins, spec.edge_probability, spec.j_range, spec.seed)
    if spec.kind == "file":
        return load_graph(spec.path)
    raise ValueError(f"unknown geometry kind {spec.kind!r}")


@dataclass(frozen=True)
class SweepConfig:
    geometries: tuple[GeometrySpec, ...]
    n_values: tuple[int, ...] = (4,)
    g1: float = -1.0
    g2_values: tuple[float, ...] = (0.0,)
    g3_values: tuple[float, ...] = (0.0,)
    t_grid: tuple[float, ...] | dict = (0.0,)
    b_grid: tuple[float, ...] | dict = (0.0,)
    pairs: str | tuple[tuple[int, int], ...] = "all"
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL

    def __post_init__(self) -> None:
        if not self.geometries:
            raise ValueError("config needs at least one geometry")
        for name in ("n_values", "g2_values", "g3_values"):
            if len(getattr(self, name)) == 0:
                raise ValueError(f"{name} must be nonempty")
        for name in ("t_grid", "b_grid"):
            grid = getattr(self, name)
            if isinstance(grid, dict):
                if int(grid.get("points", 0)) < 1:
                    raise ValueError(f"{name} needs at least one point")
            elif len(grid) == 0:
                raise ValueError(f"{name} must be nonempty")

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        known = {
            "geometries", "n_values", "g1", "g2_values", "g3_values",
            "t_grid", "b_grid", "pairs", "degeneracy_tol",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        kwargs["geometries"] = tuple(
            GeometrySpec.from_dict(g) for g in data["geometries"]
        )
        for name in ("n_values", "g2_values", "g3_values"):
            if name in kwargs:
                kwargs[name] = tuple(kwargs[name])
        for name in ("t_grid", "b_grid"):
            if name in kwargs and not isinstance(kwargs[name], dict):
                kwargs[name] = tuple(float(x) for x in kwargs[name])
        if "pairs" in kwargs and kwargs["pairs"] != "all":
            kwargs["pairs"] = tuple((int(i), int(j)) for i, j in kwargs["pairs"])
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str) -> "SweepConfig":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))


def _resolve_grid(grid: tuple[float, ...] | dict, n_spins: int) -> tuple[float, ...]:
    if isinstance(grid, dict):
        points = int(grid["points"])
        maximum = grid.get("max", "n")
        top = float(n_spins) if maximum == "n" else float(maximum)
        if points == 1:
            return (0.0,)
        return tuple(top * k / (points - 1) for k in range(points))
    return tuple(grid)


@dataclass(frozen=True)
class _Task:
    index: int
    record_base: int
    geometry_label: str
    graph: SpinGraph
    g1: float
    g2: float
    g3: float
    t_values: tuple[float, ...]
    b_values: tuple[float, ...]
    pairs: tuple[tuple[int, int], ...]
    degeneracy_tol: float


class GraphThermalEngine:
    """Per-graph cache turning (T, B) points into pair entries cheaply.

    The graph is diagonalized once at zero field; a field B only shifts
    each sector's eigenvalues by B * (n_up - N/2) and leaves eigenvectors
    untouched, so thermal weights at any (T, B) reuse the same
    eigenbasis.  Pair-trace index tables convert a weight vector into
    X-form entries with one dense contraction per pair.
    """

    def __init__(self, graph: SpinGraph, degeneracy_tol: float = DEFAULT_DEGENERACY_TOL):
        self.graph = graph
        self.degeneracy_tol = degeneracy_tol
        self.spectra = full_spectrum(graph, b_field=0.0)
        self.energies = np.concatenate([s.eigenvalues for s in self.spectra])
        self.sz = np.concatenate(
            [np.full(len(s.eigenvalues), s.basis.sz) for s in self.spectra]
        )
        self._entry_stacks: dict[tuple[int, int], np.ndarray] = {}

    def _stack(self, pair: tuple[int, int]) -> np.ndarray:
        stack = self._entry_stacks.get(pair)
        if stack is None:
            blocks = [
                eigenstate_pair_entries(s.eigenvectors, pair_trace_tables(s.basis, pair))
                for s in self.spectra
            ]
            stack = np.concatenate(blocks, axis=0)
            self._entry_stacks[pair] = stack
        return stack

    def weights(self, temperature: float, b_field: float) -> np.ndarray:
        """Thermal weights over the flat eigenstate ordering at (T, B)."""
        shifted = self.energies + b_field * self.sz
        e_min = float(shifted.min())
        if temperature == 0.0:
            window = e_min + self.degeneracy_tol * max(1.0, float(shifted.max()) - e_min)
            members = shifted <= window
            return members / members.sum()
        factors = np.exp(-(shifted - e_min) / temperature)
        return factors / factors.sum()

    def ground_info(self, b_field: float) -> tuple[float, int]:
        """(ground energy, ground degeneracy) at the given field."""
        shifted = self.energies + b_field * self.sz
        e_min = float(shifted.min())
        window = e_min + self.degeneracy_tol * max(1.0, float(shifted.max()) - e_min)
        return e_min, int((shifted <= window).sum())

    def pair_entries(
        self, weights: np.ndarray, pair: tuple[int, int]
    ) -> tuple[float, float, float, float, float]:
        alpha, beta, gamma, delta, epsilon = weights @ self._stack(pair)
        return float(alpha), float(beta), float(gamma), float(delta), float(epsilon)

    def raw_concurrence(self, weights: np.ndarray, pair: tuple[int, int]) -> float:
        alpha, _, gamma, _, epsilon = self.pair_entries(weights, pair)
        return 2.0 * (abs(gamma) - sqrt(max(alpha * epsilon, 0.0)))


def _compute_task(task: _Task) -> tuple[int, list[dict]]:
    engine = GraphThermalEngine(task.graph, task.degeneracy_tol)
    records = []
    offset = 0
    for t in task.t_values:
        for b in task.b_values:
            weights = engine.weights(t, b)
            ground_e, ground_d = engine.ground_info(b)
            pair_rows = []
            max_raw = -np.inf
            for pair in task.pairs:
                raw = engine.raw_concurrence(weights, pair)
                pair_rows.append([pair[0], pair[1], raw])
                max_raw = max(max_raw, raw)
            records.append(
                {
                    "index": task.record_base + offset,
                    "geometry": task.geometry_label,
                    "n_spins": task.graph.n_spins,
                    "g1": task.g1,
                    "g2": task.g2,
                    "g3": task.g3,
                    "t": t,
                    "b": b,
                    "ground_energy": ground_e,
                    "ground_degeneracy": ground_d,
                    "max_concurrence": max_raw,
                    "pairs": pair_rows,
                }
            )
            offset += 1
    return task.index, records


def _expand_tasks(config: SweepConfig) -> list[_Task]:
    # Geometries that do not consume an axis collapse it to a single point:
    # only chain kinds see the coupling grids, only sized kinds see n_values.
    tasks = []
    record_base = 0
    task_index = 0
    for spec in config.geometries:
        sizes = config.n_values if spec.kind in _SIZED_KINDS else (0,)
        chain = spec.kind in _CHAIN_KINDS
        g2_axis = config.g2_values if chain else (0.0,)
        g3_axis = config.g3_values if chain else (0.0,)
        for n in sizes:
            for g2 in g2_axis:
                for g3 in g3_axis:
                    graph = build_geometry(spec, n, config.g1, g2, g3)
                    t_values = _resolve_grid(config.t_grid, graph.n_spins)
                    b_values = _resolve_grid(config.b_grid, graph.n_spins)
                    pairs = (
                        tuple(graph.pairs())
                        if config.pairs == "all"
                        else tuple(config.pairs)
                    )
                    tasks.append(
                        _Task(
                            index=task_index,
                            record_base=record_base,
                            geometry_label=spec.label(),
                            graph=graph,
                            g1=config.g1 if chain else 0.0,
                            g2=g2,
                            g3=g3,
                            t_values=t_values,
                            b_values=b_values,
                            pairs=pairs,
                            degeneracy_tol=config.degeneracy_tol,
                        )
                    )
                    task_index += 1
                    record_base += len(t_values) * len(b_values)
    return tasks


@dataclass
class SweepResult:
    records_written: int
    max_concurrence: float
    violations: int
    threshold: float


def run_sweep(
    config: SweepConfig,
    output: IO[str] | None = None,
    summary: IO[str] | None = None,
    workers: int = 1,
    threshold: float = RAW_CONCURRENCE_THRESHOLD,
    skip_records: int = 0,
) -> SweepResult:
    """Execute the full grid, streaming JSON-lines records in index order.

    Tasks (one per graph instance) run on a process pool when workers > 1;
    completed tasks are buffered and flushed strictly in index order, so
    output files are reproducible byte for byte.  ``skip_records`` resumes
    an interrupted sweep: pass the line count of a partial output file and
    open it for append; grid points already on disk are not recomputed,
    and the returned statistics cover only the new records.  A "violation"
    is a record whose max raw concurrence exceeds the threshold.
    """
    tasks = [
        task
        for task in _expand_tasks(config)
        if task.record_base + len(task.t_values) * len(task.b_values) > skip_records
    ]
    if summary is not None:
        summary.write("index,geometry,n_spins,g1,g2,g3,t,b,max_concurrence\n")
    state = SweepResult(
        records_written=0, max_concurrence=-np.inf, violations=0, threshold=threshold
    )
    if not tasks:
        return state

    def emit(records: list[dict]) -> None:
        for record in records:
            state.max_concurrence = max(state.max_concurrence, record["max_concurrence"])
            if record["max_concurrence"] > threshold:
                state.violations += 1
            if record["index"] < skip_records:
                continue
            if output is not None:
                output.write(json.dumps(record) + "\n")
            if summary is not None:
                summary.write(
                    "%d,%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n"
                    % (
                        record["index"],
                        record["geometry"],
                        record["n_spins"],
                        record["g1"],
                        record["g2"],
                        record["g3"],
                        record["t"],
                        record["b"],
                        record["max_concurrence"],
                    )
                )
            state.records_written += 1

    if workers <= 1:
        for task in tasks:
            emit(_compute_task(task)[1])
        return state

    pending: dict[int, list[dict]] = {}
    next_to_write = tasks[0].index
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(_compute_task, task) for task in tasks}
        while futures:
            done, futures = wait(futures, return_when=FIRST_COMPLETED)
            for future in done:
                task_index, records = future.result()
                pending[task_index] = records
            while next_to_write in pending:
                emit(pending.pop(next_to_write))
                next_to_write += 1
    return state


def builtin_graph_set() -> list[tuple[str, SpinGraph]]:
    """The stock verification graphs: rings, open chains, grids, cube, star,
    and three seeded random graphs with inhomogeneous negative couplings."""
    graphs: list[tuple[str, SpinGraph]] = []
    for n in range(3, 9):
        graphs.append((f"ring{n}", ring_chain(ChainParams(n_spins=n, g1=-1.0))))
    for n in range(2, 9):
        graphs.append(
            (f"chain{n}", open_chain(ChainParams(n_spins=n, g1=-1.0, periodic=False)))
        )
    graphs.append(("grid3x3", grid_graph(3, 3, False, -1.0)))
    graphs.append(("grid3x3p", grid_graph(3, 3, True, -1.0)))
    graphs.append(("cube", cube_graph(-1.0)))
    graphs.append(("star6", star_graph(6, -1.0)))
    graphs.append(("random6", random_graph(6, 0.6, (-2.0, -0.5), seed=11)))
    graphs.append(("random7", random_graph(7, 0.5, (-1.5, -0.1), seed=42)))
    graphs.append(("random8", random_graph(8, 0.4, (-3.0, -0.2), seed=7)))
    return graphs


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one verification check on one graph."""

    graph_id: str
    check: str
    n_spins: int
    ferromagnetic: bool
    connected: bool
    preconditions_ok: bool
    ground_energy: float
    expected_ground_energy: float
    energy_ok: bool
    ground_degeneracy: int
    expected_degeneracy: int | None
    degeneracy_ok: bool | None
    max_rdm_deviation: float | None = None
    max_raw_concurrence: float | None = None
    passed: bool = False

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "check": self.check,
            "n_spins": self.n_spins,
            "ferromagnetic": self.ferromagnetic,
            "connected": self.connected,
            "preconditions_ok": self.preconditions_ok,
            "ground_energy": self.ground_energy,
            "expected_ground_energy": self.expected_ground_energy,
            "energy_ok": self.energy_ok,
            "ground_degeneracy": self.ground_degeneracy,
            "expected_degeneracy": self.expected_degeneracy,
            "degeneracy_ok": self.degeneracy_ok,
            "max_rdm_deviation": self.max_rdm_deviation,
            "max_raw_concurrence": self.max_raw_concurrence,
            "passed": self.passed,
        }


def _spectral_checks(
    graph: SpinGraph, spectra: list[SectorSpectrum], degeneracy_tol: float
) -> tuple[float, float, bool, int, int | None, bool | None, bool]:
    connected = is_connected(graph)
    mixture = ground_subspace(spectra, degeneracy_tol)
    degeneracy = len(mixture.terms)
    e_min = min(float(s.eigenvalues[0]) for s in spectra)
    expected_energy = 0.25 * graph.coupling_sum
    energy_ok = abs(e_min - expected_energy) <= 1e-10 * max(1.0, abs(expected_energy))
    expected_degeneracy = graph.n_spins + 1 if connected else None
    degeneracy_ok = (degeneracy == expected_degeneracy) if connected else None
    return (
        e_min,
        expected_energy,
        energy_ok,
        degeneracy,
        expected_degeneracy,
        degeneracy_ok,
        connected,
    )


def verify_universal(
    graph: SpinGraph,
    graph_id: str = "graph",
    rdm_tol: float = UNIVERSAL_RDM_TOL,
    raw_threshold: float = RAW_CONCURRENCE_THRESHOLD,
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL,
) -> VerifyReport:
    """Check that the zero-field ground mixture's pair RDMs all match the
    universal separable form, entry-wise within rdm_tol, with raw pair
    concurrence at most raw_threshold.

    Requires a connected ferromagnetic graph; violations are flagged in
    the report (never silently ignored) and fail it.
    """
    spectra = full_spectrum(graph, b_field=0.0)
    e_min, expected_e, energy_ok, degeneracy, expected_d, degeneracy_ok, connected = (
        _spectral_checks(graph, spectra, degeneracy_tol)
    )
    ferromagnetic = graph.is_ferromagnetic
    preconditions_ok = ferromagnetic and connected

    mixture = ground_subspace(spectra, degeneracy_tol)
    target = universal_rdm().matrix()
    max_deviation = 0.0
    max_raw = -np.inf
    engine = GraphThermalEngine(graph, degeneracy_tol)
    weights = engine.weights(0.0, 0.0)
    for pair in graph.pairs():
        rho = pair_rdm_mixed(mixture, spectra, pair)
        max_deviation = max(max_deviation, float(np.max(np.abs(rho - target))))
        max_raw = max(max_raw, engine.raw_concurrence(weights, pair))

    passed = (
        preconditions_ok
        and energy_ok
        and bool(degeneracy_ok)
        and max_deviation <= rdm_tol
        and max_raw <= raw_threshold
    )
    return VerifyReport(
        graph_id=graph_id,
        check="universal",
        n_spins=graph.n_spins,
        ferromagnetic=ferromagnetic,
        connected=connected,
        preconditions_ok=preconditions_ok,
        ground_energy=e_min,
        expected_ground_energy=expected_e,
        energy_ok=energy_ok,
        ground_degeneracy=degeneracy,
        expected_degeneracy=expected_d,
        degeneracy_ok=degeneracy_ok,
        max_rdm_deviation=max_deviation,
        max_raw_concurrence=float(max_raw),
        passed=passed,
    )


def verify_degeneracy(
    graph: SpinGraph,
    graph_id: str = "graph",
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL,
) -> VerifyReport:
    """Check ground degeneracy N+1 (connected graphs only) and ground energy
    equal to a quarter of the coupling sum.

    Disconnected graphs get expected_degeneracy None: the N+1 count
    assumes connectivity, while the energy identity holds for any
    ferromagnetic edge set.
    """
    spectra = full_spectrum(graph, b_field=0.0)
    e_min, expected_e, energy_ok, degeneracy, expected_d, degeneracy_ok, connected = (
        _spectral_checks(graph, spectra, degeneracy_tol)
    )
    ferromagnetic = graph.is_ferromagnetic
    passed = ferromagnetic and energy_ok and (degeneracy_ok is not False)
    return VerifyReport(
        graph_id=graph_id,
        check="degeneracy",
        n_spins=graph.n_spins,
        ferromagnetic=ferromagnetic,
        connected=connected,
        preconditions_ok=ferromagnetic,
        ground_energy=e_min,
        expected_ground_energy=expected_e,
        energy_ok=energy_ok,
        ground_degeneracy=degeneracy,
        expected_degeneracy=expected_d,
        degeneracy_ok=degeneracy_ok,
        passed=passed,
    )


def zero_temperature_scan(
    graph: SpinGraph,
    t_grid: Iterable[float],
    b_field: float = 0.0,
    threshold: float = RAW_CONCURRENCE_THRESHOLD,
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL,
) -> float | None:
    """Scan temperatures upward from zero; return the largest prefix value
    whose max pair concurrence stays at or below the threshold.

    Returns None when even the first grid point violates.  The grid must
    start at 0 and ascend.
    """
    t_values = list(t_grid)
    if not t_values or t_values[0] != 0.0:
        raise ValueError("temperature grid must start at 0")
    if any(t_values[k] > t_values[k + 1] for k in range(len(t_values) - 1)):
        raise ValueError("temperature grid must be ascending")
    engine = GraphThermalEngine(graph, degeneracy_tol)
    pairs = graph.pairs()
    last_ok: float | None = None
    for t in t_values:
        weights = engine.weights(t, b_field)
        max_raw = max(engine.raw_concurrence(weights, pair) for pair in pairs)
        if max_raw > threshold:
            break
        last_ok = t
    return last_ok
