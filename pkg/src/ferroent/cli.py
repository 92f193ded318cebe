"""Command-line interface: spectra, RDMs, closed-form tables, sweeps, verification.

All numeric output is printed with full round-trip precision so diffs
between runs are meaningful.  Exit codes: 0 success, 1 failed check,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analytic
from .graphs import (
    ChainParams,
    SpinGraph,
    cube_graph,
    grid_graph,
    load_graph,
    open_chain,
    random_graph,
    ring_chain,
    save_graph,
    star_graph,
)
from .hilbert import build_sector_hamiltonian
from .rdm import pair_rdm_mixed
from .spectra import energy_gap, full_spectrum, gibbs_weights, ground_energy
from .sweep import (
    RAW_CONCURRENCE_THRESHOLD,
    SweepConfig,
    builtin_graph_set,
    run_sweep,
    verify_degeneracy,
    verify_universal,
    zero_temperature_scan,
)

_FMT = "%.17g"


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", metavar="FILE", help="graph JSON file")
    source.add_argument("--ring", type=int, metavar="N", help="periodic chain of N spins")
    source.add_argument("--chain", type=int, metavar="N", help="open chain of N spins")
    source.add_argument("--grid", type=int, nargs=2, metavar=("ROWS", "COLS"),
                        help="square-lattice grid")
    source.add_argument("--cube", action="store_true", help="8 spins on a cube")
    source.add_argument("--star", type=int, metavar="N",
                        help="hub coupled to N-1 leaves")
    source.add_argument("--random", type=int, nargs=2, metavar=("N", "SEED"),
                        help="seeded random graph of N spins")
    parser.add_argument("--g1", type=float, default=-1.0,
                        help="nearest-neighbor coupling for chains (default -1)")
    parser.add_argument("--g2", type=float, default=0.0,
                        help="second-neighbor coupling for chains (default 0)")
    parser.add_argument("--g3", type=float, default=0.0,
                        help="third-neighbor coupling for chains (default 0)")
    parser.add_argument("--coupling", type=float, default=-1.0,
                        help="edge coupling for grid/cube/star (default -1)")
    parser.add_argument("--edge-probability", type=float, default=0.5,
                        help="pair probability for --random (default 0.5)")
    parser.add_argument("--j-range", type=float, nargs=2, default=(-1.0, -1.0),
                        metavar=("LO", "HI"),
                        help="uniform coupling range for --random (default -1 -1)")
    parser.add_argument("--periodic", action="store_true",
                        help="wrap the grid into a torus")


def _graph_from_args(args: argparse.Namespace) -> SpinGraph:
    if args.graph is not None:
        try:
            return load_graph(args.graph)
        except OSError as err:
            raise SystemExit(f"ferroent: cannot read graph file: {err}") from err
        except (ValueError, KeyError, json.JSONDecodeError) as err:
            raise SystemExit(f"ferroent: malformed graph file {args.graph!r}: {err}") from err
    if args.ring is not None:
        return ring_chain(ChainParams(n_spins=args.ring, g1=args.g1, g2=args.g2,
                                      g3=args.g3, periodic=True))
    if args.chain is not None:
        return open_chain(ChainParams(n_spins=args.chain, g1=args.g1, g2=args.g2,
                                      g3=args.g3, periodic=False))
    if args.grid is not None:
        rows, cols = args.grid
        return grid_graph(rows, cols, args.periodic, args.coupling)
    if args.cube:
        return cube_graph(args.coupling)
    if args.star is not None:
        return star_graph(args.star, args.coupling)
    if args.random is not None:
        n, seed = args.random
        return random_graph(n, args.edge_probability, tuple(args.j_range), seed)
    raise SystemExit("ferroent: no graph source given")


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _cmd_graph(args: argparse.Namespace) -> int:
    graph = _graph_from_args(args)
    if args.output is None or args.output == "-":
        sys.stdout.write(graph.to_json() + "\n")
    else:
        save_graph(graph, args.output)
    return 0


def _cmd_spectrum(args: argparse.Namespace) -> int:
    graph = _graph_from_args(args)
    if args.dump_sector is not None:
        # debugging aid: the dense sector matrix instead of eigenvalues
        matrix = build_sector_hamiltonian(graph, args.dump_sector, args.b_field)
        out, close = _open_output(args.output)
        try:
            out.write("# sector n_up=%d, dimension %d, row-major\n"
                      % (args.dump_sector, matrix.shape[0]))
            for row in matrix:
                out.write(",".join(_FMT % value for value in row) + "\n")
        finally:
            if close:
                out.close()
        return 0
    spectra = full_spectrum(graph, b_field=args.b_field)
    out, close = _open_output(args.output)
    try:
        out.write("# ground_energy=" + _FMT % ground_energy(spectra) + "\n")
        out.write("# gap=" + _FMT % energy_gap(spectra) + "\n")
        out.write("n_up,index,eigenvalue\n")
        for spectrum in spectra:
            for k, value in enumerate(spectrum.eigenvalues):
                out.write("%d,%d,%s\n" % (spectrum.n_up, k, _FMT % value))
    finally:
        if close:
            out.close()
    return 0


def _cmd_rdm(args: argparse.Namespace) -> int:
    graph = _graph_from_args(args)
    i, j = args.pair
    if not (0 <= i < graph.n_spins and 0 <= j < graph.n_spins) or i == j:
        raise SystemExit(f"ferroent: invalid pair ({i}, {j}) for {graph.n_spins} spins")
    spectra = full_spectrum(graph, b_field=args.b_field)
    mixture = gibbs_weights(spectra, args.temperature)
    rho = pair_rdm_mixed(mixture, spectra, (i, j))
    out, close = _open_output(args.output)
    try:
        out.write("# pair basis order: both-up, first-up, second-up, both-down\n")
        out.write("# pair=(%d,%d) temperature=%s b_field=%s\n"
                  % (i, j, _FMT % args.temperature, _FMT % args.b_field))
        out.write("row,col,real,imag\n")
        for a in range(4):
            for b in range(4):
                out.write("%d,%d,%s,%s\n"
                          % (a, b, _FMT % rho[a, b].real, _FMT % rho[a, b].imag))
    finally:
        if close:
            out.close()
    return 0


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _cmd_analytic(args: argparse.Namespace) -> int:
    out, close = _open_output(args.output)
    try:
        if args.zone:
            spec = analytic.zone(args.n)
            out.write("n_total,zone_lower,zone_upper,members,zone_mixture_concurrence\n")
            out.write("%d,%s,%s,%s,%s\n" % (
                spec.n_total,
                _FMT % spec.lower,
                _FMT % spec.upper,
                " ".join(str(m) for m in spec.members),
                _FMT % analytic.zone_mixture_concurrence(args.n),
            ))
            return 0
        out.write("n_up,alpha,beta,gamma,delta,epsilon,"
                  "concurrence_symmetric,concurrence_pairwise_mixed\n")
        for n in range(args.n + 1):
            entries = analytic.symmetric_rdm_entries(args.n, n)
            out.write("%d,%s,%s,%s,%s,%s,%s,%s\n" % (
                n,
                _fraction_str(entries.alpha),
                _fraction_str(entries.beta),
                _fraction_str(entries.gamma),
                _fraction_str(entries.delta),
                _fraction_str(entries.epsilon),
                _FMT % analytic.concurrence_symmetric(args.n, n),
                _FMT % analytic.concurrence_pairwise_mixed(args.n, n),
            ))
    finally:
        if close:
            out.close()
    return 0


def _cmd_figures(args: argparse.Namespace) -> int:
    out, close = _open_output(args.output)
    try:
        if args.which == 1:
            out.write("n_up,concurrence_symmetric,concurrence_pairwise_mixed\n")
            for n, c_sym, c_mix in analytic.figure1_data(args.n):
                out.write("%d,%s,%s\n" % (n, _FMT % c_sym, _FMT % c_mix))
        else:
            out.write("n_total,zone_mixture_concurrence\n")
            for n, value in analytic.figure2_data(args.n_min, args.n_max):
                out.write("%d,%s\n" % (n, _FMT % value))
    finally:
        if close:
            out.close()
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        config = SweepConfig.from_file(args.config)
    except OSError as err:
        raise SystemExit(f"ferroent: cannot read config: {err}") from err
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as err:
        raise SystemExit(f"ferroent: bad config {args.config!r}: {err}") from err
    skip = 0
    mode = "w"
    if args.resume and args.output is not None:
        try:
            with open(args.output, "r", encoding="utf-8") as handle:
                skip = sum(1 for _ in handle)
            mode = "a"
        except OSError:
            skip = 0
    output = open(args.output, mode, encoding="utf-8") if args.output else None
    summary = open(args.summary, "w", encoding="utf-8") if args.summary else None
    try:
        result = run_sweep(
            config,
            output=output,
            summary=summary,
            workers=args.workers,
            threshold=args.threshold,
            skip_records=skip,
        )
    finally:
        if output is not None:
            output.close()
        if summary is not None:
            summary.close()
    print(
        "sweep: %d records, max raw concurrence %s, %d above threshold %s"
        % (result.records_written + skip, _FMT % result.max_concurrence,
           result.violations, _FMT % result.threshold)
    )
    if args.assert_zero and result.violations > 0:
        print("sweep: FAIL (entanglement above threshold)", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.graph_files:
        graphs = []
        for path in args.graph_files:
            try:
                graphs.append((path, load_graph(path)))
            except OSError as err:
                raise SystemExit(f"ferroent: cannot read graph file: {err}") from err
    else:
        graphs = builtin_graph_set()

    reports = []
    scans = []
    all_ok = True
    if args.suite in ("universal", "all"):
        for graph_id, graph in graphs:
            report = verify_universal(graph, graph_id=graph_id)
            reports.append(report)
            all_ok &= report.passed
    if args.suite in ("degeneracy", "all"):
        for graph_id, graph in graphs:
            report = verify_degeneracy(graph, graph_id=graph_id)
            reports.append(report)
            all_ok &= report.passed
    if args.suite in ("sweep-zero", "all"):
        for graph_id, graph in graphs:
            n = graph.n_spins
            t_grid = [n * k / 20.0 for k in range(21)]
            reached = zero_temperature_scan(graph, t_grid, b_field=args.b_field)
            ok = reached == t_grid[-1]
            scans.append({"graph_id": graph_id, "max_clean_t": reached,
                          "grid_top": t_grid[-1], "passed": ok})
            all_ok &= ok

    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        extra = ""
        if report.max_rdm_deviation is not None:
            extra = ", rdm dev %.3e" % report.max_rdm_deviation
        print(
            "[%s] %s %s: E0=%s (expected %s), degeneracy %d (expected %s)%s"
            % (status, report.check, report.graph_id,
               _FMT % report.ground_energy, _FMT % report.expected_ground_energy,
               report.ground_degeneracy, report.expected_degeneracy, extra)
        )
        if not report.preconditions_ok:
            print("       precondition failure: ferromagnetic=%s connected=%s"
                  % (report.ferromagnetic, report.connected))
    for scan in scans:
        status = "PASS" if scan["passed"] else "FAIL"
        print("[%s] sweep-zero %s: clean up to T=%s of %s"
              % (status, scan["graph_id"],
                 scan["max_clean_t"], scan["grid_top"]))

    if args.json_output:
        payload = {
            "suite": args.suite,
            "reports": [report.to_dict() for report in reports],
            "scans": scans,
            "passed": bool(all_ok),
        }
        with open(args.json_output, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")

    print("verify: %s" % ("all checks passed" if all_ok else "FAILURES detected"))
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ferroent",
        description="Exact diagonalization and pair entanglement of spin graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_graph = sub.add_parser("graph", help="build a graph and export it as JSON")
    _add_graph_arguments(p_graph)
    p_graph.add_argument("--output", "-o", help="JSON file (default stdout)")
    p_graph.set_defaults(func=_cmd_graph)

    p_spectrum = sub.add_parser("spectrum", help="all eigenvalues, sector by sector")
    _add_graph_arguments(p_spectrum)
    p_spectrum.add_argument("--b-field", type=float, default=0.0)
    p_spectrum.add_argument("--dump-sector", type=int, metavar="N_UP",
                            help="emit the dense sector matrix as CSV instead")
    p_spectrum.add_argument("--output", "-o", help="CSV file (default stdout)")
    p_spectrum.set_defaults(func=_cmd_spectrum)

    p_rdm = sub.add_parser("rdm", help="two-spin thermal reduced density matrix")
    _add_graph_arguments(p_rdm)
    p_rdm.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))
    p_rdm.add_argument("--temperature", "-T", type=float, default=0.0)
    p_rdm.add_argument("--b-field", type=float, default=0.0)
    p_rdm.add_argument("--output", "-o", help="CSV file (default stdout)")
    p_rdm.set_defaults(func=_cmd_rdm)

    p_analytic = sub.add_parser(
        "analytic", help="closed-form symmetric-state entries and concurrences"
    )
    p_analytic.add_argument("--n", type=int, required=True, help="total spin count")
    p_analytic.add_argument("--zone", action="store_true",
                            help="emit the cancellation zone instead of the table")
    p_analytic.add_argument("--output", "-o", help="CSV file (default stdout)")
    p_analytic.set_defaults(func=_cmd_analytic)

    p_figures = sub.add_parser("figures", help="figure data files")
    p_figures.add_argument("which", type=int, choices=(1, 2),
                           help="1: per-state curves; 2: zone mixture vs N")
    p_figures.add_argument("--n", type=int, default=100,
                           help="spin count for figure 1 (default 100)")
    p_figures.add_argument("--n-min", type=int, default=2)
    p_figures.add_argument("--n-max", type=int, default=400)
    p_figures.add_argument("--output", "-o", help="CSV file (default stdout)")
    p_figures.set_defaults(func=_cmd_figures)

    p_sweep = sub.add_parser("sweep", help="temperature/field/coupling grid sweep")
    p_sweep.add_argument("--config", required=True, help="sweep config JSON")
    p_sweep.add_argument("--output", "-o", help="JSON-lines results file")
    p_sweep.add_argument("--summary", help="CSV summary file")
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="parallel worker processes (default 1)")
    p_sweep.add_argument("--threshold", type=float, default=RAW_CONCURRENCE_THRESHOLD,
                         help="raw concurrence threshold (default 1e-12)")
    p_sweep.add_argument("--assert-zero", action="store_true",
                         help="exit 1 if any grid point exceeds the threshold")
    p_sweep.add_argument("--resume", action="store_true",
                         help="append to an existing output file, skipping done records")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", choices=("universal", "degeneracy", "sweep-zero", "all"),
                          default="all")
    p_verify.add_argument("--graph", dest="graph_files", action="append", metavar="FILE",
                          help="verify this graph JSON instead of the built-in set "
                               "(repeatable)")
    p_verify.add_argument("--b-field", type=float, default=0.0,
                          help="field for the sweep-zero suite (default 0)")
    p_verify.add_argument("--json", dest="json_output", metavar="FILE",
                          help="also write a machine-readable report")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as err:
        if isinstance(err.code, str):
            print(err.code, file=sys.stderr)
            return 2
        raise
    except (ValueError, RuntimeError, OSError) as err:
        print(f"ferroent: {err}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
