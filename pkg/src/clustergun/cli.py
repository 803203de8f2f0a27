"""Command-line entry point ``clustergun``.

Every subcommand writes one document (CSV with a header row, or JSON) to
stdout or ``--out``.  Exit status: 0 success, 1 invalid input, 2 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import errormodel, estimator, protocol, qsim, wavepacket
from .params import ConfigError, PhysicalParams, load_config, to_dimensionless


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def fmt(v) -> str:
    """9 significant digits; scientific notation below 1e-3."""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    v = float(v)
    if v == 0:
        return "0"
    if not math.isfinite(v):
        return str(v)
    if abs(v) < 1e-3:
        return f"{v:.8e}"
    return f"{v:.9g}"


def _json_value(v):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(fmt(v))


def render(columns, rows, fmt_name: str) -> str:
    """CSV table or JSON list of flat records."""
    if fmt_name == "json":
        recs = [{c: _json_value(v) for c, v in zip(columns, r)} for r in rows]
        return json.dumps(recs, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(fmt(v) for v in r) + "\n")
    return buf.getvalue()


def render_record(record: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps({k: _json_value(v) for k, v in record.items()}) + "\n"
    if fmt_name == "text":
        return "\n".join(f"{k}={v}" for k, v in record.items()) + "\n"
    return render(list(record), [list(record.values())], "csv")


def _params(args) -> PhysicalParams:
    return load_config(args.config) if args.config else PhysicalParams()


def _basis_label(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


# --- subcommands -----------------------------------------------------------

def cmd_simulate(args):
    if args.mode == "cluster":
        sch = protocol.Schedule(args.n, init=args.init)
    elif args.mode == "ghz":
        sch = protocol.Schedule(args.n, (0.0,) * args.n, init=args.init)
    else:
        sch = protocol.Schedule.redundant(args.n, args.pi_cycle)
        if args.init != "plus":
            sch = protocol.Schedule(args.n, sch.rotations, init=args.init)
    outcome = args.outcome if args.outcome is not None else 0
    s = protocol.run_ideal(sch, outcome=outcome)
    rows = [
        (i, _basis_label(i, s.n_qubits), a.real, a.imag)
        for i, a in enumerate(s.amplitudes)
    ]
    return render(["index", "basis", "re", "im"], rows, args.format)


def cmd_stabilizers(args):
    target = protocol.target_cluster(args.n)
    rows = []
    for i, g in enumerate(protocol.cluster_stabilizers(args.n)):
        label = repr(g)[len("PauliString("):-1]
        rows.append((i, label, qsim.pauli_expectation(target, g)))
    return render(["index", "generator", "expectation"], rows, args.format)


def cmd_localize_check(args):
    rows = errormodel.localization_suite(args.n)
    fmin = min(f for _, _, f in rows)
    if args.format == "csv":
        return render(["kind", "cycle", "fidelity"], rows, "csv")
    rec = {"min_fidelity": f"{fmin:.6f}" if args.format == "text" else fmin}
    if args.format == "json":
        rec.update(n=args.n, checks=len(rows))
    return render_record(rec, args.format)


def _x_d(args):
    dim = to_dimensionless(_params(args))
    x = dim.x if args.x is None else args.x
    d = dim.d if getattr(args, "d", None) is None else args.d
    return x, d


def cmd_wavepacket(args):
    x, d = _x_d(args)
    k = np.linspace(-args.span, args.span, args.points)
    g = wavepacket.g_closed(k, x)
    f = wavepacket.f_closed(k, x)
    g2d = wavepacket.g2_dephased(k, x, d)
    f2d = wavepacket.f2_dephased(k, x, d)
    rows = zip(k, g.real, g.imag, f.real, f.imag, g2d, f2d)
    cols = ["kappa", "re_g", "im_g", "re_f", "im_f", "g2_dephase", "f2_dephase"]
    return render(cols, rows, args.format)


def cmd_filter_sweep(args):
    x, _ = _x_d(args)
    rows = []
    for delta in np.linspace(0.0, args.delta_max, args.points):
        r = wavepacket.filter_sweep(x, float(delta), args.mode)
        rows.append((delta, r.error_rate, r.heralded_loss))
    return render(["delta", "error_rate", "heralded_loss"], rows, args.format)


def cmd_dephase(args):
    x, d = _x_d(args)
    grid = wavepacket.default_grid()
    coarse = grid.coarsened()
    out = {}
    for name, grd in (("fine", grid), ("coarse", coarse)):
        spectrum = wavepacket.dephased_spectrum(x, d, grd)
        out[name] = (
            float(spectrum.g2_dephase.integral()),
            float(spectrum.f2_dephase.integral()),
            wavepacket.amplitude_g(x, grd).norm2(),
            wavepacket.amplitude_f(x, grd).norm2(),
        )
    for a, b in zip(out["fine"], out["coarse"]):
        if abs(a - b) > wavepacket.CONVERGENCE_RTOL * max(abs(a), 1e-12):
            raise wavepacket.NonConvergenceError(f"dephasing integrals not converged: {a} vs {b}")
    ig, jf, ng, nf = out["fine"]
    spectrum = wavepacket.dephased_spectrum(x, d, grid)
    rec = {
        "x": x,
        "d": d,
        "int_g2_dephase": ig,
        "int_g2": ng,
        "int_f2_dephase": jf,
        "int_f2": nf,
        "rel_diff_g": abs(ig - ng) / ng,
        "second_moment_g2_dephase": wavepacket.second_moment(spectrum.g2_dephase),
        "second_moment_g2": wavepacket.second_moment(
            wavepacket.SpectralAmplitude(grid, np.abs(wavepacket.g_closed(grid.kappa, x)) ** 2)
        ),
    }
    return render_record(rec, args.format)


def cmd_contour(args):
    xs, ys, vals = errormodel.contour_grid(
        (args.x_min, args.x_max), (args.y_min, args.y_max),
        args.nx, args.ny, corrected=args.corrected, log=not args.linear,
    )
    rows = [
        (xs[j], ys[i], vals[i, j])
        for i in range(len(ys)) for j in range(len(xs))
    ]
    return render(["x", "y", "total_error"], rows, args.format)


def cmd_frame_run(args):
    p = _params(args)
    dim = to_dimensionless(p)
    base = errormodel.dephasing_channel(dim.x, dim.y)
    channel = errormodel.PauliChannel(
        args.p_x,
        base.p_y if args.p_y is None else args.p_y,
        args.p_z,
    )
    p_b = wavepacket.p_bad_corrected(dim.x) if args.p_b is None else args.p_b
    run = errormodel.pauli_frame_run(args.n, channel, p_b, args.seed, shots=args.shots)
    rates = run.photon_rates()
    rows = [(j + 1, *rates[j]) for j in range(run.n_photons)]
    return render(["photon_index", "px", "py", "pz"], rows, args.format)


def cmd_estimate(args):
    p = _params(args)
    est = estimator.coincidence_rate(p, args.eta, args.n, duty=args.duty)
    return render_record(est.as_dict(), args.format)


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value parameter file")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="clustergun", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, default_format="csv", formats=("csv", "json"), **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.add_argument("--format", choices=formats, default=default_format)
        sp.set_defaults(func=func)
        return sp

    sp = add("simulate", cmd_simulate, help="ideal state-vector run")
    sp.add_argument("--n", type=int, default=2, help="number of photons")
    sp.add_argument("--mode", choices=("cluster", "ghz", "redundant"), default="cluster")
    sp.add_argument("--pi-cycle", type=int, default=1)
    sp.add_argument("--init", choices=("plus", "measure-first-photon"), default="plus")
    sp.add_argument("--outcome", type=int, choices=(0, 1))

    sp = add("stabilizers", cmd_stabilizers, help="cluster stabilizer generators")
    sp.add_argument("--n", type=int, default=3, help="number of qubits incl. spin")

    sp = add("localize-check", cmd_localize_check, default_format="text",
             formats=("text", "csv", "json"), help="brute-force error localization")
    sp.add_argument("--n", type=int, default=6, help="number of photons")

    sp = add("wavepacket", cmd_wavepacket, help="mode functions on a detuning grid")
    sp.add_argument("--x", type=float)
    sp.add_argument("--d", type=float)
    sp.add_argument("--span", type=float, default=10.0)
    sp.add_argument("--points", type=int, default=2001)

    sp = add("filter-sweep", cmd_filter_sweep, help="spectral filter trade-off")
    sp.add_argument("--x", type=float)
    sp.add_argument("--delta-max", type=float, default=5.0)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--mode", choices=("reject_center", "accept_center"), default="reject_center")

    sp = add("dephase", cmd_dephase, help="exciton-dephasing norm check")
    sp.add_argument("--x", type=float)
    sp.add_argument("--d", type=float)

    sp = add("contour", cmd_contour, help="total error over (x, y)")
    sp.add_argument("--nx", type=int, default=60)
    sp.add_argument("--ny", type=int, default=60)
    sp.add_argument("--x-min", type=float, default=0.01)
    sp.add_argument("--x-max", type=float, default=1.0)
    sp.add_argument("--y-min", type=float, default=1e-5)
    sp.add_argument("--y-max", type=float, default=1e-2)
    sp.add_argument("--linear", action="store_true", help="linear instead of log spacing")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--corrected", dest="corrected", action="store_true", default=True)
    grp.add_argument("--uncorrected", dest="corrected", action="store_false")

    sp = add("frame-run", cmd_frame_run, help="Pauli-frame Monte Carlo")
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--shots", type=int, default=1000)
    sp.add_argument("--p-x", type=float, default=0.0)
    sp.add_argument("--p-y", type=float)
    sp.add_argument("--p-z", type=float, default=0.0)
    sp.add_argument("--p-b", type=float)

    sp = add("estimate", cmd_estimate, default_format="json", help="coincidence rate")
    sp.add_argument("--eta", type=float, default=0.18)
    sp.add_argument("--n", type=int, default=12)
    sp.add_argument("--duty", type=float, default=1.0)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except wavepacket.NonConvergenceError as exc:
        print(f"clustergun: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, IndexError, OSError) as exc:
        print(f"clustergun: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
