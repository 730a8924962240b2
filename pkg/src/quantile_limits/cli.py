"""Command-line front end.

Subcommands: quantile, simulate, blocks, be-bound, phi-of-k, transform, gc.
Outputs are CSV and JSON only; plotting belongs to downstream tools.  Exit
codes: 0 success, 2 validation error (message names the offending flag),
1 internal error.  Identical flags and seeds produce byte-identical output.
"""

import argparse
import json
import sys
from pathlib import Path

from . import distributions as dist_mod
from . import simulate as sim
from .berry_esseen import BEParams, be_bound, bernoulli_moments, phi_of_k
from .empirical import EmpiricalSample, gc_distance
from .errors import QuantileLimitsError
from .transforms import BINARIZE, COLLAPSE_SHIFT, binarize, collapse_shift


class CliValidation(Exception):
    """Flag-level validation failure; message names the flag."""


def _add_dist_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family",
        choices=("coin", "bernoulli", "figure"),
        help="built-in distribution family",
    )
    p.add_argument("--q", type=float, help="success probability for --family bernoulli")
    p.add_argument("--dist-file", type=Path, help="JSON distribution spec file")


def _resolve_distribution(args) -> dist_mod.DiscreteDistribution:
    if args.dist_file is not None and args.family is not None:
        raise CliValidation("pass either --family or --dist-file, not both")
    if args.dist_file is not None:
        try:
            spec = json.loads(args.dist_file.read_text())
        except OSError as exc:
            raise CliValidation(f"--dist-file: cannot read {args.dist_file}: {exc}")
        except json.JSONDecodeError as exc:
            raise CliValidation(f"--dist-file: invalid JSON: {exc}")
        return dist_mod.from_spec(spec)
    if args.family is None:
        raise CliValidation("one of --family or --dist-file is required")
    if args.family == "bernoulli":
        if args.q is None:
            raise CliValidation("--family bernoulli requires --q")
        _check_open_unit("--q", args.q)
        return dist_mod.bernoulli(args.q)
    if args.q is not None:
        raise CliValidation("--q is only valid with --family bernoulli")
    return dist_mod.fair_coin() if args.family == "coin" else dist_mod.gapped_example()


def _check_open_unit(flag: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise CliValidation(f"{flag} must be strictly between 0 and 1, got {value!r}")


def _check_closed_unit(flag: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise CliValidation(f"{flag} must be in [0, 1], got {value!r}")


def _check_min(flag: str, value, minimum) -> None:
    if value < minimum:
        raise CliValidation(f"{flag} must be >= {minimum}, got {value!r}")


def _fmt(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# Subcommand bodies (validated args in, exit code out)


def _cmd_quantile(args) -> int:
    _check_closed_unit("--p", args.p)
    d = _resolve_distribution(args)
    pair = d.quantile_pair(args.p)
    print(f"p: {_fmt(args.p)}")
    print(f"left_quantile: {_fmt(pair.left)}")
    print(f"right_quantile: {_fmt(pair.right)}")
    print(f"coincide: {str(pair.coincide).lower()}")
    if 0.0 < args.p < 1.0:
        si = d.solution_interval(args.p)
        print(
            f"solution_interval: [{_fmt(si.lo)}, {_fmt(si.hi)}] "
            f"unique={str(si.unique).lower()}"
        )
    return 0


def _cmd_simulate(args) -> int:
    _check_open_unit("--p", args.p)
    _check_min("--n-max", args.n_max, 1)
    _check_min("--replications", args.replications, 1)
    _check_min("--master-seed", args.master_seed, 0)
    if args.record_stride is not None:
        _check_min("--record-stride", args.record_stride, 1)
    _check_min("--burn-in", args.burn_in, 0)
    if args.analysis == "sandwich_check":
        if args.epsilon is None:
            raise CliValidation("--analysis sandwich_check requires --epsilon")
        if args.epsilon <= 0:
            raise CliValidation(f"--epsilon must be positive, got {args.epsilon!r}")
    _check_min("--min-switches", args.min_switches, 0)
    d = _resolve_distribution(args)
    cfg = sim.SimConfig(
        distribution=d,
        p=args.p,
        n_max=args.n_max,
        master_seed=args.master_seed,
        record_stride=args.record_stride,
        replications=args.replications,
    )

    out_dir: Path = args.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    targets = [out_dir / f"traj_{rep}.csv" for rep in range(cfg.replications)]
    targets.append(out_dir / "report.json")
    if not args.force:
        clashes = [t.name for t in targets if t.exists()]
        if clashes:
            raise CliValidation(
                f"--output-dir: {', '.join(clashes)} already exist(s); use --force"
            )

    tmp_paths: list[tuple[Path, Path]] = []

    def writer(rep: int, traj: sim.Trajectory) -> None:
        final = out_dir / f"traj_{rep}.csv"
        tmp = out_dir / f"traj_{rep}.csv.tmp"
        sim.write_trajectory_csv(traj, tmp)
        tmp_paths.append((tmp, final))

    try:
        report = sim.run_replicated(
            cfg,
            args.analysis,
            burn_in=args.burn_in,
            epsilon=args.epsilon,
            min_switches=args.min_switches,
            on_trajectory=writer,
        )
        for tmp, final in tmp_paths:
            tmp.replace(final)
        (out_dir / "report.json").write_bytes(sim.report_to_json_bytes(report))
    except BaseException:
        for tmp, _ in tmp_paths:
            tmp.unlink(missing_ok=True)
        raise
    agg = report["aggregate"]
    print(
        f"wrote {cfg.replications} trajectory files and report.json to {out_dir} "
        f"({agg['pass_count']}/{agg['total']} replications pass)"
    )
    return 0


def _cmd_blocks(args) -> int:
    _check_open_unit("--q", args.q)
    if not 0.0 < args.alpha < 0.5:
        raise CliValidation(f"--alpha must be in (0, 1/2), got {args.alpha!r}")
    _check_min("--k", args.k, 1)
    _check_min("--reps", args.reps, 1)
    _check_min("--master-seed", args.master_seed, 0)

    params = bernoulli_moments(args.q)
    info = phi_of_k(params, args.k, args.alpha)
    freq_low, freq_high = sim.deviation_experiment(
        args.q, args.k, args.alpha, args.reps, args.master_seed
    )
    block_freq = sim.block_event_experiment(
        args.q, args.alpha, args.reps, args.master_seed
    )
    payload = {
        "config": {
            "q": args.q,
            "alpha": args.alpha,
            "k": args.k,
            "reps": args.reps,
            "master_seed": args.master_seed,
        },
        "n1": info.n1,
        "n2": info.n2,
        "phi": info.phi,
        "deviation": {
            "freq_low": freq_low,
            "freq_high": freq_high,
            "guaranteed_above": 0.5 - args.alpha,
        },
        "block_event": {
            "freq": block_freq,
            "guaranteed_above": (0.5 - args.alpha) ** 2,
        },
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _params_from_args(args) -> BEParams:
    by_q = args.q is not None
    by_moments = args.mu is not None or args.sigma is not None or args.rho is not None
    if by_q and by_moments:
        raise CliValidation("pass either --q or the --mu/--sigma/--rho triple")
    if by_q:
        _check_open_unit("--q", args.q)
        return bernoulli_moments(args.q)
    if args.mu is None or args.sigma is None or args.rho is None:
        raise CliValidation("need --q, or all of --mu, --sigma and --rho")
    if args.sigma <= 0:
        raise CliValidation(f"--sigma must be positive, got {args.sigma!r}")
    if args.rho <= 0:
        raise CliValidation(f"--rho must be positive, got {args.rho!r}")
    return BEParams(mu=args.mu, sigma=args.sigma, rho=args.rho)


def _cmd_be_bound(args) -> int:
    _check_min("--n", args.n, 1)
    params = _params_from_args(args)
    payload = {
        "mu": params.mu,
        "sigma": params.sigma,
        "rho": params.rho,
        "n": args.n,
        "bound": be_bound(params, args.n),
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _cmd_phi_of_k(args) -> int:
    _check_min("--k", args.k, 1)
    if not 0.0 < args.alpha < 0.5:
        raise CliValidation(f"--alpha must be in (0, 1/2), got {args.alpha!r}")
    params = _params_from_args(args)
    info = phi_of_k(params, args.k, args.alpha)
    payload = {
        "k": info.k,
        "alpha": info.alpha,
        "n1": info.n1,
        "n2": info.n2,
        "phi": info.phi,
    }
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _cmd_transform(args) -> int:
    _check_open_unit("--p", args.p)
    d = _resolve_distribution(args)
    kind = BINARIZE if args.kind == "binarize" else COLLAPSE_SHIFT
    out = binarize(d, args.p) if kind == BINARIZE else collapse_shift(d, args.p)
    pair_in = d.quantile_pair(args.p)
    pair_out = out.quantile_pair(args.p)
    if args.format == "csv":
        print("section,a,b")
        for v, q in d.as_pairs():
            print(f"atom_in,{_fmt(v)},{_fmt(q)}")
        for v, q in out.as_pairs():
            print(f"atom_out,{_fmt(v)},{_fmt(q)}")
        print(f"quantiles_in,{_fmt(pair_in.left)},{_fmt(pair_in.right)}")
        print(f"quantiles_out,{_fmt(pair_out.left)},{_fmt(pair_out.right)}")
    else:
        print(f"transform: {kind}  p: {_fmt(args.p)}")
        print("input atoms:")
        for v, q in d.as_pairs():
            print(f"  {_fmt(v)}  {_fmt(q)}")
        print(
            f"input quantiles: left={_fmt(pair_in.left)} right={_fmt(pair_in.right)}"
        )
        print("output atoms:")
        for v, q in out.as_pairs():
            print(f"  {_fmt(v)}  {_fmt(q)}")
        print(
            f"output quantiles: left={_fmt(pair_out.left)} right={_fmt(pair_out.right)}"
        )
    return 0


def _cmd_gc(args) -> int:
    _check_min("--n", args.n, 1)
    _check_min("--seed", args.seed, 0)
    d = _resolve_distribution(args)
    if args.checkpoints:
        try:
            checkpoints = sorted({int(tok) for tok in args.checkpoints.split(",")})
        except ValueError:
            raise CliValidation(
                f"--checkpoints must be comma-separated integers, got {args.checkpoints!r}"
            )
        if checkpoints and (checkpoints[0] < 1 or checkpoints[-1] > args.n):
            raise CliValidation("--checkpoints values must lie in [1, --n]")
    else:
        checkpoints = []
        decade = 10
        while decade < args.n:
            checkpoints.append(decade)
            decade *= 10
        checkpoints.append(args.n)

    draws = sim.sample_stream(d, args.seed, args.n)
    sample = EmpiricalSample.from_distribution(d)
    lines = ["n,gc_distance,witness"]
    done = 0
    for ck in checkpoints:
        sample.extend(draws[done:ck])
        done = ck
        g = gc_distance(sample, d)
        lines.append(f"{ck},{_fmt(g.value)},{_fmt(g.witness)}")
    text = "\n".join(lines) + "\n"
    if args.output is not None:
        args.output.write_text(text)
        print(f"wrote {len(checkpoints)} checkpoints to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qlim",
        description=(
            "Exact left/right quantiles of finite discrete distributions and "
            "seeded Monte Carlo experiments on their sample versions."
        ),
    )
    subs = top.add_subparsers(dest="command", required=True)

    p = subs.add_parser("quantile", help="left/right quantiles and solution interval")
    _add_dist_flags(p)
    p.add_argument("--p", type=float, required=True, help="probability level in [0, 1]")
    p.set_defaults(func=_cmd_quantile)

    p = subs.add_parser("simulate", help="replicated quantile trajectories")
    _add_dist_flags(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--replications", type=int, default=1)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--record-stride", type=int, default=None)
    p.add_argument(
        "--analysis",
        choices=sim.ANALYSES,
        default="convergence",
    )
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--min-switches", type=int, default=10)
    p.add_argument("--output-dir", type=Path, required=True)
    p.add_argument("--force", action="store_true", help="overwrite existing outputs")
    p.set_defaults(func=_cmd_simulate)

    p = subs.add_parser("blocks", help="deviation and paired block-event experiment")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.25)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--master-seed", type=int, default=0)
    p.set_defaults(func=_cmd_blocks)

    p = subs.add_parser("be-bound", help="normal-approximation error bound")
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_be_bound)

    p = subs.add_parser("phi-of-k", help="deviation block-length construction")
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.25)
    p.set_defaults(func=_cmd_phi_of_k)

    p = subs.add_parser("transform", help="binarize or collapse-shift a distribution")
    _add_dist_flags(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument(
        "--kind", choices=("binarize", "collapse_shift"), required=True
    )
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=_cmd_transform)

    p = subs.add_parser("gc", help="empirical-vs-true CDF sup distance table")
    _add_dist_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--checkpoints", type=str, default="")
    p.add_argument("--output", type=Path, default=None)
    p.set_defaults(func=_cmd_gc)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliValidation, QuantileLimitsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def console_entry() -> None:
    raise SystemExit(main())
