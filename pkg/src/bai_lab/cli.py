"""``bai-lab`` command line: complexity, simulate, sweep, bounds, verify.

Exit codes: 0 success, 1 invalid input or usage, 2 internal or I/O error,
3 when ``verify`` ran but at least one check failed.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .complexity import complexity_report, family_complexities
from .core import BanditInstance, ContractError
from .instances import family_from_spec
from .report import emit_results
from .simulator import estimate_error, sweep_family
from .strategies import KINDS, StrategyConfig
from .theory import eval_lower_bounds, eval_upper_bounds
from .theory.checks import SUITES, run_suites

log = logging.getLogger("bai_lab")

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL, EXIT_CHECK_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class ExperimentConfig:
    family: dict
    strategies: list
    T_grid: list
    R: int
    master_seed: int = 0
    level: float = 0.95
    out: str = "results"
    workers: int = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.R < 1:
            raise ContractError("R must be at least 1")
        if not self.T_grid or any(b <= a for a, b in zip(self.T_grid, self.T_grid[1:])):
            raise ContractError("T_grid must be non-empty and strictly increasing")
        if not self.strategies:
            raise ContractError("at least one strategy is required")

    @classmethod
    def from_dict(cls, data):
        known = {"family", "strategies", "T_grid", "R", "seed", "level", "out", "workers"}
        missing = {"family", "strategies", "T_grid", "R"} - set(data)
        if missing:
            raise ContractError(f"config is missing {sorted(missing)}")
        return cls(
            family=dict(data["family"]),
            strategies=[dict(s) for s in data["strategies"]],
            T_grid=[int(T) for T in data["T_grid"]],
            R=int(data["R"]),
            master_seed=int(data.get("seed", 0)),
            level=float(data.get("level", 0.95)),
            out=data.get("out", "results"),
            workers=data.get("workers"),
            extra={k: v for k, v in data.items() if k not in known},
        )

    def to_dict(self):
        return {"family": self.family, "strategies": self.strategies, "T_grid": self.T_grid,
                "R": self.R, "seed": self.master_seed, "level": self.level, "out": self.out,
                **self.extra}


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _print_json(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _write_json(obj, out):
    os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
    with open(out, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_complexity(args):
    if args.instance:
        report = complexity_report(BanditInstance.from_json(args.instance)).to_dict()
    else:
        spec = json.loads(args.family) if args.family else _load_json(args.config)["family"]
        H, h_star = family_complexities(family_from_spec(spec))
        report = {"family": spec, "H": H, "h_star": h_star}
    _print_json(report)
    return EXIT_OK


def cmd_simulate(args):
    cfg = _load_json(args.config) if args.config else {}
    instance = BanditInstance.from_json(args.instance or json.dumps(cfg.get("instance")))
    strategy = (StrategyConfig.from_dict(cfg["strategy"]) if "strategy" in cfg and not args.strategy
                else StrategyConfig(args.strategy or "successive_rejects", args.a))
    T = args.T or cfg.get("T")
    R = args.R or cfg.get("R", 1000)
    if T is None:
        raise ContractError("simulate needs --T")
    est = estimate_error(strategy, instance, int(T), int(R), args.seed, level=args.level,
                         workers=args.workers)
    _print_json({"instance": list(instance.means), "strategy": strategy.to_dict(), "T": int(T),
                 "seed": args.seed, "estimate": est.to_dict()})
    return EXIT_OK


def cmd_sweep(args):
    if not args.config:
        raise ContractError("sweep needs --config")
    data = _load_json(args.config)
    if args.seed is not None:
        data["seed"] = args.seed
    if args.out:
        data["out"] = args.out
    data["level"] = args.level if args.level_given else data.get("level", 0.95)
    exp = ExperimentConfig.from_dict(data)
    family = family_from_spec(exp.family)
    family_id = exp.family.get("id", family.label)
    workers = args.workers or exp.workers
    rows = []
    for s in exp.strategies:
        config = StrategyConfig.from_dict(s)
        rows.extend(sweep_family(config, family, exp.T_grid, exp.R, exp.master_seed,
                                 level=exp.level, workers=workers, family_id=family_id))
    metadata = {"command": "sweep", "config": exp.to_dict(), "version": __version__}
    paths = emit_results(rows, exp.out, family=family, metadata=metadata)
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_bounds(args):
    out = []
    lower_inputs = (args.a, args.HG, args.H1, args.Hi, args.hstar)
    if all(v is not None for v in lower_inputs):
        out += eval_lower_bounds(args.T, args.K, *lower_inputs)
    if args.T > args.K and (args.a is not None or args.H2 is not None):
        out += eval_upper_bounds(args.T, args.K, a=args.a, H2=args.H2)
    if not out:
        raise ContractError("not enough inputs for any bound")
    _print_json([b.to_dict() for b in out])
    return EXIT_OK


def cmd_verify(args):
    report = run_suites(args.suite, args.seed if args.seed is not None else 0)
    if args.out:
        _write_json(report, args.out)
    _print_json(report)
    failed = [c["name"] for c in report if c["status"] == "fail"]
    for name in failed:
        log.error("check failed: %s", name)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH")
    common.add_argument("--seed", type=int, default=None, metavar="U64")
    common.add_argument("--workers", type=int, default=None, metavar="N")
    common.add_argument("--out", metavar="DIR")
    common.add_argument("--level", type=float, default=None, metavar="FLOAT")

    parser = _Parser(prog="bai-lab", description="Fixed-budget best-arm identification lab.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("complexity", parents=[common], help="complexity of an instance or family")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--instance", help="JSON array of means")
    g.add_argument("--family", help='family spec, e.g. {"type": "alpha", "K": 16, "alpha": 1}')
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("simulate", parents=[common], help="estimate one error probability")
    p.add_argument("--instance", help="JSON array of means")
    p.add_argument("--strategy", choices=KINDS)
    p.add_argument("--a", type=float, default=None, help="UCB-E exploration parameter")
    p.add_argument("--T", type=int)
    p.add_argument("--R", type=int)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="family-wide error sweep to CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", parents=[common], help="evaluate bounds in log domain")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--a", type=float)
    p.add_argument("--H2", type=float)
    p.add_argument("--HG", type=float, help="complexity H of the problem (adaptive bound)")
    p.add_argument("--H1", type=float)
    p.add_argument("--Hi", type=float)
    p.add_argument("--hstar", type=float)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="run numerical verification suites")
    p.add_argument("--suite", action="append", choices=[*SUITES, "all"],
                   help="repeatable; default all")
    p.set_defaults(func=cmd_verify)
    return parser


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    args.level_given = args.level is not None
    if args.level is None:
        args.level = 0.95
    if getattr(args, "suite", None) is None and args.command == "verify":
        args.suite = ["all"]
    if args.command == "simulate" and args.seed is None:
        args.seed = 0
    try:
        return args.func(args)
    except (ContractError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"bai-lab: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"bai-lab: I/O error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"bai-lab: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
