"""Command-line interface: ``hybrid-sizing {synth,simulate,optimize}``.

Exit status: 0 success, 1 usage or parse error, 2 invariant violation,
3 no feasible configuration.
"""
from __future__ import annotations

import argparse
from dataclasses import replace
import logging
from pathlib import Path
import sys

from . import kernels
from .config import (
    ConfigError,
    ConfigInvariantError,
    RunConfig,
    parse_run_config,
)
from .optimizer import ComponentSelection, Evaluator, optimize_weather, score
from .studies import architecture_feasibility
from .weather import synthesize_weather, write_weather_csv

log = logging.getLogger("hybrid_sizing")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _counts(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected n_pv,n_wt,n_bat")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("counts must be integers") from None


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="run configuration JSON file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="override the weather seed")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="parallel evaluations")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = _Parser(prog="hybrid-sizing", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    sub.add_parser("synth", parents=[common], help="write the synthesized weather year as CSV")

    sim = sub.add_parser("simulate", parents=[common], help="simulate one configuration")
    which = sim.add_mutually_exclusive_group(required=True)
    which.add_argument("--scenario", help="named scenario from the run configuration")
    which.add_argument("--config-override", type=_counts, metavar="N_PV,N_WT,N_BAT",
                       help="parallel PV strings, turbines and battery strings")

    opt = sub.add_parser("optimize", parents=[common], help="exhaustive configuration search")
    opt.add_argument("--prune", action="store_true", help="skip configurations known to be infeasible")
    opt.add_argument("--wind-means", type=_floats, metavar="V1,V2,...",
                     help="also write single-source/hybrid feasibility for these annual mean wind speeds")
    return parser


def _load(args) -> RunConfig:
    if not getattr(args, "config", None):
        raise UsageError("--config is required")
    cfg = parse_run_config(args.config)
    if getattr(args, "seed", None) is not None:
        if not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        cfg = replace(cfg, seed=args.seed)
    return cfg


def _outdir(args, cfg) -> Path:
    out = Path(getattr(args, "out", None) or cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _weather(cfg):
    return synthesize_weather(cfg.site, cfg.seed, cfg.temperature_model)


def cmd_synth(args) -> int:
    cfg = _load(args)
    path = _outdir(args, cfg) / "weather.csv"
    write_weather_csv(_weather(cfg), path)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _load(args)
    if args.scenario:
        config = cfg.scenario_configuration(args.scenario)
        label = args.scenario
    else:
        n_pv, n_wt, n_bat = args.config_override
        if min(n_pv, n_wt, n_bat) < 1:
            raise ConfigInvariantError("all counts must be >= 1", "--config-override")
        try:
            config = cfg.configuration(n_pv, n_wt, n_bat)
        except ValueError as exc:
            raise ConfigInvariantError(str(exc), "--config-override") from None
        label = f"{n_pv}_{n_wt}_{n_bat}"
    selection = ComponentSelection(config.pv_spec, config.wt_spec, config.bat_spec)
    evaluator = Evaluator(_weather(cfg), cfg.load, selection, cfg.costs, cfg.weights,
                          cfg.bounds.lpsp_target, cfg.shear)
    result = evaluator.simulate(config)
    ev = score(result, cfg.costs, cfg.weights, cfg.bounds.lpsp_target)
    path = _outdir(args, cfg) / f"simulation_{label}.csv"
    result.to_csv(path)
    r, e = ev.reliability, ev.econ
    print(f"configuration  {label}: {config.pv_kw:.3f} kW PV ({config.pv_spec.name}), "
          f"{config.n_wt} x {config.wt_spec.name}, {config.bat_ah:g} Ah {config.bat_spec.name}")
    print(f"lpsp           {r.lpsp:.6f}")
    print(f"reliability    {r.reliability:.6f}")
    print(f"excess         {r.excess_fraction:.4f}")
    print(f"npc_usd        {e.npc:.2f}")
    print(f"luec_usd_kwh   {e.luec:.4f}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    cfg = _load(args)
    workers = getattr(args, "workers", None) or 1
    if workers < 1:
        raise UsageError("--workers must be >= 1")
    out = _outdir(args, cfg)
    report = optimize_weather(
        _weather(cfg), cfg.load, cfg.component_selection(), cfg.costs, cfg.weights, cfg.bounds,
        bus_voltage=cfg.bus_voltage, derate=cfg.derate, shear=cfg.shear, workers=workers,
        prune=args.prune,
    )
    path = out / "optimization.csv"
    report.write_csv(path)
    (out / "pareto.csv").write_text(
        "\n".join([report.to_csv().splitlines()[0]] + [r.csv_row() for r in report.pareto]) + "\n"
    )
    if args.wind_means:
        rows = architecture_feasibility(
            cfg.site, cfg.load, cfg.component_selection(), cfg.costs, cfg.weights, cfg.bounds,
            cfg.seed, args.wind_means, bus_voltage=cfg.bus_voltage, derate=cfg.derate,
            shear=cfg.shear, temperature_model=cfg.temperature_model,
        )
        with open(out / "regimes.csv", "w") as fh:
            fh.write("wind_mean_ms,pv_only,wind_only,hybrid\n")
            for row in rows:
                flags = ["true" if x else "false" for x in (row.pv_only, row.wind_only, row.hybrid)]
                fh.write(f"{row.wind_mean!r}," + ",".join(flags) + "\n")
    print(f"evaluated {len(report.all_records)} configurations ({report.n_pruned} pruned); wrote {path}")
    if report.best is None:
        print("no feasible configuration")
        return EXIT_INFEASIBLE
    b = report.best
    c = b.config
    print(f"best: n_pv_parallel={c.n_pv_parallel} ({c.pv_kw:.3f} kW), n_wt={c.n_wt}, "
          f"n_bat_parallel={c.n_bat_parallel} ({c.bat_ah:g} Ah)")
    print(f"      lpsp={b.reliability.lpsp:.6g} npc={b.econ.npc:.2f} luec={b.econ.luec:.4f} cf={b.cf:.6g}")
    return EXIT_OK


COMMANDS = {"synth": cmd_synth, "simulate": cmd_simulate, "optimize": cmd_optimize}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and on usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    log.debug("dispatch kernel backend: %s", kernels.BACKEND)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigInvariantError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
