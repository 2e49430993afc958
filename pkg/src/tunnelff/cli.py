"""Command-line interface.

Subcommands: stationary, transport, drive-fields, verify, figure <1..8>.
Exit codes: 0 success, 2 invariant failure, 3 configuration error.
"""

import argparse
import sys
from pathlib import Path

from .config import ScenarioConfig, parse_config, validate_config
from .errors import ConfigError, InvariantError, TunnelFFError
from . import figures, scenario


def _add_common(p):
    p.add_argument("--config", type=Path, default=None,
                   help="path to a key = value configuration file")
    p.add_argument("--out", type=Path, default=None,
                   help="output directory (default: config 'out' or ./out)")
    p.add_argument("--threads", type=int, default=1,
                   help="parallel workers across wavenumbers")
    p.add_argument("--refine", action="store_true",
                   help="double resolutions for convergence studies")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tunnelff",
        description="Drive-field synthesis and transport for fast-forwarded "
                    "barrier control, with PDE verification.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in (
            ("stationary", "stationary scattering sweep over k and R"),
            ("transport", "time-dependent transport traces"),
            ("drive-fields", "driving potential and electric-field lattices"),
            ("verify", "PDE residual convergence and propagation fidelity")):
        p = sub.add_parser(name, help=descr)
        _add_common(p)
    pf = sub.add_parser("figure", help="reproduce the data for one report figure")
    pf.add_argument("number", type=int, choices=range(1, 9))
    pf.add_argument("--no-plot", action="store_true",
                    help="write only the delimited data, skip the rendering")
    _add_common(pf)
    return parser


def _load_config(args, default=None, apply_refine=True):
    if args.config is not None:
        cfg = parse_config(Path(args.config).read_text())
    elif default is not None:
        cfg = default
    else:
        cfg = validate_config(ScenarioConfig())
    if args.refine and apply_refine:
        cfg = cfg.refined()
    return cfg


def _out_dir(args, cfg, fallback):
    if args.out is not None:
        return args.out
    if cfg.out:
        return Path(cfg.out)
    return Path(fallback)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "figure":
            cfg = _load_config(args, default=figures.preset_config(args.number))
            out = _out_dir(args, cfg, f"out/figure{args.number}")
            figures.run_figure(args.number, out, cfg=cfg,
                               plot=not args.no_plot, threads=args.threads)
        elif args.command == "verify":
            # --refine here means: also check that fidelity improves
            cfg = _load_config(args, apply_refine=False)
            out = _out_dir(args, cfg, "out/verify")
            scenario.run_verify(cfg, out, threads=args.threads,
                                refine=args.refine)
        else:
            cfg = _load_config(args)
            out = _out_dir(args, cfg, f"out/{args.command.replace('-', '_')}")
            runner = {
                "stationary": scenario.run_stationary,
                "transport": scenario.run_transport,
                "drive-fields": scenario.run_drive_fields,
            }[args.command]
            runner(cfg, out, threads=args.threads)
        print(f"wrote {out}")
        return 0
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 2
    except TunnelFFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
