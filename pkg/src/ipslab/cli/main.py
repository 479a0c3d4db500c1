"""Command-line front-end: ``ipslab <command> [<subcommand>] [options]``.

Exit codes: 0 on success, 1 on a usage or input error, 2 when a
verification ran and failed.
"""

import argparse
from collections.abc import Callable, Sequence
import json
import logging
import os
from pathlib import Path
import sys
from typing import Any

from pydantic import ValidationError

from ipslab import __version__
from ipslab.algebra.fields import Field, create_field
from ipslab.cli import commands, pipelines
from ipslab.cli.commands import CommandResult
from ipslab.config import CONFIG_PATH_ENV, default_prime, get_config
from ipslab.errors import IpslabError, UsageError
from ipslab.roabp import load_sum
from ipslab.schemas.experiment import ExperimentConfig
from ipslab.utils.report_csv import render_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2

Handler = Callable[[argparse.Namespace, Field], CommandResult]

# Arguments that are not part of a command's own parameters
_GLOBAL_KEYS = {
    "handler",
    "command_name",
    "field",
    "seed",
    "trials",
    "out",
    "format",
    "config",
    "verbose",
    "guard_vars",
    "command",
    "measure",
    "rank",
    "roabp",
    "refute",
    "instances",
    "pipeline",
}

_GUARD_KEYS = (
    "max-vars",
    "pd-max-side",
    "coeff-max-support",
    "roabp-max-vars",
    "roabp-max-width",
    "roabp-max-label-degree",
    "extension-max-degree",
    "inverse-validation-limit",
    "vecinv-max-factors",
    "rank-trials",
)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised instead of exiting with status 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# ============================================================================
# Parser
# ============================================================================


def _common() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--field", default="Q", help="Q, Fp:<p> or Fpk:p=<p>,k=<k>")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--out", default=None, help="Output file (default: stdout).")
    common.add_argument(
        "--guard-vars",
        type=int,
        default=None,
        help="Exhaustive cube limit for this run.",
    )
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--config", default=None, help="Path to a config.yaml.")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def _source() -> argparse.ArgumentParser:
    source = ArgumentParser(add_help=False)
    source.add_argument(
        "--input", "--poly", dest="input", default=None, help="Polynomial JSON file."
    )
    source.add_argument("--family", default=None)
    source.add_argument("--n", type=int, default=None)
    source.add_argument("--c", type=int, default=None)
    source.add_argument("--d", type=int, default=None)
    source.add_argument("--beta", default=None)
    source.add_argument("--rule", default=None, choices=["rank-bound", "sum-roabp"])
    source.add_argument("--instance-seed", type=int, default=None)
    source.add_argument(
        "--exclusive", action="store_true", help="Blockwise: proper subsets only."
    )
    return source


def _leaf(
    group: Any,
    command: str,
    handler: Handler,
    parents: list,
    help_text: str,
    aliases: Sequence[str] = (),
) -> argparse.ArgumentParser:
    name = command.rsplit(" ", 1)[-1]
    parser = group.add_parser(
        name, parents=parents, help=help_text, aliases=list(aliases)
    )
    parser.set_defaults(handler=handler, command_name=command)
    return parser


def _group(top: Any, name: str, help_text: str) -> Any:
    return top.add_parser(name, help=help_text).add_subparsers(dest=name, required=True)


def build_parser() -> ArgumentParser:
    common = _common()
    source = _source()
    with_source = [common, source]
    parser = ArgumentParser(prog="ipslab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ipslab {__version__}")
    top = parser.add_subparsers(dest="command", required=True)

    gen = _leaf(
        top, "gen", commands.cmd_gen, with_source, "Generate an axiom instance."
    )
    gen.add_argument(
        "--list-valid",
        action="store_true",
        help="List the valid sizes of --family instead.",
    )
    gen.add_argument("--max-n", type=int, default=256)
    _leaf(
        top, "inverse", commands.cmd_inverse, with_source, "Cube inverse of an axiom."
    )
    coeff = _leaf(
        top, "coeff", commands.cmd_coeff, with_source, "One coefficient of the inverse."
    )
    coeff.add_argument("--monomial", required=True, help="e.g. x1*y3")

    measure = _group(top, "measure", "Complexity measures.")
    kalorkoti = _leaf(
        measure,
        "measure kalorkoti",
        commands.cmd_measure_kalorkoti,
        with_source,
        "Trailing-monomial bounds per block and their sum.",
    )
    kalorkoti.add_argument(
        "--blocks", default=None, help='"x1,x2;y0,y1" or a JSON file of name lists'
    )
    kalorkoti.add_argument(
        "--order", default="X>Y", help="Prefix chain of the monomial order."
    )
    kalorkoti.add_argument("--of", choices=["axiom", "inverse"], default="inverse")
    evaldim = _leaf(
        measure,
        "measure evaldim",
        commands.cmd_measure_evaldim,
        with_source,
        "Evaluation dimension of f(X, Y) over a sample set.",
    )
    evaldim.add_argument("--x", required=True)
    evaldim.add_argument("--y", required=True)
    evaldim.add_argument("--sample-set", default="0,1")
    evaldim.add_argument("--samples", type=int, default=None)
    evaldim.add_argument("--of", choices=["axiom", "inverse"], default="axiom")
    degree = _leaf(
        measure,
        "measure degree",
        commands.cmd_measure_degree,
        [common],
        "Full-degree sampling experiment for random sub-sums.",
    )
    degree.add_argument("--n", type=int, required=True)
    degree.add_argument("--sample-size", type=int, required=True)
    balanced = _leaf(
        measure,
        "measure balanced",
        commands.cmd_measure_balanced,
        [common],
        "Hit rate of the unconditioned partition sampler.",
    )
    balanced.add_argument("--n", type=int, required=True)
    balanced.add_argument("--samples", type=int, default=10_000)

    rank = _group(top, "rank", "Partial derivative matrix rank.")
    pd = _leaf(rank, "rank pd", commands.cmd_rank_pd, with_source, "Rank of M_{Y,Z}.")
    pd.add_argument("--y", "--Y", dest="y", required=True)
    pd.add_argument("--z", "--Z", dest="z", required=True)
    pd.add_argument(
        "--t", default=None, help="Function-field variables, evaluated at random."
    )
    pd.add_argument("--prime", type=int, default=None)
    pd.add_argument(
        "--over", default=None, help="Fp:<p> for --t runs; same as --prime <p>."
    )
    pd.add_argument("--of", choices=["axiom", "inverse"], default="axiom")

    roabp = _group(top, "roabp", "ROABPs and sums of ROABPs.")
    mult = _leaf(
        roabp,
        "roabp multilinearize",
        commands.cmd_roabp_multilinearize,
        [common],
        "Multilinearize with verified Boolean witnesses.",
    )
    mult.add_argument("--input", required=True)
    mult.add_argument(
        "--write", default=None, help="Write the multilinearized sum here."
    )
    width = _leaf(
        roabp,
        "roabp width",
        commands.cmd_roabp_width,
        [common],
        "Cut-rank width lower bound of each member.",
    )
    width.add_argument("--input", required=True)
    roabp_weakness = _leaf(
        roabp,
        "roabp weakness",
        _run_roabp_weakness,
        [common],
        "Rank caps of a given sum of ROABPs on random balanced partitions.",
    )
    roabp_weakness.add_argument("--sum", dest="sum_path", required=True)
    roabp_weakness.add_argument("--q", type=int, default=4)
    roabp_weakness.add_argument("--r", type=int, default=4)
    roabp_weakness.add_argument("--samples", type=int, default=2000)
    construct = _leaf(
        roabp,
        "roabp construct",
        commands.cmd_roabp_construct,
        [common],
        "Explicit ROABP for e_{n,d} or the subset-sum inverse.",
    )
    construct.add_argument("--kind", choices=["esym", "subset-inverse"], required=True)
    construct.add_argument("--n", type=int, required=True)
    construct.add_argument("--d", type=int, default=1)
    construct.add_argument("--beta", default=None)
    construct.add_argument("--write", default=None)

    refute = _group(top, "refute", "Linear IPS certificates.")
    build = _leaf(
        refute,
        "refute build",
        commands.cmd_refute_build,
        [common],
        "Closed-form certificate for x1 + ... + xn - beta.",
    )
    build.add_argument("--n", type=int, required=True)
    build.add_argument("--beta", default=None)
    build.add_argument("--write", default=None)
    lift = _leaf(
        refute,
        "refute lift",
        commands.cmd_refute_lift,
        with_source,
        "Certificate for a sparse axiom by monomial substitution.",
    )
    lift.add_argument("--write", default=None)
    verify = _leaf(
        refute,
        "refute verify",
        commands.cmd_refute_verify,
        [common],
        "Check a certificate exactly or at random points.",
    )
    verify.add_argument("--cert", required=True)
    mode = verify.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument(
        "--randomized", dest="mode", action="store_const", const="randomized"
    )
    verify.add_argument("--prime", type=int, default=None)
    verify.set_defaults(mode="exact")
    functional = _leaf(
        refute,
        "refute functional-check",
        commands.cmd_refute_functional,
        [common],
        "Compare P(X, 1, 0) with 1/f on the cube.",
    )
    functional.add_argument("--cert", required=True)
    elem = _leaf(
        refute,
        "refute elem-sym",
        commands.cmd_refute_elem_sym,
        [common],
        "Inverse of e_{n,d} - beta in the elementary symmetric basis.",
    )
    elem.add_argument("--n", type=int, required=True)
    elem.add_argument("--d", type=int, required=True)
    elem.add_argument("--beta", default=None)

    instances = _group(top, "instances", "Instance families.")
    valid = _leaf(
        instances,
        "instances list-valid",
        commands.cmd_list_valid,
        [common],
        "Sizes that pass a family's integrality checks.",
    )
    valid.add_argument("--family", choices=["blockwise", "smconst"], required=True)
    valid.add_argument("--max-n", type=int, default=256)

    pipeline = _group(top, "pipeline", "End-to-end experiments.")
    blockwise = _leaf(
        pipeline,
        "pipeline blockwise",
        _run_blockwise,
        [common],
        "Blockwise family: containment, zero rule and Kalorkoti sum.",
        aliases=["theorem1"],
    )
    blockwise.add_argument("--n", type=int, required=True)
    blockwise.add_argument("--samples", type=int, default=64)
    constdeg = _leaf(
        pipeline,
        "pipeline constdeg",
        _run_constdeg,
        [common],
        "Set-multilinear family: per-block TM bounds.",
    )
    constdeg.add_argument("--n", type=int, required=True)
    constdeg.add_argument("--c", type=int, required=True)
    constdeg.add_argument("--instance-seed", type=int, default=None)
    hard_rank = _leaf(
        pipeline,
        "pipeline hard-rank",
        _run_hard_rank,
        [common],
        "Function-field PD rank of a hard inverse over balanced partitions.",
        aliases=["fstw"],
    )
    hard_rank.add_argument("--n", type=int, required=True)
    hard_rank.add_argument(
        "--family", choices=["quadratic", "scaled", "vecinv"], default="quadratic"
    )
    hard_rank.add_argument("--prime", type=int, default=None)
    hard_rank.add_argument("--samples", type=int, default=8)
    hard_rank.add_argument("--truncate-degree", type=int, default=None)
    weakness = _leaf(
        pipeline,
        "pipeline weakness",
        _run_weakness,
        [common],
        "Rank caps of a sum of ROABPs on random balanced partitions.",
    )
    weakness.add_argument(
        "--input", default=None, help="Sum of ROABPs JSON (else random)."
    )
    weakness.add_argument("--n", type=int, default=16)
    weakness.add_argument("--t", type=int, default=2)
    weakness.add_argument("--width", type=int, default=4)
    weakness.add_argument("--q", type=int, default=4)
    weakness.add_argument("--r", type=int, default=4)
    weakness.add_argument("--samples", type=int, default=2000)
    return parser


# ============================================================================
# Pipeline adapters
# ============================================================================


def _from_pipeline(output: pipelines.PipelineOutput) -> CommandResult:
    return CommandResult(output.report.model_dump(), output.rows)


def _run_blockwise(args: argparse.Namespace, fd: Field) -> CommandResult:
    return _from_pipeline(
        pipelines.run_blockwise(
            args.n, fd, seed=args.seed, samples=args.samples, max_vars=args.guard_vars
        )
    )


def _run_constdeg(args: argparse.Namespace, fd: Field) -> CommandResult:
    return _from_pipeline(
        pipelines.run_constdeg(args.n, args.c, fd, seed=args.instance_seed)
    )


def _run_hard_rank(args: argparse.Namespace, fd: Field) -> CommandResult:
    return _from_pipeline(
        pipelines.run_hard_rank(
            args.family,
            args.n,
            fd,
            trials=args.trials,
            prime=args.prime,
            seed=args.seed,
            samples=args.samples,
            truncate_degree=args.truncate_degree,
            max_vars=args.guard_vars,
        )
    )


def _run_weakness(args: argparse.Namespace, fd: Field) -> CommandResult:
    if args.field == "Q" and args.input is None:
        fd = create_field(f"Fp:{default_prime()}")
    roabps = load_sum(Path(args.input)) if args.input else None
    return _from_pipeline(
        pipelines.run_weakness(
            fd,
            n=args.n,
            t=args.t,
            width=args.width,
            q=args.q,
            r=args.r,
            trials=args.trials or 200,
            seed=args.seed,
            samples=args.samples,
            roabps=roabps,
        )
    )


def _run_roabp_weakness(args: argparse.Namespace, fd: Field) -> CommandResult:
    roabps = load_sum(Path(args.sum_path))
    return _from_pipeline(
        pipelines.run_weakness(
            roabps.field,
            q=args.q,
            r=args.r,
            trials=args.trials or 200,
            seed=args.seed,
            samples=args.samples,
            roabps=roabps,
        )
    )


# ============================================================================
# Output
# ============================================================================


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    config = get_config()
    params = {
        key: str(value) if isinstance(value, Path) else value
        for key, value in sorted(vars(args).items())
        if key not in _GLOBAL_KEYS
    }
    guards: dict[str, Any] = {key: config[key] for key in _GUARD_KEYS}
    if args.guard_vars is not None:
        guards["max-vars"] = args.guard_vars
    guards["default-prime"] = default_prime()
    return ExperimentConfig(
        command=args.command_name,
        version=__version__,
        field=args.field,
        seed=args.seed,
        trials=args.trials,
        params=params,
        guards=guards,
    )


def render(result: CommandResult, experiment: ExperimentConfig, fmt: str) -> str:
    """Serialize a result with its reproducibility record."""
    header = experiment.model_dump()
    if fmt == "csv":
        return render_csv(result.rows, header)
    body = {"config": header, "ok": result.ok, "result": result.payload}
    return json.dumps(body, indent=2, default=str) + "\n"


def _configure_logging(verbose: bool) -> None:
    level = "DEBUG" if verbose else str(get_config().get("log-level", "INFO")).upper()
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"ipslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.config:
        os.environ[CONFIG_PATH_ENV] = args.config
        get_config.cache_clear()
    try:
        _configure_logging(args.verbose)
        fd = create_field(args.field)
        result = args.handler(args, fd)
        text = render(result, _experiment_config(args), args.format)
    except ValidationError as exc:
        errors = exc.errors()
        location = ".".join(str(part) for part in errors[0]["loc"]) if errors else ""
        print(
            f"ipslab: malformed input at {location or '<root>'}: {exc}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    except (IpslabError, FileNotFoundError) as exc:
        print(f"ipslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.ok else EXIT_VERIFICATION
