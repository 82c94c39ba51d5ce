"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Design-based analysis of matched-pair cluster-randomized experiments - see
the README.md file for details.
"""
# I M P O R T S ###############################################################

import argparse
import logging
import sys

from mpcr import __version__
from mpcr.compliance import analyze_compliance
from mpcr.dataset import pair_differences
from mpcr.estimand import CiRegime, Estimand
from mpcr.estimators import resolve_scheme
from mpcr.exceptions import ConfigurationError, DesignError, EstimationError, OracleError, PairingError
from mpcr.files.file_exceptions import CsvFormatError
from mpcr.files.report import ReportFormat, build_report, write_report
from mpcr.files.table_file import read_dataset, read_profiles_csv
from mpcr.oracle.fuzz import random_potential_dataset
from mpcr.oracle.identities import Identity, evaluate_identity
from mpcr.oracle.simulation import (
    SUPERPOPULATION_PAIRS, SUPERPOPULATION_REPLICATES, CoverageMethod, DgpConfig, ProfileConfig, bias_variance_profile,
    coverage_simulation, superpopulation_check
)
from mpcr.pairing import assign_within_pairs, assignment_table, pair_clusters_greedy, pair_clusters_optimal
from mpcr.power import (
    PowerDesign, PowerMode, break_even_correlation, estimate_pi, mde_grid, minimum_detectable_effect,
    noncentrality, pair_correlation, power, relative_efficiency_estimate, sample_size
)
from mpcr.seeding import block_generator
from mpcr.summary import estimate_table
from mpcr.variance import DEFAULT_LEVEL, DEFAULT_REGIME, analyze
from mpcr.weights import WeightScheme, check_compatible

# C O N S T A N T S ###########################################################

logger = logging.getLogger(__name__)

VALIDATION_ERRORS = (ConfigurationError, CsvFormatError, DesignError, PairingError, OSError)

# Numeric failures raised by numpy or scipy count as computation errors
COMPUTATION_ERRORS = (EstimationError, OracleError, ArithmeticError, ValueError)

EXIT_VALIDATION = 1

EXIT_COMPUTATION = 2

IDENTITY_TOLERANCE = 1e-10

DEFAULT_SEED = 20260101

# C L A S S E S ###############################################################


class ArgumentParser(argparse.ArgumentParser):
    """
    An argument parser that raises a ConfigurationError instead of
    printing usage and exiting, so that unknown flags are reported like
    every other validation error.
    """
    def error(self, message):
        raise ConfigurationError(message, "argv")

# F U N C T I O N S ###########################################################


def add_dataset_arguments(parser, estimand_choices=None):
    parser.add_argument("--units", required=True, help="the units.csv file")
    parser.add_argument("--assign", required=True, help="the assignments.csv file")
    parser.add_argument("--clusters", help="the optional clusters.csv file of population sizes")
    parser.add_argument(
        "--estimand", default="sate", choices=estimand_choices or [estimand.value for estimand in Estimand],
        help="the target estimand (default=sate)"
    )


def add_interval_arguments(parser):
    parser.add_argument(
        "--weights", choices=["arith", "pop", "harmonic", "const"],
        help="the pair weights (default: the estimand's own)"
    )
    parser.add_argument(
        "--level", type=float, default=DEFAULT_LEVEL,
        help="the confidence level (default={})".format(DEFAULT_LEVEL)
    )
    parser.add_argument(
        "--regime", choices=[regime.value for regime in CiRegime], default=DEFAULT_REGIME.value,
        help="the confidence interval regime (default={})".format(DEFAULT_REGIME.value)
    )


def add_output_arguments(parser):
    parser.add_argument("--out", metavar="FILE", help="write the report to FILE instead of standard output")
    parser.add_argument(
        "--format", choices=[report_format.value for report_format in ReportFormat], default="json",
        help="the report format (default=json)"
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to standard error")


def add_power_arguments(parser, with_power=True, with_effect=True):
    parser.add_argument("--mode", choices=[mode.value for mode in PowerMode], default="uate",
                        help="the estimand whose effect is standardized (default=uate)")
    parser.add_argument("--alpha", type=float, default=0.05, help="the test size (default=0.05)")
    if with_power:
        parser.add_argument("--power", type=float, default=0.8, help="the target power (default=0.8)")
    if with_effect:
        parser.add_argument("--effect", type=float, required=True, help="the standardized effect size")
    parser.add_argument("--pi", type=float, help="the within-cluster to between-pair variance ratio")


def parse_arguments(argv=None):
    """
    Parses the command-line arguments passed to the toolkit.

    :param argv: the argument list, sys.argv[1:] when None
    """
    parser = ArgumentParser(
        description="Design-based analysis of matched-pair cluster-randomized experiments. See README.md "
        "for more information, and LICENSE for terms of use."
    )
    parser.add_argument("--version", action="version", version="%(prog)s {}".format(__version__))
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    estimate = commands.add_parser("estimate", help="estimate an average treatment effect")
    add_dataset_arguments(estimate, [estimand.value for estimand in Estimand] + ["all"])
    add_interval_arguments(estimate)
    estimate.add_argument("--table", action="store_true", help="include the per-pair difference table")
    add_output_arguments(estimate)
    estimate.set_defaults(handler=run_estimate)

    cace = commands.add_parser("cace", help="estimate the complier average causal effect")
    add_dataset_arguments(cace)
    add_interval_arguments(cace)
    add_output_arguments(cace)
    cace.set_defaults(handler=run_cace)

    power_parser = commands.add_parser("power", help="power of a matched-pair design")
    add_power_arguments(power_parser, with_power=False)
    power_parser.add_argument("--pairs", type=int, required=True, help="the number of pairs")
    power_parser.add_argument("--nbar", type=float, help="the mean number of units per cluster")
    add_output_arguments(power_parser)
    power_parser.set_defaults(handler=run_power)

    samplesize = commands.add_parser("samplesize", help="pairs needed to reach a target power")
    add_power_arguments(samplesize)
    samplesize.add_argument("--nbar", type=float, help="the mean number of units per cluster")
    add_output_arguments(samplesize)
    samplesize.set_defaults(handler=run_samplesize)

    mde = commands.add_parser("mde", help="minimum detectable effects over pair counts and cluster sizes")
    add_power_arguments(mde, with_effect=False)
    mde.add_argument("--pairs", type=int, nargs="+", required=True, help="one or more pair counts")
    mde.add_argument("--nbar", type=float, nargs="+", help="one or more mean cluster sizes")
    mde.add_argument("--var-p", type=float, default=1.0,
                     help="the variance of within-pair differences, for absolute effects (default=1)")
    add_output_arguments(mde)
    mde.set_defaults(handler=run_mde)

    efficiency = commands.add_parser("efficiency", help="estimated efficiency of matching")
    add_dataset_arguments(efficiency)
    add_output_arguments(efficiency)
    efficiency.set_defaults(handler=run_efficiency)

    correlation = commands.add_parser("correlation", help="within-pair correlation of cluster means")
    add_dataset_arguments(correlation)
    add_output_arguments(correlation)
    correlation.set_defaults(handler=run_correlation)

    breakeven = commands.add_parser("breakeven", help="the break-even within-pair correlation")
    breakeven.add_argument("--pairs", type=int, required=True, help="the number of pairs")
    breakeven.add_argument("--alpha", type=float, default=0.05, help="the test size (default=0.05)")
    breakeven.add_argument("--power", type=float, default=0.8, help="the target power (default=0.8)")
    add_output_arguments(breakeven)
    breakeven.set_defaults(handler=run_breakeven)

    pair = commands.add_parser("pair", help="pair clusters and randomize within pairs")
    pair.add_argument("--profiles", required=True, help="the profiles.csv file")
    pair.add_argument("--method", choices=["greedy", "optimal"], default="greedy",
                      help="the pairing algorithm (default=greedy)")
    pair.add_argument("--include-size", dest="include_size", action="store_true", default=True,
                      help="match on cluster size as well as covariates (default)")
    pair.add_argument("--exclude-size", dest="include_size", action="store_false",
                      help="match on covariates only")
    pair.add_argument("--seed", type=int, default=DEFAULT_SEED, help="the seed of the coin flips")
    add_output_arguments(pair)
    pair.set_defaults(handler=run_pair)

    simulate = commands.add_parser("simulate", help="coverage, bias and super-population studies")
    simulate.add_argument("--study", choices=["coverage", "profile", "superpopulation"], default="coverage",
                          help="which study to run (default=coverage)")
    simulate.add_argument("--method", choices=["sigma", "delta", "both"], default="both",
                          help="the estimator pair used for coverage (default=both)")
    simulate.add_argument("--config", help="a JSON file of data-generating settings")
    simulate.add_argument("--pairs", type=int, help="the number of pairs per replicate")
    simulate.add_argument("--replicates", type=int, help="the number of Monte Carlo replicates")
    simulate.add_argument("--seed", type=int, help="the master seed")
    simulate.add_argument("--level", type=float, help="the confidence level")
    simulate.add_argument("--regime", choices=[regime.value for regime in CiRegime], help="the interval regime")
    simulate.add_argument("--target", choices=["population", "sample"], help="the effect intervals should cover")
    simulate.add_argument("--fixture", help="a pair table replacing the bundled fixture")
    simulate.add_argument("--workers", type=int, help="the number of worker processes")
    add_output_arguments(simulate)
    simulate.set_defaults(handler=run_simulate)

    identities = commands.add_parser("check-identities", help="verify the exact bias identities")
    identities.add_argument("--fuzz", type=int, default=100, help="the number of random datasets (default=100)")
    identities.add_argument("--max-pairs", type=int, default=6, help="the largest number of pairs (default=6)")
    identities.add_argument("--seed", type=int, default=DEFAULT_SEED, help="the seed of the dataset stream")
    add_output_arguments(identities)
    identities.set_defaults(handler=run_check_identities)

    return parser.parse_args(argv)


def configure_logging(verbose):
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def config_echo(args):
    return {key: value for key, value in sorted(vars(args).items()) if key not in ("handler", "out", "verbose")}


def dataset_inputs(args):
    return {"units": args.units, "assignments": args.assign, "clusters": args.clusters}


def requested_scheme(args, dataset, estimand):
    if args.weights is None:
        return resolve_scheme(dataset, estimand)
    return check_compatible(estimand, WeightScheme.from_str(args.weights))


def run_estimate(args):
    dataset = read_dataset(args.units, args.assign, args.clusters)
    regime = CiRegime.from_str(args.regime)
    if args.estimand == "all":
        if args.weights is not None:
            raise ConfigurationError("--weights cannot be combined with --estimand all", "weights")
        rows = [row.to_dict() for row in estimate_table(dataset, args.level, regime)]
        return build_report(args.command, {"m": dataset.m, "n": dataset.n}, config_echo(args),
                            dataset_inputs(args), rows)

    estimand = Estimand.from_str(args.estimand)
    scheme = requested_scheme(args, dataset, estimand)
    report = analyze(dataset, estimand, scheme, args.level, regime)
    rows = None
    if args.table:
        rows = [difference._asdict() for difference in pair_differences(dataset, report.scheme)]
    return build_report(args.command, report.to_dict(), config_echo(args), dataset_inputs(args), rows)


def run_cace(args):
    dataset = read_dataset(args.units, args.assign, args.clusters)
    estimand = Estimand.from_str(args.estimand)
    scheme = requested_scheme(args, dataset, estimand)
    report = analyze_compliance(dataset, estimand, scheme, args.level, CiRegime.from_str(args.regime))
    return build_report(args.command, report.to_dict(), config_echo(args), dataset_inputs(args))


def run_power(args):
    mode = PowerMode.from_str(args.mode)
    design = PowerDesign(args.alpha, args.pairs, args.effect, args.pi, args.nbar)
    result = {
        "mode": mode.value,
        "power": power(design, mode),
        "noncentrality": noncentrality(design, mode),
        "dof": args.pairs - 1,
    }
    return build_report(args.command, result, config_echo(args))


def run_samplesize(args):
    mode = PowerMode.from_str(args.mode)
    pairs = sample_size(args.alpha, args.power, args.effect, mode, args.pi, args.nbar)
    achieved = power(PowerDesign(args.alpha, pairs, args.effect, args.pi, args.nbar), mode)
    result = {"mode": mode.value, "pairs": pairs, "clusters": 2 * pairs, "achieved_power": achieved}
    return build_report(args.command, result, config_echo(args))


def run_mde(args):
    mode = PowerMode.from_str(args.mode)
    if args.var_p < 0.0:
        raise ConfigurationError("--var-p must be nonnegative", "var_p")
    if mode is PowerMode.PATE:
        if not args.nbar:
            raise ConfigurationError("population effects need --nbar", "nbar")
        rows = [row.to_dict() for row in mde_grid(args.alpha, args.power, args.pairs, args.nbar, args.pi, args.var_p)]
    else:
        rows = []
        for m in args.pairs:
            effect = minimum_detectable_effect(args.alpha, args.power, m, mode)
            rows.append({"m": m, "effect": effect, "absolute_effect": effect * args.var_p ** 0.5})
    return build_report(args.command, {"mode": mode.value, "combinations": len(rows)}, config_echo(args),
                        rows=rows)


def run_efficiency(args):
    dataset = read_dataset(args.units, args.assign, args.clusters)
    report = relative_efficiency_estimate(dataset, Estimand.from_str(args.estimand))
    return build_report(args.command, report.to_dict(), config_echo(args), dataset_inputs(args))


def run_correlation(args):
    dataset = read_dataset(args.units, args.assign, args.clusters)
    result = {
        "correlation": pair_correlation(dataset),
        "weighted_correlation": pair_correlation(dataset, weighted=True),
    }
    if all(cluster.sample_size >= 2 for pair in dataset.pairs for cluster in pair.clusters):
        result["pi"] = estimate_pi(dataset)
    return build_report(args.command, result, config_echo(args), dataset_inputs(args))


def run_breakeven(args):
    result = {
        "pairs": args.pairs,
        "break_even_correlation": break_even_correlation(args.pairs, args.alpha, args.power),
    }
    return build_report(args.command, result, config_echo(args))


def run_pair(args):
    profiles = read_profiles_csv(args.profiles)
    if args.method == "optimal":
        pairing = pair_clusters_optimal(profiles, args.include_size)
    else:
        pairing = pair_clusters_greedy(profiles, args.include_size)
    assignments = assign_within_pairs(pairing, args.seed)
    rows = [row._asdict() for row in assignment_table(pairing, assignments)]
    result = {"method": args.method, "pairs": len(pairing.pairs), "total_distance": pairing.total_distance}
    return build_report(args.command, result, config_echo(args), {"profiles": args.profiles}, rows)


def simulation_settings(args):
    """
    Merges the JSON configuration file with the flags given on the command
    line; flags win. Settings given in neither place are left out.
    """
    values = DgpConfig.read_values(args.config) if args.config else {}
    for field in ("pairs", "replicates", "seed", "level", "regime", "target", "fixture", "workers"):
        if getattr(args, field) is not None:
            values[field] = getattr(args, field)
    return values


def run_simulate(args):
    settings = simulation_settings(args)
    cfg = DgpConfig.from_dict(settings)
    inputs = {"config": args.config, "fixture": cfg.fixture}
    echo = dict(config_echo(args), dgp=cfg.to_dict())

    if args.study == "profile":
        rows = [row.to_dict() for row in bias_variance_profile(ProfileConfig())]
        return build_report(args.command, {"study": args.study}, echo, inputs, rows)

    if args.study == "superpopulation":
        summary = superpopulation_check(
            pairs=settings.get("pairs", SUPERPOPULATION_PAIRS),
            replicates=settings.get("replicates", SUPERPOPULATION_REPLICATES),
            seed=cfg.seed,
            workers=cfg.workers,
        )
        return build_report(args.command, dict(summary.to_dict(), study=args.study), echo, inputs)

    methods = list(CoverageMethod) if args.method == "both" else [CoverageMethod.from_str(args.method)]
    rows = [coverage_simulation(cfg, method).to_dict() for method in methods]
    return build_report(args.command, {"study": args.study}, echo, inputs, rows)


def run_check_identities(args):
    if args.fuzz < 1 or args.max_pairs < 2:
        raise ConfigurationError("--fuzz must be positive and --max-pairs at least 2", "fuzz")
    generator = block_generator(args.seed, 0)
    worst = {identity: 0.0 for identity in Identity}
    for _ in range(args.fuzz):
        m = int(generator.integers(2, args.max_pairs + 1))
        dataset = random_potential_dataset(generator, m=m, receipts=True, subsample=True)
        for identity in Identity:
            worst[identity] = max(worst[identity], evaluate_identity(dataset, identity).residual)

    rows = [
        {"identity": identity.value, "max_residual": residual, "passed": residual < IDENTITY_TOLERANCE}
        for identity, residual in worst.items()
    ]
    result = {"datasets": args.fuzz, "tolerance": IDENTITY_TOLERANCE, "passed": all(row["passed"] for row in rows)}
    return build_report(args.command, result, config_echo(args), rows=rows)


def throw_error(error, status):
    """
    Prints a single-line diagnostic and exits.

    :param error: the exception to report
    :param status: the exit status
    """
    message = str(getattr(error, "value", error))
    if isinstance(error, CsvFormatError) and error.location():
        message = "{} ({})".format(message, error.location())
    print("error: {}".format(" ".join(message.split())), file=sys.stderr)
    sys.exit(status)


def main(args):
    """
    Runs one command with the specified arguments.

    :param args: the parsed command-line arguments
    """
    configure_logging(args.verbose)
    logger.info("running {}".format(args.command))
    try:
        report = args.handler(args)
    except VALIDATION_ERRORS as error:
        throw_error(error, EXIT_VALIDATION)
    except COMPUTATION_ERRORS as error:
        throw_error(error, EXIT_COMPUTATION)

    write_report(report, ReportFormat.from_str(args.format), args.out)
    if args.command == "check-identities" and not report["result"]["passed"]:
        throw_error(OracleError("identity residuals exceed {}".format(IDENTITY_TOLERANCE)), EXIT_COMPUTATION)
    return 0


def run(argv=None):
    """
    Parses argv and runs the command. Returns 0 on success; failures exit
    with status 1 for validation errors and 2 for computation errors.
    """
    try:
        args = parse_arguments(argv)
    except ConfigurationError as error:
        throw_error(error, EXIT_VALIDATION)
    return main(args)

# M A I N #####################################################################


if __name__ == '__main__':
    sys.exit(run())

# E N D   O F   F I L E #######################################################
