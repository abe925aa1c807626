#!/usr/bin/env python3

import argparse
import logging
import os.path as os_path
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from cyclecr import DEFAULT_CONFIG_NAME
from cyclecr.cc_about import __title__, __version__
from cyclecr.cc_exceptions import CycleError, InvalidConfigError, InvalidCycleDocumentError, PreconditionError
from cyclecr.cc_io import Cc_IO, CycleDocument
from cyclecr.cc_numeric import format_number
from cyclecr.cc_print import color_print, format_table
from cyclecr.cc_settings.cc_settings import Cc_Settings
from cyclecr.cc_settings.cc_settings_default import available_output_formats
from cyclecr.cc_util import EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_PARSE_ERROR, EXIT_VERIFY_FAILED, CcProcedureResult

RESOLVE_CHOICES = ("orthogonal", "tangent")


def _add_common_arguments(parser: argparse.ArgumentParser, is_suppress: bool) -> None:
    # subcommands repeat the global flags with suppressed defaults, so that
    #  "cyclecr --json product ..." and "cyclecr product ... --json" both work
    def default(value: Any) -> Any:
        return argparse.SUPPRESS if is_suppress else value

    parser.add_argument(
        "--eps",
        metavar="<eps>",
        dest="eps",
        type=float,
        default=default(None),
        help="Set both the absolute and the relative tolerance for this invocation. The default is 1e-9.",
    )
    parser.add_argument(
        "--json",
        dest="is_json",
        action="store_true",
        default=default(False),
        help="Print machine-readable json instead of plain text.",
    )
    parser.add_argument(
        "--config",
        metavar="<config.json>",
        dest="config",
        default=default(None),
        help=(
            "Use a custom json file of settings, e.g. tolerances, the default seed or the"
            f' render viewport. When not given, "{DEFAULT_CONFIG_NAME}" in the working directory'
            " is used if it exists."
        ),
    )
    parser.add_argument(
        "--quiet",
        dest="is_quiet",
        action="store_true",
        default=default(False),
        help="Print nothing except for final results.",
    )
    parser.add_argument(
        "--verbose",
        dest="is_verbose",
        action="store_true",
        default=default(False),
        help="Print detailed logging messages.",
    )


def _cr_value_json(value: Any) -> Dict[str, Any]:
    obj: Dict[str, Any] = {"tag": value.tag.value}
    if value.is_finite:
        obj["value"] = float(value.value)
        if isinstance(value.value, Fraction):
            obj["exact"] = str(value.value)
    return obj


def _complex_json(z: complex) -> Dict[str, float]:
    return {"re": z.real, "im": z.imag}


class CcUI:
    def __init__(self) -> None:
        self.args_parser: argparse.ArgumentParser = self.create_args_parser()
        self.options: argparse.Namespace = argparse.Namespace()

    def create_args_parser(self) -> argparse.ArgumentParser:
        args_parser = argparse.ArgumentParser(
            prog=__title__,
            formatter_class=argparse.RawDescriptionHelpFormatter,
            description=(
                "Cycles (circles, lines, points and imaginary circles) in tetracyclic coordinates:\n"
                "cycle products, the cycles cross ratio, harmonic figures and the Moebius-invariant\n"
                "distance, with SVG rendering and a seeded verification suite."
            ),
        )
        args_parser.add_argument(
            "--version",
            action="store_true",
            default=False,
            help="Show version and exit.",
        )
        args_parser.add_argument(
            "--list",
            dest="is_list",
            action="store_true",
            default=False,
            help="List built-in cycles that can be passed as @name.",
        )
        _add_common_arguments(args_parser, is_suppress=False)

        common = argparse.ArgumentParser(add_help=False)
        _add_common_arguments(common, is_suppress=True)
        cycles_help = (
            'A cycle as inline "k,l,n,m", a built-in "@name" or a json file holding one or'
            " more cycles."
        )

        subparsers = args_parser.add_subparsers(dest="command", metavar="<command>")
        parser_product = subparsers.add_parser(
            "product", parents=[common], help="Print the cycle product of two cycles and how they meet."
        )
        parser_product.add_argument("cycles", metavar="<cycle>", nargs="+", help=cycles_help)

        parser_crossratio = subparsers.add_parser(
            "crossratio", parents=[common], help="Print the cycles cross ratio [C1, C2; C3, C4]."
        )
        parser_crossratio.add_argument("cycles", metavar="<cycle>", nargs="+", help=cycles_help)
        parser_crossratio.add_argument(
            "--resolve",
            dest="resolve",
            choices=RESOLVE_CHOICES,
            default=None,
            help=(
                "Resolve an indeterminate [C, Z; Z, C], Z a zero-radius cycle on C, as the limit"
                ' along circles shrinking to Z ("orthogonal") or along cycles touching C at Z'
                ' ("tangent").'
            ),
        )

        parser_distance = subparsers.add_parser(
            "distance", parents=[common], help="Construct the Moebius-invariant distance of two cycles."
        )
        parser_distance.add_argument("cycles", metavar="<cycle>", nargs="+", help=cycles_help)
        parser_distance.add_argument(
            "--render", metavar="<out.svg>", dest="ofile_svg", default=None, help="Draw the construction."
        )

        parser_figure = subparsers.add_parser("figure", help="Build a figure.")
        figure_subparsers = parser_figure.add_subparsers(dest="figure", metavar="<figure>")
        parser_harmonic = figure_subparsers.add_parser(
            "harmonic",
            parents=[common],
            help="Reflect C1 in the mirror C and check [C1, C2; Z1, Z2] = 1.",
        )
        parser_harmonic.add_argument("cycles", metavar="<cycle>", nargs="+", help="The mirror C, then C1.")
        parser_harmonic.add_argument(
            "--seed", metavar="<seed>", dest="seed", type=int, default=None, help="Seed for choosing Co."
        )
        parser_harmonic.add_argument(
            "--render", metavar="<out.svg>", dest="ofile_svg", default=None, help="Draw the figure."
        )

        parser_render = subparsers.add_parser("render", parents=[common], help="Draw the cycles of a document.")
        parser_render.add_argument("cycles", metavar="<cycle>", nargs="+", help=cycles_help)
        parser_render.add_argument(
            "--render",
            "-o",
            metavar="<out.svg>",
            dest="ofile_svg",
            default=None,
            help="Write the SVG to a file instead of the stdout.",
        )
        parser_render.add_argument(
            "--viewport",
            metavar=("<xmin>", "<xmax>", "<ymin>", "<ymax>"),
            dest="viewport",
            type=float,
            nargs=4,
            default=None,
            help="Visible region of the plane, the default is -4 4 -4 4.",
        )

        parser_verify = subparsers.add_parser(
            "verify", parents=[common], help="Run the seeded invariant suites and print a summary table."
        )
        parser_verify.add_argument("--seed", metavar="<seed>", dest="seed", type=int, default=None)
        parser_verify.add_argument(
            "--trials", metavar="<N>", dest="trials", type=int, default=None, help="Trials per suite."
        )
        parser_verify.add_argument(
            "--output-file",
            "-o",
            metavar="<filename>",
            dest="ofile_table",
            default=None,
            help="Also save the summary table, as csv or json depending on the extension.",
        )

        args_parser.epilog = """Examples:
1. cyclecr product @unit 0,1,0,0
    Print "0 (orthogonal)": the unit circle and the line x = 0.
2. cyclecr product @unit 1,2,0,3
    Print "2 (tangent)".
3. cyclecr crossratio 1,0,0,0 1,1,0,1 1,2,0,4 1,3,0,9
    Cross ratio of the zero-radius cycles at 0, 1, 2 and 3.
4. cyclecr crossratio @unit 1,1,0,1 1,1,0,1 @unit --resolve tangent
    Resolve the indeterminate [C, Z; Z, C] for the point 1 on the unit circle.
5. cyclecr distance @i @2i --render distance.svg
    Print the distance log 2 and draw the construction.
6. cyclecr figure harmonic @unit @unit-at-3 --seed 7 --render harmonic.svg
7. cyclecr render figure.json -o figure.svg --viewport -3 3 -2 4
8. cyclecr verify --seed 0 --trials 200 -o verify.csv
9. cyclecr product -- -1,0,0,1 @unit
    Use -- before a cycle starting with a minus sign.
10. cyclecr --config cyclecr.json verify
    Use the settings defined in cyclecr.json.
"""
        return args_parser

    def parse_args(self, argv: List[str]) -> CcProcedureResult:
        # argparse exits with status 2 on its own on malformed command lines
        options = self.args_parser.parse_args(argv[1:])

        if options.is_quiet and options.is_verbose:
            return EXIT_PARSE_ERROR, "logging cannot be quiet and verbose at the same time"
        if options.is_quiet:
            logging.basicConfig(format="%(message)s", level=logging.CRITICAL)
        elif options.is_verbose:
            logging.basicConfig(format="%(message)s", level=logging.DEBUG)
        else:
            logging.basicConfig(format="%(message)s", level=logging.INFO)

        Cc_Settings.reset()
        user_config = options.config
        if user_config is not None:
            if not os_path.isfile(user_config):
                return EXIT_PARSE_ERROR, f"no such file as\n\n{user_config}"
            if not user_config.endswith(".json"):
                return EXIT_PARSE_ERROR, f'"{user_config}" does not seem like a json file.'
        elif os_path.isfile(DEFAULT_CONFIG_NAME):
            user_config = DEFAULT_CONFIG_NAME
        if user_config is not None:
            logging.debug(f"[Main] Using configuration file {user_config}")
            try:
                Cc_Settings.load(user_config)
            except (InvalidConfigError, InvalidCycleDocumentError) as e:
                return EXIT_PARSE_ERROR, str(e)
        else:
            logging.debug("[Main] No configuration file found")

        if options.eps is not None:
            if not options.eps > 0:
                return EXIT_PARSE_ERROR, f"--eps should be positive, got {options.eps}"
            Cc_Settings.setValue("Numeric/eps-abs", options.eps)
            Cc_Settings.setValue("Numeric/eps-rel", options.eps)

        if options.command == "figure" and options.figure is None:
            return EXIT_PARSE_ERROR, "figure needs a kind, e.g. cyclecr figure harmonic <C> <C1>"
        if getattr(options, "trials", None) is not None and options.trials < 0:
            return EXIT_PARSE_ERROR, f"--trials should be non-negative, got {options.trials}"

        ofile_table = getattr(options, "ofile_table", None)
        if ofile_table is not None:
            ofile_ext = os_path.splitext(ofile_table)[-1].lstrip(".")
            if ofile_ext not in available_output_formats:
                return (
                    EXIT_PARSE_ERROR,
                    (
                        f"The file extension {ofile_ext} is not supported. Use one of"
                        " the following:\n1. csv\n2. json"
                    ),
                )

        self.options = options
        return EXIT_OK, None

    def run_tmpl(func: Callable):  # type:ignore
        """Map input errors to exit code 2 and domain errors to exit code 3."""

        def wrapper(self, *args, **kwargs) -> CcProcedureResult:
            for attr in ("ofile_svg", "ofile_table"):
                path = getattr(self.options, attr, None)
                if path is not None:
                    status, err_msg = Cc_IO.is_writable(path)
                    if status != EXIT_OK:
                        return status, err_msg
            try:
                return func(self, *args, **kwargs)
            except (InvalidCycleDocumentError, InvalidConfigError) as e:
                return EXIT_PARSE_ERROR, str(e)
            except CycleError as e:
                return EXIT_DOMAIN_ERROR, str(e)

        return wrapper

    def load_cycles(self, specs: Sequence[str], count: Optional[int] = None) -> List[CycleDocument]:
        io = Cc_IO()
        docs = [doc for spec in specs for doc in io.load_cycles(spec)]
        if count is not None and len(docs) != count:
            raise InvalidCycleDocumentError(f"{self.options.command} expects {count} cycles, got {len(docs)}.")
        return docs

    def print_json(self, obj: Any) -> None:
        Cc_IO.write_json(obj)

    def cycles_json(self, labelled_cycles: Sequence[Tuple[str, Any]]) -> List[Dict[str, Any]]:
        return [CycleDocument.from_cycle(c, label).serialize() for label, c in labelled_cycles]

    def render(
        self, labelled_cycles: Sequence[Tuple[str, Any]], viewport: Optional[Sequence[float]] = None
    ) -> str:
        from cyclecr.cc_render import RenderConfig, render_cycles

        config = RenderConfig.from_settings(self.options.ofile_svg, viewport)
        svg = render_cycles(labelled_cycles, config)
        if self.options.ofile_svg is not None and not self.options.is_quiet:
            ofile = os_path.abspath(self.options.ofile_svg)
            color_print("OKGREEN", ofile, prefix="Figure was saved to ", postfix=".")
        return svg

    @run_tmpl
    def run_product(self) -> CcProcedureResult:
        from cyclecr.cc_cross_ratio import capacitance
        from cyclecr.cc_cycles import is_orthogonal, is_tangent, product

        C, C1 = (doc.to_cycle() for doc in self.load_cycles(self.options.cycles, 2))
        value = product(C, C1)
        if is_orthogonal(C, C1):
            classification = "orthogonal"
        else:
            cap = capacitance(C, C1)
            if not cap.is_finite:
                classification = "isotropic"
            elif is_tangent(C, C1):
                classification = "tangent"
            elif cap.value < 0:  # type:ignore
                classification = "imaginary"
            elif cap.value > 1:  # type:ignore
                classification = "disjoint"
            else:
                classification = "intersecting"

        if self.options.is_json:
            self.print_json({"product": value, "classification": classification})
        else:
            print(f"{format_number(value)} ({classification})")
        return EXIT_OK, None

    @run_tmpl
    def run_crossratio(self) -> CcProcedureResult:
        from cyclecr.cc_cross_ratio import cross_ratio

        cycles = [doc.to_cycle() for doc in self.load_cycles(self.options.cycles, 4)]
        value = cross_ratio(*cycles)
        if self.options.resolve is None:
            if self.options.is_json:
                self.print_json(_cr_value_json(value))
            else:
                print(value)
            return EXIT_OK, None

        resolved = self.resolve_limit(cycles, value)
        if self.options.is_json:
            self.print_json({"resolve": self.options.resolve, **_cr_value_json(resolved)})
        else:
            print(resolved)
        return EXIT_OK, None

    def resolve_limit(self, cycles: Sequence[Any], value: Any) -> Any:
        from cyclecr.cc_cross_ratio import (
            CrossRatioTag,
            CrossRatioValue,
            resolve_orthogonal_limit,
            resolve_tangent_limit,
        )
        from cyclecr.cc_cycles import center, is_point
        from cyclecr.cc_numeric import proj_eq

        C1, C2, C3, C4 = cycles
        if not (proj_eq(C1, C4) and proj_eq(C2, C3)):
            raise PreconditionError("precondition: --resolve needs a quadruple of the form [C, Z; Z, C]")
        if value.tag is not CrossRatioTag.INDETERMINATE:
            raise PreconditionError(f"precondition: the cross ratio is {value}, not indeterminate")
        if is_point(C2):
            C, Z = C1, C2
        elif is_point(C1):
            C, Z = C2, C1
        else:
            raise PreconditionError("precondition: --resolve needs a zero-radius cycle Z lying on C")

        if self.options.resolve == "orthogonal":
            return resolve_orthogonal_limit(C, center(Z))
        return CrossRatioValue.finite(resolve_tangent_limit(Z, C))

    @run_tmpl
    def run_distance(self) -> CcProcedureResult:
        from cyclecr.cc_figures import moebius_distance

        C1, C2 = (doc.to_cycle() for doc in self.load_cycles(self.options.cycles, 2))
        report = moebius_distance(C1, C2)
        if self.options.is_json:
            self.print_json(
                {
                    "cycles": self.cycles_json(report.labelled_cycles()),
                    "cross_ratio": _complex_json(report.cross_ratio),
                    "log_value": _complex_json(report.log_value),
                    "distance": report.distance,
                    "abs_distance": report.abs_distance,
                    "is_real": report.is_real,
                }
            )
        else:
            for label, c in report.labelled_cycles()[3:]:
                print(f"{label}: {c}")
            print(f"cross ratio: {format_number(report.cross_ratio)}")
            if report.is_real:
                print(f"distance: {format_number(report.distance)}")
                print(f"|distance|: {format_number(report.abs_distance)}")
            else:
                print(f"distance: {format_number(report.log_value)} (not real)")
        if self.options.ofile_svg is not None:
            self.render(report.labelled_cycles())
        return EXIT_OK, None

    @run_tmpl
    def run_figure(self) -> CcProcedureResult:
        import numpy as np

        from cyclecr.cc_figures import harmonic_figure

        C, C1 = (doc.to_cycle() for doc in self.load_cycles(self.options.cycles, 2))
        seed = self.options.seed if self.options.seed is not None else int(Cc_Settings.value("Random/seed"))
        report = harmonic_figure(C, C1, np.random.default_rng(seed))
        if self.options.is_json:
            self.print_json(
                {
                    "cycles": self.cycles_json(report.labelled_cycles()),
                    "t": report.t,
                    "attempts": report.attempts,
                    "cross_ratio": _complex_json(report.cross_ratio),
                    "degenerate": report.degenerate,
                }
            )
        else:
            for label, c in report.labelled_cycles():
                print(f"{label}: {c}")
            print(f"cross ratio [C1, C2; Z1, Z2]: {format_number(report.cross_ratio)}")
            if report.degenerate is not None:
                print(f"degenerate: {report.degenerate}")
        if self.options.ofile_svg is not None:
            self.render(report.labelled_cycles())
        return EXIT_OK, None

    @run_tmpl
    def run_render(self) -> CcProcedureResult:
        docs = self.load_cycles(self.options.cycles)
        labelled = [(doc.label or f"C{i}", doc.to_cycle_like()) for i, doc in enumerate(docs, 1)]
        svg = self.render(labelled, self.options.viewport)
        if self.options.ofile_svg is None:
            sys.stdout.write(svg)
        return EXIT_OK, None

    @run_tmpl
    def run_verify(self) -> CcProcedureResult:
        from cyclecr.cc_verify import RESULT_FIELDS, Cc_Verifier

        seed = self.options.seed if self.options.seed is not None else int(Cc_Settings.value("Random/seed"))
        trials = self.options.trials
        if trials is None:
            trials = int(Cc_Settings.value("Verify/trials"))
        verifier = Cc_Verifier(seed=seed, trials=trials)
        results = verifier.run()
        rows = [result.as_row() for result in results]

        if self.options.is_json:
            self.print_json({"seed": seed, "trials": trials, "results": rows})
        else:
            print(
                format_table(
                    ("invariant", "result", "max residual", "trials", "note"),
                    [
                        (r.name, "pass" if r.passed else "FAIL", f"{r.max_residual:.3g}", str(r.trials), r.note)
                        for r in results
                    ],
                )
            )
        if self.options.ofile_table is not None:
            oformat = os_path.splitext(self.options.ofile_table)[-1].lstrip(".")
            Cc_IO.write_table(rows, self.options.ofile_table, oformat, RESULT_FIELDS)

        failed = [r.name for r in results if not r.passed]
        if failed:
            return EXIT_VERIFY_FAILED, f"{len(failed)} of {len(results)} invariants failed: {', '.join(failed)}"
        if not self.options.is_quiet:
            summary = f"All {len(results)} invariants passed"
            color_print("OKGREEN", summary, prefix=f"seed {seed}, {trials} trials: ")
        return EXIT_OK, None

    def run(self) -> CcProcedureResult:
        if self.options.version:
            return self.show_version()
        elif self.options.is_list:
            return self.list_builtins()
        elif self.options.command is None:
            self.args_parser.print_help()
            return EXIT_OK, None
        return getattr(self, f"run_{self.options.command}")()

    def list_builtins(self) -> CcProcedureResult:
        for name, description in Cc_IO.builtin_descriptions():
            print(f"@{name}: {description}")
        return EXIT_OK, None

    def show_version(self) -> CcProcedureResult:
        print(__version__)
        return EXIT_OK, None


def main() -> None:
    ui = CcUI()
    status, err_msg = ui.parse_args(sys.argv)
    if status != EXIT_OK:
        logging.critical(err_msg)
        sys.exit(status)
    status, err_msg = ui.run()
    if err_msg is not None:
        logging.critical(err_msg)
    sys.exit(status)
