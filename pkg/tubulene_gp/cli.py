"""This module defines the `tubulene-gp` console application.

Commands: `build`, `gp`, `wiener`, `orbits`, `auts` and `verify`. Results go to standard output without
styling; diagnostics go to the error stream. Parameter and configuration errors end the command with
exit status 1.
"""

from __future__ import annotations

import json
from dataclasses import replace
from typing import TYPE_CHECKING, Any, ClassVar

from cleo.application import Application
from cleo.commands.command import Command
from cleo.helpers import option

from tubulene_gp import __version__
from tubulene_gp.closed_form import ClosedFormResult, gp_summation, gp_table5
from tubulene_gp.config import TubuleneConfig
from tubulene_gp.gp_index import gp_by_definition, w_prime
from tubulene_gp.graph_core import DistanceTable, wiener_index
from tubulene_gp.serialization import csv_header, graph_to_edge_list, graph_to_json, record_to_csv_row, record_to_json
from tubulene_gp.symmetry import (
    OracleRefusedError,
    automorphism_group,
    brute_force_automorphisms,
    group_structure,
    orbits_from_action,
    theorem_orbits,
)
from tubulene_gp.tubulene import ParameterError, TubuleneParams, build_armchair
from tubulene_gp.verification import sweep

if TYPE_CHECKING:
    from tubulene_gp.symmetry import Automorphism

_SHAPE_OPTIONS = [
    option("n", None, "Number of hexagon columns (even).", flag=False),
    option("p", None, "Number of hexagons per column.", flag=False),
]


def _cycle_notation(alpha: Automorphism) -> str:
    cycles = alpha.cycles()
    return "".join(f"({' '.join(map(str, c))})" for c in cycles) if cycles else "()"


class TubuleneCommand(Command):
    """Base class of the tubulene-gp commands: option parsing, configuration and error reporting."""

    def handle(self) -> int:
        try:
            return self.run_command()
        except (ValueError, OracleRefusedError) as e:
            self.line_error(f"<error>{e}</error>")
            return 1

    def run_command(self) -> int:
        raise NotImplementedError

    def int_option(self, name: str) -> int:
        raw = self.option(name)
        if raw is None:
            raise ParameterError(f"Missing required option --{name}")
        try:
            return int(raw)
        except ValueError as e:
            raise ParameterError(f"--{name} must be an integer, got {raw!r}") from e

    def choice_option(self, name: str, choices: tuple[str, ...]) -> str:
        value = self.option(name)
        if value not in choices:
            raise ParameterError(f"--{name} must be one of {', '.join(choices)}, got {value!r}")
        return value

    def params(self) -> TubuleneParams:
        return TubuleneParams(self.int_option("n"), self.int_option("p"))

    def config(self) -> TubuleneConfig:
        """Loads the configuration and applies the command-line overrides this command defines."""
        config = TubuleneConfig.load()
        overrides: dict[str, Any] = {}
        for name in ("max-brute-vertices", "max-oracle-vertices", "jobs"):
            if self.definition.has_option(name) and self.option(name) is not None:
                overrides[name.replace("-", "_")] = self.int_option(name)
        if self.definition.has_option("format") and self.option("format") is not None:
            overrides["report_format"] = self.option("format")
        if self.definition.has_option("skip-structure") and self.option("skip-structure"):
            overrides["check_structure"] = False
        return replace(config, **overrides) if overrides else config

    def write_json(self, doc: dict[str, Any]):
        self.io.write_line(json.dumps(doc, indent=2))


class BuildCommand(TubuleneCommand):
    name = "build"
    description = "Prints AT(n, p) as graph JSON or as an edge list."
    options: ClassVar = [
        *_SHAPE_OPTIONS,
        option("format", None, "Output format: json or edges.", flag=False, default="json"),
    ]

    def run_command(self) -> int:
        params = self.params()
        fmt = self.choice_option("format", ("json", "edges"))
        g = build_armchair(params)
        if fmt == "json":
            self.io.write_line(graph_to_json(g, params))
        else:
            self.io.write(graph_to_edge_list(g))
        return 0


class GpCommand(TubuleneCommand):
    name = "gp"
    description = "Computes the Graovac-Pisanski index of AT(n, p)."
    options: ClassVar = [
        *_SHAPE_OPTIONS,
        option("method", None, "oracle, summation, table5 or all.", flag=False, default="all"),
    ]

    def run_command(self) -> int:
        params = self.params()
        method = self.choice_option("method", ("oracle", "summation", "table5", "all"))
        doc: dict[str, Any] = {"n": params.n, "p": params.p}
        values = []

        if method in ("summation", "all"):
            doc["summation"] = gp_summation(params.n, params.p)
            values.append(doc["summation"])

        if method in ("table5", "all"):
            closed = gp_table5(params.n, params.p)
            doc["regime"] = closed.regime.regime.value
            if isinstance(closed, ClosedFormResult):
                doc["table5"] = closed.value
                values.append(closed.value)
            else:
                doc["table5"] = "not_covered"
                doc["not_covered_reason"] = closed.reason

        if method in ("oracle", "all"):
            if self.io.is_verbose():
                self.line_error(f"<comment>Running the BFS oracle on {params.vertex_count} vertices</comment>")
            g = build_armchair(params)
            exact = gp_by_definition(g, automorphism_group(g, params), DistanceTable(g))
            assert exact.denominator == 1, "GP of an armchair tubulene must be an integer"
            doc["oracle"] = int(exact)
            values.append(doc["oracle"])

        if method == "all":
            doc["agreement"] = len(set(values)) == 1
        self.write_json(doc)
        return 0


class WienerCommand(TubuleneCommand):
    name = "wiener"
    description = "Computes the Wiener index of AT(n, p) and the sum W' of its orbit Wiener indices."
    options: ClassVar = list(_SHAPE_OPTIONS)

    def run_command(self) -> int:
        params = self.params()
        g = build_armchair(params)
        table = DistanceTable(g)
        self.write_json(
            {
                "n": params.n,
                "p": params.p,
                "wiener": wiener_index(g, table),
                "w_prime": w_prime(g, theorem_orbits(params), table),
            }
        )
        return 0


class OrbitsCommand(TubuleneCommand):
    name = "orbits"
    description = "Lists the orbits of Aut(AT(n, p)), one line of sorted vertex ids per orbit."
    options: ClassVar = [
        *_SHAPE_OPTIONS,
        option("source", None, "theorem (predicted orbits) or action (from the group).", flag=False, default="theorem"),
    ]

    def run_command(self) -> int:
        params = self.params()
        source = self.choice_option("source", ("theorem", "action"))
        if source == "theorem":
            partition = theorem_orbits(params)
        else:
            g = build_armchair(params)
            partition = orbits_from_action(automorphism_group(g, params))

        if self.io.is_verbose():
            self.line_error(f"<comment>{len(partition)} orbits of sizes {partition.sizes()}</comment>")
        for orbit in partition:
            self.io.write_line(" ".join(str(v) for v in sorted(orbit)))
        return 0


class AutsCommand(TubuleneCommand):
    name = "auts"
    description = "Lists the automorphisms of AT(n, p) in cycle notation."
    options: ClassVar = [
        *_SHAPE_OPTIONS,
        option("method", None, "extension (rim maps) or brute (backtracking).", flag=False, default="extension"),
        option("check-structure", None, "Append the dihedral-times-Z2 structure report."),
        option("max-brute-vertices", None, "Size cap of the brute-force search.", flag=False),
    ]

    def run_command(self) -> int:
        params = self.params()
        method = self.choice_option("method", ("extension", "brute"))
        config = self.config()
        g = build_armchair(params)
        if method == "extension":
            auts = automorphism_group(g, params)
        else:
            auts = brute_force_automorphisms(g, config.max_brute_vertices)

        for alpha in auts:
            self.io.write_line(_cycle_notation(alpha))

        if self.option("check-structure"):
            report = group_structure(auts, params)
            self.io.write_line(f"order: {report.order}")
            self.io.write_line(f"dihedral_times_z2: {str(report.satisfies_dihedral_times_z2).lower()}")
            for label, witness in (("r", report.rotation), ("s", report.reflection), ("z", report.central)):
                if witness is not None:
                    self.io.write_line(f"{label}: {_cycle_notation(witness)}")
            self.io.write_line(f"dihedral_2n: {str(report.is_dihedral_of_order_2n).lower()}")
            for label, witness in (("rho", report.full_rotation), ("sigma", report.full_reflection)):
                if witness is not None:
                    self.io.write_line(f"{label}: {_cycle_notation(witness)}")
        return 0


class VerifyCommand(TubuleneCommand):
    name = "verify"
    description = "Checks every closed form against the BFS oracle over a grid of (n, p)."
    options: ClassVar = [
        option("n-min", None, "Smallest n (even, >= 4).", flag=False, default="4"),
        option("n-max", None, "Largest n (even).", flag=False, default="14"),
        option("p-min", None, "Smallest p.", flag=False, default="1"),
        option("p-max", None, "Largest p.", flag=False, default="6"),
        option("jobs", "j", "Number of worker processes.", flag=False),
        option("format", None, "Report format: csv or json.", flag=False),
        option("max-oracle-vertices", None, "Skip points whose graph exceeds this size.", flag=False),
        option("max-brute-vertices", None, "Skip the brute-force comparison above this size.", flag=False),
        option("skip-structure", None, "Skip the brute-force and group structure checks."),
    ]

    def run_command(self) -> int:
        config = self.config()
        bounds = [self.int_option(name) for name in ("n-min", "n-max", "p-min", "p-max")]

        if config.report_format == "csv":
            self.io.write_line(csv_header())
        failed = 0
        for record in sweep(*bounds, config):
            self.io.write_line(record_to_csv_row(record) if config.report_format == "csv" else record_to_json(record))
            self.io.output.flush()
            if not record.passed:
                failed += 1
            if self.io.is_verbose():
                tag = "info" if record.passed else "error"
                self.line_error(f"AT({record.n},{record.p}): <{tag}>{record.status}</{tag}>")
                for detail in record.details:
                    self.line_error(f"  <fg=yellow>{detail}</>")

        if failed:
            self.line_error(f"<error>{failed} point(s) failed verification</error>")
            return 1
        return 0


COMMANDS = (BuildCommand, GpCommand, WienerCommand, OrbitsCommand, AutsCommand, VerifyCommand)


def create_application() -> Application:
    application = Application("tubulene-gp", __version__)
    for command in COMMANDS:
        application.add(command())
    return application


def main() -> int:
    return create_application().run()
