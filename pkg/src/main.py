"""
Main module for the LCK prover command line.
"""
import argparse
import os
import sys
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from loguru import logger

# Add parent directory to path to allow importing from other modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.corpus.hilbert import run_corpus
from src.engine.prover import Prover, ProverOptions
from src.models.errors import LCKError
from src.models.factory import StructureFactory
from src.models.proof import Verdict
from src.models.structure import ObservationStructure
from src.semantics.enumeration import OracleBudget
from src.semantics.model import CorrelationModel, relation_differences, validate_model
from src.semantics.validity import find_sequent_countermodel
from src.syntax.parser import parse_input
from src.utils.config_loader import ConfigLoader
from src.utils.logger import setup_logger
from src.utils.rendering import countermodel_dict, render_corpus, render_model_check, render_validity

COMMANDS = ("prove", "validity", "corpus", "check-model")
DEFAULT_CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'config')

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


@dataclass
class RunConfig:
    """
    One command-line invocation.

    Attributes:
        structure_path (str): Observation structure file
        command (str): prove, validity, corpus or check-model
        input (Optional[str]): Formula or sequent text (model file path for check-model)
        input_file (Optional[str]): File holding the input instead of ``input``
        output_format (str): text or json
        max_nodes (Optional[int]): Node cap overriding the configuration
        max_millis (Optional[int]): Time cap overriding the configuration
        witness (bool): Print a countermodel when validity fails
    """
    structure_path: str
    command: str
    input: Optional[str] = None
    input_file: Optional[str] = None
    output_format: str = "text"
    max_nodes: Optional[int] = None
    max_millis: Optional[int] = None
    witness: bool = False


class ProverApp:
    """
    Main application class for the LCK prover.

    Attributes:
        config_loader (ConfigLoader): Configuration loader
        config (Dict): Prover configuration (``prover.yaml``)
        structure (ObservationStructure): Structure of the current run
    """

    def __init__(self, config_dir: Optional[str] = None):
        self.config_loader = ConfigLoader(config_dir or DEFAULT_CONFIG_DIR)
        self.config: Dict = {}
        self.structure: Optional[ObservationStructure] = None

    def initialize(self) -> bool:
        """
        Load the prover configuration and set up logging.
        A missing ``prover.yaml`` falls back to built-in defaults.

        Returns:
            True if initialization was successful, False otherwise
        """
        try:
            self.config = self.config_loader.load_config("prover")
        except FileNotFoundError:
            self.config = {}
        except ValueError as e:
            logger.error(f"Error loading prover configuration: {e}")
            return False

        if self.config and not self.config_loader.validate_prover_config(self.config):
            logger.error("Invalid prover configuration")
            return False

        try:
            setup_logger(self.config)
        except (TypeError, ValueError) as e:
            logger.error(f"Invalid logging configuration: {e}")
            return False
        return True

    def options(self, run_config: RunConfig) -> ProverOptions:
        options = ProverOptions.from_config(self.config)
        if run_config.max_nodes is not None:
            options.max_nodes = run_config.max_nodes
        if run_config.max_millis is not None:
            options.max_millis = run_config.max_millis
        return options

    def _input_text(self, run_config: RunConfig) -> str:
        if run_config.input_file:
            with open(run_config.input_file, 'r', encoding='utf-8') as file:
                return file.read().strip()
        if run_config.input is None:
            raise ValueError(f"The {run_config.command} command needs an input")
        return run_config.input

    def run(self, run_config: RunConfig) -> Tuple[int, str]:
        """
        Run one command.

        Returns:
            (exit status, rendered output)

        Raises:
            LCKError, FileNotFoundError, ValueError: On bad input files or text
        """
        factory = StructureFactory(run_config.structure_path)
        if not self.config_loader.validate_structure_config(factory.config):
            raise ValueError(f"Invalid structure file: {run_config.structure_path}")
        self.structure = factory.create_structure()

        handler = {
            "prove": self.prove,
            "validity": self.validity,
            "corpus": self.corpus,
            "check-model": self.check_model
        }[run_config.command]
        return handler(run_config)

    def prove(self, run_config: RunConfig) -> Tuple[int, str]:
        sequent = parse_input(self._input_text(run_config), self.structure)
        result = Prover(self.structure, self.options(run_config)).prove(sequent)
        if run_config.output_format == "json":
            output = result.render_json()
        else:
            output = result.render_text()
        status = {
            Verdict.PROVABLE: EXIT_OK,
            Verdict.NOT_PROVABLE: EXIT_FALSE,
            Verdict.INCONCLUSIVE: EXIT_ERROR
        }[result.verdict]
        return status, output

    def validity(self, run_config: RunConfig) -> Tuple[int, str]:
        sequent = parse_input(self._input_text(run_config), self.structure)
        budget = OracleBudget.from_config(self.config)
        found = find_sequent_countermodel(sequent, self.structure, budget)
        countermodel = None
        if found is not None and run_config.witness:
            countermodel = countermodel_dict(*found)
        output = render_validity(sequent.text, found is None, countermodel, run_config.output_format)
        return (EXIT_OK if found is None else EXIT_FALSE), output

    def corpus(self, run_config: RunConfig) -> Tuple[int, str]:
        report = run_corpus(self.structure, self.options(run_config))
        return (EXIT_OK if report.passed else EXIT_FALSE), render_corpus(report, run_config.output_format)

    def check_model(self, run_config: RunConfig) -> Tuple[int, str]:
        path = run_config.input_file or run_config.input
        if not path:
            raise ValueError("The check-model command needs a model file")
        model = CorrelationModel.from_dict(self.config_loader.load_file(path), self.structure)
        problems = validate_model(model)
        differences = relation_differences(model)
        if problems:
            logger.error(f"Model {path} violates {len(problems)} condition(s)")
        return (EXIT_FALSE if problems else EXIT_OK), render_model_check(
            problems, differences, run_config.output_format
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Prover for the Logic of Correlated Knowledge')
    parser.add_argument('command', choices=COMMANDS,
                        help='Command to run')
    parser.add_argument('input', nargs='?', default=None,
                        help='Formula or sequent (model file for check-model)')
    parser.add_argument('--config', type=str, required=True,
                        help='Path to observation structure file')
    parser.add_argument('--format', type=str, choices=['text', 'json'], default='text',
                        help='Output format')
    parser.add_argument('--max-nodes', type=int, default=None,
                        help='Node cap for proof search')
    parser.add_argument('--max-millis', type=int, default=None,
                        help='Time cap for proof search in milliseconds')
    parser.add_argument('--witness', action='store_true',
                        help='Print a countermodel when validity fails')
    parser.add_argument('--file', type=str, default=None,
                        help='Read the input from a file')
    return parser


def main(argv=None) -> int:
    """Main entry point."""
    # inputs may follow the flags: prove --config c2.json "K{a} p -> p"
    args = build_parser().parse_intermixed_args(argv)
    run_config = RunConfig(
        structure_path=args.config,
        command=args.command,
        input=args.input,
        input_file=args.file,
        output_format=args.format,
        max_nodes=args.max_nodes,
        max_millis=args.max_millis,
        witness=args.witness
    )

    app = ProverApp()
    if not app.initialize():
        print("Error: failed to initialize prover configuration", file=sys.stderr)
        return EXIT_ERROR

    try:
        status, output = app.run(run_config)
    except (LCKError, FileNotFoundError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    print(output)
    return status


if __name__ == '__main__':
    sys.exit(main())
