"""
Parser for the concrete formula and sequent syntax.
Built on a lark LALR grammar; identifiers are validated against the active
ObservationStructure while the tree is transformed.
"""
from typing import List

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError
from loguru import logger

from ..models.errors import FormulaValidationError, LCKError, ParseError
from ..models.formula import (
    And, Atom, Formula, Implies, Know, LabelledFormula, Not, ObsAtom, Or, RelationalAtom, Sequent
)
from ..models.structure import JointObservation, ObservationStructure, format_group

GRAMMAR = r"""
start_formula: formula
start_sequent: side "|-" side

side: [member ("," member)*]
?member: NAME ":" formula            -> labelled
       | NAME "~" group NAME         -> relational

?formula: disjunction
        | disjunction "->" formula   -> implies

?disjunction: conjunction
            | disjunction "|" conjunction   -> disjoin

?conjunction: unary
            | conjunction "&" unary   -> conjoin

?unary: "~" unary                    -> negate
      | "K" group unary              -> know
      | atomic

?atomic: NAME                        -> atom
       | "obs" group "(" names ")" "^" RESULT   -> obs_atom
       | "(" formula ")"

group: "{" names "}"
names: [IDENT ("," IDENT)*]

NAME: /[a-z][A-Za-z0-9_]*/
IDENT: /[A-Za-z0-9_]+/
RESULT: /[A-Za-z0-9_+]+/

%import common.WS
%ignore WS
"""

_PARSER = Lark(
    GRAMMAR,
    parser="lalr",
    lexer="contextual",
    start=["start_formula", "start_sequent"],
    maybe_placeholders=True,
    propagate_positions=True
)


def _position(token) -> dict:
    return {"line": getattr(token, "line", None), "column": getattr(token, "column", None)}


class FormulaTransformer(Transformer):
    """Turns the lark tree into formula and sequent values, checking identifiers."""

    def __init__(self, structure: ObservationStructure):
        super().__init__()
        self.structure = structure

    def names(self, children) -> List[Token]:
        return [child for child in children if child is not None]

    def group(self, children):
        tokens = children[0]
        for token in tokens:
            if str(token) not in self.structure.full_group:
                raise FormulaValidationError(f"Unknown agent {str(token)!r}", **_position(token))
        return frozenset(str(token) for token in tokens)

    def atom(self, children) -> Formula:
        return Atom(str(children[0]))

    def obs_atom(self, children) -> Formula:
        group, tokens, result = children
        if not group:
            raise FormulaValidationError(
                "Observation atoms need a nonempty group", **_position(result)
            )
        agents = sorted(group)
        if len(tokens) != len(agents):
            raise FormulaValidationError(
                f"Group {format_group(group)} needs {len(agents)} observation(s), got {len(tokens)}",
                **_position(result)
            )
        for agent, token in zip(agents, tokens):
            if str(token) not in self.structure.observations[agent]:
                raise FormulaValidationError(
                    f"Unknown observation {str(token)!r} for agent {agent!r}", **_position(token)
                )
        if not self.structure.is_result(str(result)):
            raise FormulaValidationError(f"Unknown result {str(result)!r}", **_position(result))
        observation = JointObservation(tuple(zip(agents, (str(t) for t in tokens))))
        return ObsAtom(observation, str(result))

    def negate(self, children) -> Formula:
        return Not(children[0])

    def know(self, children) -> Formula:
        group, body = children
        return Know(group, body)

    def conjoin(self, children) -> Formula:
        return And(children[0], children[1])

    def disjoin(self, children) -> Formula:
        return Or(children[0], children[1])

    def implies(self, children) -> Formula:
        return Implies(children[0], children[1])

    def labelled(self, children) -> LabelledFormula:
        return LabelledFormula(str(children[0]), children[1])

    def relational(self, children) -> RelationalAtom:
        left, group, right = children
        return RelationalAtom(str(left), str(right), group)

    def side(self, children) -> list:
        return [child for child in children if child is not None]

    def start_formula(self, children) -> Formula:
        return children[0]

    def start_sequent(self, children) -> Sequent:
        antecedent, succedent = children
        for member in succedent:
            if isinstance(member, RelationalAtom):
                raise FormulaValidationError(
                    f"Relational atom {member.text} is not allowed in the succedent"
                )
        return Sequent.of(antecedent, succedent)


class FormulaParser:
    """
    Parser bound to one observation structure.

    Attributes:
        structure (ObservationStructure): Structure used to validate obs-atoms and groups
    """

    def __init__(self, structure: ObservationStructure):
        self.structure = structure
        self._transformer = FormulaTransformer(structure)

    def _run(self, text: str, start: str):
        try:
            tree = _PARSER.parse(text, start=start)
        except UnexpectedInput as e:
            line = e.line if getattr(e, "line", -1) not in (-1, None) else None
            column = e.column if getattr(e, "column", -1) not in (-1, None) else None
            logger.debug(f"Parse failure on {text!r}: {e.__class__.__name__}")
            raise ParseError(f"Syntax error in {text!r}", line=line, column=column) from None
        try:
            return self._transformer.transform(tree)
        except VisitError as e:
            if isinstance(e.orig_exc, LCKError):
                raise e.orig_exc from None
            raise

    def parse_formula(self, text: str) -> Formula:
        """
        Parse a formula.

        Raises:
            ParseError: On lexical or grammar errors (with line and column)
            FormulaValidationError: On unknown agents, observations or results
        """
        return self._run(text, "start_formula")

    def parse_sequent(self, text: str) -> Sequent:
        """Parse ``Gamma |- Delta``; either side may be empty."""
        return self._run(text, "start_sequent")


def parse_formula(text: str, structure: ObservationStructure) -> Formula:
    return FormulaParser(structure).parse_formula(text)


def parse_sequent(text: str, structure: ObservationStructure) -> Sequent:
    return FormulaParser(structure).parse_sequent(text)


def parse_input(text: str, structure: ObservationStructure, label: str = "s") -> Sequent:
    """
    Read command-line input: a sequent if it contains ``|-``, else a formula
    placed in the succedent under ``label``.
    """
    parser = FormulaParser(structure)
    if "|-" in text:
        return parser.parse_sequent(text)
    return Sequent.of((), [LabelledFormula(label, parser.parse_formula(text))])


def root_sequent(formula: Formula, label: str = "s") -> Sequent:
    """The sequent ``⇒ s: formula``."""
    return Sequent.of((), [LabelledFormula(label, formula)])
