"""
Utility module for generating formulas for agreement runs and property tests.
"""
import argparse
import os
import random
import sys
from typing import Callable, Dict, Iterator, List, Optional, Sequence

# Add parent directory to path to allow importing from other modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from src.models.factory import StructureFactory
from src.models.formula import And, Atom, Formula, Implies, Know, Not, ObsAtom, Or
from src.models.structure import Group, ObservationStructure

UnaryOperator = Callable[[Formula], Formula]
BinaryOperator = Callable[[Formula, Formula], Formula]

BINARY_OPERATORS: Dict[str, BinaryOperator] = {"and": And, "or": Or, "implies": Implies}


def knowledge_operator(group: Group) -> UnaryOperator:
    return lambda body: Know(group, body)


def observation_leaves(structure: ObservationStructure) -> List[Formula]:
    """Every observation atom of the structure, in canonical order."""
    return [
        ObsAtom(observation, result)
        for group in structure.nonempty_groups()
        for observation in structure.joint_observations(group)
        for result in structure.results
    ]


def enumerate_formulas(
    leaves: Sequence[Formula],
    unary: Sequence[UnaryOperator],
    binary: Sequence[BinaryOperator],
    max_connectives: int
) -> Iterator[Formula]:
    """
    Every formula built from ``leaves`` with at most ``max_connectives`` operators.

    Args:
        leaves: Atomic formulas
        unary: Unary constructors (negation, knowledge operators)
        binary: Binary constructors
        max_connectives: Largest number of operators per formula

    Yields:
        Formulas ordered by operator count, then by construction order
    """
    levels: List[List[Formula]] = [list(leaves)]
    yield from levels[0]
    for size in range(1, max_connectives + 1):
        level: List[Formula] = []
        for op in unary:
            level.extend(op(body) for body in levels[size - 1])
        for op in binary:
            for left_size in range(size):
                right_size = size - 1 - left_size
                for left in levels[left_size]:
                    level.extend(op(left, right) for right in levels[right_size])
        levels.append(level)
        yield from level


def random_formula(
    rng: random.Random,
    leaves: Sequence[Formula],
    groups: Sequence[Group],
    depth: int
) -> Formula:
    """
    Draw a random formula of nesting depth at most ``depth``.

    Args:
        rng: Random source
        leaves: Atomic formulas
        groups: Groups available to knowledge operators
        depth: Largest nesting depth

    Returns:
        Formula
    """
    if depth <= 0 or rng.random() < 0.2:
        return rng.choice(list(leaves))
    kind = rng.choice(["not", "know", "and", "or", "implies"])
    if kind == "not":
        return Not(random_formula(rng, leaves, groups, depth - 1))
    if kind == "know":
        return Know(rng.choice(list(groups)), random_formula(rng, leaves, groups, depth - 1))
    return BINARY_OPERATORS[kind](
        random_formula(rng, leaves, groups, depth - 1),
        random_formula(rng, leaves, groups, depth - 1)
    )


def random_formulas(structure: ObservationStructure, count: int, depth: int,
                    seed: int = 0, atoms: Sequence[str] = ("p", "q")) -> List[Formula]:
    """``count`` random formulas over the atoms and the structure's observation atoms."""
    rng = random.Random(seed)
    leaves = [Atom(name) for name in atoms] + observation_leaves(structure)
    return [random_formula(rng, leaves, structure.groups(), depth) for _ in range(count)]


def generate_sample_formulas(config_path: str, output_path: Optional[str], count: int,
                             depth: int, seed: int) -> None:
    """
    Write random formulas over a structure, one per line.

    Args:
        config_path: Path to the structure file
        output_path: Output file; standard output when None
        count: Number of formulas
        depth: Largest nesting depth
        seed: Random seed
    """
    structure = StructureFactory(config_path).create_structure()
    lines = [str(formula) for formula in random_formulas(structure, count, depth, seed)]
    if output_path is None:
        print("\n".join(lines))
        return
    with open(output_path, 'w', encoding='utf-8') as file:
        file.write("\n".join(lines) + "\n")
    print(f"Generated {len(lines)} formulas")
    print(f"Formulas saved to {output_path}")


def main():
    """Main entry point for formula generator utility."""
    parser = argparse.ArgumentParser(description='LCK Formula Generator Utility')
    parser.add_argument('--config', type=str, default='config/structures/c2.json',
                        help='Path to observation structure file')
    parser.add_argument('--output', type=str, default=None,
                        help='Path to save generated formulas')
    parser.add_argument('--count', type=int, default=100,
                        help='Number of formulas to generate')
    parser.add_argument('--depth', type=int, default=4,
                        help='Largest nesting depth')
    parser.add_argument('--seed', type=int, default=0,
                        help='Random seed')
    args = parser.parse_args()

    if args.output and os.path.dirname(args.output):
        os.makedirs(os.path.dirname(args.output), exist_ok=True)

    generate_sample_formulas(args.config, args.output, args.count, args.depth, args.seed)


if __name__ == '__main__':
    main()
