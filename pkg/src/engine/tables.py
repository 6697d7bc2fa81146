"""
Loop-check tables for proof search.
TableLK records the principal pairs of the left knowledge rules; TableRK records, per
knowledge formula, which labels were already expanded by the right K_I rule and the
chains of fresh labels those expansions built.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Set, Tuple

from ..models.formula import Formula, LabelledFormula, RelationalAtom, Sequent
from ..models.structure import Group
from ..syntax.polarity import k_occurrence_counts, total_negative_occurrences


class TableLK:
    """
    Principal pairs of left knowledge rule applications on the current branch.

    Attributes:
        entries (Set[Tuple[LabelledFormula, RelationalAtom]]): Recorded pairs
    """

    def __init__(self, entries: Optional[Set[Tuple[LabelledFormula, RelationalAtom]]] = None):
        self.entries = set(entries or ())

    def __contains__(self, pair) -> bool:
        return pair in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, formula: LabelledFormula, relation: RelationalAtom) -> None:
        self.entries.add((formula, relation))

    def copy(self) -> 'TableLK':
        return TableLK(self.entries)


@dataclass
class ChainEntry:
    """
    Row of TableRK for one ``K_I A``.

    Attributes:
        expanded (Set[str]): Labels already used as principal label
        parent (Dict[str, str]): Fresh label → label it was created from
    """
    expanded: Set[str] = field(default_factory=set)
    parent: Dict[str, str] = field(default_factory=dict)

    def depth(self, label: str) -> int:
        length = 0
        while label in self.parent:
            label = self.parent[label]
            length += 1
        return length

    def copy(self) -> 'ChainEntry':
        return ChainEntry(set(self.expanded), dict(self.parent))


class TableRK:
    """
    Right knowledge rule chains on the current branch.

    Attributes:
        limits (Dict[FrozenSet[str], int]): Maximum chain length per group
        default_limit (int): Limit for groups without an entry in ``limits``
        entries (Dict[Tuple[FrozenSet[str], Formula], ChainEntry]): Rows keyed by (I, A)
    """

    def __init__(self, limits: Dict[Group, int], default_limit: int = 1,
                 entries: Optional[Dict[Tuple[Group, Formula], ChainEntry]] = None):
        self.limits = dict(limits)
        self.default_limit = default_limit
        self.entries = dict(entries or {})

    def limit(self, group: Group) -> int:
        return self.limits.get(group, self.default_limit)

    def chain_depth(self, group: Group, formula: Formula, label: str) -> int:
        entry = self.entries.get((group, formula))
        return entry.depth(label) if entry else 0

    def allows(self, group: Group, formula: Formula, label: str) -> bool:
        """Right K_I on ``label: K_I formula`` is allowed iff the label is unexpanded and its chain is short."""
        entry = self.entries.get((group, formula))
        if entry is None:
            return 0 < self.limit(group)
        return label not in entry.expanded and entry.depth(label) < self.limit(group)

    def record(self, group: Group, formula: Formula, label: str, fresh: str) -> None:
        entry = self.entries.setdefault((group, formula), ChainEntry())
        entry.expanded.add(label)
        entry.parent[fresh] = label

    def link_count(self) -> int:
        """Total number of chain links over all rows."""
        return sum(len(entry.parent) for entry in self.entries.values())

    def copy(self) -> 'TableRK':
        return TableRK(
            self.limits, self.default_limit,
            {key: entry.copy() for key, entry in self.entries.items()}
        )


class LoopTables:
    """
    Both loop-check tables of one branch.

    Attributes:
        lk (TableLK): Left knowledge pairs
        rk (TableRK): Right knowledge chains
    """

    def __init__(self, lk: TableLK, rk: TableRK):
        self.lk = lk
        self.rk = rk

    def left_applied(self, formula: LabelledFormula, relation: RelationalAtom) -> bool:
        return (formula, relation) in self.lk

    def right_allows(self, group: Group, formula: Formula, label: str) -> bool:
        return self.rk.allows(group, formula, label)

    def copy(self) -> 'LoopTables':
        return LoopTables(self.lk.copy(), self.rk.copy())


def chain_limits(root: Sequent, aggregate: bool = False) -> Tuple[Dict[Group, int], int]:
    """
    Chain limits ``n(K_I) + 1`` computed on the root sequent.

    Args:
        root: Root sequent of the search
        aggregate: Use the total negative count over all groups for every group

    Returns:
        (limit per group occurring in the root, limit for any other group)
    """
    counts = k_occurrence_counts(root)
    if aggregate:
        total = total_negative_occurrences(root) + 1
        return {group: total for group in counts}, total
    return {group: count + 1 for group, count in counts.items()}, 1


def init_tables(root: Sequent, aggregate: bool = False) -> LoopTables:
    """Empty TableLK and a TableRK whose limits come from the root sequent."""
    limits, default = chain_limits(root, aggregate)
    return LoopTables(TableLK(), TableRK(limits, default))


def chain_depth(table: TableRK, group, formula: Formula, label: str) -> int:
    """Number of parent links from ``label`` back to the root of its chain."""
    return table.chain_depth(frozenset(group), formula, label)
