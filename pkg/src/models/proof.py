"""
Proof tree model.
This module defines the ProofNode tree built by the search, the verdict of a search and
the ProofResult that carries both together with search statistics.
"""
import json
import sys
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

from .formula import Sequent

OPEN = "Open"
UNEXPLORED = "Unexplored"
AXIOM_PREFIX = "Axiom"


class Verdict(Enum):
    """Enum representing the outcome of a proof search."""
    PROVABLE = "provable"
    NOT_PROVABLE = "not_provable"
    INCONCLUSIVE = "inconclusive"


@dataclass(eq=False)
class ProofNode:
    """
    Node of a proof-search tree.

    Attributes:
        sequent (Sequent): Conclusion at this node
        rule (str): Rule name, ``Axiom(k)``, ``Open`` or ``Unexplored``
        principal (str): Printed principal members
        premises (List[ProofNode]): Subtrees, one per premise
        instance (Any): The applied rule instance, when a rule was applied
    """
    sequent: Sequent
    rule: str = OPEN
    principal: str = ""
    premises: List['ProofNode'] = field(default_factory=list)
    instance: Any = None

    @property
    def is_axiom(self) -> bool:
        return self.rule.startswith(AXIOM_PREFIX)

    def iter_nodes(self) -> Iterator['ProofNode']:
        """Pre-order traversal, first premise first."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))

    def leaves(self) -> List['ProofNode']:
        return [node for node in self.iter_nodes() if not node.premises]

    def size(self) -> int:
        return sum(1 for _ in self.iter_nodes())

    def depth(self) -> int:
        """Number of nodes on the longest root-to-leaf path."""
        deepest = 0
        stack = [(self, 1)]
        while stack:
            node, level = stack.pop()
            deepest = max(deepest, level)
            stack.extend((child, level + 1) for child in node.premises)
        return deepest

    def to_dict(self) -> Dict:
        """Convert the tree to ``{"sequent", "rule", "principal", "premises"}`` dictionaries."""
        result: Dict = {}
        stack = [(self, result)]
        while stack:
            node, target = stack.pop()
            target.update({
                "sequent": node.sequent.text,
                "rule": node.rule,
                "principal": node.principal,
                "premises": []
            })
            for child in node.premises:
                child_dict: Dict = {}
                target["premises"].append(child_dict)
                stack.append((child, child_dict))
        return result


@dataclass
class ProofStats:
    """
    Statistics of one search.

    Attributes:
        nodes (int): Nodes created
        depth (int): Depth of the tree
        table_lk_size (int): Largest TableLK on any branch
        table_rk_chains (int): Largest number of TableRK chain links on any branch
        elapsed_ms (float): Wall time in milliseconds
    """
    nodes: int = 0
    depth: int = 0
    table_lk_size: int = 0
    table_rk_chains: int = 0
    elapsed_ms: float = 0.0


@dataclass
class ProofResult:
    """
    Outcome of a proof search.

    Attributes:
        verdict (Verdict): Provable, not provable, or inconclusive (search capped)
        tree (ProofNode): The search tree
        stats (ProofStats): Search statistics
    """
    verdict: Verdict
    tree: ProofNode
    stats: ProofStats

    @property
    def provable(self) -> bool:
        return self.verdict == Verdict.PROVABLE

    def open_leaves(self) -> List[ProofNode]:
        return [leaf for leaf in self.tree.leaves() if leaf.rule == OPEN]

    def to_dict(self, include_elapsed: bool = True) -> Dict:
        """
        Convert the result to a dictionary.

        Args:
            include_elapsed: Leave out ``elapsed_ms`` for byte-stable output
        """
        stats = asdict(self.stats)
        if include_elapsed:
            stats["elapsed_ms"] = round(stats["elapsed_ms"], 3)
        else:
            stats.pop("elapsed_ms")
        return {
            "verdict": self.verdict.value,
            "provable": self.provable,
            "tree": self.tree.to_dict(),
            "stats": stats
        }

    def render_json(self, include_elapsed: bool = True, indent: Optional[int] = 2) -> str:
        """Serialize to JSON; deep trees temporarily raise the recursion limit."""
        data = self.to_dict(include_elapsed)
        limit = sys.getrecursionlimit()
        needed = 4 * self.stats.depth + 1000
        if needed > limit:
            sys.setrecursionlimit(needed)
        try:
            return json.dumps(data, indent=indent, ensure_ascii=False)
        finally:
            sys.setrecursionlimit(limit)

    def render_text(self, max_nodes: Optional[int] = None) -> str:
        """Indented tree, one node per line, followed by the verdict and statistics."""
        lines = []
        stack = [(self.tree, 0)]
        while stack:
            node, level = stack.pop()
            if max_nodes is not None and len(lines) >= max_nodes:
                lines.append("  ... (truncated)")
                break
            principal = f" [{node.principal}]" if node.principal else ""
            lines.append(f"{'  ' * level}({node.rule}){principal}  {node.sequent.text}")
            stack.extend((child, level + 1) for child in reversed(node.premises))
        lines.append("")
        lines.append(f"Verdict: {self.verdict.value}")
        lines.append(
            f"Nodes: {self.stats.nodes}, depth: {self.stats.depth}, "
            f"TableLK: {self.stats.table_lk_size}, TableRK links: {self.stats.table_rk_chains}, "
            f"elapsed: {self.stats.elapsed_ms:.1f} ms"
        )
        return "\n".join(lines)
