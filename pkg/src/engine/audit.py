"""
Audits of finished proof trees against the loop-check bounds.
"""
from typing import Dict, List, Set, Tuple

from ..calculus.rules import RuleId
from ..models.proof import ProofNode
from .tables import ChainEntry, chain_limits


def audit_left_knowledge(tree: ProofNode) -> List[str]:
    """
    Check that no branch applies a left knowledge rule twice to the same principal pair.

    Returns:
        One message per repeated application
    """
    violations = []
    stack: List[Tuple[ProofNode, Set]] = [(tree, set())]
    while stack:
        node, seen = stack.pop()
        inst = node.instance
        if inst is not None and inst.rule in (RuleId.KI_L, RuleId.KN_L):
            pair = (inst.principal[0], inst.principal[1])
            if pair in seen:
                violations.append(f"{inst.rule.value} repeated on [{inst.describe()}] at {node.sequent.text}")
            seen.add(pair)
        if len(node.premises) == 1:
            stack.append((node.premises[0], seen))
        else:
            stack.extend((child, set(seen)) for child in node.premises)
    return violations


def audit_chain_lengths(tree: ProofNode, aggregate: bool = False) -> List[str]:
    """
    Check every chain built by the right K_I rule against its limit ``n(K_I) + 1``
    computed on the root, and that no label is expanded twice for the same formula.

    Returns:
        One message per violation
    """
    limits, default = chain_limits(tree.sequent, aggregate)
    violations = []
    stack: List[Tuple[ProofNode, Dict]] = [(tree, {})]
    while stack:
        node, chains = stack.pop()
        inst = node.instance
        if inst is not None and inst.rule == RuleId.KI_R:
            member = inst.principal[0]
            group = member.formula.group
            entry = chains.setdefault((group, member.formula.body), ChainEntry())
            if member.label in entry.expanded:
                violations.append(f"{member.text} expanded twice on one branch")
            entry.expanded.add(member.label)
            entry.parent[inst.label] = member.label
            length = entry.depth(inst.label)
            limit = limits.get(group, default)
            if length > limit:
                violations.append(f"chain of length {length} exceeds {limit} for {member.text}")
        if len(node.premises) == 1:
            stack.append((node.premises[0], chains))
        else:
            stack.extend(
                (child, {key: entry.copy() for key, entry in chains.items()}) for child in node.premises
            )
    return violations
