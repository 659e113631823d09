"""Solution trees: roots, the two-child rule, expansion and locating a triple."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DomainError, InvariantViolation
from .forms import enumerate_minimal_via_forms
from .triples import MTriple, descend, root_of

DEFAULT_MAX_COMPONENT = 10**300


def children(t: MTriple) -> tuple[MTriple, MTriple]:
    """Left (x, z, 3xz - y) and right (y, z, 3yz - x) children of ordered (x, y, z)."""
    if not t.is_ordered:
        raise DomainError(f"{t} is not an ordered positive triple")
    x, y, z = t.abc
    return MTriple(x, z, 3 * x * z - y, t.m), MTriple(y, z, 3 * y * z - x, t.m)


def roots(m: int) -> list[MTriple]:
    """One root per minimal triple, in the order of the minimal triples."""
    out = [root_of(t) for t in enumerate_minimal_via_forms(m)]
    if len(set(out)) != len(out):
        raise InvariantViolation(f"m={m}: two minimal triples share a root")
    return out


@dataclass(frozen=True)
class TreeNode:
    triple: MTriple
    path: str
    depth: int


@dataclass(frozen=True)
class SolutionTree:
    m: int
    root: MTriple
    nodes: tuple[TreeNode, ...]
    truncated: bool = False

    def level(self, k: int) -> list[MTriple]:
        return [n.triple for n in self.nodes if n.depth == k]

    def to_json(self) -> str:
        doc = {
            "m": self.m,
            "root": [str(x) for x in self.root.abc],
            "nodes": [
                {"t": [str(x) for x in n.triple.abc], "path": n.path, "depth": n.depth}
                for n in self.nodes
            ],
        }
        return json.dumps(doc, separators=(",", ":"))


def expand(
    m: int, root: MTriple, depth: int, max_component: int = DEFAULT_MAX_COMPONENT
) -> SolutionTree:
    """Breadth-first expansion from ``root`` down to ``depth`` levels.

    Nodes whose largest entry would exceed ``max_component`` are dropped and
    ``truncated`` is set.
    """
    if depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    if root.m != m or root not in roots(m):
        raise DomainError(f"{root} is not a root for m={m}")
    nodes = [TreeNode(root, "", 0)]
    frontier = nodes[:]
    truncated = False
    for k in range(1, depth + 1):
        nxt = []
        for node in frontier:
            for move, child in zip("LR", children(node.triple)):
                if child.c > max_component:
                    truncated = True
                    continue
                nxt.append(TreeNode(child, node.path + move, k))
        nodes.extend(nxt)
        frontier = nxt
    if len({n.triple for n in nodes}) != len(nodes):
        raise InvariantViolation(f"repeated node in tree of {root}, m={m}")
    return SolutionTree(m, root, tuple(nodes), truncated)


def follow(root: MTriple, path: str) -> MTriple:
    """Replay a string of L/R moves from ``root``."""
    cur = root
    for move in path:
        left, right = children(cur)
        if move == "L":
            cur = left
        elif move == "R":
            cur = right
        else:
            raise DomainError(f"bad move {move!r} in path {path!r}")
    return cur


@dataclass(frozen=True)
class Location:
    """Where a triple sits.

    ``path`` is None only for an improper minimal triple: it lies one step
    above the root it generates rather than inside that tree.
    """

    root: MTriple
    minimal: MTriple
    path: str | None


def locate(t: MTriple) -> Location:
    """Find the tree containing the ordered triple ``t`` and the moves reaching it."""
    down = descend(t)
    minimal = down.minimal
    root = root_of(minimal)
    # ascending chain from the minimal triple up to t
    chain = [minimal, *reversed(down.path[:-1]), t] if down.path else [t]
    if minimal != root:
        if t == minimal:
            return Location(root, minimal, None)
        if chain[1] != root:
            raise InvariantViolation(f"ascent from {minimal} does not pass through root {root}")
        chain = chain[1:]
    moves = []
    for parent, child in zip(chain, chain[1:]):
        left, right = children(parent)
        if child == left:
            moves.append("L")
        elif child == right:
            moves.append("R")
        else:
            raise InvariantViolation(f"{child} is not a child of {parent} (m={t.m})")
    path = "".join(moves)
    if follow(root, path) != t:
        raise InvariantViolation(f"replaying {path!r} from {root} does not reach {t}")
    return Location(root, minimal, path)
