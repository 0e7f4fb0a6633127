"""RDF graph / dataset isomorphism under blank node relabeling.

Blank nodes are first colored by iterated neighbourhood hashing; a
backtracking search then only pairs nodes of equal color and checks each
partial mapping against the statements it fully determines.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable

from .terms import BlankNode

MAX_BLANK_NODES = 10_000


class TooManyBlankNodes(ValueError):
    pass


def _bnodes_of(st) -> list:
    return [t for t in st if t.__class__ is BlankNode]


def _color(statements: list, bnodes: set, rounds: int = 8) -> dict:
    colors = {b: 0 for b in bnodes}
    by_node = defaultdict(list)
    for st in statements:
        for b in set(_bnodes_of(st)):
            by_node[b].append(st)
    for _ in range(rounds):
        new = {}
        for b in bnodes:
            sig = []
            for st in by_node[b]:
                sig.append(tuple(
                    ("self", i) if t == b else (("b", colors[t]) if t.__class__ is BlankNode else ("t", t))
                    for i, t in enumerate(st)
                ))
            sig.sort(key=repr)
            new[b] = hash((colors[b], tuple(sig)))
        # stop once the partition no longer splits
        if len(set(new.values())) == len(set(colors.values())):
            colors = new
            break
        colors = new
    return colors


def _apply(st, mapping: dict):
    return st.__class__(*(mapping.get(t, t) if t.__class__ is BlankNode else t for t in st))


def _search_order(nodes: set, by_node: dict, rank) -> list:
    """Breadth-first through blank node adjacency, so that every node after the
    first of its component has an already placed neighbour. Component seeds and
    siblings go most constrained first (small colour class, high degree)."""
    order = []
    seen = set()
    for seed in sorted(nodes, key=rank):
        if seed in seen:
            continue
        seen.add(seed)
        queue = deque([seed])
        while queue:
            node = queue.popleft()
            order.append(node)
            nbrs = {t for st in by_node[node] for t in _bnodes_of(st)} - seen
            for nb in sorted(nbrs, key=rank):
                seen.add(nb)
                queue.append(nb)
    return order


def find_bijection(a: Iterable, b: Iterable) -> dict | None:
    """Return a blank node mapping turning statement set *a* into *b*, or None."""
    a = set(a)
    b = set(b)
    if len(a) != len(b):
        return None
    a_ground = {st for st in a if not _bnodes_of(st)}
    b_ground = {st for st in b if not _bnodes_of(st)}
    if a_ground != b_ground:
        return None
    a_rest = [st for st in a if st not in a_ground]
    b_rest = set(st for st in b if st not in b_ground)
    a_nodes = {t for st in a_rest for t in _bnodes_of(st)}
    b_nodes = {t for st in b_rest for t in _bnodes_of(st)}
    if len(a_nodes) != len(b_nodes):
        return None
    if len(a_nodes) > MAX_BLANK_NODES:
        raise TooManyBlankNodes(f"{len(a_nodes)} blank nodes exceed the limit of {MAX_BLANK_NODES}")
    if not a_nodes:
        return {}

    a_col = _color(a_rest, a_nodes)
    b_col = _color(list(b_rest), b_nodes)
    a_classes = defaultdict(list)
    b_classes = defaultdict(list)
    for n, c in a_col.items():
        a_classes[c].append(n)
    for n, c in b_col.items():
        b_classes[c].append(n)
    if {c: len(v) for c, v in a_classes.items()} != {c: len(v) for c, v in b_classes.items()}:
        return None

    by_node = defaultdict(list)
    for st in a_rest:
        for n in set(_bnodes_of(st)):
            by_node[n].append(st)
    order = _search_order(a_nodes, by_node, lambda n: (len(a_classes[a_col[n]]), -len(by_node[n]), n.label))
    mapping: dict = {}
    used: set = set()

    def consistent(node) -> bool:
        for st in by_node[node]:
            if all(t in mapping for t in _bnodes_of(st)):
                if _apply(st, mapping) not in b_rest:
                    return False
        return True

    b_by_node = defaultdict(list)
    for st in b_rest:
        for n in set(_bnodes_of(st)):
            b_by_node[n].append(st)

    def candidates_for(node) -> list:
        # a statement shared with an already mapped node pins the candidates
        # to blank nodes found at the same positions around that node's image
        color = a_col[node]
        for st in by_node[node]:
            anchor = next((t for t in _bnodes_of(st) if t in mapping), None)
            if anchor is None:
                continue
            positions = [k for k, t in enumerate(st) if t == node]
            found = set()
            for other in b_by_node[mapping[anchor]]:
                if len(other) == len(st):
                    for k in positions:
                        t = other[k]
                        if t.__class__ is BlankNode and b_col[t] == color:
                            found.add(t)
            return sorted(found, key=lambda m: m.label)
        return sorted(b_classes[color], key=lambda m: m.label)

    # iterative depth-first search; recursion would overflow on large inputs
    candidates: list = [None] * len(order)
    cursor = [0] * len(order)
    i = 0
    while 0 <= i < len(order):
        node = order[i]
        if node in mapping:
            used.discard(mapping.pop(node))
        if candidates[i] is None:
            candidates[i] = candidates_for(node)
        cands = candidates[i]
        placed = False
        while cursor[i] < len(cands):
            cand = cands[cursor[i]]
            cursor[i] += 1
            if cand in used:
                continue
            mapping[node] = cand
            used.add(cand)
            if consistent(node):
                placed = True
                break
            del mapping[node]
            used.discard(cand)
        if placed:
            i += 1
        else:
            cursor[i] = 0
            candidates[i] = None
            i -= 1
    if i < 0:
        return None
    return dict(mapping)


def isomorphic(a: Iterable, b: Iterable) -> bool:
    return find_bijection(a, b) is not None


def naive_diff(a: Iterable, b: Iterable) -> tuple[list, list]:
    """Statements only in *a* and only in *b*, comparing blank nodes by label."""
    sa, sb = set(a), set(b)
    return sorted(sa - sb, key=repr), sorted(sb - sa, key=repr)
