"""Built-in example graphs and random generators."""
from __future__ import annotations

import random

from .errors import InvalidGraphError
from .graphs import Graph


def diamonds(d: int) -> Graph:
    """String of d diamonds: c_{i-1} and c_i are both joined to a_i and b_i."""
    if d < 1:
        raise InvalidGraphError("need at least one diamond")
    labels = ["c0"]
    for i in range(1, d + 1):
        labels += [f"a{i}", f"b{i}", f"c{i}"]
    edges = []
    for i in range(1, d + 1):
        for x in (f"a{i}", f"b{i}"):
            edges += [(f"c{i - 1}", x), (x, f"c{i}")]
    return Graph.from_edges(labels, edges)


def complete(n: int) -> Graph:
    labels = [f"v{i}" for i in range(n)]
    return Graph.from_edges(labels, [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]])


def discrete(n: int) -> Graph:
    return Graph.from_edges([f"v{i}" for i in range(n)], [])


def path(n: int) -> Graph:
    labels = [f"p{i}" for i in range(n)]
    return Graph.from_edges(labels, list(zip(labels, labels[1:])))


def star_graph(leaves: int) -> Graph:
    labels = ["z"] + [f"l{i}" for i in range(leaves)]
    return Graph.from_edges(labels, [("z", x) for x in labels[1:]])


def random_tree(n: int, rng: random.Random) -> Graph:
    labels = [f"t{i}" for i in range(n)]
    edges = [(labels[i], labels[rng.randrange(i)]) for i in range(1, n)]
    return Graph.from_edges(labels, edges)


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    labels = [f"g{i}" for i in range(n)]
    edges = [
        (labels[i], labels[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(labels, edges)


def tree_data(g: Graph):
    """Leaves, leaf-neighbours Z, and the leaves hanging off each z."""
    leaves = {v for v in g.vertices if len(g.adjacency[v]) == 1}
    z_of = {l: next(iter(g.adjacency[l])) for l in leaves}
    zs = set(z_of.values())
    hanging = {z: {l for l in leaves if z_of[l] == z} for z in zs}
    return leaves, zs, hanging


def graph_example(name: str) -> Graph:
    """Parse names like ``diamonds:3``, ``tree:random:12:7``, ``complete:4``."""
    parts = name.split(":")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "diamonds":
            return diamonds(int(args[0]))
        if kind == "complete":
            return complete(int(args[0]))
        if kind == "discrete":
            return discrete(int(args[0]))
        if kind == "path":
            return path(int(args[0]))
        if kind == "star":
            return star_graph(int(args[0]))
        if kind == "tree" and args[0] == "random":
            seed = int(args[2]) if len(args) > 2 else 0
            return random_tree(int(args[1]), random.Random(seed))
        if kind == "tree" and args[0] == "path":
            return path(int(args[1]))
        if kind == "random":
            seed = int(args[1]) if len(args) > 1 else 0
            return random_graph(int(args[0]), random.Random(seed))
    except (IndexError, ValueError):
        pass
    raise InvalidGraphError(f"unknown graph example {name!r}")
