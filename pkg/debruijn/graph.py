"""
k-dimensional de Bruijn graphs and the Z_2-instances they track.

A node is a length-k word stored as an integer with the first letter most
significant, so appending c to node v gives (v q + c) mod q^k.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import networkx as nx

from patterns.borders import zimin_prefix_flags
from patterns.engine import is_zimin_instance
from words.core import Word, border_lengths


def _is_z2_instance(letters):
    return bool(zimin_prefix_flags(letters, 2)[len(letters)])


def _is_minimal_z2_instance(letters):
    if not _is_z2_instance(letters):
        return False
    return not (_has_instance_factor(letters[1:]) or _has_instance_factor(letters[:-1]))


def _has_instance_factor(letters):
    return any(any(zimin_prefix_flags(letters[i:], 2)) for i in range(len(letters)))


def z2_bifixfree_instances(q, max_len, minimal=True):
    """
    Z_2-instances of length <= max_len used as the tracked set.

    minimal=True: minimal Z_2-instances (no proper factor is a Z_2-instance).
    minimal=False: every Z_2-instance none of whose bifixes is a Z_2-instance.
    """
    if q < 2 or max_len < 3:
        raise ValueError('need q >= 2 and max_len >= 3')
    found = []
    for length in range(3, max_len + 1):
        for letters in product(range(q), repeat=length):
            if minimal:
                keep = _is_minimal_z2_instance(letters)
            else:
                keep = _is_z2_instance(letters) and not any(
                    is_zimin_instance(letters[:b], 2) for b in border_lengths(letters)
                )
            if keep:
                found.append(Word(letters, q))
    return sorted(found, key=lambda w: (len(w), w.letters))


@dataclass
class DeBruijnModel:
    k: int = 4
    q: int = 2
    max_len: int = None
    minimal: bool = True
    instances: list = field(default=None)

    def __post_init__(self):
        if self.k < 1 or self.q < 2:
            raise ValueError('need k >= 1 and q >= 2')
        if self.max_len is None:
            self.max_len = self.k
        if self.max_len > self.k:
            raise ValueError('tracked instances cannot be longer than a node')
        if self.instances is None:
            self.instances = z2_bifixfree_instances(self.q, self.max_len, self.minimal) if self.max_len >= 3 else []

    @property
    def size(self):
        return self.q ** self.k

    @property
    def nodes(self):
        return range(self.size)

    def successor(self, node, letter):
        return (node * self.q + letter) % self.size

    def node_word(self, node):
        letters = []
        for _ in range(self.k):
            node, c = divmod(node, self.q)
            letters.append(c)
        return tuple(reversed(letters))

    def node_from_letters(self, letters):
        node = 0
        for c in letters:
            node = node * self.q + c
        return node

    def label(self, node):
        return ''.join(str(c) for c in self.node_word(node))

    @cached_property
    def node_to_instances(self):
        """node -> indices of tracked instances that are suffixes of the node word."""
        table = {}
        for node in self.nodes:
            word = self.node_word(node)
            table[node] = [
                index for index, instance in enumerate(self.instances)
                if word[len(word) - len(instance):] == instance.letters
            ]
        return table

    def graph(self, weights=None, threshold=0):
        """networkx DiGraph; with weights, only edges heavier than threshold."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        for node in self.nodes:
            for c in range(self.q):
                weight = 1 if weights is None else weights[node][c]
                if weight > threshold:
                    target = self.successor(node, c)
                    if graph.has_edge(node, target):
                        graph[node][target]['weight'] += weight
                    else:
                        graph.add_edge(node, target, weight=weight)
        return graph
