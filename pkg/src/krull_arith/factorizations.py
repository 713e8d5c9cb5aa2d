"""Factorizations of zero-sum sequences into atoms.

A factorization is a multiset of atoms; it is stored as a count vector
parallel to an AtomSet.  This module enumerates Z(B), computes the usual
distance between factorizations, the set of lengths L(B) (by a memoized
recursion that never materializes Z(B)), and the catenary data of a block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundExceededError, DomainError

FACTORIZATION_GUARD = 10**6


class Factorization:
    """A multiset of atoms from a fixed AtomSet."""

    __slots__ = ("atomset", "counts")

    def __init__(self, atomset, counts):
        counts = tuple(int(c) for c in counts)
        if len(counts) != len(atomset):
            raise DomainError("count vector does not match atom set")
        self.atomset = atomset
        self.counts = counts

    @property
    def length(self):
        return sum(self.counts)

    def product(self):
        b = self.atomset.alphabet.empty()
        for i, c in enumerate(self.counts):
            if c:
                b = b * (self.atomset[i] ** c)
        return b

    def __eq__(self, other):
        return (
            isinstance(other, Factorization)
            and self.atomset is other.atomset
            and self.counts == other.counts
        )

    def __hash__(self):
        return hash(self.counts)

    def __lt__(self, other):
        return self.counts < other.counts

    def to_json(self):
        return list(self.counts)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.counts):
            if c:
                a = "(%s)" % self.atomset[i]
                parts.append(a if c == 1 else "%s^%d" % (a, c))
        return " . ".join(parts) if parts else "empty"

    def __repr__(self):
        return "Factorization(%s)" % (str(self),)


def factorize(atomset, block, guard=FACTORIZATION_GUARD):
    """All factorizations Z(B) of a zero-sum sequence, sorted canonically.

    DFS over atoms in nondecreasing index order so each multiset is produced
    once.  Raises BoundExceededError past ``guard`` results.
    """
    if not block.is_zero_sum():
        raise DomainError("cannot factor a sequence with nonzero sum")
    atoms = atomset.atoms
    n = len(atoms)
    out = []
    counts = [0] * n

    def rec(rem, start):
        if rem.is_empty():
            out.append(Factorization(atomset, counts))
            if len(out) > guard:
                raise BoundExceededError("more than %d factorizations" % guard)
            return
        for i in range(start, n):
            if atoms[i].divides(rem):
                counts[i] += 1
                rec(rem // atoms[i], i)
                counts[i] -= 1

    rec(block, 0)
    return tuple(sorted(out))


def distance(z1, z2):
    """d(z, z') = max length of the two parts left after cancelling gcd(z, z')."""
    common = tuple(min(a, b) for a, b in zip(z1.counts, z2.counts))
    c = sum(common)
    return max(z1.length - c, z2.length - c)


def lengths_of(atomset, block, memo=None):
    """The set of lengths L(B) = {|z| : z in Z(B)}, as a frozenset.

    Recursion L(B) = union over atoms u | B of 1 + L(B/u), memoized on the
    multiplicity vector; ``memo`` may be shared across many blocks over the
    same atom set.
    """
    if not block.is_zero_sum():
        raise DomainError("length set of a non-zero-sum sequence")
    if memo is None:
        memo = {}
    atoms = atomset.atoms

    def rec(b):
        key = b.mults
        hit = memo.get(key)
        if hit is not None:
            return hit
        if b.is_empty():
            result = frozenset((0,))
        else:
            acc = set()
            for u in atoms:
                if u.divides(b):
                    acc.update(l + 1 for l in rec(b // u))
            result = frozenset(acc)
        memo[key] = result
        return result

    return rec(block)


def min_length(atomset, block, memo=None):
    ls = lengths_of(atomset, block, memo)
    return min(ls) if ls else None


def _mst_bottleneck(nodes, dist):
    """Largest edge on a minimum spanning tree of the complete graph (Prim)."""
    if len(nodes) <= 1:
        return 0
    in_tree = {0}
    best = {i: dist(nodes[0], nodes[i]) for i in range(1, len(nodes))}
    bottleneck = 0
    while best:
        i = min(best, key=lambda j: best[j])
        bottleneck = max(bottleneck, best.pop(i))
        in_tree.add(i)
        for j in best:
            d = dist(nodes[i], nodes[j])
            if d < best[j]:
                best[j] = d
    return bottleneck


@dataclass(frozen=True)
class CatenaryProfile:
    catenary: int
    equal: int
    adjacent: int
    monotone: int
    num_factorizations: int
    lengths: tuple

    def to_json(self):
        return {
            "catenary": self.catenary,
            "equal": self.equal,
            "adjacent": self.adjacent,
            "monotone": self.monotone,
            "num_factorizations": self.num_factorizations,
            "lengths": list(self.lengths),
        }


def catenary_profile(atomset, block, guard=FACTORIZATION_GUARD):
    """Catenary data of one block: c(B) (bottleneck over all of Z(B)),
    the equal-length and adjacent-length refinements, and their maximum
    (the monotone catenary degree of the block).
    """
    zs = list(factorize(atomset, block, guard))
    lengths = tuple(sorted({z.length for z in zs}))
    if len(zs) <= 1:
        return CatenaryProfile(0, 0, 0, 0, len(zs), lengths)

    c = _mst_bottleneck(zs, distance)

    by_len = {}
    for z in zs:
        by_len.setdefault(z.length, []).append(z)
    c_eq = max(_mst_bottleneck(group, distance) for group in by_len.values())

    c_adj = 0
    for a, b in zip(lengths, lengths[1:]):
        gap = min(distance(z1, z2) for z1 in by_len[a] for z2 in by_len[b])
        c_adj = max(c_adj, gap)

    return CatenaryProfile(c, c_eq, c_adj, max(c_eq, c_adj), len(zs), lengths)
