"""Transfer homomorphisms between block monoids, and atom counting for
monoids given by a class group with multiplicities.

A TransferMap is induced by a map theta on the alphabets; it is checked
against two finite-window criteria:

  T1  every zero-sum target sequence (up to the window) lifts to a zero-sum
      source sequence;
  T2  for every zero-sum source block A (up to the window) and every
      zero-sum divisor of theta(A), some zero-sum divisor of A maps onto it.

Together these are the defining properties of a transfer homomorphism,
verified on a bounded window.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from .atoms import minimal_nonneg_solutions
from .errors import DomainError, ShapeError
from .factorizations import lengths_of
from .groups import GroupElement, GroupSpec
from .sequences import Alphabet, Sequence


class TransferMap:
    """A map of alphabets theta: G0 -> G0' extended multiplicatively."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source, target, images):
        """``images`` maps each source element to a target element."""
        self.source = source
        self.target = target
        table = []
        for g in source.elements:
            h = images[g]
            if h not in target:
                raise ShapeError("image %s outside the target alphabet" % h)
            table.append(target.index(h))
        self.images = tuple(table)

    def apply(self, seq):
        if seq.alphabet != self.source:
            raise ShapeError("sequence not over the source alphabet")
        mult = [0] * len(self.target)
        for i, m in enumerate(seq.mults):
            mult[self.images[i]] += m
        return Sequence(self.target, mult)

    def preserves_zero_sums(self):
        """theta must send zero-sum sequences to zero-sum sequences; it is
        enough that each source element's defect is killed, i.e. that images
        of the generators of the relation lattice stay zero-sum.  Checked
        directly on all two-element relations and singleton orders via the
        element images: theta(g) summed with theta(h) must vanish whenever
        g + h does, and so on -- in practice it suffices that theta is the
        restriction of a homomorphism-like class map, which we verify on a
        sweep of short zero-sum sequences.
        """
        for mults in _mult_vectors(len(self.source), 4):
            s = Sequence(self.source, mults)
            if s.is_zero_sum() and not self.apply(s).is_zero_sum():
                return False
        return True


def _mult_vectors(width, total_max):
    """All multiplicity vectors of the given width with sum in [1, total_max]."""

    def rec(i, remaining):
        if i == width:
            yield ()
            return
        for m in range(remaining + 1):
            for rest in rec(i + 1, remaining - m):
                yield (m,) + rest

    for v in rec(0, total_max):
        if any(v):
            yield v


def _zero_sum_sequences(alphabet, max_length):
    for v in _mult_vectors(len(alphabet), max_length):
        s = Sequence(alphabet, v)
        if s.is_zero_sum():
            yield s


def _fibers(tmap):
    fibers = [[] for _ in range(len(tmap.target))]
    for i, j in enumerate(tmap.images):
        fibers[j].append(i)
    return fibers


def _lifts(tmap, target_seq):
    """All source sequences mapping onto target_seq."""
    fibers = _fibers(tmap)
    slots = []
    for j, m in enumerate(target_seq.mults):
        if m and not fibers[j]:
            return
        if m:
            slots.append((fibers[j], m))

    def rec(k):
        if k == len(slots):
            yield [0] * len(tmap.source)
            return
        idxs, m = slots[k]
        for split in _compositions(m, len(idxs)):
            for rest in rec(k + 1):
                for i, c in zip(idxs, split):
                    rest[i] += c
                yield rest

    for v in rec(0):
        yield Sequence(tmap.source, v)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _zero_sum_divisors(seq):
    ranges = [range(m + 1) for m in seq.mults]
    for v in product(*ranges):
        d = Sequence(seq.alphabet, v)
        if d.is_zero_sum():
            yield d


@dataclass(frozen=True)
class TransferReport:
    surjective_on_window: bool
    divisors_lift_on_window: bool
    bound: int
    failures: tuple

    @property
    def ok(self):
        return self.surjective_on_window and self.divisors_lift_on_window

    def to_json(self):
        return {
            "surjective_on_window": self.surjective_on_window,
            "divisors_lift_on_window": self.divisors_lift_on_window,
            "ok": self.ok,
            "bound": self.bound,
            "failures": [str(f) for f in self.failures],
        }


def check_transfer(tmap, bound):
    """Verify the two transfer properties on the window of sequences of
    length at most ``bound``."""
    failures = []

    t1 = True
    for b in _zero_sum_sequences(tmap.target, bound):
        if not any(lift.is_zero_sum() for lift in _lifts(tmap, b)):
            t1 = False
            failures.append(b)

    t2 = True
    for a in _zero_sum_sequences(tmap.source, bound):
        image = tmap.apply(a)
        for bt in _zero_sum_divisors(image):
            found = False
            for d in _divisors_mapping_to(tmap, a, bt):
                if d.is_zero_sum():
                    found = True
                    break
            if not found:
                t2 = False
                failures.append((a, bt))
    return TransferReport(t1, t2, bound, tuple(failures[:10]))


def _divisors_mapping_to(tmap, a, bt):
    """Divisors d of a with theta(d) = bt."""
    fibers = _fibers(tmap)
    slots = []
    ok = True
    for j, m in enumerate(bt.mults):
        idxs = [i for i in fibers[j] if a.mults[i]]
        if m and not idxs:
            ok = False
            break
        slots.append((idxs, m))
    if not ok:
        return

    def rec(k):
        if k == len(slots):
            yield [0] * len(tmap.source)
            return
        idxs, m = slots[k]
        if m == 0:
            yield from rec(k + 1)
            return
        for split in _compositions(m, len(idxs)):
            if any(c > a.mults[i] for i, c in zip(idxs, split)):
                continue
            for rest in rec(k + 1):
                for i, c in zip(idxs, split):
                    rest[i] += c
                yield rest

    for v in rec(0):
        yield Sequence(tmap.source, v)


def lengths_preserved(tmap, source_atoms, target_atoms, bound, memo_s=None, memo_t=None):
    """Check L(A) = L(theta(A)) for all zero-sum source sequences of length
    at most ``bound``; returns (ok, failures)."""
    if memo_s is None:
        memo_s = {}
    if memo_t is None:
        memo_t = {}
    failures = []
    for a in _zero_sum_sequences(tmap.source, bound):
        ls = lengths_of(source_atoms, a, memo_s)
        lt = lengths_of(target_atoms, tmap.apply(a), memo_t)
        if ls != lt:
            failures.append((a, sorted(ls), sorted(lt)))
    return not failures, failures[:10]


class Characteristic:
    """A finite abelian group together with a multiplicity m_g >= 0 on each
    class; classes with m_g >= 1 carry that many prime divisors."""

    __slots__ = ("spec", "classes")

    def __init__(self, spec, classes):
        """``classes`` is a list of (element, multiplicity) pairs."""
        seen = {}
        for g, m in classes:
            if g.spec != spec:
                raise ShapeError("class outside the declared group")
            if m < 0:
                raise DomainError("negative multiplicity")
            if g in seen:
                raise DomainError("duplicate class %s" % g)
            seen[g] = int(m)
        self.spec = spec
        self.classes = tuple(sorted(seen.items(), key=lambda p: p[0].key()))

    def support_alphabet(self):
        return Alphabet(self.spec, [g for g, m in self.classes if m >= 1])

    def multiplicity(self, g):
        for h, m in self.classes:
            if h == g:
                return m
        return 0

    def to_json(self):
        return {
            "group": self.spec.to_json(),
            "classes": [
                {"element": list(g.coords), "multiplicity": m} for g, m in self.classes
            ],
        }

    @classmethod
    def from_json(cls, data):
        spec = GroupSpec.from_json(data["group"])
        classes = [
            (spec.element_from_coords(c["element"]), int(c["multiplicity"]))
            for c in data["classes"]
        ]
        return cls(spec, classes)


def count_lifted_atoms(char, atomset):
    """Number of atoms of the monoid described by ``char``: each atom U of
    the block monoid over the supported classes lifts in
    prod_g binom(m_g + v_g(U) - 1, v_g(U)) ways (multisets of m_g labelled
    primes in each class)."""
    alphabet = atomset.alphabet
    mult = [char.multiplicity(g) for g in alphabet.elements]
    total = 0
    for u in atomset.atoms:
        ways = 1
        for m, v in zip(mult, u.mults):
            if v:
                ways *= comb(m + v - 1, v)
        total += ways
    return total


def count_lifted_atoms_brute(char, cap=64):
    """Independent count: one column per labelled prime (m_g copies of each
    class), minimal zero-sum solutions counted directly."""
    spec = char.spec
    r = spec.free_rank
    t = len(spec.torsion)
    cols = []
    for g, m in char.classes:
        col = list(g.free) + list(g.torsion)
        cols.extend([col] * m)
    k = len(cols)
    for j, n in enumerate(spec.torsion):
        slack = [0] * (r + t)
        slack[r + j] = -n
        cols.append(slack)
    caps = [cap] * k + [None] * (len(cols) - k)
    if not cols:
        return 0
    solutions = minimal_nonneg_solutions(cols, caps)
    return len({v[:k] for v in solutions})


def builtin_map(name):
    """The named built-in transfer maps."""
    if name == "prop712":
        src_spec = GroupSpec(1)
        e = src_spec.element(free=(1,))
        source = Alphabet(src_spec, [0 * e, e, -e, 2 * e, -2 * e])
        tgt_spec = GroupSpec(0, (3,))
        g = tgt_spec.element(torsion=(1,))
        target = Alphabet(tgt_spec, [0 * g, g, 2 * g])
        images = {0 * e: 0 * g, e: g, -2 * e: g, -e: 2 * g, 2 * e: 2 * g}
        return TransferMap(source, target, images)
    if name == "prop713":
        src_spec = GroupSpec(2)
        e1 = src_spec.element(free=(1, 0))
        e2 = src_spec.element(free=(0, 1))
        elems = [e1, e2, 2 * e2, e1 + 2 * e2]
        source = Alphabet(
            src_spec, [src_spec.zero()] + elems + [-x for x in elems]
        )
        tgt_spec = GroupSpec(0, (4,))
        g = tgt_spec.element(torsion=(1,))
        target = Alphabet(tgt_spec, [0 * g, g, 2 * g, 3 * g])
        images = {
            src_spec.zero(): 0 * g,
            e1: g,
            e2: g,
            -(e1 + 2 * e2): g,
            -e1: 3 * g,
            -e2: 3 * g,
            e1 + 2 * e2: 3 * g,
            2 * e2: 2 * g,
            -2 * e2: 2 * g,
        }
        return TransferMap(source, target, images)
    if name == "collapse":
        src_spec = GroupSpec(1)
        e = src_spec.element(free=(1,))
        source = Alphabet(src_spec, [e, -e])
        tgt_spec = GroupSpec(0, ())
        target = Alphabet(tgt_spec, [tgt_spec.zero()])
        images = {e: tgt_spec.zero(), -e: tgt_spec.zero()}
        return TransferMap(source, target, images)
    raise DomainError("unknown built-in map %r" % name)
