"""Exact permutation groups: elements, stabilizer chains, classes.

Permutations act on the points ``0 .. degree-1`` from the right, so
``(p * q)(x) == q(p(x))``.  Every group order is a Python int.

Hot loops (element enumeration, conjugation orbits, witness search) work
on a packed "raw" form of each permutation: a ``bytes`` object when the
degree is at most 256, so that composition is a single ``bytes.translate``
call, and a plain tuple otherwise.  :class:`Codec` hides the difference.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_DEGREE = 65535
DEFAULT_ELEMENT_BUDGET = 2_000_000
PR_SLOTS = 15
PR_MIXING = 60


class PermError(ValueError):
    pass


class UnsupportedError(RuntimeError):
    """A computation would exceed its budget; callers degrade gracefully."""


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image list."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        img = tuple(int(x) for x in images)
        if check:
            n = len(img)
            if n == 0 or n > MAX_DEGREE:
                raise PermError(f"degree {n} outside 1..{MAX_DEGREE}")
            if sorted(img) != list(range(n)):
                raise PermError("images do not form a bijection")
        self._img = img
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if a in seen:
                    raise PermError(f"point {a} repeated in cycle notation")
                if not 0 <= a < degree or not 0 <= b < degree:
                    raise PermError(f"cycle point out of range 0..{degree - 1}")
                seen.add(a)
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return self._img

    def __call__(self, x: int) -> int:
        return self._img[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        return _cycles(self._img, include_fixed)

    def order(self) -> int:
        return element_order(self)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self._img) if i != x]

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{self.degree}>{body}"


def _cycles(img: Sequence[int], include_fixed: bool = False) -> list[tuple[int, ...]]:
    seen = bytearray(len(img))
    out = []
    for i in range(len(img)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = 1
        j = img[i]
        while j != i:
            cyc.append(j)
            seen[j] = 1
            j = img[j]
        if len(cyc) > 1 or include_fixed:
            out.append(tuple(cyc))
    return out


def _cycle_lengths(img: Sequence[int]) -> list[int]:
    seen = bytearray(len(img))
    out = []
    for i in range(len(img)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = img[j]
            k += 1
        out.append(k)
    return out


def raw_order(img: Sequence[int]) -> int:
    """Order of a permutation given by any indexable image sequence."""
    return math.lcm(*_cycle_lengths(img))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation ``x -> q(p(x))``."""
    if p.degree != q.degree:
        raise PermError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q._img
    return Permutation([qi[x] for x in p._img], check=False)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p._img):
        inv[x] = i
    return Permutation(inv, check=False)


def element_order(p: Permutation) -> int:
    return raw_order(p._img)


@dataclass(frozen=True)
class CycleProfile:
    cycle_lengths: tuple[int, ...]
    cycle_count: int
    element_order: int


def cycle_profile(p: Permutation) -> CycleProfile:
    lengths = tuple(sorted(_cycle_lengths(p._img), reverse=True))
    return CycleProfile(lengths, len(lengths), math.lcm(*lengths))


def is_even(p: Permutation) -> bool:
    return (p.degree - len(_cycle_lengths(p._img))) % 2 == 0


class Codec:
    """Packed permutation arithmetic for one degree."""

    def __init__(self, degree: int):
        self.degree = degree
        self.packed = degree <= 256
        if self.packed:
            self._tail = bytes(range(degree, 256))
            self.identity = bytes(range(degree))
        else:
            self.identity = tuple(range(degree))

    def pack(self, p: Permutation):
        if p.degree != self.degree:
            raise PermError(f"degree mismatch: {p.degree} vs {self.degree}")
        return bytes(p._img) if self.packed else p._img

    def unpack(self, raw) -> Permutation:
        return Permutation(tuple(raw), check=False)

    def table(self, raw):
        """Right-multiplication table for ``mul_table``."""
        return raw + self._tail if self.packed else raw

    def mul(self, a, b):
        if self.packed:
            return a.translate(b + self._tail)
        return tuple(b[x] for x in a)

    def mul_table(self, a, btable):
        if self.packed:
            return a.translate(btable)
        return tuple(btable[x] for x in a)

    def inv(self, a):
        out = [0] * self.degree
        for i, x in enumerate(a):
            out[x] = i
        return bytes(out) if self.packed else tuple(out)

    def conj(self, x, s, sinv):
        """``s^-1 x s``, the image of ``x`` under conjugation by ``s``."""
        return self.mul(sinv, self.mul(x, s))

    def power(self, a, k: int):
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result


class _Level:
    __slots__ = ("point", "gens", "transversal", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list = []
        self.transversal: dict = {}
        self.checked: set = set()


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain.

    Built by :func:`build_chain`; treat instances as immutable.
    """

    def __init__(self, generators: Sequence[Permutation], codec: Codec, levels: list[_Level],
                 name: str | None = None):
        self.generators = tuple(generators)
        self.degree = codec.degree
        self.name = name
        self._codec = codec
        self._levels = levels
        self.order = math.prod(len(lv.transversal) for lv in levels)
        self._class_cache: dict[int, "ClassData"] = {}

    @property
    def codec(self) -> Codec:
        return self._codec

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    @property
    def transversal_lengths(self) -> list[int]:
        return [len(lv.transversal) for lv in self._levels]

    def contains(self, p: Permutation) -> bool:
        return contains(self, p)

    def sift_raw(self, raw) -> bool:
        return _sift(self._codec, self._levels, raw, 0)[0] == self._codec.identity

    def uniform_raw(self, rng: random.Random):
        """Uniformly distributed element, as a product of transversal picks."""
        c = self._codec
        g = c.identity
        for lv in reversed(self._levels):
            keys = sorted(lv.transversal)
            g = c.mul(g, lv.transversal[keys[rng.randrange(len(keys))]])
        return g

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for x in queue:
            for s in self.generators:
                y = s._img[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_transitive(self) -> bool:
        return is_transitive(self)

    def class_data(self, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> "ClassData":
        cached = self._class_cache.get(0)
        if cached is not None:
            return cached
        if self.order > element_budget:
            raise UnsupportedError(
                f"group order {self.order} exceeds element budget {element_budget}")
        data = ClassData.compute(self)
        self._class_cache[0] = data
        return data

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self.order}>"


def _sift(codec: Codec, levels: list[_Level], g, start: int):
    for i in range(start, len(levels)):
        lv = levels[i]
        beta = g[lv.point]
        u = lv.transversal.get(beta)
        if u is None:
            return g, i
        g = codec.mul(g, codec.inv(u))
    return g, len(levels)


def _extend_orbit(codec: Codec, lv: _Level) -> None:
    # Existing transversal entries are kept so that Schreier pairs already
    # checked stay valid.
    queue = list(lv.transversal)
    for beta in queue:
        u = lv.transversal[beta]
        for s in lv.gens:
            gamma = s[beta]
            if gamma not in lv.transversal:
                lv.transversal[gamma] = codec.mul(u, s)
                queue.append(gamma)


def _first_moved(raw) -> int:
    for i, x in enumerate(raw):
        if i != x:
            return i
    raise PermError("identity has no moved point")


def build_chain(generators: Sequence[Permutation], target_order: int | None = None,
                name: str | None = None) -> PermGroup:
    """Deterministic Schreier-Sims.

    Base points are chosen as the smallest point moved by the element that
    forces a new level.  If ``target_order`` is given the construction stops
    as soon as the product of orbit lengths reaches it; that product is a
    lower bound for the order of the generated group, so reaching the target
    of a known overgroup proves equality.
    """
    gens = list(generators)
    if not gens:
        raise PermError("at least one generator is required")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise PermError("generators must share one degree")
    codec = Codec(degree)
    ident = codec.identity
    raw_gens = [codec.pack(g) for g in gens]
    levels: list[_Level] = []

    def current_order() -> int:
        return math.prod(len(lv.transversal) for lv in levels)

    for g in raw_gens:
        if g == ident:
            continue
        residue, j = _sift(codec, levels, g, 0)
        if residue != ident:
            _insert(codec, levels, residue, j)

    if target_order is not None and levels and current_order() >= target_order:
        return PermGroup(gens, codec, levels, name)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = None
        for beta in list(lv.transversal):
            u = lv.transversal[beta]
            for si, s in enumerate(lv.gens):
                key = (beta, si)
                if key in lv.checked:
                    continue
                lv.checked.add(key)
                gamma = s[beta]
                h = codec.mul(codec.mul(u, s), codec.inv(lv.transversal[gamma]))
                if h == ident:
                    continue
                residue, j = _sift(codec, levels, h, i + 1)
                if residue != ident:
                    _insert(codec, levels, residue, j, lowest=i + 1)
                    restart = j
                    break
            if restart is not None:
                break
        if restart is not None:
            if target_order is not None and current_order() >= target_order:
                break
            i = min(restart, len(levels) - 1)
        else:
            i -= 1
    return PermGroup(gens, codec, levels, name)


def _insert(codec: Codec, levels: list[_Level], h, j: int, lowest: int = 0) -> None:
    """Add strong generator ``h`` (fixing base points below ``j``) to levels lowest..j."""
    if j == len(levels):
        lv = _Level(_first_moved(h))
        lv.transversal[lv.point] = codec.identity
        levels.append(lv)
    for k in range(lowest, j + 1):
        lv = levels[k]
        lv.gens.append(h)
        _extend_orbit(codec, lv)


def contains(G: PermGroup, p: Permutation) -> bool:
    if p.degree != G.degree:
        raise PermError(f"degree mismatch: {p.degree} vs {G.degree}")
    return G.sift_raw(G.codec.pack(p))


def is_transitive(G: PermGroup) -> bool:
    return len(G.orbit(0)) == G.degree


def generates(gens: Sequence[Permutation], order: int) -> bool:
    """True iff ``gens`` generate a group of the given order.

    Meant for subgroups of a group of that order, where it decides equality.
    """
    return build_chain(gens, target_order=order).order == order


class ProductReplacement:
    """Caller-owned random source for group elements.

    Product replacement with an accumulator, seeded explicitly so the
    element sequence is a function of (generators, seed) alone.
    """

    def __init__(self, G: PermGroup, seed: int):
        self.rng = random.Random(seed)
        self.codec = G.codec
        raw = [G.codec.pack(g) for g in G.generators]
        self.slots = [raw[i % len(raw)] for i in range(max(PR_SLOTS, len(raw)))]
        self.acc = G.codec.identity
        for _ in range(PR_MIXING):
            self.next_raw()

    def next_raw(self):
        c = self.codec
        n = len(self.slots)
        i = self.rng.randrange(n)
        j = self.rng.randrange(n - 1)
        if j >= i:
            j += 1
        other = self.slots[j]
        if self.rng.random() < 0.5:
            other = c.inv(other)
        if self.rng.random() < 0.5:
            self.slots[i] = c.mul(self.slots[i], other)
        else:
            self.slots[i] = c.mul(other, self.slots[i])
        self.acc = c.mul(self.acc, self.slots[i])
        return self.acc


def random_element(G: PermGroup, state: ProductReplacement) -> Permutation:
    return G.codec.unpack(state.next_raw())


def enumerate_elements(G: PermGroup, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> list:
    """All elements of G in raw form, in breadth-first order from the identity."""
    if G.order > element_budget:
        raise UnsupportedError(f"group order {G.order} exceeds element budget {element_budget}")
    c = G.codec
    tables = [c.table(c.pack(g)) for g in G.generators]
    seen = {c.identity}
    out = [c.identity]
    for x in out:
        for t in tables:
            y = c.mul_table(x, t)
            if y not in seen:
                seen.add(y)
                out.append(y)
    if len(out) != G.order:
        raise PermError(f"closure found {len(out)} elements, chain says {G.order}")
    return out


@dataclass
class ClassData:
    """Exhaustive conjugacy-class data of one group.

    ``classes[i]`` holds every element (raw form) of class ``i``; ``index``
    maps each element to its class number.  Classes are sorted by element
    order, then size, then least element, so the numbering is canonical.
    """

    group: PermGroup
    classes: list[list]
    index: dict
    orders: list[int]
    representatives: list[Permutation] = field(default_factory=list)

    @classmethod
    def compute(cls, G: PermGroup) -> "ClassData":
        c = G.codec
        elements = enumerate_elements(G, G.order)
        conj = [(c.pack(g), c.inv(c.pack(g))) for g in G.generators]
        label = dict.fromkeys(elements, -1)
        found = []
        for x in elements:
            if label[x] != -1:
                continue
            k = len(found)
            label[x] = k
            orbit = [x]
            for y in orbit:
                for s, sinv in conj:
                    z = c.mul(sinv, c.mul(y, s))
                    if label[z] == -1:
                        label[z] = k
                        orbit.append(z)
            found.append(orbit)
        keyed = []
        for orbit in found:
            least = min(orbit)
            keyed.append((raw_order(least), len(orbit), tuple(least), orbit))
        keyed.sort(key=lambda t: t[:3])
        classes = [t[3] for t in keyed]
        index = {}
        for k, orbit in enumerate(classes):
            for y in orbit:
                index[y] = k
        reps = [c.unpack(t[2]) for t in keyed]
        return cls(G, classes, index, [t[0] for t in keyed], reps)

    @property
    def sizes(self) -> list[int]:
        return [len(cl) for cl in self.classes]

    def class_of(self, p: Permutation) -> int:
        return self.index[self.group.codec.pack(p)]

    def classes_of_order(self, k: int) -> list[int]:
        return [i for i, o in enumerate(self.orders) if o == k]

    def elements_of_order(self, k: int) -> Iterator:
        for i in self.classes_of_order(k):
            yield from self.classes[i]


def conjugacy_classes(G: PermGroup, element_budget: int = DEFAULT_ELEMENT_BUDGET
                      ) -> list[tuple[Permutation, int]]:
    data = G.class_data(element_budget)
    return list(zip(data.representatives, data.sizes))


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return build_chain([Permutation.identity(1)], name="S_1")
    gens = [Permutation.from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return build_chain(gens, name=f"S_{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return build_chain([Permutation.identity(n)], name=f"A_{n}")
    gens = [Permutation.from_cycles(n, [(0, 1, 2)])]
    if n > 3:
        cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens.append(Permutation.from_cycles(n, [cyc]))
    return build_chain(gens, name=f"A_{n}")


def cyclic_group(n: int) -> PermGroup:
    gen = Permutation.from_cycles(n, [tuple(range(n))]) if n > 1 else Permutation.identity(1)
    return build_chain([gen], name=f"C_{n}")


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on the n vertices of a polygon (n >= 3)."""
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return build_chain([rot, ref], name=f"D_{2 * n}")
