"""Character tables, class structure constants and the brute-force count.

Character values are exact cyclotomic term lists ``sum c_k * zeta_n^k``
with rational ``c_k``; they are evaluated numerically with mpmath at
``PRECISION`` bits.  The structure constant

    a(i, j, k) = |G| / (|C(g_i)| |C(g_j)|) * sum_chi chi(g_i) chi(g_j) conj(chi(g_k)) / chi(1)

counts pairs (x, y) in class i x class j with x * y equal to a fixed
element of class k.  A result that is not within ``INTEGRALITY_TOL`` of an
integer raises instead of being rounded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import mpmath

from .fields import field as gf
from .linear import MatrixGroupSpec, SemilinearMap, action_permutation, action_points, diagonal, sl_generators
from .perm import (ClassData, DEFAULT_ELEMENT_BUDGET, PermGroup, Permutation, build_chain)

PRECISION = 96
INTEGRALITY_TOL = 1e-6
ORTHOGONALITY_TOL = 1e-9


class TableError(ValueError):
    pass


class IntegralityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Cyclotomic:
    """``sum(c * zeta_conductor**e for e, c in terms)``."""

    conductor: int
    terms: tuple[tuple[int, Fraction], ...]

    @classmethod
    def integer(cls, v: int) -> "Cyclotomic":
        return cls(1, ((0, Fraction(v)),))

    def rational_value(self) -> Fraction | None:
        if all(e % self.conductor == 0 for e, _ in self.terms):
            return sum((c for _, c in self.terms), Fraction(0))
        return None

    def evaluate(self):
        with mpmath.workprec(PRECISION):
            s = mpmath.mpc(0)
            for e, c in self.terms:
                z = mpmath.expjpi(mpmath.mpf(2 * (e % self.conductor)) / self.conductor)
                s += z * mpmath.mpf(c.numerator) / c.denominator
            return s

    def to_json(self):
        r = self.rational_value()
        if r is not None and r.denominator == 1:
            return int(r)
        return {"conductor": self.conductor,
                "terms": [[e, c.numerator, c.denominator] for e, c in self.terms]}


def zeta_sum(n: int, exponents: Sequence[int], coeff: int = 1) -> Cyclotomic:
    return Cyclotomic(n, tuple((e % n, Fraction(coeff)) for e in exponents))


def _parse_value(v, where: str) -> Cyclotomic:
    if isinstance(v, bool):
        raise TableError(f"{where}: boolean character value")
    if isinstance(v, int):
        return Cyclotomic.integer(v)
    if isinstance(v, dict):
        n = v.get("conductor")
        terms = v.get("terms")
        if not isinstance(n, int) or n < 1 or not isinstance(terms, list):
            raise TableError(f"{where}: malformed cyclotomic value")
        out = []
        for t in terms:
            if (not isinstance(t, list) or len(t) != 3
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in t) or t[2] == 0):
                raise TableError(f"{where}: malformed term {t!r}")
            out.append((t[0] % n, Fraction(t[1], t[2])))
        return Cyclotomic(n, tuple(out))
    raise TableError(f"{where}: unsupported character value {v!r}")


@dataclass(frozen=True)
class ClassInfo:
    label: str
    element_order: int
    size: int
    centralizer_order: int
    representative: Permutation | None = None


@dataclass
class CharacterTable:
    name: str
    order: int
    classes: list[ClassInfo]
    irreducibles: list[list[Cyclotomic]]
    group: PermGroup | None = None
    _numeric: list | None = field(default=None, repr=False)

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].rational_value()) for row in self.irreducibles]

    def numeric(self) -> list[list]:
        if self._numeric is None:
            self._numeric = [[v.evaluate() for v in row] for row in self.irreducibles]
        return self._numeric

    def class_index(self, label: str) -> int:
        for i, c in enumerate(self.classes):
            if c.label == label:
                return i
        raise KeyError(label)

    def classes_of_order(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.element_order == k]

    def to_json(self) -> dict:
        classes = []
        for c in self.classes:
            d = {"label": c.label, "element_order": c.element_order, "size": str(c.size)}
            if c.representative is not None:
                d["representative"] = list(c.representative.images)
            classes.append(d)
        out = {"name": self.name, "order": str(self.order), "classes": classes,
               "irreducibles": [[v.to_json() for v in row] for row in self.irreducibles]}
        if self.group is not None:
            out["group"] = [list(g.images) for g in self.group.generators]
        return out


def validate(table: CharacterTable) -> list[str]:
    """Every load-gate violation, as human-readable strings."""
    errs = []
    order = table.order
    labels = [c.label for c in table.classes]
    dup = sorted({l for l in labels if labels.count(l) > 1})
    if dup:
        errs.append(f"duplicated class labels: {dup}")
    if not table.classes:
        return errs + ["no classes"]
    for c in table.classes:
        if c.size < 1 or order % c.size:
            errs.append(f"class {c.label}: size {c.size} does not divide |G| = {order}")
        elif c.size * c.centralizer_order != order:
            errs.append(f"class {c.label}: size * centralizer != |G|")
    if sum(c.size for c in table.classes) != order:
        errs.append(f"class sizes sum to {sum(c.size for c in table.classes)}, not {order}")
    first = table.classes[0]
    if first.size != 1 or first.element_order != 1:
        errs.append("first class must be the identity class")
    h = len(table.classes)
    if len(table.irreducibles) != h:
        errs.append(f"{len(table.irreducibles)} irreducibles for {h} classes")
    if any(len(row) != h for row in table.irreducibles):
        errs.append("character rows must have one value per class")
        return errs
    degs = []
    for r, row in enumerate(table.irreducibles):
        d = row[0].rational_value()
        if d is None or d.denominator != 1 or d < 1:
            errs.append(f"irreducible {r}: degree {row[0]} is not a positive integer")
        else:
            degs.append(int(d))
    if len(degs) == len(table.irreducibles) and sum(d * d for d in degs) != order:
        errs.append(f"sum of squared degrees is {sum(d * d for d in degs)}, not {order}")
    if errs:
        return errs
    vals = table.numeric()
    sizes = [c.size for c in table.classes]
    with mpmath.workprec(PRECISION):
        for a in range(h):
            for b in range(a, h):
                s = mpmath.fsum(sizes[k] * vals[a][k] * mpmath.conj(vals[b][k]) for k in range(h))
                want = order if a == b else 0
                if abs(s - want) > ORTHOGONALITY_TOL * order:
                    errs.append(f"row orthogonality fails for irreducibles {a}, {b}")
    return errs


def _check(table: CharacterTable) -> CharacterTable:
    errs = validate(table)
    if errs:
        raise TableError(f"table {table.name!r} rejected:\n  " + "\n  ".join(errs))
    return table


def table_from_json(obj) -> CharacterTable:
    if not isinstance(obj, dict):
        raise TableError("character table must be a JSON object")
    name = obj.get("name")
    if not isinstance(name, str):
        raise TableError("table needs a name")
    try:
        order = int(str(obj.get("order")))
    except ValueError:
        raise TableError("order must be a decimal string") from None
    raw_classes = obj.get("classes")
    if not isinstance(raw_classes, list):
        raise TableError("classes must be a list")
    classes = []
    for n, c in enumerate(raw_classes):
        try:
            size = int(str(c["size"]))
            eo = c["element_order"]
            label = c["label"]
        except (KeyError, TypeError, ValueError):
            raise TableError(f"class {n}: needs label, element_order and decimal size") from None
        if not isinstance(eo, int) or isinstance(eo, bool) or eo < 1 or not isinstance(label, str):
            raise TableError(f"class {n}: bad label or element_order")
        rep = Permutation(c["representative"]) if c.get("representative") is not None else None
        classes.append(ClassInfo(label, eo, size, order // size if size and order % size == 0 else 0, rep))
    irr = obj.get("irreducibles")
    if not isinstance(irr, list) or not all(isinstance(r, list) for r in irr):
        raise TableError("irreducibles must be a list of rows")
    rows = [[_parse_value(v, f"irreducible {r} class {k}") for k, v in enumerate(row)]
            for r, row in enumerate(irr)]
    group = None
    if obj.get("group") is not None:
        group = build_chain([Permutation(g) for g in obj["group"]], name=name)
        if group.order != order:
            raise TableError(f"table {name!r}: generators give order {group.order}, not {order}")
    return _check(CharacterTable(name, order, classes, rows, group))


def load_table(path: str | Path) -> CharacterTable:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise TableError(f"malformed JSON: {exc}") from None
    return table_from_json(obj)


# -- structure constants ----------------------------------------------------------

def structure_constant(table: CharacterTable, i: int, j: int, k: int) -> int:
    h = len(table.classes)
    for x in (i, j, k):
        if not 0 <= x < h:
            raise IndexError(f"class index {x} out of range 0..{h - 1}")
    vals = table.numeric()
    degs = table.degrees
    ci, cj = table.classes[i], table.classes[j]
    with mpmath.workprec(PRECISION):
        s = mpmath.fsum(row[i] * row[j] * mpmath.conj(row[k]) / d for row, d in zip(vals, degs))
        value = s * table.order / (ci.centralizer_order * cj.centralizer_order)
        nearest = int(mpmath.nint(value.real))
        err = abs(value - nearest)
    if err > INTEGRALITY_TOL:
        raise IntegralityError(f"a({i},{j},{k}) = {mpmath.nstr(value, 15)} is not an integer")
    if nearest < 0:
        raise IntegralityError(f"a({i},{j},{k}) = {nearest} is negative")
    return nearest


def brute_force_structure_constant(cd: ClassData, i: int, j: int, k: int) -> int:
    """Pairs (x, y) in class i x class j with x*y equal to the least element of class k."""
    c = cd.group.codec
    z = c.pack(cd.representatives[k])
    index = cd.index
    count = 0
    for x in cd.classes[i]:
        if index[c.mul(c.inv(x), z)] == j:
            count += 1
    return count


@dataclass(frozen=True)
class TripleCount:
    i: int
    j: int
    k: int
    value: int

    def as_list(self) -> list[int]:
        return [self.i, self.j, self.k, self.value]


def triple_count(table: CharacterTable, m: int, n: int, product_orders=(2,)) -> list[TripleCount]:
    return [TripleCount(i, j, k, structure_constant(table, i, j, k))
            for i in table.classes_of_order(m)
            for j in table.classes_of_order(n)
            for k in (x for o in product_orders for x in table.classes_of_order(o))]


def brute_triple_count(cd: ClassData, m: int, n: int, product_orders=(2,)) -> list[TripleCount]:
    return [TripleCount(i, j, k, brute_force_structure_constant(cd, i, j, k))
            for i in cd.classes_of_order(m)
            for j in cd.classes_of_order(n)
            for k in (x for o in product_orders for x in cd.classes_of_order(o))]


def class_alignment(table: CharacterTable, cd: ClassData) -> list[int]:
    """Map table class numbers to ``cd`` class numbers via the representatives."""
    out = []
    for c in table.classes:
        if c.representative is None:
            raise TableError(f"class {c.label} has no representative")
        k = cd.class_of(c.representative)
        if len(cd.classes[k]) != c.size or cd.orders[k] != c.element_order:
            raise TableError(f"class {c.label} does not match the permutation class")
        out.append(k)
    if sorted(out) != list(range(len(cd.classes))):
        raise TableError("table classes do not biject with the group's classes")
    return out


# -- table builders ----------------------------------------------------------------

def _info(label, rep: Permutation, size: int, order: int) -> ClassInfo:
    return ClassInfo(label, rep.order(), size, order // size, rep)


def cyclic_table(n: int) -> CharacterTable:
    c = Permutation.from_cycles(n, [tuple(range(n))]) if n > 1 else Permutation.identity(1)
    classes = [_info(f"c^{b}", c ** b, 1, n) for b in range(n)]
    irr = [[zeta_sum(n, [a * b]) for b in range(n)] for a in range(n)]
    return _check(CharacterTable(f"C_{n}", n, classes, irr, build_chain([c])))


def dihedral_table(n: int) -> CharacterTable:
    """Dihedral group of order 2n (n >= 3) acting on the n-gon."""
    if n < 3:
        raise TableError("dihedral tables need n >= 3")
    r = Permutation([(i + 1) % n for i in range(n)])
    s = Permutation([(-i) % n for i in range(n)])
    order = 2 * n
    classes = [_info("1", r ** 0, 1, order)]
    half = n // 2
    for k in range(1, half + 1):
        size = 1 if 2 * k == n else 2
        classes.append(_info(f"r^{k}", r ** k, size, order))
    one, neg = Cyclotomic.integer(1), Cyclotomic.integer(-1)
    rot = list(range(half + 1))
    if n % 2:
        classes.append(_info("s", s, n, order))
        irr = [[one] * len(classes), [one] * (half + 1) + [neg]]
    else:
        classes += [_info("s", s, half, order), _info("sr", s * r, half, order)]
        alt = [Cyclotomic.integer((-1) ** k) for k in rot]
        irr = [[one] * len(classes),
               [one] * (half + 1) + [neg, neg],
               alt + [one, neg],
               alt + [neg, one]]
    for j in range(1, (n - 1) // 2 + 1):
        row = [Cyclotomic.integer(2)] + [zeta_sum(n, [j * k, -j * k]) for k in rot[1:]]
        row += [Cyclotomic.integer(0)] * (1 if n % 2 else 2)
        irr.append(row)
    return _check(CharacterTable(f"D_{order}", order, classes, irr, build_chain([r, s])))


def partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def mn_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama rule on beta-sets: chi^lam at cycle type mu."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    beta = [p + len(lam) - 1 - i for i, p in enumerate(lam)]
    bs = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in bs:
            sign = (-1) ** sum(1 for x in beta if b - r < x < b)
            new = sorted((bs - {b}) | {b - r}, reverse=True)
            L = len(new)
            shape = tuple(x - (L - 1 - i) for i, x in enumerate(new))
            total += sign * mn_character(tuple(p for p in shape if p), rest)
    return total


def _class_size_sym(mu: tuple[int, ...]) -> int:
    n = sum(mu)
    denom = 1
    for k in set(mu):
        c = mu.count(k)
        denom *= k ** c * math.factorial(c)
    return math.factorial(n) // denom


def _perm_of_type(mu: tuple[int, ...]) -> Permutation:
    n = sum(mu)
    cycles, start = [], 0
    for k in mu:
        cycles.append(tuple(range(start, start + k)))
        start += k
    return Permutation.from_cycles(n, cycles)


def symmetric_table(n: int) -> CharacterTable:
    parts = list(partitions(n))
    order = math.factorial(n)
    classes = [_info("".join(map(str, mu)) if n < 10 else "-".join(map(str, mu)),
                     _perm_of_type(mu), _class_size_sym(mu), order)
               for mu in reversed(parts)]
    mus = list(reversed(parts))
    irr = [[Cyclotomic.integer(mn_character(lam, mu)) for mu in mus] for lam in parts]
    gens = [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])] \
        if n > 1 else [Permutation.identity(1)]
    return _check(CharacterTable(f"S_{n}", order, classes, irr, build_chain(gens)))


def pgl2_table(q: int) -> CharacterTable:
    """PGL_2(q), q an odd prime, on the projective line."""
    F = gf(q)
    if q < 5:
        raise TableError("pgl2_table needs an odd prime q >= 5")
    order = q * (q * q - 1)
    spec = MatrixGroupSpec(2, F, (), "projective-line")
    pts = action_points(spec)

    def perm(mat):
        return action_permutation(spec, SemilinearMap(mat), pts)

    w = F.primitive
    F2 = gf(q, 2)
    eps = F2.primitive
    eq = F2.frobenius(eps)
    trace, norm = F2.add(eps, eq), F2.mul(eps, eq)
    if trace >= q or norm >= q:
        raise TableError("trace/norm fell outside the prime field")
    companion = ((0, F.neg(norm)), (1, trace))
    gamma = perm(companion)
    unip = perm(((1, 1), (0, 1)))
    one = Cyclotomic.integer
    classes = [_info("1", unip ** 0, 1, order), _info("u", unip, q * q - 1, order)]
    split = range(1, (q - 1) // 2 + 1)
    nonsplit = range(1, (q + 1) // 2 + 1)
    for k in split:
        size = q * (q + 1) // (2 if 2 * k == q - 1 else 1)
        classes.append(_info(f"d{k}", perm(diagonal(F, [F.pow(w, k), 1])), size, order))
    for k in nonsplit:
        size = q * (q - 1) // (2 if 2 * k == q + 1 else 1)
        classes.append(_info(f"e{k}", gamma ** k, size, order))
    sgn = [one(1), one(1)] + [one((-1) ** k) for k in split] + [one((-1) ** k) for k in nonsplit]
    triv = [one(1)] * len(classes)
    st = [one(q), one(0)] + [one(1)] * len(split) + [one(-1)] * len(nonsplit)
    st_sgn = [one(q), one(0)] + [one((-1) ** k) for k in split] + [one(-(-1) ** k) for k in nonsplit]
    irr = [triv, sgn, st, st_sgn]
    for j in range(1, (q - 3) // 2 + 1):
        irr.append([one(q + 1), one(1)] + [zeta_sum(q - 1, [j * k, -j * k]) for k in split]
                   + [one(0)] * len(nonsplit))
    for j in range(1, (q - 1) // 2 + 1):
        irr.append([one(q - 1), one(-1)] + [one(0)] * len(split)
                   + [zeta_sum(q + 1, [j * k, -j * k], -1) for k in nonsplit])
    G = build_chain([perm(m.matrix) for m in sl_generators(F, 2)] + [perm(diagonal(F, [w, 1]))])
    return _check(CharacterTable(f"PGL_2({q})", order, classes, irr, G))


def oracle_sweep(table: CharacterTable, element_budget: int = DEFAULT_ELEMENT_BUDGET):
    """Compare formula and brute force on every class triple.

    Returns the list of disagreements (empty when the two paths agree).
    """
    if table.group is None:
        raise TableError("oracle sweep needs the table's permutation group")
    cd = table.group.class_data(element_budget)
    align = class_alignment(table, cd)
    h = len(table.classes)
    bad = []
    for i in range(h):
        for j in range(h):
            for k in range(h):
                a = structure_constant(table, i, j, k)
                b = brute_force_structure_constant(cd, align[i], align[j], align[k])
                if a != b:
                    bad.append((i, j, k, a, b))
    return bad
