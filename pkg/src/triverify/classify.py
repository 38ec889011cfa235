"""Verdicts for "G is a (2,m,n)-group" and replay of classification tables.

A witness is a pair (g, h) with o(g) = m, o(h) = n, (gh)^2 = 1 and
<g, h> = G.  For noncyclic G the product gh = 1 is useless (it forces
<g, h> = <g>), so only involutions are accepted as products.

``verify_triple`` runs, in order: the cycle bound (natural symmetric groups
only), the coset-parity rule (entries with an index-2 socle), class-based
counting followed by an exhaustive conjugacy-reduced witness search, and
finally a seeded random search.  Every decision is written to a JSON
transcript that ``replay`` reproduces exactly.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .arith import ArithError, euler_characteristic, parse_prime_power
from .catalog import Catalog, CertifiedEntry
from .chartab import brute_triple_count
from .perm import (DEFAULT_ELEMENT_BUDGET, PermGroup, Permutation, ProductReplacement,
                   build_chain, raw_order)

PROVEN_YES = "PROVEN_YES"
PROVEN_NO = "PROVEN_NO"
INCONCLUSIVE = "INCONCLUSIVE"

DEFAULT_SEED = 0xC2C2C2C2
DEFAULT_SAMPLE_BUDGET = 1_000_000
DEFAULT_PAIR_BUDGET = 100_000_000


@dataclass(frozen=True)
class Budgets:
    element_budget: int = DEFAULT_ELEMENT_BUDGET
    sample_budget: int = DEFAULT_SAMPLE_BUDGET
    pair_budget: int = DEFAULT_PAIR_BUDGET

    def __post_init__(self):
        for k, v in self.as_dict().items():
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{k} must be a positive integer")

    def as_dict(self) -> dict:
        return {"element_budget": self.element_budget, "sample_budget": self.sample_budget,
                "pair_budget": self.pair_budget}


@dataclass
class Verdict:
    status: str
    witness: tuple[Permutation, Permutation] | None = None
    refutation_rule: str | None = None
    transcript: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.transcript, sort_keys=True, indent=2)


# -- cycle bound --------------------------------------------------------------------

def _partitions_min(n: int, k: int):
    """Yield (cycle_count, parity) for each cycle type on n points of order exactly k."""
    divs = [d for d in range(1, k + 1) if k % d == 0]

    def rec(remaining, idx, cycles, l, moved_parity):
        if remaining == 0:
            if l == k:
                yield cycles, moved_parity
            return
        for t in range(idx, len(divs)):
            d = divs[t]
            if d > remaining:
                break
            yield from rec(remaining - d, t, cycles + 1, math.lcm(l, d), moved_parity ^ ((d - 1) & 1))

    yield from rec(n, 0, 0, 1, 0)


@lru_cache(maxsize=None)
def min_cycles(n: int, k: int, parity: int | None = None) -> int | None:
    """Fewest cycles (fixed points included) of a permutation of n points of order k.

    ``parity`` 0 or 1 restricts to even or odd permutations.  None when no
    such permutation exists.
    """
    best = None
    for c, p in _partitions_min(n, k):
        if parity is not None and p != parity:
            continue
        if best is None or c < best:
            best = c
    return best


def cycle_bound_refute(G: PermGroup, m: int, n: int, natural_symmetric: bool = False) -> dict | None:
    """Riemann-Hurwitz bound for a transitive G <= S_d generated by g, h with (gh)^2 = 1.

    Writing c(x) for the cycle count, c(g) + c(h) + c(gh) <= d + 2.  For the
    full symmetric group in its natural action the parities of g, h, gh are
    also constrained (an odd generator is needed and sign is multiplicative),
    and each parity pattern is tested separately.  Only natural symmetric
    groups are refuted; the bound is representation-relative.
    """
    d = G.degree
    if not natural_symmetric or not G.is_transitive():
        return None
    limit = d + 2
    cases = []
    for pg, ph in ((0, 1), (1, 0), (1, 1)):
        parts = [min_cycles(d, m, pg), min_cycles(d, n, ph), min_cycles(d, 2, pg ^ ph)]
        total = None if None in parts else sum(parts)
        cases.append({"parities": [pg, ph, pg ^ ph], "min_cycles": parts, "total": total})
    if all(c["total"] is None or c["total"] > limit for c in cases):
        return {"rule": "cycle-bound", "degree": d, "limit": limit, "cases": cases}
    return None


# -- coset parity --------------------------------------------------------------------

def coset_orders(G: PermGroup, socle: PermGroup, element_budget: int) -> tuple[set, set]:
    cd = G.class_data(element_budget)
    inside, outside = set(), set()
    for rep, o in zip(cd.representatives, cd.orders):
        (inside if socle.contains(rep) else outside).add(o)
    return inside, outside


def coset_parity_refute(G: PermGroup, socle: PermGroup | None, m: int, n: int,
                        element_budget: int, product_orders=(2,)) -> dict | None:
    """Refute when no coset assignment of g, h (mod an index-2 socle) works.

    g and h cannot both lie in the socle; the coset of gh is then forced,
    and it must contain an admissible product.
    """
    if socle is None or G.order != 2 * socle.order or G.order > element_budget:
        return None
    inside, outside = coset_orders(G, socle, element_budget)
    by = (inside, outside)
    feasible = []
    for cg, ch in ((0, 1), (1, 0), (1, 1)):
        if m in by[cg] and n in by[ch] and any(o in by[cg ^ ch] for o in product_orders):
            feasible.append([cg, ch])
    if feasible:
        return None
    return {"rule": "coset-parity", "inside_orders": sorted(inside), "outside_orders": sorted(outside)}


# -- witnesses ------------------------------------------------------------------------

def is_cyclic(G: PermGroup) -> bool:
    gens = G.generators
    if any(g.order() == G.order for g in gens):
        return True
    if any(a * b != b * a for a, b in itertools.combinations(gens, 2)):
        return False
    # abelian: cyclic iff the lcm of generator orders is |G|
    return math.lcm(*(g.order() for g in gens)) == G.order


def check_witness(G: PermGroup, g: Permutation, h: Permutation, m: int, n: int,
                  cyclic_ok: bool = False) -> bool:
    """Re-check a witness from scratch: membership, orders, product, generation."""
    if not (G.contains(g) and G.contains(h)):
        return False
    if g.order() != m or h.order() != n:
        return False
    gh = g * h
    if not (gh * gh).is_identity():
        return False
    if gh.is_identity() and not cyclic_ok:
        return False
    return build_chain([g, h], target_order=G.order).order == G.order


def _pair_generates(G: PermGroup, g_raw, h_raw) -> bool:
    c = G.codec
    return build_chain([c.unpack(g_raw), c.unpack(h_raw)], target_order=G.order).order == G.order


def class_search(G: PermGroup, m: int, n: int, budgets: Budgets, product_orders,
                 seed: int = 0) -> tuple[dict, tuple | None]:
    """Structure-constant counts plus exhaustive search up to simultaneous conjugacy.

    Every pair with o(gh) in ``product_orders`` is conjugate to one whose
    product is the chosen representative z of its class, so iterating the
    smaller of the two classes for each fixed z covers all pairs.  The
    iteration order is a seeded shuffle: pairs generating proper subgroups
    tend to cluster in sorted order.
    """
    cd = G.class_data(budgets.element_budget)
    c = G.codec
    counts = brute_triple_count(cd, m, n, product_orders)
    log = {"stage": "class-search", "classes": len(cd.classes),
           "triples": [t.as_list() for t in counts]}
    # large product classes first: pairs through small (e.g. transvection) classes
    # tend to lie in proper subgroups
    nonzero = sorted((t for t in counts if t.value), key=lambda t: (-len(cd.classes[t.k]), t.i, t.j, t.k))
    if not nonzero:
        log["outcome"] = "zero-structure-constants"
        return log, None
    work = sum(min(len(cd.classes[t.i]), len(cd.classes[t.j])) for t in nonzero)
    log["pair_tests"] = work
    if work > budgets.pair_budget:
        log["outcome"] = "pair-budget-exceeded"
        return log, None
    index = cd.index
    rng = random.Random(seed)
    tested = 0
    for t in nonzero:
        z = c.pack(cd.representatives[t.k])
        if len(cd.classes[t.i]) <= len(cd.classes[t.j]):
            order = sorted(cd.classes[t.i])
            rng.shuffle(order)
            cands = ((x, c.mul(c.inv(x), z)) for x in order)
            want = t.j
            pick = lambda pair: pair[1]
        else:
            order = sorted(cd.classes[t.j])
            rng.shuffle(order)
            cands = ((c.mul(z, c.inv(y)), y) for y in order)
            want = t.i
            pick = lambda pair: pair[0]
        for pair in cands:
            if index[pick(pair)] != want:
                continue
            tested += 1
            if _pair_generates(G, *pair):
                log["outcome"] = "witness"
                log["generation_tests"] = tested
                log["triple"] = [t.i, t.j, t.k]
                return log, pair
    log["outcome"] = "exhausted"
    log["generation_tests"] = tested
    return log, None


def random_search(G: PermGroup, m: int, n: int, budgets: Budgets, seed: int,
                  product_orders) -> tuple[dict, tuple | None]:
    pr = ProductReplacement(G, seed)
    c = G.codec
    hits = {"g": 0, "h": 0, "product": 0}
    for sample in range(budgets.sample_budget):
        a, b = pr.next_raw(), pr.next_raw()
        oa, ob = raw_order(a), raw_order(b)
        if oa % m or ob % n:
            continue
        g, h = c.power(a, oa // m), c.power(b, ob // n)
        hits["g"] += 1
        if raw_order(c.mul(g, h)) not in product_orders:
            continue
        hits["product"] += 1
        if _pair_generates(G, g, h):
            return {"stage": "random-search", "outcome": "witness", "samples": sample + 1,
                    "seed": seed, "hits": hits}, (g, h)
    return {"stage": "random-search", "outcome": "budget-exhausted",
            "samples": budgets.sample_budget, "seed": seed, "hits": hits}, None


# -- pipeline -------------------------------------------------------------------------

def _chi_dict(order: int, m: int, n: int) -> dict:
    r = euler_characteristic(order, m, n)
    return {"value": str(r.value) if r.integral else str(r.chi), "formatted": r.formatted()}


def verify_triple(entry: CertifiedEntry | PermGroup, m: int, n: int,
                  budgets: Budgets | None = None, seed: int = DEFAULT_SEED) -> Verdict:
    budgets = budgets or Budgets()
    if isinstance(entry, PermGroup):
        G, socle, natural, name = entry, None, False, entry.name or "G"
    else:
        G, socle, natural, name = entry.group, entry.socle, entry.natural_symmetric, entry.name
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    within = G.order <= budgets.element_budget
    cyclic = is_cyclic(G)
    product_orders = (1, 2) if cyclic else (2,)
    tr = {"group": name, "order": str(G.order), "degree": G.degree, "m": m, "n": n,
          "seed": seed, "budgets": budgets.as_dict(), "cyclic": cyclic, "stages": [],
          "chi": _chi_dict(G.order, m, n)}
    stages = tr["stages"]

    def finish(status, rule=None, witness=None):
        tr["status"] = status
        tr["refutation_rule"] = rule
        w = None
        if witness is not None:
            c = G.codec
            w = (c.unpack(witness[0]), c.unpack(witness[1]))
            if not check_witness(G, w[0], w[1], m, n, cyclic_ok=cyclic):
                raise AssertionError("search produced an invalid witness")
            tr["witness"] = {"g": list(w[0].images), "h": list(w[1].images)}
        else:
            tr["witness"] = None
        return Verdict(status, w, rule, tr)

    if G.order % m or G.order % n:
        stages.append({"stage": "order-divisibility", "outcome": "refuted"})
        return finish(PROVEN_NO, "zero-structure-constants")

    ref = cycle_bound_refute(G, m, n, natural)
    stages.append({"stage": "cycle-bound", "applied": natural, "outcome": "refuted" if ref else "pass",
                   **({"detail": ref} if ref else {})})
    if ref:
        return finish(PROVEN_NO, "cycle-bound")

    ref = coset_parity_refute(G, socle, m, n, budgets.element_budget, product_orders)
    stages.append({"stage": "coset-parity", "applied": socle is not None and within,
                   "outcome": "refuted" if ref else "pass", **({"detail": ref} if ref else {})})
    if ref:
        return finish(PROVEN_NO, "coset-parity")

    if within:
        log, pair = class_search(G, m, n, budgets, product_orders, seed)
        stages.append(log)
        if pair is not None:
            return finish(PROVEN_YES, witness=pair)
        if log["outcome"] == "zero-structure-constants":
            return finish(PROVEN_NO, "zero-structure-constants")
        if log["outcome"] == "exhausted":
            return finish(PROVEN_NO, "exhausted-search")

    log, pair = random_search(G, m, n, budgets, seed, product_orders)
    stages.append(log)
    if pair is not None:
        return finish(PROVEN_YES, witness=pair)
    return finish(INCONCLUSIVE)


def replay(transcript: dict, catalog: Catalog) -> tuple[bool, Verdict]:
    """Re-run a transcript's inputs; True when the new transcript is identical."""
    entry = catalog.get(transcript["group"])
    if entry is None:
        raise KeyError(transcript["group"])
    b = Budgets(**transcript["budgets"])
    v = verify_triple(entry, transcript["m"], transcript["n"], b, transcript["seed"])
    same = json.dumps(v.transcript, sort_keys=True) == json.dumps(transcript, sort_keys=True)
    return same, v


# -- tables -----------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    group: str
    m: int
    n: int
    expected_chi: str | None
    expected: str

    @classmethod
    def from_json(cls, obj) -> "TableRow":
        try:
            row = cls(str(obj["group"]), int(obj["m"]), int(obj["n"]), obj.get("expected_chi"),
                      str(obj["expected"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed row {obj!r}: {exc}") from None
        if row.expected not in ("YES", "NO"):
            raise ValueError(f"row {obj!r}: expected must be YES or NO")
        if row.expected_chi is not None:
            parse_prime_power(row.expected_chi)
        return row


def load_rows(data) -> list[TableRow]:
    if not isinstance(data, dict) or not isinstance(data.get("rows"), list):
        raise ValueError("row file must be an object with a 'rows' list")
    return [TableRow.from_json(r) for r in data["rows"]]


def run_tables(catalog: Catalog, rows: Sequence[TableRow], budgets: Budgets | None = None,
               seed: int = DEFAULT_SEED) -> dict:
    results = []
    for row in rows:
        rec = {"group": row.group, "m": row.m, "n": row.n, "expected": row.expected,
               "expected_chi": row.expected_chi}
        entry = catalog.get(row.group)
        if entry is None:
            rec.update(outcome="SKIPPED", reason="group not in catalog")
            results.append(rec)
            continue
        r = euler_characteristic(entry.order, row.m, row.n)
        rec["chi"] = r.formatted()
        chi_ok = True
        if row.expected_chi is not None:
            chi_ok = r.integral and parse_prime_power(row.expected_chi) == r.value
        rec["chi_match"] = chi_ok
        v = verify_triple(entry, row.m, row.n, budgets, seed)
        rec["status"] = v.status
        rec["refutation_rule"] = v.refutation_rule
        rec["witness"] = v.transcript["witness"]
        want = PROVEN_YES if row.expected == "YES" else PROVEN_NO
        if not chi_ok or (v.status != INCONCLUSIVE and v.status != want):
            rec["outcome"] = "FAIL"
        elif v.status == INCONCLUSIVE:
            rec["outcome"] = "INCONCLUSIVE"
        else:
            rec["outcome"] = "PASS"
        results.append(rec)
    summary = {k: sum(1 for r in results if r["outcome"] == k)
               for k in ("PASS", "FAIL", "SKIPPED", "INCONCLUSIVE")}
    return {"seed": seed, "budgets": (budgets or Budgets()).as_dict(), "rows": results,
            "summary": summary}


def format_report(report: dict) -> str:
    lines = [f"{'group':<22} {'{m,n}':<9} {'chi':<16} {'expected':<8} {'verdict':<13} outcome"]
    for r in report["rows"]:
        mn = "{%d,%d}" % (r["m"], r["n"])
        lines.append(f"{r['group']:<22} {mn:<9} {r.get('chi', '-'):<16} {r['expected']:<8} "
                     f"{r.get('status', '-'):<13} {r['outcome']}")
    s = report["summary"]
    lines.append(f"PASS {s['PASS']}  FAIL {s['FAIL']}  SKIPPED {s['SKIPPED']}  "
                 f"INCONCLUSIVE {s['INCONCLUSIVE']}")
    return "\n".join(lines)
