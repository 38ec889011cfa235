"""Element-order spectra, prime graphs and the prime-divisibility filters."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .arith import ArithError, is_prime, p_part, prime_factors
from .perm import DEFAULT_ELEMENT_BUDGET, PermGroup, enumerate_elements, raw_order

EXHAUSTIVE = "exhaustive"
CLASS_BASED = "class-based"


def order_spectrum(G: PermGroup, mode: str = CLASS_BASED,
                   element_budget: int = DEFAULT_ELEMENT_BUDGET) -> frozenset[int]:
    """The set of element orders of G.

    Raises :class:`~triverify.perm.UnsupportedError` above the element budget.
    """
    if mode == EXHAUSTIVE:
        return frozenset(raw_order(x) for x in enumerate_elements(G, element_budget))
    if mode == CLASS_BASED:
        return frozenset(G.class_data(element_budget).orders)
    raise ValueError(f"unknown spectrum mode {mode!r}")


def sylow_cyclic(order: int, spectrum: frozenset[int], p: int) -> bool:
    """A Sylow p-subgroup is cyclic iff some element has order |G|_p."""
    if order % p:
        raise ArithError(f"{p} does not divide the group order")
    return p_part(order, p)[0] in spectrum


def max_independent_set(vertices, adjacent) -> tuple[int, ...]:
    """Largest vertex subset with no two members adjacent (exhaustive search).

    Ties are broken by the lexicographically least sorted tuple.
    """
    verts = sorted(vertices)
    for size in range(len(verts), 0, -1):
        for combo in itertools.combinations(verts, size):
            if all(not adjacent(a, b) for a, b in itertools.combinations(combo, 2)):
                return combo
    return ()


@dataclass(frozen=True)
class SpectrumProfile:
    name: str
    order: int
    spectrum: tuple[int, ...]
    pi: tuple[int, ...]
    pi_c: tuple[int, ...]
    pi_nc: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    t: int
    t_c: int
    independent_set: tuple[int, ...]
    independent_set_c: tuple[int, ...]

    def adjacent(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges

    def as_dict(self) -> dict:
        return {
            "group": self.name,
            "order": str(self.order),
            "spectrum": list(self.spectrum),
            "pi": list(self.pi),
            "pi_c": list(self.pi_c),
            "pi_nc": list(self.pi_nc),
            "edges": [list(e) for e in self.edges],
            "t": self.t,
            "t_c": self.t_c,
            "independent_set": list(self.independent_set),
            "independent_set_c": list(self.independent_set_c),
        }


def profile_from_spectrum(name: str, order: int, spectrum) -> SpectrumProfile:
    spec = frozenset(spectrum)
    pi = tuple(prime_factors(order)) if order > 1 else ()
    pi_c = tuple(p for p in pi if sylow_cyclic(order, spec, p))
    pi_nc = tuple(p for p in pi if p not in pi_c)
    edges = tuple((p, q) for p, q in itertools.combinations(pi, 2) if p * q in spec)
    edge_set = set(edges)

    def adjacent(a, b):
        return (min(a, b), max(a, b)) in edge_set

    ind = max_independent_set(pi, adjacent)
    ind_c = max_independent_set(pi_c, adjacent)
    return SpectrumProfile(name, order, tuple(sorted(spec)), pi, pi_c, pi_nc, edges,
                           len(ind), len(ind_c), ind, ind_c)


def prime_graph(G: PermGroup, mode: str = CLASS_BASED,
                element_budget: int = DEFAULT_ELEMENT_BUDGET) -> SpectrumProfile:
    spec = order_spectrum(G, mode, element_budget)
    return profile_from_spectrum(G.name or "G", G.order, spec)


def lemma31_filter(group_order: int, m: int, n: int, t: int) -> bool:
    """True when |G|_t > [m,n]_t, which forces t to divide chi."""
    if t == 2 or not is_prime(t):
        raise ArithError(f"t = {t} must be an odd prime")
    if group_order % t:
        raise ArithError(f"{t} does not divide the group order {group_order}")
    return p_part(group_order, t)[0] > p_part(math.lcm(m, n), t)[0]


def quotient_filter(quotient_order: int, m_quot: int, n_quot: int, t: int) -> bool:
    """Same test applied to a quotient G/N with image orders m_N, n_N.

    A prime not dividing |G/N| never fires.
    """
    if t == 2 or not is_prime(t):
        raise ArithError(f"t = {t} must be an odd prime")
    if quotient_order % t:
        return False
    return p_part(quotient_order, t)[0] > p_part(math.lcm(m_quot, n_quot), t)[0]


def forced_primes(group_order: int, m: int, n: int) -> list[int]:
    """Odd primes that must divide chi for any (2,m,n)-structure on G."""
    return [t for t in prime_factors(group_order) if t != 2 and lemma31_filter(group_order, m, n, t)]


@dataclass(frozen=True)
class BoundCheck:
    satisfiable: bool
    primes_available: int
    bound_displayed: int
    bound_independence: int
    reason: str

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def prop36_bound(profile: SpectrumProfile, m: int, n: int, group_order: int) -> BoundCheck:
    """Compare the primes dividing |G|/[m,n] against both lower bounds.

    ``profile`` describes a normal subgroup N with non-cyclic Sylow
    2-subgroups; the caller vouches for that hypothesis.
    """
    l = math.lcm(m, n)
    displayed = max(0, profile.t_c - 2) + len(profile.pi_nc)
    independence = profile.t - 2
    if group_order % l:
        return BoundCheck(False, 0, displayed, independence,
                          f"[m,n] = {l} does not divide |G| = {group_order}")
    quotient = group_order // l
    count = len(prime_factors(quotient)) if quotient > 1 else 0
    ok = count >= displayed and count >= independence
    reason = "consistent" if ok else (
        f"{count} primes divide |G|/[m,n] but at least {max(displayed, independence)} are required")
    return BoundCheck(ok, count, displayed, independence, reason)
