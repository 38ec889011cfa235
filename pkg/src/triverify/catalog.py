"""Group catalog: permutation generators with self-certified orders.

Entries are stored in JSON (see ``load_catalog``).  An entry is usable only
after Schreier-Sims reproduces its claimed order; a mismatch is a hard
error.  ``builtin_entries`` rebuilds the shipped catalog from finite-field
constructions.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .fields import field_of_order
from .linear import (MatrixGroupSpec, SemilinearMap, action_points, action_permutation,
                     diagonal, greedy_generators, identity_matrix, sl_generators,
                     symplectic_candidates, unitary_candidates)
from .perm import (PermError, Permutation, PermGroup, build_chain, enumerate_elements,
                   is_transitive)


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupSpec:
    name: str
    generators: tuple[Permutation, ...]
    claimed_order: int


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    aliases: tuple[str, ...]
    degree: int
    generators: tuple[Permutation, ...]
    claimed_order: int
    provenance: str
    socle: SubgroupSpec | None = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "aliases": list(self.aliases),
            "degree": self.degree,
            "generators": [list(g.images) for g in self.generators],
            "claimed_order": str(self.claimed_order),
            "provenance": self.provenance,
        }
        if self.socle is not None:
            out["socle"] = {
                "name": self.socle.name,
                "generators": [list(g.images) for g in self.socle.generators],
                "claimed_order": str(self.socle.claimed_order),
            }
        return out


class CertifiedEntry:
    """A catalog entry whose order has been recomputed and matched."""

    def __init__(self, entry: CatalogEntry, group: PermGroup, socle: PermGroup | None):
        self.entry = entry
        self.group = group
        self.socle = socle

    @property
    def name(self) -> str:
        return self.entry.name

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def socle_index(self) -> int:
        return self.group.order // self.socle.order if self.socle else 1

    @property
    def natural_symmetric(self) -> bool:
        """Full symmetric group on its points (so its action is the natural one)."""
        g = self.group
        return g.order == math.factorial(g.degree) and g.degree >= 2

    def __repr__(self) -> str:
        return f"<CertifiedEntry {self.name} order={self.order}>"


def _parse_order(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise CatalogError(f"{where}: claimed_order must be a decimal string")
    text = str(value).strip()
    if not text.isdigit():
        raise CatalogError(f"{where}: claimed_order {value!r} is not a decimal integer")
    return int(text)


def _parse_perms(raw, degree: int, where: str) -> tuple[Permutation, ...]:
    if not isinstance(raw, list) or not raw:
        raise CatalogError(f"{where}: generators must be a nonempty list")
    perms = []
    for k, images in enumerate(raw):
        if not isinstance(images, list) or len(images) != degree:
            raise CatalogError(f"{where}: generator {k} must have {degree} images")
        try:
            perms.append(Permutation(images))
        except (PermError, TypeError, ValueError) as exc:
            raise CatalogError(f"{where}: generator {k}: {exc}") from None
    return tuple(perms)


def entry_from_json(obj: dict) -> CatalogEntry:
    if not isinstance(obj, dict):
        raise CatalogError("catalog entry must be an object")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise CatalogError("entry without a name")
    where = f"entry {name!r}"
    degree = obj.get("degree")
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise CatalogError(f"{where}: degree must be a positive integer")
    aliases = obj.get("aliases", [])
    if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
        raise CatalogError(f"{where}: aliases must be a list of strings")
    gens = _parse_perms(obj.get("generators"), degree, where)
    socle = None
    if obj.get("socle") is not None:
        s = obj["socle"]
        socle = SubgroupSpec(str(s.get("name", "socle")),
                             _parse_perms(s.get("generators"), degree, where + " socle"),
                             _parse_order(s.get("claimed_order"), where + " socle"))
    return CatalogEntry(name, tuple(aliases), degree, gens,
                        _parse_order(obj.get("claimed_order"), where),
                        str(obj.get("provenance", "")), socle)


def certify(entry: CatalogEntry) -> CertifiedEntry:
    G = build_chain(entry.generators, name=entry.name)
    if G.order != entry.claimed_order:
        raise CatalogError(f"entry {entry.name!r}: computed order {G.order} "
                           f"!= claimed {entry.claimed_order}")
    N = None
    if entry.socle is not None:
        N = build_chain(entry.socle.generators, name=entry.socle.name)
        if N.order != entry.socle.claimed_order:
            raise CatalogError(f"entry {entry.name!r}: socle order {N.order} "
                               f"!= claimed {entry.socle.claimed_order}")
        if not all(G.contains(s) for s in entry.socle.generators):
            raise CatalogError(f"entry {entry.name!r}: socle is not a subgroup")
        for g in entry.generators:
            ginv = ~g
            if not all(N.contains(ginv * s * g) for s in entry.socle.generators):
                raise CatalogError(f"entry {entry.name!r}: socle is not normal")
    return CertifiedEntry(entry, G, N)


class Catalog:
    """Certified entries with lookup by name or alias."""

    def __init__(self, entries: Iterable[CertifiedEntry]):
        self.entries = list(entries)
        self._index: dict[str, CertifiedEntry] = {}
        for ce in self.entries:
            for key in (ce.entry.name, *ce.entry.aliases):
                k = normalize_name(key)
                if k in self._index and self._index[k] is not ce:
                    raise CatalogError(f"name {key!r} used by two entries")
                self._index[k] = ce

    def get(self, name: str) -> CertifiedEntry | None:
        return self._index.get(normalize_name(name))

    def __getitem__(self, name: str) -> CertifiedEntry:
        ce = self.get(name)
        if ce is None:
            raise KeyError(name)
        return ce

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [ce.name for ce in self.entries]


def normalize_name(name: str) -> str:
    return re.sub(r"[\s_{}]", "", name).lower().replace("×", "x")


def parse_catalog(data) -> list[CatalogEntry]:
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise CatalogError("catalog must be an object with an 'entries' list")
    return [entry_from_json(obj) for obj in data["entries"]]


def load_catalog(path: str | Path | None = None, names: Sequence[str] | None = None) -> Catalog:
    """Load and certify a catalog file (the shipped one by default).

    ``names`` restricts certification to the listed entries.  Every
    certification failure is collected and raised together.
    """
    if path is None:
        text = resources.files("triverify").joinpath("data/catalog.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"malformed catalog JSON: {exc}") from None
    entries = parse_catalog(data)
    if names is not None:
        wanted = {normalize_name(n) for n in names}
        entries = [e for e in entries
                   if wanted & {normalize_name(k) for k in (e.name, *e.aliases)}]
    certified, errors = [], []
    for e in entries:
        try:
            certified.append(certify(e))
        except CatalogError as exc:
            errors.append(str(exc))
    if errors:
        raise CatalogError("catalog certification failed:\n  " + "\n  ".join(errors))
    return Catalog(certified)


def dump_catalog(entries: Iterable[CatalogEntry], path: str | Path) -> None:
    payload = {"entries": [e.to_json() for e in entries]}
    Path(path).write_text(json.dumps(payload, separators=(",", ":")) + "\n", encoding="utf-8")


@lru_cache(maxsize=None)
def default_catalog() -> Catalog:
    return load_catalog()


# -- constructions ------------------------------------------------------------------

def _entry(name, aliases, gens, order, provenance, socle=None) -> CatalogEntry:
    return CatalogEntry(name, tuple(aliases), gens[0].degree, tuple(gens), order,
                        provenance, socle)


def _sym_gens(n: int) -> list[Permutation]:
    return [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])]


def _alt_gens(n: int) -> list[Permutation]:
    cyc = tuple(range(n)) if n % 2 else tuple(range(1, n))
    return [Permutation.from_cycles(n, [(0, 1, 2)]), Permutation.from_cycles(n, [cyc])]


class _Linear:
    """Helper producing permutation generators for one matrix action."""

    def __init__(self, q: int, d: int, action: str):
        self.F = field_of_order(q)
        self.spec = MatrixGroupSpec(d, self.F, (), action)
        self.points = action_points(self.spec)

    def perms(self, maps: Sequence[SemilinearMap]) -> list[Permutation]:
        return [action_permutation(self.spec, g, self.points) for g in maps]

    def identity(self, frobenius: int = 0, dual: bool = False) -> SemilinearMap:
        return SemilinearMap(identity_matrix(self.F, self.spec.dimension), frobenius, dual)

    def diag_primitive(self, frobenius: int = 0) -> SemilinearMap:
        d = self.spec.dimension
        return SemilinearMap(diagonal(self.F, [self.F.primitive] + [1] * (d - 1)), frobenius)


def _linear_family(q: int, d: int, action: str, socle_order: int, socle_name: str,
                   extensions: Sequence[tuple[str, Sequence[str], Sequence[SemilinearMap], int, str]],
                   base_maps=None, base_aliases=(), base_note="") -> list[CatalogEntry]:
    L = _Linear(q, d, action)
    maps = base_maps(L) if base_maps else sl_generators(L.F, d)
    socle_perms = L.perms(maps)
    socle = SubgroupSpec(socle_name, tuple(socle_perms), socle_order)
    out = [_entry(socle_name, base_aliases, socle_perms, socle_order,
                  base_note or f"{action} action over GF({q})")]
    for name, aliases, extra, order, note in extensions:
        ext = extra(L) if callable(extra) else extra
        out.append(_entry(name, aliases, socle_perms + L.perms(ext), order, note, socle))
    return out


def builtin_entries() -> list[CatalogEntry]:
    """Reconstruct every shipped catalog entry from first principles."""
    out: list[CatalogEntry] = []

    for n in range(3, 10):
        aliases = {6: ["PSL_2(9).2", "Sp_4(2)"], 8: ["SL_4(2).2"]}.get(n, [])
        alt = SubgroupSpec(f"A_{n}", tuple(_alt_gens(n)), math.factorial(n) // 2)
        out.append(_entry(f"S_{n}", aliases, _sym_gens(n), math.factorial(n),
                          "natural action", alt))
    for n in range(4, 10):
        aliases = {5: ["PSL_2(4)", "PSL_2(5)"], 6: ["PSL_2(9)"], 8: ["SL_4(2)"]}.get(n, [])
        out.append(_entry(f"A_{n}", aliases, _alt_gens(n), math.factorial(n) // 2,
                          "natural action"))
    for n in (5, 6):
        out.append(_entry(f"C_{n}", [], [Permutation.from_cycles(n, [tuple(range(n))])], n,
                          "regular action"))

    # PSL_2(9) on the projective line, with all of its degree-2 and degree-4 overgroups.
    out += _linear_family(9, 2, "projective-line", 360, "PSL_2(9)@10", [
        ("PGL_2(9)", [], lambda L: [L.diag_primitive()], 720, "projective line over GF(9)"),
        ("M_10", ["PSL_2(9).2_3"], lambda L: [L.diag_primitive(frobenius=1)], 720,
         "PSL_2(9) extended by x -> w * frob(x), w primitive: the non-split extension"),
        ("PSigmaL_2(9)", ["S_6@10"], lambda L: [L.identity(frobenius=1)], 720,
         "PSL_2(9) extended by the field automorphism"),
        ("PSL_2(9).(C_2xC_2)", ["PGammaL_2(9)", "Aut(A_6)"],
         lambda L: [L.diag_primitive(), L.identity(frobenius=1)], 1440,
         "full semilinear group on the projective line over GF(9)"),
    ], base_aliases=["A_6@10"])
    out += _linear_family(8, 2, "projective-line", 504, "PSL_2(8)", [],
                          base_aliases=["SL_2(8)"])
    out += _linear_family(13, 2, "projective-line", 1092, "PSL_2(13)", [
        ("PGL_2(13)", ["PSL_2(13).2", "PSL_2(13):2"], lambda L: [L.diag_primitive()], 2184,
         "projective line over GF(13)"),
    ])
    out += _linear_family(16, 2, "projective-line", 4080, "PSL_2(16)", [
        ("SL_2(16).2", ["PSL_2(16).2"], lambda L: [L.identity(frobenius=2)], 8160,
         "SL_2(16) extended by the involutory field automorphism"),
    ], base_aliases=["SL_2(16)"])
    out += _linear_family(25, 2, "projective-line", 7800, "PSL_2(25)", [
        ("PSL_2(25).2", ["PSigmaL_2(25)"], lambda L: [L.identity(frobenius=1)], 15600,
         "PSL_2(25) extended by the field automorphism (distinct from PGL_2(25))"),
        ("PGL_2(25)", [], lambda L: [L.diag_primitive()], 15600, "projective line over GF(25)"),
    ])
    out += _linear_family(3, 3, "projective-plane", 5616, "SL_3(3)", [],
                          base_aliases=["PSL_3(3)"])
    out += _linear_family(3, 3, "plane-points-lines", 5616, "SL_3(3)@26", [
        ("SL_3(3).2", ["PSL_3(3).2"], lambda L: [L.identity(dual=True)], 11232,
         "SL_3(3) with the inverse-transpose automorphism, on points and lines"),
    ])
    out += _linear_family(5, 3, "projective-plane", 372000, "SL_3(5)", [],
                          base_aliases=["PSL_3(5)"])
    out += _linear_family(4, 3, "projective-plane", 20160, "PSL_3(4)", [
        ("PSL_3(4).2_2", ["PSigmaL_3(4)"], lambda L: [L.identity(frobenius=1)], 40320,
         "PSL_3(4) extended by the field automorphism"),
        ("PSL_3(4).3", ["PGL_3(4)"], lambda L: [L.diag_primitive()], 60480,
         "projective plane over GF(4)"),
    ])
    out += _linear_family(4, 3, "plane-points-lines", 20160, "PSL_3(4)@42", [
        ("PSL_3(4).2_3", ["PSL_3(4):graph"], lambda L: [L.identity(dual=True)], 40320,
         "PSL_3(4) with the inverse-transpose automorphism, on points and lines"),
        ("PSL_3(4).2_1", ["PSL_3(4):graph-field"], lambda L: [L.identity(frobenius=1, dual=True)],
         40320, "PSL_3(4) with the unitary polarity, on points and lines"),
    ])

    def unitary(q, order):
        return lambda L: greedy_generators(L.spec, unitary_candidates(L.F, 3), order)

    out += _linear_family(9, 3, "unitary-isotropic-points", 6048, "SU_3(3)", [
        ("SU_3(3).2", ["PSU_3(3).2", "G_2(2)"], lambda L: [L.identity(frobenius=1)], 12096,
         "SU_3(3) extended by the field automorphism"),
    ], base_maps=unitary(9, 6048), base_aliases=["PSU_3(3)", "U_3(3)"],
        base_note="unitary transvections on the 28 isotropic points")
    out += _linear_family(16, 3, "unitary-isotropic-points", 62400, "SU_3(4)", [
        ("SU_3(4).2", ["PSU_3(4).2"], lambda L: [L.identity(frobenius=2)], 124800,
         "SU_3(4) extended by the involutory field automorphism"),
    ], base_maps=unitary(16, 62400), base_aliases=["PSU_3(4)", "U_3(4)"],
        base_note="unitary transvections on the 65 isotropic points")
    out += _linear_family(64, 3, "unitary-isotropic-points", 5515776, "PSU_3(8)", [],
                          base_maps=unitary(64, 5515776), base_aliases=["U_3(8)"],
                          base_note="unitary transvections on the 513 isotropic points")

    def symplectic(order):
        return lambda L: greedy_generators(L.spec, symplectic_candidates(L.F, L.spec.dimension),
                                           order)

    out += _linear_family(3, 4, "projective-space", 25920, "SU_4(2)", [
        ("SU_4(2).2", ["PSp_4(3).2", "SU(4,2).2", "W(E_6)"],
         lambda L: [SemilinearMap(diagonal(L.F, [1, 1, 2, 2]))], 51840,
         "PSp_4(3) extended by a similitude of multiplier -1"),
    ], base_maps=symplectic(25920), base_aliases=["PSp_4(3)", "SU(4,2)", "PSU_4(2)"],
        base_note="PSp_4(3) from symplectic transvections on the 40 points of PG(3,3)")
    out += _linear_family(2, 6, "projective-space", 1451520, "Sp_6(2)", [],
                          base_maps=symplectic(1451520),
                          base_note="symplectic transvections on the 63 points of PG(5,2)")
    return out


def write_builtin_catalog(path: str | Path) -> None:
    dump_catalog(builtin_entries(), path)


if __name__ == "__main__":
    import sys
    target = sys.argv[1] if len(sys.argv) > 1 else str(Path(__file__).parent / "data/catalog.json")
    write_builtin_catalog(target)
    print(f"wrote {target}")
