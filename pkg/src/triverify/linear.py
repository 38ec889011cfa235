"""Matrix groups over finite fields and their permutation actions.

A generator is a :class:`SemilinearMap`: ``v -> A * frob^e(v)``, optionally
followed by the standard polarity (points <-> lines) of the projective
plane.  Actions available:

``projective-line`` / ``projective-plane`` / ``projective-space``
    1-dimensional subspaces of GF(q)^d.
``plane-points-lines``
    points followed by lines of PG(2, q); admits dualities.
``unitary-isotropic-points``
    isotropic 1-spaces of the hermitian form ``sum x_i y_{d-1-i}^r`` over
    GF(r^2).
``raw-points``
    nonzero vectors of GF(q)^d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .fields import GF
from .perm import Permutation, PermGroup, build_chain

Matrix = tuple[tuple[int, ...], ...]

ACTIONS = ("projective-line", "projective-plane", "projective-space",
           "plane-points-lines", "unitary-isotropic-points", "raw-points")


class ActionError(ValueError):
    pass


@dataclass(frozen=True)
class SemilinearMap:
    matrix: Matrix
    frobenius: int = 0
    dual: bool = False


@dataclass(frozen=True)
class MatrixGroupSpec:
    dimension: int
    field: GF
    generators: tuple[SemilinearMap, ...]
    action: str


def identity_matrix(F: GF, d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_vec(F: GF, A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for row in A:
        s = 0
        for a, x in zip(row, v):
            if a and x:
                s = F.add(s, F.mul(a, x))
        out.append(s)
    return tuple(out)


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(_dot(F, row, col) for col in cols) for row in A)


def _dot(F: GF, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def determinant(F: GF, A: Matrix) -> int:
    M = [list(r) for r in A]
    d = len(M)
    det = 1
    for c in range(d):
        piv = next((r for r in range(c, d) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, d):
            if M[r][c]:
                f = F.mul(M[r][c], inv)
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def inverse_transpose(F: GF, A: Matrix) -> Matrix:
    d = len(A)
    M = [list(r) + [1 if i == j else 0 for j in range(d)] for i, r in enumerate(A)]
    for c in range(d):
        piv = next((r for r in range(c, d) if M[r][c]), None)
        if piv is None:
            raise ActionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for r in range(d):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    inv_rows = [row[d:] for row in M]
    return tuple(tuple(inv_rows[j][i] for j in range(d)) for i in range(d))


def normalize(F: GF, v: Sequence[int]) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for x in v:
        if x:
            inv = F.inv(x)
            return tuple(F.mul(inv, y) for y in v)
    raise ActionError("zero vector has no projective point")


def projective_points(F: GF, d: int) -> list[tuple[int, ...]]:
    pts = []
    for lead in range(d):
        for tail in _vectors(F, d - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    pts.sort()
    return pts


def _vectors(F: GF, n: int):
    if n == 0:
        yield ()
        return
    for head in range(F.q):
        for rest in _vectors(F, n - 1):
            yield (head,) + rest


def hermitian(F: GF, x: Sequence[int], y: Sequence[int]) -> int:
    r = math.isqrt(F.q)
    d = len(x)
    s = 0
    for i in range(d):
        s = F.add(s, F.mul(x[i], F.pow(y[d - 1 - i], r)))
    return s


def isotropic_points(F: GF, d: int) -> list[tuple[int, ...]]:
    return [v for v in projective_points(F, d) if hermitian(F, v, v) == 0]


def _frob_vec(F: GF, v: Sequence[int], e: int) -> tuple[int, ...]:
    if e % F.k == 0:
        return tuple(v)
    return tuple(F.frobenius(x, e) for x in v)


def _check_invertible(F: GF, g: SemilinearMap) -> None:
    if determinant(F, g.matrix) == 0:
        raise ActionError("generator matrix is not invertible")


def _point_images(F: GF, g: SemilinearMap, pts, index, projective: bool) -> list[int]:
    out = []
    for v in pts:
        w = mat_vec(F, g.matrix, _frob_vec(F, v, g.frobenius))
        w = normalize(F, w) if projective else w
        try:
            out.append(index[w])
        except KeyError:
            raise ActionError("generator does not preserve the point set") from None
    return out


def action_permutation(spec: MatrixGroupSpec, g: SemilinearMap,
                       pts: list | None = None) -> Permutation:
    F, d = spec.field, spec.dimension
    _check_invertible(F, g)
    if pts is None:
        pts = action_points(spec)
    if spec.action == "plane-points-lines":
        n = len(pts)
        index = {v: i for i, v in enumerate(pts)}
        At = inverse_transpose(F, g.matrix)
        img = []
        for v in pts:
            w = normalize(F, mat_vec(F, g.matrix, _frob_vec(F, v, g.frobenius)))
            img.append(index[w] + (n if g.dual else 0))
        for v in pts:
            w = normalize(F, mat_vec(F, At, _frob_vec(F, v, g.frobenius)))
            img.append(index[w] + (0 if g.dual else n))
        return Permutation(img)
    if g.dual:
        raise ActionError(f"dualities need the plane-points-lines action, not {spec.action}")
    if spec.action == "raw-points":
        index = {v: i for i, v in enumerate(pts)}
        return Permutation(_point_images(F, g, pts, index, projective=False))
    index = {v: i for i, v in enumerate(pts)}
    return Permutation(_point_images(F, g, pts, index, projective=True))


def action_points(spec: MatrixGroupSpec) -> list:
    F, d, act = spec.field, spec.dimension, spec.action
    if act not in ACTIONS:
        raise ActionError(f"unknown action {act!r}")
    if act == "projective-line" and d != 2:
        raise ActionError("projective-line needs dimension 2")
    if act in ("projective-plane", "plane-points-lines") and d != 3:
        raise ActionError(f"{act} needs dimension 3")
    if act == "unitary-isotropic-points":
        if F.k % 2:
            raise ActionError("unitary action needs a field of square order")
        pts = isotropic_points(F, d)
        if not pts:
            raise ActionError("hermitian form has no isotropic points")
        return pts
    if act == "raw-points":
        return sorted(v for v in _vectors(F, d) if any(v))
    return projective_points(F, d)


def projective_action(spec: MatrixGroupSpec, target_order: int | None = None,
                      name: str | None = None) -> PermGroup:
    """Permutation group induced by ``spec`` on its point set."""
    pts = action_points(spec)
    perms = [action_permutation(spec, g, pts) for g in spec.generators]
    if not perms:
        raise ActionError("no generators")
    G = build_chain(perms, name=name)
    if target_order is not None and G.order != target_order:
        raise ActionError(f"{name or 'group'}: order {G.order}, expected {target_order}")
    return G


def projective_degree(q: int, d: int) -> int:
    return (q ** d - 1) // (q - 1)


# -- classical generator sets --------------------------------------------------

def elementary(F: GF, d: int, i: int, j: int, a: int) -> Matrix:
    return tuple(tuple(1 if r == c else (a if (r, c) == (i, j) else 0) for c in range(d))
                 for r in range(d))


def diagonal(F: GF, entries: Sequence[int]) -> Matrix:
    d = len(entries)
    return tuple(tuple(entries[r] if r == c else 0 for c in range(d)) for r in range(d))


def sl_generators(F: GF, d: int) -> list[SemilinearMap]:
    w = F.primitive
    gens = [diagonal(F, [w, F.inv(w)] + [1] * (d - 2))]
    for i in range(d):
        for j in range(d):
            if i != j:
                gens.append(elementary(F, d, i, j, 1))
    if F.k > 1:
        gens.append(elementary(F, d, 0, 1, w))
    return [SemilinearMap(m) for m in gens]


def symplectic_form(F: GF, x: Sequence[int], y: Sequence[int]) -> int:
    d = len(x)
    s = 0
    for i in range(d // 2):
        j = d - 1 - i
        s = F.add(s, F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i])))
    return s


def transvection(F: GF, v: Sequence[int], coeff: int, form) -> Matrix:
    """Matrix of ``x -> x + coeff * form(x, v) * v``."""
    d = len(v)
    cols = []
    for k in range(d):
        e = [1 if i == k else 0 for i in range(d)]
        c = F.mul(coeff, form(F, e, v))
        cols.append([F.add(e[i], F.mul(c, v[i])) for i in range(d)])
    return tuple(tuple(cols[c][r] for c in range(d)) for r in range(d))


def greedy_generators(spec_base: MatrixGroupSpec, candidates: Sequence[SemilinearMap],
                      target_order: int) -> list[SemilinearMap]:
    """Deterministically pick candidates until they generate ``target_order``."""
    pts = action_points(spec_base)
    chosen: list[SemilinearMap] = []
    perms: list[Permutation] = []
    G = None
    for cand in candidates:
        p = action_permutation(spec_base, cand, pts)
        if p.is_identity() or (G is not None and G.contains(p)):
            continue
        chosen.append(cand)
        perms.append(p)
        G = build_chain(perms)
        if G.order == target_order:
            return chosen
        if G.order > target_order:
            break
    raise ActionError(f"candidates generate order {G.order if G else 1}, not {target_order}")


def symplectic_candidates(F: GF, d: int) -> list[SemilinearMap]:
    return [SemilinearMap(transvection(F, v, 1, symplectic_form))
            for v in projective_points(F, d)]


def unitary_candidates(F: GF, d: int) -> list[SemilinearMap]:
    r = math.isqrt(F.q)
    # nonzero a with a + a^r = 0
    a = next(x for x in range(1, F.q) if F.add(x, F.pow(x, r)) == 0)
    return [SemilinearMap(transvection(F, v, a, hermitian)) for v in isotropic_points(F, d)]
