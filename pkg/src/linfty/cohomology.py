"""Cohomology of the operator D(phi) = [phi, d] for a homogeneous odd codifferential d.

Everything is computed per parity block.  For each degree n and parity p the
space (L_n)_p gets an adapted basis [H | B | C]: cohomology representatives,
coboundaries D(x) for the pivot columns x of the incoming map, and a
complement.  Coordinates in this basis give the cohomology class, a
deterministic preimage, and a non-cocycle remainder in one solve.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import canonical
from .core import (
    BasisCochain,
    Cochain,
    DegreeError,
    as_cochain,
    basis_cochains,
    bracket,
    is_codifferential,
)
from .grammar import format_cochain
from .linalg import inverse, matvec, nullspace, rank, rref
from .scalars import Parity


class NotCodifferentialError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


class _NotACoboundary:
    """Sentinel returned by `preimage` when the input is not in the image of D."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotACoboundary"

    def __bool__(self):
        return False


NotACoboundary = _NotACoboundary()


def _vector(f: Cochain, bas: list[BasisCochain]) -> list:
    pos = {b: i for i, b in enumerate(bas)}
    v = [Fraction(0)] * len(bas)
    for b, c in f.items():
        if b not in pos:
            raise DegreeError(f"{b} is outside the requested basis")
        v[pos[b]] = c
    return v


def _cochain(v, bas: list[BasisCochain]) -> Cochain:
    return Cochain([(b, c) for b, c in zip(bas, v) if c != 0])


def codifferential_degree(d: Cochain) -> int:
    degs = d.degrees()
    if len(degs) != 1:
        raise DegreeError("cohomology needs a nonzero codifferential of a single degree")
    return next(iter(degs))


@dataclass(frozen=True)
class CoboundaryMatrix:
    source_degree: int
    target_degree: int
    source_basis: tuple
    target_basis: tuple
    matrix: tuple

    def column(self, b: BasisCochain) -> list:
        j = self.source_basis.index(b)
        return [row[j] for row in self.matrix]

    def block(self, parity: Parity) -> list[list]:
        """Submatrix from (L_source)_parity to (L_target)_(parity+1)."""
        cols = [j for j, b in enumerate(self.source_basis) if b.parity == parity]
        rows = [i for i, b in enumerate(self.target_basis) if b.parity != parity]
        return [[self.matrix[i][j] for j in cols] for i in rows]


@dataclass
class _Block:
    """Adapted basis data for (L_n)_p."""

    basis: list
    reps: list  # cohomology representatives as coordinate vectors
    names: list
    orders: list
    image: list  # coboundary basis vectors
    image_sources: list  # the source basis cochain of each coboundary vector
    complement: list
    T_inv: list
    z: int


class Cohomology:
    """Cached cohomology computations for one codifferential."""

    def __init__(self, d: Cochain, check: bool = True):
        d = as_cochain(d)
        if check:
            chk = is_codifferential(d)
            if not chk.ok:
                raise NotCodifferentialError(f"not a codifferential: {chk.reason}")
        self.d = d
        self.N = codifferential_degree(d)
        self.regime = canonical.identify(d)
        self._D: dict[tuple[int, Parity], list[list]] = {}
        self._blocks: dict[tuple[int, Parity], _Block] = {}

    def D(self, f: Cochain) -> Cochain:
        return bracket(as_cochain(f), self.d)

    def block_matrix(self, n: int, p: Parity) -> list[list]:
        """Matrix of D from (L_n)_p to (L_{n+N-1})_{p+1}, columns in basis order."""
        key = (n, p)
        if key not in self._D:
            src = basis_cochains(n, p)
            tgt = basis_cochains(n + self.N - 1, Parity(1 - int(p)))
            cols = [_vector(self.D(Cochain.basis(b)), tgt) for b in src]
            self._D[key] = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
        return self._D[key]

    def coboundary_matrix(self, n: int) -> CoboundaryMatrix:
        if n < 1:
            raise DegreeError("empty word degree")
        src = basis_cochains(n)
        tgt = basis_cochains(n + self.N - 1)
        cols = [_vector(self.D(Cochain.basis(b)), tgt) for b in src]
        mat = tuple(tuple(cols[j][i] for j in range(len(src))) for i in range(len(tgt)))
        return CoboundaryMatrix(n, n + self.N - 1, tuple(src), tuple(tgt), mat)

    def _cocycle_vectors(self, n: int, p: Parity) -> list[list]:
        A = self.block_matrix(n, p)
        ncols = len(basis_cochains(n, p))
        if not A:
            return nullspace([], ncols)
        return nullspace(A, ncols)

    def block(self, n: int, p: Parity) -> _Block:
        key = (n, p)
        if key in self._blocks:
            return self._blocks[key]
        bas = basis_cochains(n, p)
        dim = len(bas)
        # coboundaries landing in (L_n)_p come from (L_{n-N+1})_{p+1}
        image, sources = [], []
        m = n - self.N + 1
        if m >= 1:
            q = Parity(1 - int(p))
            A = self.block_matrix(m, q)
            src = basis_cochains(m, q)
            if A and A[0]:
                # preimages avoid the w1-containing basis cochains when they can
                order = sorted(range(len(src)), key=lambda j: src[j].index.i1)
                _, pivots = rref([[row[j] for j in order] for row in A])
                for j in sorted(order[k] for k in pivots):
                    image.append([row[j] for row in A])
                    sources.append(src[j])
        kernel = self._cocycle_vectors(n, p)
        z = len(kernel)
        reps, names, orders = [], [], []
        current = list(image)
        cur_rank = len(current)

        def try_add(v) -> bool:
            nonlocal cur_rank
            if rank(current + [v]) > cur_rank:
                current.append(v)
                cur_rank += 1
                return True
            return False

        for pc in canonical.preferred_classes(self.regime, n):
            if pc.cochain.parity != p or pc.cochain.degrees() != {n}:
                continue
            v = _vector(pc.cochain, bas)
            if any(x != 0 for x in matvec(self.block_matrix(n, p), v)):
                continue
            if try_add(v):
                reps.append(v)
                names.append(pc.name)
                orders.append(pc.order)
        for v in kernel:
            if cur_rank >= z:
                break
            if try_add(v):
                reps.append(v)
                names.append(None)
                orders.append(None)
        complement = []
        for i in range(dim):
            if cur_rank >= dim:
                break
            e = [Fraction(int(i == k)) for k in range(dim)]
            if try_add(e):
                complement.append(e)
        columns = reps + image + complement
        T = [[columns[j][i] for j in range(dim)] for i in range(dim)]
        T_inv = inverse(T) if dim else []
        blk = _Block(bas, reps, names, orders, image, sources, complement, T_inv, z)
        self._blocks[key] = blk
        return blk

    # public queries

    def z(self, n: int) -> tuple[int, int]:
        return (self.block(n, Parity.EVEN).z, self.block(n, Parity.ODD).z)

    def b(self, n: int) -> tuple[int, int]:
        """Dimensions (even, odd) of the coboundaries D(L_n), which lie in degree n+N-1."""
        even = rank(self.block_matrix(n, Parity.ODD)) if self.block_matrix(n, Parity.ODD) else 0
        odd = rank(self.block_matrix(n, Parity.EVEN)) if self.block_matrix(n, Parity.EVEN) else 0
        return (even, odd)

    def h(self, n: int) -> tuple[int, int]:
        return (len(self.block(n, Parity.EVEN).reps), len(self.block(n, Parity.ODD).reps))

    def representatives(self, n: int) -> list[Cochain]:
        """Cohomology representatives of degree n in reporting order."""
        return [c for c, _, _ in self.named_representatives(n)]

    def named_representatives(self, n: int) -> list[tuple[Cochain, str | None, tuple | None]]:
        items = []
        for p in (Parity.EVEN, Parity.ODD):
            blk = self.block(n, p)
            for v, name, order in zip(blk.reps, blk.names, blk.orders):
                items.append((_cochain(v, blk.basis), name, order))
        preferred = [pc.cochain for pc in canonical.preferred_classes(self.regime, n)]

        def key(item):
            c = item[0]
            if c in preferred:
                return (0, preferred.index(c))
            return (1, int(c.parity), 0)

        return sorted(items, key=key)

    def project(self, f: Cochain, n: int, p: Parity) -> tuple[list, list, list]:
        """Coordinates of f in (L_n)_p on the H, B and C parts of the adapted basis."""
        blk = self.block(n, p)
        v = _vector(f, blk.basis)
        coords = matvec(blk.T_inv, v)
        h = len(blk.reps)
        k = len(blk.image)
        return coords[:h], coords[h : h + k], coords[h + k :]

    def homogeneous_parts(self, f: Cochain):
        parts: dict[tuple[int, Parity], list] = {}
        for b, c in f.items():
            parts.setdefault((b.degree, b.parity), []).append((b, c))
        return {k: Cochain(v) for k, v in sorted(parts.items())}

    def preimage(self, beta: Cochain):
        beta = as_cochain(beta)
        gamma = []
        for (n, p), part in self.homogeneous_parts(beta).items():
            hc, bc, cc = self.project(part, n, p)
            if any(x != 0 for x in hc) or any(x != 0 for x in cc):
                return NotACoboundary
            blk = self.block(n, p)
            gamma += [(src, x) for src, x in zip(blk.image_sources, bc) if x != 0]
        return Cochain(gamma)

    def decompose_cocycle(self, zeta: Cochain) -> "Decomposition":
        zeta = as_cochain(zeta)
        if self.D(zeta):
            raise NotACocycleError("input is not a cocycle")
        classes: list[tuple[Cochain, object]] = []
        gamma = []
        for (n, p), part in self.homogeneous_parts(zeta).items():
            hc, bc, cc = self.project(part, n, p)
            if any(x != 0 for x in cc):
                raise AssertionError("cocycle has a component outside H + B")
            blk = self.block(n, p)
            for v, x in zip(blk.reps, hc):
                if x != 0:
                    classes.append((_cochain(v, blk.basis), x))
            gamma += [(src, x) for src, x in zip(blk.image_sources, bc) if x != 0]
        g = Cochain(gamma)
        return Decomposition(classes, self.D(g), g)


@dataclass(frozen=True)
class Decomposition:
    classes: list  # (representative, coefficient)
    coboundary: Cochain
    gamma: Cochain

    def class_part(self) -> Cochain:
        acc = Cochain()
        for rep, x in self.classes:
            acc = acc + rep.scale(x)
        return acc


@dataclass
class DegreeReport:
    degree: int
    z: tuple[int, int]
    b: tuple[int, int]
    h: tuple[int, int]
    reps: list[Cochain] = field(default_factory=list)


@dataclass
class CohomologyReport:
    codifferential: Cochain
    degrees: list[DegreeReport]

    def by_degree(self, n: int) -> DegreeReport:
        for r in self.degrees:
            if r.degree == n:
                return r
        raise KeyError(n)

    def to_json_obj(self) -> dict:
        return {
            str(r.degree): {
                "z": list(r.z),
                "b": list(r.b),
                "h": list(r.h),
                "reps": [format_cochain(c) for c in r.reps],
            }
            for r in self.degrees
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "z_even", "z_odd", "b_even", "b_odd", "h_even", "h_odd", "reps"])
        for r in self.degrees:
            w.writerow([r.degree, *r.z, *r.b, *r.h, "; ".join(format_cochain(c) for c in r.reps)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"d = {format_cochain(self.codifferential)}"]
        for r in self.degrees:
            lines.append(
                f"n={r.degree}: z={r.z[0]}|{r.z[1]} b={r.b[0]}|{r.b[1]} h={r.h[0]}|{r.h[1]}"
            )
            for c in r.reps:
                lines.append(f"    {format_cochain(c)}")
        return "\n".join(lines) + "\n"


# functional interface


def coboundary_matrix(d: Cochain, n: int) -> CoboundaryMatrix:
    return Cohomology(d).coboundary_matrix(n)


def cocycles(d: Cochain, n: int) -> list[Cochain]:
    C = Cohomology(d)
    out = []
    for p in (Parity.EVEN, Parity.ODD):
        bas = basis_cochains(n, p)
        out += [_cochain(v, bas) for v in C._cocycle_vectors(n, p)]
    return out


def coboundaries(d: Cochain, n: int) -> list[Cochain]:
    C = Cohomology(d)
    out = []
    for p in (Parity.EVEN, Parity.ODD):
        blk = C.block(n, p)
        out += [_cochain(v, blk.basis) for v in blk.image]
    return out


def cohomology_basis(d: Cochain, n: int) -> list[Cochain]:
    return Cohomology(d).representatives(n)


def cohomology_report(d: Cochain, n_max: int) -> CohomologyReport:
    if n_max < 1:
        raise DegreeError("n_max must be at least 1")
    C = Cohomology(d)
    degrees = []
    for n in range(1, n_max + 1):
        degrees.append(DegreeReport(n, C.z(n), C.b(n), C.h(n), C.representatives(n)))
    return CohomologyReport(as_cochain(d), degrees)


def preimage(d: Cochain, beta: Cochain):
    return Cohomology(d).preimage(beta)


def decompose_cocycle(d: Cochain, zeta: Cochain) -> Decomposition:
    return Cohomology(d).decompose_cocycle(zeta)
