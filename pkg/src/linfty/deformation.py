"""Order-by-order construction of a miniversal deformation.

A deformation is a cochain with coefficients in the parameter ring: a map
from basis cochains to superpolynomials.  Parameters sit to the right of
cochains, so that [a u, b v] = (-1)^(|u||b|) [a, b] uv.
"""

from __future__ import annotations

import json
from math import gcd, lcm
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cohomology import Cohomology, _cochain
from .core import BasisCochain, Cochain, as_cochain, bracket_basis
from .scalars import Parity
from .superpoly import (
    ONE,
    Parameter,
    RelationIdeal,
    SuperPolynomial,
    mono_degree,
    mono_mul,
    mono_parity,
    order_key,
)


class DeformationError(RuntimeError):
    """The obstruction calculus produced something that should be impossible."""


Deformation = dict  # BasisCochain -> SuperPolynomial


def super_bracket(a: Mapping, b: Mapping, order: int | None = None, n_max: int | None = None) -> Deformation:
    """Bracket of two parameter-valued cochains, optionally truncated."""
    acc: dict = {}
    for fa, pa in a.items():
        for fb, pb in b.items():
            terms = bracket_basis(fa, fb)
            if not terms:
                continue
            if n_max is not None and fa.degree + fb.degree - 1 > n_max:
                continue
            for ma, ca in pa.items():
                da = mono_degree(ma)
                sign0 = -1 if mono_parity(ma) and int(fb.parity) else 1
                for mb, cb in pb.items():
                    if order is not None and da + mono_degree(mb) > order:
                        continue
                    s, m = mono_mul(ma, mb)
                    if not s:
                        continue
                    coef = sign0 * s * ca * cb
                    for basis_el, k in terms:
                        slot = acc.setdefault(basis_el, {})
                        slot[m] = slot.get(m, 0) + k * coef
    out = {}
    for b_el, terms in acc.items():
        p = SuperPolynomial(terms)
        if p:
            out[b_el] = p
    return out


def _add(a: Mapping, b: Mapping) -> Deformation:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, SuperPolynomial()) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass
class DeformationState:
    base: Cochain
    registry: list[Parameter]
    deformation: Deformation
    relations: list[SuperPolynomial]  # one per registry entry, 0 when absent
    order: int
    n_max: int
    cohomology: Cohomology = field(repr=False)

    def ideal(self) -> RelationIdeal:
        return RelationIdeal(self.relations, len(self.registry), [p.parity for p in self.registry])

    def parameter_degree(self) -> int:
        return max((p.max_degree() for p in self.deformation.values()), default=0)

    def nonzero_relations(self) -> list[SuperPolynomial]:
        size = len(self.registry)
        rels = []
        for r in self.relations:
            r = normalize_relation(r, size)
            if r and r not in rels:
                rels.append(r)
        lead = lambda r: max(order_key(m, size) for m in r)
        return sorted(rels, key=lead, reverse=True)


def normalize_relation(r: SuperPolynomial, size: int) -> SuperPolynomial:
    """Primitive integer multiple of r whose leading term (in the local order) is positive."""
    if not r:
        return r
    coeffs = [Fraction(c) for c in r.values()]
    den = lcm(*(c.denominator for c in coeffs))
    num = gcd(*(int(c * den) for c in coeffs))
    lead = max(r, key=lambda m: order_key(m, size))
    sign = -1 if r[lead] < 0 else 1
    return r.scale(Fraction(sign * den, num))


def infinitesimal(d: Cochain, n_max: int = 6, coh: Cohomology | None = None) -> DeformationState:
    """First-order deformation: d plus every cohomology class of degree <= n_max times its parameter."""
    d = as_cochain(d)
    coh = coh or Cohomology(d)
    entries = []
    for n in range(1, n_max + 1):
        for idx, (cls, name, order) in enumerate(coh.named_representatives(n)):
            key = (0, order) if order is not None else (1, n, idx)
            entries.append((key, cls, name))
    entries.sort(key=lambda e: e[0])
    registry: list[Parameter] = []
    used = {name for _, _, name in entries if name}
    counters = {Parity.EVEN: 0, Parity.ODD: 0}
    for _, cls, name in entries:
        par = Parity(1 - int(cls.parity))
        if name is None:
            letter = "x" if par == Parity.EVEN else "y"
            while True:
                counters[par] += 1
                name = f"{letter}{counters[par]}"
                if name not in used:
                    break
            used.add(name)
        registry.append(Parameter(name, par, cls))
    deformation: Deformation = {b: SuperPolynomial.constant(c) for b, c in d.items()}
    for i, p in enumerate(registry):
        var = SuperPolynomial.variable(i, p.parity)
        deformation = _add(deformation, {b: var.scale(c) for b, c in p.cls.items()})
    relations = [SuperPolynomial() for _ in registry]
    return DeformationState(d, registry, deformation, relations, 1, n_max, coh)


def _split(poly_vec: list[SuperPolynomial], T_inv: list[list]) -> list[SuperPolynomial]:
    out = []
    for row in T_inv:
        acc = SuperPolynomial()
        for coef, p in zip(row, poly_vec):
            if coef != 0 and p:
                acc = acc + p.scale(coef)
        out.append(acc)
    return out


@dataclass
class StepReport:
    order: int
    corrections: Deformation
    relations_changed: bool


def reliable_degree(n_max: int, order: int) -> int:
    """Highest cochain degree unaffected by the degree cap after computing through `order`."""
    return n_max - (order - 1)


def trusted_degree(n_max: int, order: int) -> int:
    """Highest degree whose bracket coefficients at `order` only involve corrections that were computed.

    A correction in degree n comes from the bracket in degree n + 1, so each
    order loses one degree at the top.
    """
    return n_max - (order - 2)


def step(state: DeformationState) -> tuple[DeformationState, StepReport]:
    """Extend a deformation known modulo order k to one modulo order k+1."""
    T = state.order + 1
    coh = state.cohomology
    size = len(state.registry)
    half = {
        b: p.scale(Fraction(1, 2))
        for b, p in super_bracket(state.deformation, state.deformation, order=T, n_max=state.n_max).items()
    }
    groups: dict[tuple[int, Parity], dict[BasisCochain, SuperPolynomial]] = {}
    for b, p in half.items():
        groups.setdefault((b.degree, b.parity), {})[b] = p
    index = {p.cls: i for i, p in enumerate(state.registry)}
    old_ideal = state.ideal()
    new_relations = list(state.relations)
    projected = []
    for (n, par), part in sorted(groups.items()):
        if n > trusted_degree(state.n_max, T):
            # relations of these classes stay known only to the previous order
            continue
        blk = coh.block(n, par)
        vec = [part.get(b, SuperPolynomial()) for b in blk.basis]
        coords = _split(vec, blk.T_inv)
        h, k = len(blk.reps), len(blk.image)
        projected.append((blk, coords[:h], coords[h : h + k], coords[h + k :]))
        for v, P in zip(blk.reps, coords[:h]):
            cls = _cochain(v, blk.basis)
            i = index.get(cls)
            if i is None:
                # class above n_max cannot occur: degrees were truncated
                raise DeformationError(f"unregistered class {cls}")
            if old_ideal.reduce(P.below(T) - state.relations[i], T - 1):
                raise DeformationError(f"lower-order obstruction changed for class {cls}")
            top = old_ideal.reduce(P.homogeneous(T), T)
            if top:
                new_relations[i] = state.relations[i] + top
    changed = new_relations != state.relations
    ideal = RelationIdeal(new_relations, size, [p.parity for p in state.registry])
    corrections: Deformation = {}
    for blk, _, gamma, chi in projected:
        # the cocycle identity in degree n involves degree n + 1, so the
        # degree cap contaminates one more degree with every order
        near_cap = blk.basis[0].degree > reliable_degree(state.n_max, T)
        for x in chi:
            if not near_cap and ideal.reduce(x, T):
                raise DeformationError(f"obstruction has a component that is not a cocycle in degree {blk.basis[0].degree}")
        for src, G in zip(blk.image_sources, gamma):
            nf = ideal.reduce(G, T)
            if nf.below(T):
                raise DeformationError("lower-order coboundary part did not vanish")
            top = nf.homogeneous(T)
            if not top:
                continue
            # [src q, d] = (-1)^|q| D(src) q must cancel D(src) top
            q = SuperPolynomial({m: (c if mono_parity(m) else -c) for m, c in top.items()})
            corrections = _add(corrections, {src: q})
    new_state = DeformationState(
        state.base,
        state.registry,
        _add(state.deformation, corrections),
        new_relations,
        T,
        state.n_max,
        coh,
    )
    return new_state, StepReport(T, corrections, changed)


@dataclass
class MiniversalResult:
    order: int
    status: str
    deformation: Deformation
    relations: list[SuperPolynomial]
    registry: list[Parameter]
    history: list[StepReport] = field(default_factory=list, repr=False)
    base: Cochain = field(default_factory=Cochain)
    n_max: int = 6
    truncation: int = 2  # parameter order through which everything was computed
    class_relations: list = field(default_factory=list, repr=False)  # (class, relation) per parameter

    @property
    def converged(self) -> bool:
        return self.status == "Converged"

    def relation_strings(self) -> list[str]:
        return [r.format(self.registry) for r in self.relations]

    def term_strings(self) -> list[tuple[str, str]]:
        items = sorted(self.deformation.items(), key=lambda kv: kv[0].sort_key())
        return [(str(b), p.format(self.registry)) for b, p in items]

    def parameter(self, name: str) -> int:
        for i, p in enumerate(self.registry):
            if p.name == name:
                return i
        raise KeyError(name)

    def to_json_obj(self) -> dict:
        return {
            "order": self.order,
            "status": self.status,
            "deformation": [{"cochain": c, "coefficient": p} for c, p in self.term_strings()],
            "relations": self.relation_strings(),
            "registry": [
                {"name": p.name, "parity": str(p.parity), "class": str(p.cls)} for p in self.registry
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    def to_text(self) -> str:
        rels = "; ".join(f"{r} = 0" for r in self.relation_strings()) or "none"
        lines = [f"status: {self.status}", f"order: {self.order}", f"relations: {rels}", "parameters:"]
        for p in self.registry:
            lines.append(f"  {p.name} ({p.parity}): {p.cls}")
        lines.append("deformation:")
        for c, p in self.term_strings():
            lines.append(f"  {c} * ({p})")
        return "\n".join(lines)


def run(d: Cochain, n_max: int = 6, K_max: int = 4) -> MiniversalResult:
    """Iterate steps until the deformation stops changing or order K_max is reached."""
    if K_max < 2:
        raise ValueError("K_max must be at least 2")
    state = infinitesimal(d, n_max)
    history = []
    last_change = 1
    status = f"TruncatedAtOrder({K_max})"
    while state.order < K_max:
        state, rep = step(state)
        history.append(rep)
        if rep.corrections or rep.relations_changed:
            last_change = rep.order
        extra = {b: p - SuperPolynomial.constant(state.base.get(b, 0)) for b, p in state.deformation.items()}
        maxdeg = max((p.max_degree() for p in extra.values() if p), default=0)
        if not rep.corrections and rep.order >= 2 * maxdeg:
            status = "Converged"
            break
    order = max(last_change, 2) if status == "Converged" else state.order
    return MiniversalResult(
        order,
        status,
        state.deformation,
        state.nonzero_relations(),
        state.registry,
        history,
        base=state.base,
        n_max=n_max,
        truncation=state.order,
        class_relations=[(p.cls, r) for p, r in zip(state.registry, state.relations)],
    )


def residual(result: MiniversalResult) -> dict:
    """What is left of 1/2 [d, d] after removing the recorded relations, in degrees free of cap effects.

    Every returned coefficient is reduced modulo the relation ideal, so an
    empty dict means the Maurer-Cartan equation holds modulo the relations.
    """
    T = result.truncation
    top = reliable_degree(result.n_max, T)
    half = super_bracket(result.deformation, result.deformation, order=T, n_max=top)
    acc = {b: p.scale(Fraction(1, 2)) for b, p in half.items()}
    for cls, rel in result.class_relations:
        if rel:
            acc = _add(acc, {b: rel.scale(-c) for b, c in cls.items()})
    rels = [r for _, r in result.class_relations]
    ideal = RelationIdeal(rels, len(result.registry), [p.parity for p in result.registry])
    out = {}
    for b, p in acc.items():
        if b.degree > top:
            continue
        nf = ideal.reduce(p, T)
        if nf:
            out[b] = nf
    return out
