"""Exhaustive checkers: a propagation/backtracking solver that enumerates
every lawful measuring table between finite carriers, a raw filter oracle it
is cross-validated against, morphism enumeration, and the claim-level
checkers (unique-measuring initiality, preinitiality, composition respect,
adjunction bijections, initiality preservation).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .carriers import (Algebra, Coalgebra, coalgebra, render_value,
                       table_algebra)
from .kernel import (BOTTOM, CONST, FunctorSig, NatTransform, Node,
                     functor_map, fvalues, is_bottom, zip_values)
from .measuring import Measuring, compose, pull_measuring, push_measuring
from .transport import (expand_algebra, pushforward_coalgebra, pushout_algebra,
                        pushout_transpose, pushout_untranspose,
                        restrict_coalgebra, restriction_untranspose)

DEFAULT_BUDGET = 10 ** 6


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SolveResult:
    """All lawful tables found; exhaustive=False when the budget ran out."""

    solutions: tuple
    exhaustive: bool
    steps: int


@dataclass(frozen=True)
class CheckReport:
    claim: str
    instance: str
    status: str  # holds | fails | budget
    witnesses: tuple = ()

    @property
    def ok(self) -> bool:
        return self.status == "holds"

    def to_json(self) -> dict:
        return {"claim": self.claim, "instance": self.instance,
                "status": self.status,
                "witnesses": [render_value(w) if not isinstance(w, str) else w
                              for w in self.witnesses]}


# ---------------------------------------------------------------------------
# solver


class _Structure:
    """Target-independent constraint graph for measurings out of (C, A).

    One cell per (state, element).  Every signature value v over the carrier
    induces the constraint cell(c, alpha(v)) = interpretation of the zipped
    unfolding, whose slots reference other cells.
    """

    def __init__(self, c: Coalgebra, a: Algebra):
        if a.elements is None:
            raise ValueError("solver needs an enumerable source carrier")
        if not a.sig.monoid.finite:
            raise ValueError("solver needs a finite label monoid")
        if c.sig != a.sig:
            raise ValueError("signature mismatch between fuel and source")
        self.coalg, self.algebra = c, a
        self.states, self.elems = c.states, a.elements
        sindex = {s: i for i, s in enumerate(self.states)}
        eindex = {e: i for i, e in enumerate(self.elems)}
        ne = len(self.elems)
        self.ncells = len(self.states) * ne
        seen = set()
        constraints = []  # (lhs, deps, kind, label)
        for s in self.states:
            si = sindex[s]
            chi = c.chi[s]
            for v in fvalues(a.sig, self.elems):
                out = a.alpha(v)
                if out not in eindex:
                    raise ValueError(f"structure map of {a!r} left the carrier at {v!r}")
                lhs = si * ne + eindex[out]
                if a.sig.kind == CONST:
                    cons = (lhs, (), "label", a.sig.monoid.op(chi, v))
                elif is_bottom(chi) or is_bottom(v):
                    cons = (lhs, (), "bottom", None)
                else:
                    deps = tuple(sindex[cs] * ne + eindex[vs]
                                 for cs, vs in zip(chi.slots, v.slots))
                    cons = (lhs, deps, "node", a.sig.monoid.op(chi.label, v.label))
                if cons not in seen:
                    seen.add(cons)
                    constraints.append(cons)
        self.constraints = constraints
        self.by_dep = [[] for _ in range(self.ncells)]
        for ci, (_, deps, _, _) in enumerate(constraints):
            for d in set(deps):
                self.by_dep[d].append(ci)
        self.initial = [ci for ci, (_, deps, _, _) in enumerate(constraints) if not deps]

    def solve(self, b: Algebra, budget: int = DEFAULT_BUDGET) -> SolveResult:
        if b.elements is None:
            raise ValueError("solver needs a finite target carrier")
        if b.sig != self.algebra.sig:
            raise ValueError(
                f"signature mismatch: target over {b.sig!r}, source over {self.algebra.sig!r}")
        constraints = self.constraints
        assign = [None] * self.ncells
        steps = [0]
        solutions = []
        b_bottom = b.alpha(BOTTOM) if self.algebra.sig.kind != CONST else None

        def rhs(ci):
            lhs, deps, kind, label = constraints[ci]
            if kind == "bottom":
                return b_bottom
            if kind == "label":
                return b.alpha(label)
            return b.alpha(Node(label, tuple(assign[d] for d in deps)))

        def propagate(queue, trail) -> bool:
            while queue:
                ci = queue.pop()
                lhs, deps, _, _ = constraints[ci]
                if any(assign[d] is None for d in deps):
                    continue
                steps[0] += 1
                if steps[0] > budget:
                    raise BudgetExceeded
                val = rhs(ci)
                cur = assign[lhs]
                if cur is None:
                    assign[lhs] = val
                    trail.append(lhs)
                    queue.extend(self.by_dep[lhs])
                elif cur != val:
                    return False
            return True

        def undo(trail):
            for cell in trail:
                assign[cell] = None

        def snapshot():
            ne = len(self.elems)
            return {(s, e): assign[si * ne + ei]
                    for si, s in enumerate(self.states)
                    for ei, e in enumerate(self.elems)}

        def search(queue) -> None:
            trail = []
            if not propagate(queue, trail):
                undo(trail)
                return
            try:
                cell = assign.index(None)
            except ValueError:
                solutions.append(snapshot())
                undo(trail)
                return
            for val in b.elements:
                assign[cell] = val
                try:
                    search(list(self.by_dep[cell]))
                finally:
                    assign[cell] = None
            undo(trail)

        try:
            search(list(self.initial))
            return SolveResult(tuple(solutions), True, steps[0])
        except BudgetExceeded:
            return SolveResult(tuple(solutions), False, steps[0])


def solve_measurings(c: Coalgebra, a: Algebra, b: Algebra,
                     budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Enumerate every map (state, element) -> target element satisfying the
    measuring law, by constraint propagation with backtracking on the cells
    the law leaves free."""
    return _Structure(c, a).solve(b, budget)


def solutions_as_measurings(c, a, b, result: SolveResult) -> list:
    return [Measuring(c, a, b, table=t, name=f"solution{i}")
            for i, t in enumerate(result.solutions)]


def raw_lawful_tables(c: Coalgebra, a: Algebra, b: Algebra,
                      limit: int = 2 ** 18) -> tuple:
    """Filter oracle: enumerate all |B|^(|C||A|) tables and keep the lawful
    ones, checking the law directly on every cell.  Independent of the
    propagation solver; used to cross-validate it."""
    cells = [(s, e) for s in c.states for e in a.elements]
    total = len(b.elements) ** len(cells)
    if total > limit:
        raise ValueError(f"{total} raw tables exceed the limit {limit}")
    values = fvalues(a.sig, a.elements)
    checks = [(s, v, a.alpha(v)) for s in c.states for v in values]
    lawful = []
    for combo in itertools.product(b.elements, repeat=len(cells)):
        table = dict(zip(cells, combo))
        ok = True
        for s, v, out in checks:
            zipped = zip_values(a.sig, c.chi[s], v)
            expected = b.alpha(functor_map(a.sig, lambda p: table[p], zipped))
            if table[s, out] != expected:
                ok = False
                break
        if ok:
            lawful.append(table)
    return tuple(lawful)


# ---------------------------------------------------------------------------
# morphism enumeration


def algebra_morphisms(a: Algebra, b: Algebra, cap: int = 2 ** 20) -> tuple:
    """All structure-preserving maps between finite algebras, as dicts."""
    if a.elements is None or b.elements is None:
        raise ValueError("morphism enumeration needs finite carriers")
    total = len(b.elements) ** len(a.elements)
    if total > cap:
        raise ValueError(f"{total} candidate maps exceed the cap {cap}")
    values = fvalues(a.sig, a.elements)
    out = []
    for combo in itertools.product(b.elements, repeat=len(a.elements)):
        f = dict(zip(a.elements, combo))
        if all(f[a.alpha(v)] == b.alpha(functor_map(a.sig, f.__getitem__, v))
               for v in values):
            out.append(f)
    return tuple(out)


def coalgebra_morphisms(c: Coalgebra, d: Coalgebra, cap: int = 2 ** 20) -> tuple:
    """All unfolding-preserving maps between finite machines, as dicts."""
    total = len(d.states) ** len(c.states)
    if total > cap:
        raise ValueError(f"{total} candidate maps exceed the cap {cap}")
    out = []
    for combo in itertools.product(d.states, repeat=len(c.states)):
        f = dict(zip(c.states, combo))
        if all(functor_map(c.sig, f.__getitem__, c.chi[s]) == d.chi[f[s]]
               for s in c.states):
            out.append(f)
    return tuple(out)


# ---------------------------------------------------------------------------
# random instance families (seeded, deterministic)


def random_algebra(sig: FunctorSig, size: int, rng: random.Random, name="") -> Algebra:
    elems = tuple(range(size))
    table = {v: rng.choice(elems) for v in fvalues(sig, elems)}
    return table_algebra(sig, elems, table, name or f"rand{size}")


def random_coalgebra(sig: FunctorSig, size: int, rng: random.Random, name="") -> Coalgebra:
    states = tuple(range(size))
    options = fvalues(sig, states)
    chi = {s: rng.choice(options) for s in states}
    return coalgebra(sig, states, chi, name or f"randm{size}")


def random_algebras(sig: FunctorSig, sizes, per_size: int, seed: int) -> list:
    rng = random.Random(seed)
    return [random_algebra(sig, size, rng, name=f"rand{size}.{i}")
            for size in sizes for i in range(per_size)]


def random_coalgebras(sig: FunctorSig, sizes, per_size: int, seed: int) -> list:
    rng = random.Random(seed)
    return [random_coalgebra(sig, size, rng, name=f"randm{size}.{i}")
            for size in sizes for i in range(per_size)]


# ---------------------------------------------------------------------------
# claim-level checks


def check_c_initial(c: Coalgebra, a: Algebra, targets,
                    budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Exactly one lawful measuring from a into every target, by fuel c."""
    structure = _Structure(c, a)
    witnesses = []
    ran_out = False
    for i, b in enumerate(targets):
        result = structure.solve(b, budget)
        if not result.exhaustive:
            ran_out = True
            witnesses.append(f"target {i} ({b.name}): budget exceeded")
        elif len(result.solutions) != 1:
            witnesses.append(f"target {i} ({b.name}): {len(result.solutions)} measurings")
    status = "budget" if ran_out else ("holds" if not witnesses else "fails")
    return CheckReport("c-initial", f"{c.name} (x) {a.name}", status, tuple(witnesses))


def check_preinitial_subterminal(p: Algebra, b: Algebra, coalgebras=(),
                                 cap: int = 2 ** 20) -> CheckReport:
    """At most one morphism out of p, and at most one lawful measuring per
    fuel machine in the given family."""
    witnesses = []
    morphs = algebra_morphisms(p, b, cap)
    if len(morphs) > 1:
        witnesses.append(f"{len(morphs)} morphisms {p.name} -> {b.name}")
        witnesses.extend(str(sorted(m.items(), key=str)) for m in morphs[:2])
    for c in coalgebras:
        result = solve_measurings(c, p, b)
        if len(result.solutions) > 1:
            witnesses.append(f"{len(result.solutions)} measurings by {c.name}")
    status = "holds" if not witnesses else "fails"
    return CheckReport("preinitial-subterminal", f"{p.name} -> {b.name}",
                       status, tuple(witnesses))


def _pointwise_mismatches(lhs: Measuring, rhs: Measuring, states, elems, limit=10):
    out = []
    for s in states:
        for e in elems:
            a, b = lhs.eval(s, e), rhs.eval(s, e)
            if a != b:
                out.append((s, e, a, b))
                if len(out) >= limit:
                    return out
    return out


def check_respects_composition(kind: str, instances, depth: int = 3,
                               labels=None) -> CheckReport:
    """Transporting a composite equals composing the transports, pointwise.

    kind "embed": instances are (nu, mu, psi, phi); kind "push"/"pull":
    instances are (mu, psi, phi).  Product fuel states are identified across
    the two sides by strictness (pushforward) or by the inclusion of the
    pairwise restriction into the restricted product (pullback).
    """
    witnesses = []
    count = 0
    for inst in instances:
        count += 1
        if kind == "embed":
            from .measuring import embed_measuring
            nu, mu, psi, phi = inst
            lhs = embed_measuring(nu, mu, compose(psi, phi), verify=False)
            rhs = compose(embed_measuring(nu, mu, psi, verify=False),
                          embed_measuring(nu, mu, phi, verify=False))
            states = lhs.coalg.states
            elems, _ = lhs.source.carrier(depth, labels)
        elif kind == "push":
            mu, psi, phi = inst
            lhs = push_measuring(mu, compose(psi, phi))
            rhs = compose(push_measuring(mu, psi), push_measuring(mu, phi))
            states = lhs.coalg.states
            elems, _ = lhs.source.carrier(depth, labels)
        elif kind == "pull":
            mu, psi, phi = inst
            lhs = pull_measuring(mu, compose(psi, phi))
            rhs = compose(pull_measuring(mu, psi), pull_measuring(mu, phi))
            kept = set(lhs.coalg.states)
            states = list(rhs.coalg.states)
            missing = [s for s in states if s not in kept]
            if missing:
                witnesses.append((f"instance {count}", "pair state outside restricted product", missing[0]))
                continue
            elems, _ = lhs.source.carrier(depth, labels)
        else:
            raise ValueError(f"unknown transport kind {kind!r}")
        for w in _pointwise_mismatches(lhs, rhs, states, elems):
            witnesses.append((f"instance {count}",) + w)
    status = "holds" if not witnesses else "fails"
    return CheckReport(f"respects-composition[{kind}]", f"{count} instances",
                       status, tuple(witnesses))


def check_adjunction(mu: NatTransform, side: str, instances,
                     cap: int = 2 ** 20) -> CheckReport:
    """Hom-set bijections for the two adjoint closed forms.

    side "bang": instances are (A, B) constant-signature algebra pairs; the
    morphisms A -> pullback(B) must biject with morphisms pushout(A) -> B
    via the transposes.  side "shriek": instances are (D, C) machine pairs;
    morphisms D -> restrict(C) must biject with morphisms push(D) -> C via
    post-composition with the inclusion.
    """
    witnesses = []
    count = 0
    for inst in instances:
        count += 1
        tag = f"instance {count}"
        if side == "bang":
            a, b = inst
            p = pushout_algebra(mu.hom, a)
            fs = algebra_morphisms(a, _pullback(mu, b), cap)
            gs = algebra_morphisms(p.algebra, b, cap)
            if len(fs) != len(gs):
                witnesses.append((tag, "counts", len(fs), len(gs)))
                continue
            gset = {tuple(sorted(g.items(), key=str)) for g in gs}
            for f in fs:
                g = pushout_transpose(p, b, f)
                if tuple(sorted(g.items(), key=str)) not in gset:
                    witnesses.append((tag, "transpose image not a morphism", str(f)))
                elif pushout_untranspose(p, g) != f:
                    witnesses.append((tag, "round trip failed", str(f)))
        elif side == "shriek":
            d, c = inst
            sub = restrict_coalgebra(mu, c)
            fs = coalgebra_morphisms(d, sub.coalg, cap)
            gs = coalgebra_morphisms(pushforward_coalgebra(mu, d), c, cap)
            if len(fs) != len(gs):
                witnesses.append((tag, "counts", len(fs), len(gs)))
                continue
            gset = {tuple(sorted(g.items(), key=str)) for g in gs}
            for f in fs:
                # post-composing with the inclusion leaves the mapping as is
                if tuple(sorted(f.items(), key=str)) not in gset:
                    witnesses.append((tag, "inclusion image not a morphism", str(f)))
                elif restriction_untranspose(sub, d, f) != f:
                    witnesses.append((tag, "round trip failed", str(f)))
        else:
            raise ValueError(f"unknown adjunction side {side!r}")
    status = "holds" if not witnesses else "fails"
    return CheckReport(f"adjunction[{side}]", f"{count} instances", status,
                       tuple(witnesses))


def _pullback(mu, b):
    from .transport import pullback_algebra
    return pullback_algebra(mu, b)


def check_preserves_c_initial(mu: NatTransform, c: Coalgebra, a: Algebra,
                              source_targets, target_targets,
                              budget: int = DEFAULT_BUDGET) -> CheckReport:
    """If a is uniquely measurable by c into every target, its left-adjoint
    image is uniquely measurable by the pushed-forward fuel."""
    first = check_c_initial(c, a, source_targets, budget)
    if a.sig.kind == CONST:
        image = pushout_algebra(mu.hom, a).algebra
    else:
        image = expand_algebra(mu, a).algebra
    pushed = pushforward_coalgebra(mu, c)
    second = check_c_initial(pushed, image, target_targets, budget)
    witnesses = tuple(f"source: {w}" for w in first.witnesses) + \
        tuple(f"image: {w}" for w in second.witnesses)
    if "budget" in (first.status, second.status):
        status = "budget"
    else:
        status = "holds" if first.ok and second.ok else "fails"
    return CheckReport("preserves-c-initial", f"{c.name} (x) {a.name} along {mu!r}",
                       status, witnesses)
