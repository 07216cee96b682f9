"""Monoids, container signatures, and signature morphisms.

A signature is either ``const(M)`` (values are bare monoid labels) or
``shape(M, a)`` (values are a bottom element or a labelled node with ``a``
payload slots).  Every signature carries a canonical zip (labels multiply,
slots pair up positionwise, bottom absorbs) and a canonical unit value.
A signature morphism relabels nodes through a monoid homomorphism and
reorders/duplicates slots through a total reindexing map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

STAR = "*"

CONST = "const"
SHAPE = "shape"


# ---------------------------------------------------------------------------
# law reports


@dataclass(frozen=True)
class LawReport:
    """Outcome of an exhaustive or sampled law check.

    ``complete`` is False when only a sample of the relevant instances was
    covered (infinite carriers, or an exceeded budget).
    """

    violations: tuple = ()
    checked: int = 0
    complete: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# monoids


@dataclass(frozen=True, eq=False)
class Monoid:
    name: str
    elements: tuple | None  # None: builtin symbolic carrier (naturals)
    op: Callable[[Any, Any], Any]
    unit: Any
    table: dict = field(default=None, repr=False)

    @property
    def finite(self) -> bool:
        return self.elements is not None

    def sample(self, k: int) -> tuple:
        """First k carrier elements; naturals 0..k-1 for the builtin carrier."""
        if self.finite:
            return self.elements[:k]
        return tuple(range(k))

    def __repr__(self):
        return f"Monoid({self.name})"


def finite_monoid(name: str, elements, op: Callable, unit) -> Monoid:
    """Finite monoid with an explicit multiplication table.

    The table must be closed over the carrier; associativity and unit laws
    are the business of monoid_check, not of construction.
    """
    elements = tuple(elements)
    eset = set(elements)
    if unit not in eset:
        raise ValueError(f"unit {unit!r} not in carrier of {name}")
    table = {}
    for a in elements:
        for b in elements:
            c = op(a, b)
            if c not in eset:
                raise ValueError(f"{name}: op({a!r},{b!r}) = {c!r} leaves the carrier")
            table[a, b] = c
    return Monoid(name, elements, lambda a, b: table[a, b], unit, table)


def table_monoid(name: str, elements, table: dict, unit) -> Monoid:
    """Finite monoid given directly by its table."""
    return finite_monoid(name, elements, lambda a, b: table[a, b], unit)


TRIV = finite_monoid("Triv", ("e",), lambda a, b: "e", "e")
BOOL_OR = finite_monoid("BoolOr", (0, 1), max, 0)
TRUTH_AND = finite_monoid("TruthAnd", ("T", "F"), lambda a, b: "T" if a == "T" and b == "T" else "F", "T")
TRUTH_OR = finite_monoid("TruthOr", ("T", "F"), lambda a, b: "T" if a == "T" or b == "T" else "F", "F")
NAT_PLUS = Monoid("NatPlus", None, lambda a, b: a + b, 0)


def monoid_check(m: Monoid, budget: int = 1000) -> LawReport:
    """Check associativity and the two unit laws.

    Finite carriers are checked exhaustively when the triple count fits the
    budget; the builtin carrier is checked on an initial sample.
    """
    if m.finite:
        k = len(m.elements)
        if k ** 3 <= budget:
            xs, complete = m.elements, True
        else:
            xs, complete = m.sample(max(1, int(budget ** (1 / 3)))), False
    else:
        xs, complete = m.sample(max(2, int(budget ** (1 / 3)))), False
    violations = []
    checked = 0
    for x in xs:
        checked += 2
        if m.op(m.unit, x) != x:
            violations.append(("unit-left", x, m.op(m.unit, x)))
        if m.op(x, m.unit) != x:
            violations.append(("unit-right", x, m.op(x, m.unit)))
    for a, b, c in itertools.product(xs, repeat=3):
        checked += 1
        lhs = m.op(m.op(a, b), c)
        rhs = m.op(a, m.op(b, c))
        if lhs != rhs:
            violations.append(("assoc", (a, b, c), lhs, rhs))
    return LawReport(tuple(violations), checked, complete)


# ---------------------------------------------------------------------------
# monoid homomorphisms


@dataclass(frozen=True, eq=False)
class MonoidHom:
    """Total map between monoid carriers, expected to preserve op and unit.

    ``mapping`` is a dict for finite sources or a callable for the builtin
    carrier; ``inverse`` (when given) witnesses injectivity and is required
    by the operations that invert labels.
    """

    source: Monoid
    target: Monoid
    mapping: Any
    inverse: Any = None

    def apply(self, x):
        if callable(self.mapping):
            return self.mapping(x)
        return self.mapping[x]

    def preimage(self, y):
        """Unique source label mapping to y, or None when y is outside the image."""
        if self.inverse is not None:
            if callable(self.inverse):
                return self.inverse(y)
            return self.inverse.get(y)
        if callable(self.mapping):
            raise ValueError(f"hom {self.source.name}->{self.target.name} has no inverse data")
        inv = {}
        for k, v in self.mapping.items():
            if v in inv:
                return None  # not injective: no unique preimage
            inv[v] = k
        return inv.get(y)

    def is_injective(self) -> bool:
        if callable(self.mapping):
            return self.inverse is not None
        vals = list(self.mapping.values())
        return len(set(vals)) == len(vals)


def hom(source: Monoid, target: Monoid, mapping, inverse=None) -> MonoidHom:
    if not callable(mapping):
        mapping = dict(mapping)
        missing = set(source.elements or ()) - set(mapping)
        if missing:
            raise ValueError(f"hom mapping not total, missing {sorted(map(str, missing))}")
    return MonoidHom(source, target, mapping, inverse)


def identity_hom(m: Monoid) -> MonoidHom:
    if m.finite:
        return MonoidHom(m, m, {x: x for x in m.elements})
    return MonoidHom(m, m, lambda x: x, lambda x: x)


def unit_hom(target: Monoid) -> MonoidHom:
    """The unique homomorphism out of the trivial monoid."""
    return MonoidHom(TRIV, target, {"e": target.unit})


def collapse_hom(source: Monoid) -> MonoidHom:
    """The unique homomorphism into the trivial monoid."""
    if source.finite:
        return MonoidHom(source, TRIV, {x: "e" for x in source.elements})
    return MonoidHom(source, TRIV, lambda x: "e")


def compose_homs(outer: MonoidHom, inner: MonoidHom) -> MonoidHom:
    """outer after inner."""
    if inner.target is not outer.source:
        raise ValueError("hom composition endpoint mismatch")
    if not callable(inner.mapping):
        return MonoidHom(inner.source, outer.target,
                         {x: outer.apply(v) for x, v in inner.mapping.items()})
    return MonoidHom(inner.source, outer.target, lambda x: outer.apply(inner.apply(x)))


def hom_check(h: MonoidHom, budget: int = 1000) -> LawReport:
    """Check unit preservation and multiplicativity on enumerated pairs."""
    xs = h.source.elements if h.source.finite else h.source.sample(max(2, int(budget ** 0.5)))
    violations = []
    checked = 1
    if h.apply(h.source.unit) != h.target.unit:
        violations.append(("unit", h.apply(h.source.unit)))
    for a, b in itertools.product(xs, repeat=2):
        checked += 1
        lhs = h.apply(h.source.op(a, b))
        rhs = h.target.op(h.apply(a), h.apply(b))
        if lhs != rhs:
            violations.append(("mul", (a, b), lhs, rhs))
    return LawReport(tuple(violations), checked, h.source.finite)


# ---------------------------------------------------------------------------
# signatures and their values


@dataclass(frozen=True)
class FunctorSig:
    kind: str
    monoid: Monoid
    arity: int = 0

    def __repr__(self):
        if self.kind == CONST:
            return f"const({self.monoid.name})"
        return f"shape({self.monoid.name},{self.arity})"


def const_sig(m: Monoid) -> FunctorSig:
    return FunctorSig(CONST, m)


def shape_sig(m: Monoid, arity: int) -> FunctorSig:
    if arity < 0:
        raise ValueError("arity must be >= 0")
    return FunctorSig(SHAPE, m, arity)


@dataclass(frozen=True, slots=True)
class BottomType:
    def __repr__(self):
        return "#b"


BOTTOM = BottomType()


@dataclass(frozen=True, slots=True)
class Node:
    label: Any
    slots: tuple

    def __repr__(self):
        if not self.slots:
            return f"({self.label})"
        return "(" + " ".join([str(self.label)] + [repr(s) for s in self.slots]) + ")"


def node(label, *slots) -> Node:
    return Node(label, tuple(slots))


def is_bottom(v) -> bool:
    return isinstance(v, BottomType)


def _check_node(sig: FunctorSig, v):
    if sig.kind != SHAPE:
        raise ValueError(f"{sig!r} holds bare labels, not nodes")
    if isinstance(v, Node) and len(v.slots) != sig.arity:
        raise ValueError(f"arity mismatch: {sig!r} vs node with {len(v.slots)} slots")


def functor_map(sig: FunctorSig, f: Callable, v):
    """Apply f to every payload slot, keeping labels and bottom fixed."""
    if sig.kind == CONST:
        return v
    if is_bottom(v):
        return BOTTOM
    _check_node(sig, v)
    return Node(v.label, tuple(f(s) for s in v.slots))


def zip_values(sig: FunctorSig, u, v):
    """Combine two values over the same signature: labels multiply, slots pair
    up positionwise, and bottom absorbs."""
    if sig.kind == CONST:
        return sig.monoid.op(u, v)
    if is_bottom(u) or is_bottom(v):
        return BOTTOM
    _check_node(sig, u)
    _check_node(sig, v)
    return Node(sig.monoid.op(u.label, v.label),
                tuple(zip(u.slots, v.slots)))


def unit_value(sig: FunctorSig, point=STAR):
    """The canonical value over the one-point payload set."""
    if sig.kind == CONST:
        return sig.monoid.unit
    return Node(sig.monoid.unit, (point,) * sig.arity)


def fvalues(sig: FunctorSig, payloads, labels=None):
    """All values over the given payload collection, in deterministic order.

    ``labels`` overrides the label universe (mandatory for builtin monoids).
    """
    if labels is None:
        if not sig.monoid.finite:
            raise ValueError(f"{sig.monoid.name} is not enumerable; pass labels")
        labels = sig.monoid.elements
    if sig.kind == CONST:
        return list(labels)
    payloads = tuple(payloads)
    out = [BOTTOM]
    for m in labels:
        for combo in itertools.product(payloads, repeat=sig.arity):
            out.append(Node(m, combo))
    return out


# ---------------------------------------------------------------------------
# signature morphisms


@dataclass(frozen=True, eq=False)
class NatTransform:
    """Signature morphism: a label homomorphism plus, for node shapes, a total
    map sending each target slot to the source slot it copies."""

    source: FunctorSig
    target: FunctorSig
    hom: MonoidHom
    reindex: tuple = None  # 0-based, length = target arity, values < source arity
    name: str = ""

    def __repr__(self):
        return self.name or f"nat({self.source!r}->{self.target!r})"


def nat_transform(source: FunctorSig, target: FunctorSig, h: MonoidHom,
                  reindex=None, name: str = "") -> NatTransform:
    if source.kind != target.kind:
        raise ValueError("no morphisms between const and shape signatures")
    if h.source is not source.monoid or h.target is not target.monoid:
        raise ValueError("hom endpoints do not match the signatures")
    if source.kind == SHAPE:
        if reindex is None:
            raise ValueError("shape morphisms need a slot reindexing")
        reindex = tuple(reindex)
        if len(reindex) != target.arity:
            raise ValueError(f"reindex length {len(reindex)} != target arity {target.arity}")
        if any(not (0 <= i < source.arity) for i in reindex):
            raise ValueError("reindex entry outside source slots")
    else:
        reindex = None
    return NatTransform(source, target, h, reindex, name)


def identity_nat(sig: FunctorSig) -> NatTransform:
    r = tuple(range(sig.arity)) if sig.kind == SHAPE else None
    return NatTransform(sig, sig, identity_hom(sig.monoid), r, name="id")


def nat_apply(mu: NatTransform, v):
    """Component of the morphism at one payload set."""
    if mu.source.kind == CONST:
        return mu.hom.apply(v)
    if is_bottom(v):
        return BOTTOM
    _check_node(mu.source, v)
    return Node(mu.hom.apply(v.label), tuple(v.slots[i] for i in mu.reindex))


def compose_nats(outer: NatTransform, inner: NatTransform) -> NatTransform:
    """outer after inner (apply inner first)."""
    if inner.target != outer.source:
        raise ValueError("signature morphism composition endpoint mismatch")
    h = compose_homs(outer.hom, inner.hom)
    r = None
    if inner.source.kind == SHAPE:
        r = tuple(inner.reindex[j] for j in outer.reindex)
    return NatTransform(inner.source, outer.target, h, r,
                        name=f"{outer.name}.{inner.name}" if outer.name and inner.name else "")


def nats_equal(a: NatTransform, b: NatTransform, label_sample=(0, 1, 2)) -> bool:
    """Pointwise equality of two morphisms (sampled labels for builtin monoids)."""
    if a.source != b.source or a.target != b.target:
        return False
    if a.reindex != b.reindex:
        return False
    labels = a.source.monoid.elements or label_sample
    return all(a.hom.apply(x) == b.hom.apply(x) for x in labels)


def nat_check_lax(mu: NatTransform, payloads=((0, 1, 2), (0, 1, 2)),
                  label_sample=None, max_functions: int = 81) -> LawReport:
    """Check naturality and compatibility with zip and unit on sampled carriers.

    Naturality is checked against every function between the two payload sets
    (capped at max_functions); the zip square is checked on all value pairs.
    """
    xs, ys = tuple(payloads[0]), tuple(payloads[1])
    if label_sample is None and not mu.source.monoid.finite:
        label_sample = mu.source.monoid.sample(3)
    us = fvalues(mu.source, xs, label_sample)
    vs = fvalues(mu.source, ys, label_sample)
    violations = []
    checked = 0

    funcs = []
    for combo in itertools.product(range(len(ys)), repeat=len(xs)):
        funcs.append({x: ys[i] for x, i in zip(xs, combo)})
        if len(funcs) >= max_functions:
            break
    complete = len(funcs) == len(ys) ** len(xs)

    for fn in funcs:
        f = fn.__getitem__
        for u in us:
            checked += 1
            lhs = nat_apply(mu, functor_map(mu.source, f, u))
            rhs = functor_map(mu.target, f, nat_apply(mu, u))
            if lhs != rhs:
                violations.append(("naturality", tuple(sorted(fn.items(), key=str)), u, lhs, rhs))

    for u in us:
        for v in vs:
            checked += 1
            lhs = nat_apply(mu, zip_values(mu.source, u, v))
            rhs = zip_values(mu.target, nat_apply(mu, u), nat_apply(mu, v))
            if lhs != rhs:
                violations.append(("zip", u, v, lhs, rhs))

    checked += 1
    lhs = nat_apply(mu, unit_value(mu.source))
    rhs = unit_value(mu.target)
    if lhs != rhs:
        violations.append(("unit", lhs, rhs))

    complete = complete and mu.source.monoid.finite
    return LawReport(tuple(violations), checked, complete)
