"""Named example setups used by the CLI and the test suite.

Each fixture reconstructs one worked scenario end to end: the signatures and
morphisms, the carriers, the measurings, the expected golden evaluations, and
a list of oracle reports that must all hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .carriers import (coalgebra, finite_algebra, initial_term_algebra,
                       nat_counter, perfect_shape, render_term,
                       shape_coalgebra, term_algebra_bounded,
                       term_as_coalgebra, term_unfold_coalgebra,
                       unit_coalgebra, coalgebras_identical)
from .kernel import (BOOL_OR, BOTTOM, NAT_PLUS, TRIV, TRUTH_AND, TRUTH_OR,
                     Node, collapse_hom, const_sig, hom, identity_hom,
                     nat_transform, shape_sig, unit_hom)
from .measuring import (Measuring, canonical_const_measuring,
                        canonical_term_measuring, check_law, compose,
                        embed_measuring, pull_measuring, push_measuring)
from .oracle import (CheckReport, DEFAULT_BUDGET, check_adjunction,
                     check_c_initial, check_preserves_c_initial,
                     check_respects_composition, random_algebras)
from .transport import (expand_algebra, pullback_algebra,
                        pushforward_coalgebra, pushout_algebra,
                        restrict_coalgebra)


@dataclass
class Fixture:
    name: str
    title: str
    objects: dict
    reports: list
    goldens: list = field(default_factory=list)
    measurings: list = field(default_factory=list)  # (Measuring, check_law kwargs)


def _bool_report(claim, instance, ok, witnesses=()) -> CheckReport:
    return CheckReport(claim, instance, "holds" if ok else "fails", tuple(witnesses))


def _law_report(phi: Measuring, **kwargs) -> CheckReport:
    rep = check_law(phi, **kwargs)
    return CheckReport("law", phi.name, "holds" if rep.ok else "fails",
                       tuple(str(v) for v in rep.violations[:3]))


# ---------------------------------------------------------------------------
# numbers seen as lists that ignore their labels


def build_nat_as_lists(budget: int = DEFAULT_BUDGET) -> Fixture:
    f = shape_sig(TRIV, 1)
    g = shape_sig(BOOL_OR, 1)
    mu = nat_transform(f, g, unit_hom(BOOL_OR), (0,), name="mu")
    nu = nat_transform(g, f, collapse_hom(BOOL_OR), (0,), name="nu")

    n2 = term_algebra_bounded(f, 2)
    c2 = nat_counter(2)
    phi = canonical_term_measuring(c2, n2, n2, name="min")
    emb = embed_measuring(nu, mu, phi)
    comp = compose(phi, phi)

    targets = random_algebras(f, (1, 2, 3), 5, seed=11)
    reports = [
        _law_report(phi),
        _law_report(emb),
        _law_report(comp),
        check_c_initial(c2, n2, targets, budget),
        check_respects_composition(
            "embed",
            [(nu, mu, canonical_term_measuring(d, n2, n2),
              canonical_term_measuring(c, n2, n2))
             for d in (unit_coalgebra(f), c2) for c in (unit_coalgebra(f), c2)]),
    ]
    objects = {"F": f, "G": g, "mu": mu, "nu": nu, "N2": n2, "C2": c2}
    return Fixture("nat_as_lists", "numbers embedded as label-blind lists",
                   objects, reports,
                   measurings=[(phi, {}), (emb, {}), (comp, {})])


# ---------------------------------------------------------------------------
# a label change that swaps the two truth values


def build_truth_monoid(budget: int = DEFAULT_BUDGET) -> Fixture:
    ca = const_sig(TRUTH_AND)
    co = const_sig(TRUTH_OR)
    flip = hom(TRUTH_AND, TRUTH_OR, {"T": "F", "F": "T"}, inverse={"T": "F", "F": "T"})
    mu = nat_transform(ca, co, flip, name="flip")

    a3 = finite_algebra(ca, ("ta", "fa", "other"),
                        lambda x: {"T": "ta", "F": "fa"}[x], "A3")
    p3 = pushout_algebra(flip, a3)

    am = finite_algebra(ca, ("T", "F"), lambda x: x, "AM")
    cc = coalgebra(ca, ("c0", "c1"), {"c0": "T", "c1": "F"}, "Cc")
    phi = canonical_const_measuring(cc, am, am, name="truthmul")
    pushed = push_measuring(mu, phi)
    comp = compose(phi, phi)

    import random
    rng = random.Random(23)
    from .oracle import random_algebra
    instances = [(random_algebra(ca, s, rng), random_algebra(co, t, rng))
                 for s in (2, 3) for t in (2, 3)]

    expected_classes = ((("alg", "ta"), ("mon", "F")),
                        (("alg", "fa"), ("mon", "T")),
                        (("alg", "other"),))
    reports = [
        _bool_report("pushout-classes", "A3 along flip",
                     p3.classes == expected_classes, [str(p3.classes)]),
        _law_report(phi),
        _law_report(pushed),
        _law_report(comp),
        check_adjunction(mu, "bang", instances),
        check_respects_composition("push", [(mu, phi, phi)]),
    ]
    objects = {"CA": ca, "CO": co, "flip": flip, "mu": mu, "A3": a3,
               "pushout": p3, "AM": am, "Cc": cc}
    goldens = ["classes " + " | ".join(
        "{" + ", ".join(f"{k}:{v}" for k, v in cls) + "}" for cls in p3.classes)]
    return Fixture("truth_monoid", "pushout along the truth-swapping hom",
                   objects, reports, goldens,
                   measurings=[(phi, {}), (pushed, {}), (comp, {})])


# ---------------------------------------------------------------------------
# restricting list zips to plain length fuel


def build_pulling_back_lists(budget: int = DEFAULT_BUDGET) -> Fixture:
    f = shape_sig(TRIV, 1)
    g = shape_sig(BOOL_OR, 1)
    mu = nat_transform(f, g, unit_hom(BOOL_OR), (0,), name="mu")

    l2 = term_algebra_bounded(g, 2)
    l2d = term_unfold_coalgebra(g, 2)
    linf = initial_term_algebra(g)
    zipm = canonical_term_measuring(l2d, l2, linf, name="zip")
    sub = restrict_coalgebra(mu, l2d)
    pulled = pull_measuring(mu, zipm, sub)

    n2 = term_algebra_bounded(f, 2)
    c2 = nat_counter(2)
    minm = canonical_term_measuring(c2, n2, pullback_algebra(mu, linf), name="min")

    zip2 = canonical_term_measuring(l2d, l2, l2, name="zip2")
    comp = compose(zip2, zip2)

    elist = [BOTTOM]
    for _ in range(2):
        elist.append(Node(0, (elist[-1],)))
    kept_expected = tuple(elist)  # unit-labelled lists, shortest first

    targets = random_algebras(f, (1, 2, 3), 5, seed=12)
    reports = [
        _law_report(zipm),
        _law_report(pulled),
        _law_report(minm),
        _law_report(comp),
        _bool_report("restriction", "all-unit list states",
                     set(sub.kept) == set(kept_expected),
                     [render_term(s) for s in sub.kept]),
        check_c_initial(c2, n2, targets, budget),
        check_respects_composition("pull", [(mu, zip2, zip2)]),
    ]
    objects = {"F": f, "G": g, "mu": mu, "L2": l2, "L2d": l2d, "sub": sub,
               "N2": n2, "C2": c2}
    return Fixture("pulling_back_lists", "list zips restricted to length fuel",
                   objects, reports,
                   measurings=[(zipm, {}), (pulled, {}), (minm, {}), (comp, {})])


# ---------------------------------------------------------------------------
# tree pruning with level-indexed relabelling


def build_tree_pruning(budget: int = DEFAULT_BUDGET) -> Fixture:
    g = shape_sig(NAT_PLUS, 1)
    h = shape_sig(NAT_PLUS, 2)
    mu = nat_transform(g, h, identity_hom(NAT_PLUS), (0, 0), name="dup")

    trees = initial_term_algebra(h)

    def prune_with(shape_term):
        fuel = term_as_coalgebra(h, shape_term)
        phi = canonical_term_measuring(fuel, trees, trees, name="prune")
        return fuel, phi

    subject = Node(5, (Node(1, (BOTTOM, BOTTOM)), BOTTOM))
    zero1 = Node(0, (BOTTOM, BOTTOM))
    zero2 = Node(0, (zero1, BOTTOM))

    goldens = []
    examples = [(BOTTOM, subject), (zero1, subject), (zero2, zero2)]
    for shape_term, tree in examples:
        fuel, phi = prune_with(shape_term)
        out = phi.eval(shape_term, tree)
        goldens.append(f"prune {render_term(shape_term)} {render_term(tree)}"
                       f" -> {render_term(out)}")

    # a one-state machine is an infinite all-zero fuel tree: pruning with it
    # is the identity
    loop = coalgebra(h, ("s",), {"s": Node(0, ("s", "s"))}, "loop")
    loop_phi = canonical_term_measuring(loop, trees, trees, name="loopprune")
    wide = Node(5, (Node(1, (BOTTOM, BOTTOM)), Node(7, (BOTTOM, BOTTOM))))
    goldens.append(f"loop-prune {render_term(wide)} -> {render_term(loop_phi.eval('s', wide))}")

    # pushing the list zip forward prunes to the list's length and adds the
    # level's entry to every node at that level
    lists = initial_term_algebra(g)
    fuel_list = Node(0, (Node(1, (Node(2, (BOTTOM,)),)),))
    list_fuel = term_as_coalgebra(g, fuel_list)
    zipm = canonical_term_measuring(list_fuel, lists, lists, name="listzip")
    pushed = push_measuring(mu, zipm)
    pushed_out = pushed.eval(fuel_list, wide)
    goldens.append(f"push [0,1,2] {render_term(wide)} -> {render_term(pushed_out)}")

    # finite-label twin of the same construction, small enough to solve
    gb = shape_sig(BOOL_OR, 1)
    hb = shape_sig(BOOL_OR, 2)
    mub = nat_transform(gb, hb, identity_hom(BOOL_OR), (0, 0), name="dupb")
    l1 = term_algebra_bounded(gb, 1)
    l1d = term_unfold_coalgebra(gb, 1)
    t1 = expand_algebra(mub, l1).algebra
    pushed_fuel = pushforward_coalgebra(mub, l1d)
    targets = random_algebras(hb, (1, 2, 3), 5, seed=13)

    shape1, prune1 = prune_with(zero1)
    zipb = canonical_term_measuring(l1d, l1, l1, name="zipb")
    reports = [
        _law_report(prune1, depth=2, labels=(0, 1, 2)),
        _law_report(loop_phi, depth=2, labels=(0, 1, 2)),
        _law_report(pushed, depth=2, labels=(0, 1, 2)),
        check_c_initial(pushed_fuel, t1, targets, budget),
        check_respects_composition("push", [(mub, zipb, zipb)]),
    ]
    objects = {"G": g, "H": h, "mu": mu, "trees": trees, "loop": loop,
               "GB": gb, "HB": hb, "mub": mub, "L1": l1, "L1d": l1d, "T1": t1}
    return Fixture("tree_pruning", "shape-directed pruning and its transports",
                   objects, reports, goldens,
                   measurings=[(loop_phi, {"depth": 2, "labels": (0, 1, 2)}),
                               (pushed, {"depth": 2, "labels": (0, 1, 2)}),
                               (zipb, {})])


# ---------------------------------------------------------------------------
# the three introductory constructions


def build_intro_examples(budget: int = DEFAULT_BUDGET) -> Fixture:
    f = shape_sig(TRIV, 1)
    hm = shape_sig(BOOL_OR, 2)
    mu = nat_transform(f, hm, unit_hom(BOOL_OR), (0, 0), name="perfect")

    t1 = term_algebra_bounded(hm, 1)
    s1 = shape_coalgebra(hm, 1)
    prune1 = canonical_term_measuring(s1, t1, t1, name="prune1")

    n2 = term_algebra_bounded(f, 2)
    expanded = expand_algebra(mu, n2)
    numeral2 = n2.elements[2]
    perfect2 = expanded.embed(numeral2)
    leaf = Node(0, (BOTTOM, BOTTOM))
    expected_perfect = Node(0, (leaf, leaf))

    pushed_fuel = pushforward_coalgebra(mu, nat_counter(2))
    strict_same = coalgebras_identical(pushed_fuel, perfect_shape(hm, 2))

    targets_f = random_algebras(f, (1, 2, 3), 5, seed=14)
    targets_h = random_algebras(hm, (1, 2, 3), 5, seed=15)
    reports = [
        _law_report(prune1),
        _bool_report("perfect-embedding", "depth 2",
                     perfect2 == expected_perfect, [render_term(perfect2)]),
        _bool_report("pushforward-is-depth-fuel", "fuel 2", strict_same),
        check_c_initial(s1, t1, random_algebras(hm, (1, 2, 3), 5, seed=16), budget),
        check_preserves_c_initial(mu, nat_counter(1), term_algebra_bounded(f, 1),
                                  targets_f, targets_h, budget),
    ]
    goldens = [f"perfect 2 -> {render_term(perfect2)}"]
    objects = {"F": f, "H": hm, "mu": mu, "T1": t1, "S1": s1, "N2": n2}
    return Fixture("intro_examples", "bounded trees, perfect embeddings, depth fuel",
                   objects, reports, goldens,
                   measurings=[(prune1, {})])


GALLERY = {
    "nat_as_lists": build_nat_as_lists,
    "truth_monoid": build_truth_monoid,
    "pulling_back_lists": build_pulling_back_lists,
    "tree_pruning": build_tree_pruning,
    "intro_examples": build_intro_examples,
}


def build_fixture(name: str, budget: int = DEFAULT_BUDGET) -> Fixture:
    if name not in GALLERY:
        raise ValueError(f"unknown fixture {name!r}; known: {sorted(GALLERY)}")
    return GALLERY[name](budget)
