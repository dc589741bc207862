"""
Selectors and the contraction family they induce
================================================

On a topological space (preorder relation), a selector assigns to each
finite subset of the universe a finite subfamily, subject to two
conditions: members inside the subset must be selected, and any union
of selected members fitting under a member's upper approximation is
re-covered by a single selected member.  A passing selector yields a
family of contraction maps on the closed-set poset whose pointwise
supremum is the identity, plus an equivalent family of endo-relations.
"""

try:
    import roughdom
except ImportError:
    import pathlib
    import sys

    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from roughdom import (
    FinitePoset,
    MonotoneMap,
    cf_closed_sets,
    check_tb,
    classify_space,
    delta_family,
    identity_map,
    search_tb_selector,
    tb_witness_from_bf,
    theta_from_tb,
)

chain3 = FinitePoset(
    ["0", "1", "2"],
    [("0", "0"), ("1", "1"), ("2", "2"), ("0", "1"), ("1", "2"), ("0", "2")])

# extract a selector from a kernel-operator family on the poset
const = MonotoneMap(chain3, chain3, {x: "0" for x in chain3.elements})
sel = tb_witness_from_bf(chain3, (const, identity_map(chain3)))
print("selector admissible?", bool(check_tb(sel)))
print("families chosen for a few index sets:")
for K in (frozenset({"0"}), frozenset({"1"}), frozenset({"0", "1", "2"})):
    print(f"  K={sorted(K)} -> {[sorted(M) for M in sel.families(K)]}")
print()

family = delta_family(sel)
cs = cf_closed_sets(sel.space)
print(f"{len(family)} contraction maps over {len(cs)} closed sets")
K, f = family[0]
print(f"the contraction at K={sorted(K)}:")
for E in cs.closed_sets:
    print(f"  {sorted(E)} -> {sorted(f(E))}")
print()

w = theta_from_tb(sel)
cls = classify_space(sel.space, w)
print("induced relation family classification:", cls)
print()

# a bounded search can find a selector with no kernel family in hand
found = search_tb_selector(sel.space)
print(f"search found a selector after {found.attempts} candidate(s):",
      bool(found))
