"""
Rough-set approximation operators on a small universe
=====================================================

A generalized approximation space is just a universe with a binary
relation.  The upper operator collects the points whose successor set
meets a subset; the lower operator those whose successor set is
contained in it.  This script walks the basic identities on a
three-point space.
"""

try:
    import roughdom
except ImportError:
    import pathlib
    import sys

    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from roughdom import (
    GASpace,
    lower_approx,
    predecessors,
    relation_properties,
    successors,
    upper_approx,
)

space = GASpace(["a", "b", "c"],
                [("a", "b"), ("b", "c"), ("a", "c"), ("c", "c")])

print("universe:", space.universe)
print("relation:", sorted(space.relation))
print()

for x in space.universe:
    print(f"successors({x}) = {sorted(successors(space, x))}   "
          f"predecessors({x}) = {sorted(predecessors(space, x))}")
print()

subsets = [frozenset(), frozenset({"b"}), frozenset({"b", "c"}),
           frozenset(space.universe)]
for A in subsets:
    up = upper_approx(space, A)
    lo = lower_approx(space, A)
    print(f"A = {sorted(A)!s:16} upper = {sorted(up)!s:16} lower = {sorted(lo)}")
print()

# the two operators are De Morgan duals
U = frozenset(space.universe)
for A in subsets:
    assert lower_approx(space, U - A) == U - upper_approx(space, A)
print("duality holds on every sampled subset")

# reflexivity and transitivity are visible through the upper operator
props = relation_properties(space)
print(f"relation properties: reflexive={props.reflexive} "
      f"transitive={props.transitive} preorder={props.preorder}")
print("A <= upper(A) for all A?",
      all(A <= upper_approx(space, A) for A in subsets),
      "(matches reflexivity)" if not props.reflexive else "")
print("upper(upper(A)) <= upper(A) for all A?",
      all(upper_approx(space, upper_approx(space, A)) <= upper_approx(space, A)
          for A in subsets),
      "(matches transitivity)")
