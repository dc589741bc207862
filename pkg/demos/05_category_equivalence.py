"""
Two functors and finite equivalence evidence
============================================

One functor sends posets to their induced spaces and Scott-continuous
maps to relations; the other sends topological spaces to their
closed-set posets and relations to maps.  At desk scale both directions
can be enumerated outright, so the functor laws, the hom-set bijections
and the equivalence conditions (full, faithful, essentially surjective)
are all checked rather than trusted.  A deliberately corrupted functor
shows the checks have teeth.
"""

try:
    import roughdom
except ImportError:
    import pathlib
    import sys

    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from roughdom import FinitePoset, induce_cf_from_poset
from roughdom.category import (
    ApproximableRelation,
    approximable_relations_between,
    check_equivalence_evidence,
    check_functor_laws,
    phi_morphism,
)
from roughdom.poset import monotone_maps

chain1 = FinitePoset(["0"], [("0", "0")])
chain2 = FinitePoset(["0", "1"], [("0", "0"), ("1", "1"), ("0", "1")])
vee = FinitePoset(
    ["bot", "a", "b"],
    [("bot", "bot"), ("a", "a"), ("b", "b"), ("bot", "a"), ("bot", "b")])
objects = (chain1, chain2, vee)

report = check_functor_laws("phi", objects)
print(f"poset-to-space functor laws: identity={report.identity_ok} "
      f"composition={report.composition_ok} "
      f"({report.compositions_checked} compositions)")

induced = tuple(induce_cf_from_poset(P) for P in objects)
report = check_functor_laws("psi", induced)
print(f"space-to-poset functor laws: identity={report.identity_ok} "
      f"composition={report.composition_ok}")
print()

print("hom-set sizes (maps vs relations):")
for A in objects:
    for B in objects:
        maps = monotone_maps(A, B)
        rels = approximable_relations_between(
            induce_cf_from_poset(A), induce_cf_from_poset(B))
        print(f"  |{len(A.elements)}-poset -> {len(B.elements)}-poset| : "
              f"{len(maps)} maps, {len(rels)} relations")
print()

evidence = check_equivalence_evidence("phi", objects)
print(f"equivalence evidence: full={evidence.full} "
      f"faithful={evidence.faithful} "
      f"essentially_surjective={evidence.essentially_surjective}")
print()


def corrupted(g):
    rel = phi_morphism(g)
    if not rel.pairs:
        return rel
    drop = max(rel.pairs, key=lambda p: (sorted(map(sorted, p))))
    return ApproximableRelation(rel.source, rel.target, rel.pairs - {drop})


broken = check_functor_laws("phi", objects, morphism_map=corrupted)
print("corrupted functor passes?", broken.ok)
print("first counterexample kind:", broken.counterexamples[0][0])
