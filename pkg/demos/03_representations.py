"""
Representing a poset through its induced space
==============================================

Every finite poset induces a CF space (carrier, way-below relation,
subsets with a top element).  The closed sets of that space, ordered by
inclusion, reproduce the original poset: the carrier map sends each
element to its way-below set.  Witness families transfer along the same
bridge in three flavors (plain, strong, and the kernel-operator form),
all of which the classification checks accept.
"""

try:
    import roughdom
except ImportError:
    import pathlib
    import sys

    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from roughdom import (
    FinitePoset,
    cf_closed_sets,
    classify_space,
    closed_sets_iso,
    fs_witness_from_domain,
    induce_cf_from_poset,
    order_isomorphism,
)

# the "vee": bot below two incomparable points
vee = FinitePoset(
    ["bot", "a", "b"],
    [("bot", "bot"), ("a", "a"), ("b", "b"), ("bot", "a"), ("bot", "b")])

ind = induce_cf_from_poset(vee)
print("induced family:", [sorted(F) for F in ind.space.family])

iso = closed_sets_iso(vee)
for element in vee.elements:
    print(f"  {element} maps to the closed set {sorted(iso[element])}")

cs = cf_closed_sets(ind.space)
searched = order_isomorphism(vee, cs.poset)
print("independent isomorphism search agrees?",
      {k: sorted(v) for k, v in searched.items()} ==
      {k: sorted(v) for k, v in iso.items()})
print()

for mode in ("plain", "strong", "bf"):
    witness = fs_witness_from_domain(vee, mode=mode)
    cls = classify_space(witness.space, witness)
    print(f"{mode:>6} witness: fs={cls.fs} strong_fs={cls.strong_fs} "
          f"topological_fs={cls.topological_fs} "
          f"({len(witness.relations)} relation(s))")
