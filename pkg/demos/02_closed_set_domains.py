"""
From a consistent family to a domain of closed sets
===================================================

Adding a family of finite subsets to a transitive relation gives a CF
space once the re-covering condition is validated: any finite chunk of
a member's upper approximation must be re-coverable inside it by
another member.  The subsets closed under that condition, ordered by
inclusion, form a continuous domain whose way-below relation has
explicit member witnesses.
"""

try:
    import roughdom
except ImportError:
    import pathlib
    import sys

    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from roughdom import (
    CFSpace,
    GASpace,
    cf_closed_sets,
    is_cf_closed,
    validate_cf,
    way_below_closed,
)
from roughdom.documents import closed_sets_dot

# a valid space: the single member {c} re-covers everything
good = CFSpace(GASpace(["a", "b", "c"],
                       [("a", "b"), ("b", "c"), ("a", "c"), ("c", "c")]),
               [["c"]])
report = validate_cf(good)
print("family {{c}} admissible?", report.ok)

# an invalid one: {b}'s upper approximation is {a}, and no member fits inside
bad = CFSpace(GASpace(["a", "b", "c"],
                      [("a", "b"), ("b", "c"), ("a", "c"), ("c", "c")]),
              [["b"]])
report = validate_cf(bad)
print("family {{b}} admissible?", report.ok)
F, K = report.counterexamples[0]
print("  counterexample: member", sorted(F), "cannot re-cover chunk", sorted(K))
print()

cs = cf_closed_sets(good)
print("closed sets of the valid space:", [sorted(E) for E in cs.closed_sets])
print("is {a} closed?", bool(is_cf_closed(good, {"a"})))
print()

# a richer space: the inclusion order of closed sets of a three-chain
chain = CFSpace(
    GASpace(["0", "1", "2"],
            [("0", "0"), ("1", "1"), ("2", "2"), ("0", "1"), ("1", "2"), ("0", "2")]),
    [["0"], ["1"], ["2"], ["0", "1"], ["0", "2"], ["1", "2"], ["0", "1", "2"]])
validate_cf(chain)
cs = cf_closed_sets(chain)
print("chain-induced closed sets:", [sorted(E) for E in cs.closed_sets])

w = way_below_closed(chain, frozenset({"0"}), frozenset({"0", "1"}))
print("{0} way below {0,1}?", bool(w), "via member", sorted(w.witness))
print()

print("Hasse diagram (DOT):")
print(closed_sets_dot(cs))
