"""Approximation spaces with a consistent family of finite subsets.

A CF space pairs a transitive relation with a family of finite subsets
subject to a re-covering condition: any finite chunk of an upper
approximation of a family member can be re-covered inside it by another
member.  The subsets closed under that condition, ordered by inclusion,
form the domain the rest of the library studies.

Validation is explicit and mandatory: ``validate_cf`` produces a report
and stamps the space; every closed-set level operation refuses to run
on an unvalidated space rather than re-validating silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import resolve
from .errors import (
    ElementNotInUniverse,
    InvalidSpace,
    NotClosed,
    PostconditionFailed,
    SizeCapExceeded,
    SpaceNotValidated,
)
from .gaspace import GASpace, relation_properties
from .ordering import iter_submasks, iter_subset_masks, set_key
from .poset import FinitePoset


class CFSpace:
    """A GA-space plus a finite family of finite subsets of the universe.

    The family keeps its construction order (first occurrence wins on
    duplicates); searches report the first witness in that order.  The
    empty set is a legitimate family member.
    """

    __slots__ = ("base", "family", "_findex", "_fmasks", "_rmasks",
                 "_validation", "_closed", "_hash")

    def __init__(self, base, family):
        if not isinstance(base, GASpace):
            base = GASpace(*base)
        fam = []
        seen = set()
        for F in family:
            fs = frozenset(F)
            for x in fs:
                if x not in base._index:
                    raise InvalidSpace(f"family member atom {x!r} leaves the universe")
            if fs not in seen:
                seen.add(fs)
                fam.append(fs)
        if not fam:
            raise InvalidSpace("family must be nonempty")
        self.base = base
        self.family = tuple(fam)
        self._findex = {F: i for i, F in enumerate(self.family)}
        self._fmasks = tuple(base.mask(F) for F in self.family)
        self._rmasks = tuple(base.upper_mask(m) for m in self._fmasks)
        self._validation = None
        self._closed = None
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, CFSpace):
            return NotImplemented
        return (self.base == other.base
                and frozenset(self.family) == frozenset(other.family))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, frozenset(self.family)))
        return self._hash

    def __repr__(self):
        return (f"CFSpace({len(self.base.universe)} atoms, "
                f"{len(self.family)} family members)")

    @property
    def universe(self):
        return self.base.universe

    def family_index(self, F):
        try:
            return self._findex[frozenset(F)]
        except KeyError:
            raise ElementNotInUniverse(f"{set(F)!r} is not a family member") from None

    def upper_of_member(self, F):
        """Upper approximation of a family member, from the cache."""
        return self.base.subset(self._rmasks[self.family_index(F)])

    @property
    def is_validated(self):
        return self._validation is not None and self._validation.ok


@dataclass(frozen=True)
class CFValidationReport:
    """Outcome of the admissibility check of a CF space."""

    ok: bool
    transitive: bool
    counterexamples: tuple = ()
    checked: int = 0
    exhaustive: bool = True
    witnesses: dict | None = field(default=None, compare=False)

    def __bool__(self):
        return self.ok


def validate_cf(space, record_witnesses=False, config=None):
    """Check the re-covering condition of a CF space.

    For each family member F and each finite K inside the upper
    approximation of F (the empty K included), some member G must
    satisfy K inside upper(G) and G inside upper(F).  Inside the
    universe cap every K is enumerated; beyond it only the greatest K
    (the whole upper approximation) is tested, which is equivalent on a
    finite universe, and the report says so via ``exhaustive=False``.
    The passing report stamps the space as admissible for closed-set
    operations.
    """
    cfg = resolve(config)
    n = len(space.universe)
    exhaustive = n <= cfg.cap_universe
    if space._validation is not None and not record_witnesses:
        return space._validation
    transitive = relation_properties(space.base).transitive
    counterexamples = []
    witnesses = {} if record_witnesses else None
    checked = 0
    for fi, rf in enumerate(space._rmasks):
        cands = [j for j, fm in enumerate(space._fmasks) if fm & ~rf == 0]
        cand_rs = [space._rmasks[j] for j in cands]
        chunks = iter_submasks(rf) if exhaustive else (rf,)
        for k in chunks:
            checked += 1
            hit = None
            for pos, rg in enumerate(cand_rs):
                if k & ~rg == 0:
                    hit = cands[pos]
                    break
            if hit is None:
                counterexamples.append(
                    (space.family[fi], space.base.subset(k)))
            elif record_witnesses:
                witnesses[(space.family[fi], space.base.subset(k))] = space.family[hit]
    report = CFValidationReport(
        ok=transitive and not counterexamples,
        transitive=transitive,
        counterexamples=tuple(counterexamples),
        checked=checked,
        exhaustive=exhaustive,
        witnesses=witnesses,
    )
    space._validation = report
    return report


def require_validated(space):
    if not space.is_validated:
        raise SpaceNotValidated(
            "run validate_cf on the space (and have it pass) before closed-set operations")


# --------------------------------------------------------------------------
# CF-closed sets
# --------------------------------------------------------------------------

def _closed_mask(space, emask):
    """Mask-level closedness: every K inside E is re-covered within E."""
    good = []
    for j, fm in enumerate(space._fmasks):
        if fm & ~emask == 0 and space._rmasks[j] & ~emask == 0:
            good.append(space._rmasks[j])
    for k in iter_submasks(emask):
        if not any(k & ~rg == 0 for rg in good):
            return False
    return True


@dataclass(frozen=True)
class ClosednessCheck:
    """Boolean outcome plus the witness table behind it."""

    closed: bool
    subject: frozenset
    counterexample: frozenset | None = None
    witnesses: dict | None = field(default=None, compare=False)

    def __bool__(self):
        return self.closed


def is_cf_closed(space, E, record_witnesses=False):
    """Definition-level check that E is closed, with optional witness table.

    The empty set is closed exactly when it is itself a family member:
    the K = empty case forces a member inside E.
    """
    require_validated(space)
    emask = space.base.mask(E)  # raises ElementNotInUniverse on foreign atoms
    good = [(space.family[j], space._rmasks[j])
            for j, fm in enumerate(space._fmasks)
            if fm & ~emask == 0 and space._rmasks[j] & ~emask == 0]
    witnesses = {} if record_witnesses else None
    for k in iter_submasks(emask):
        hit = None
        for F, rg in good:
            if k & ~rg == 0:
                hit = F
                break
        if hit is None:
            return ClosednessCheck(False, frozenset(E), space.base.subset(k), witnesses)
        if record_witnesses:
            witnesses[space.base.subset(k)] = hit
    return ClosednessCheck(True, frozenset(E), None, witnesses)


def cf_closed_sets_masks(space, method="image", config=None):
    """Closed sets as masks, by the requested algorithm."""
    cfg = resolve(config)
    n = len(space.universe)
    if method == "brute":
        if n > cfg.cap_universe:
            raise SizeCapExceeded(
                f"brute-force closed-set scan needs |U| <= {cfg.cap_universe}")
        return sorted(m for m in iter_subset_masks(n) if _closed_mask(space, m))
    if method == "image":
        cands = sorted(set(space._rmasks))
        return sorted(m for m in cands if _closed_mask(space, m))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class ClosedSetPoset:
    """All CF-closed sets of a space, ordered by inclusion."""

    space: CFSpace = field(compare=False)
    closed_sets: tuple = ()
    poset: FinitePoset = field(default=None, compare=False)
    cross_checked: bool = True

    def __len__(self):
        return len(self.closed_sets)

    def __contains__(self, E):
        return frozenset(E) in set(self.closed_sets)


def cf_closed_sets(space, method="auto", config=None):
    """Enumerate the closed-set poset of a validated space.

    ``auto`` runs the image algorithm (candidates are the upper
    approximations of family members) and, inside the universe cap,
    cross-checks it against the brute-force subset scan; the two must
    agree.  Results are cached per space.
    """
    require_validated(space)
    cfg = resolve(config)
    if method == "auto" and space._closed is not None:
        return space._closed
    image = cf_closed_sets_masks(space, "image", cfg)
    cross = len(space.universe) <= cfg.cap_universe
    if method == "brute" or (method in ("auto", "both") and cross):
        brute = cf_closed_sets_masks(space, "brute", cfg)
        if brute != image:
            raise PostconditionFailed(
                "closed-set enumeration mismatch between brute force and image algorithm")
        masks = brute
    else:
        masks = image
    index = {x: i for i, x in enumerate(space.universe)}
    sets = tuple(sorted((space.base.subset(m) for m in masks),
                        key=lambda s: set_key(s, index)))
    leq = [(a, b) for a in sets for b in sets if a <= b]
    poset = FinitePoset(sets, leq)
    result = ClosedSetPoset(space=space, closed_sets=sets, poset=poset,
                            cross_checked=cross or method == "brute")
    if method == "auto":
        space._closed = result
    return result


@dataclass(frozen=True)
class WayBelowWitness:
    holds: bool
    witness: frozenset | None = None

    def __bool__(self):
        return self.holds


def way_below_closed(space, E1, E2):
    """Way-below between closed sets, through the family characterization.

    Holds exactly when some member F sits inside E2 with E1 inside
    upper(F); the first such F in family order is returned.
    """
    cs = cf_closed_sets(space)
    E1, E2 = frozenset(E1), frozenset(E2)
    if E1 not in cs or E2 not in cs:
        raise NotClosed("way_below_closed expects CF-closed arguments")
    m1 = space.base.mask(E1)
    m2 = space.base.mask(E2)
    for j, F in enumerate(space.family):
        if space._fmasks[j] & ~m2 == 0 and m1 & ~space._rmasks[j] == 0:
            return WayBelowWitness(True, F)
    return WayBelowWitness(False, None)


def is_topological_cf(space):
    """Preorder relation makes a validated space topological.

    Re-runs the admissibility check to confirm that a preorder plus any
    family is automatically consistent; a failure there would be a bug,
    not a property of the input.
    """
    require_validated(space)
    props = relation_properties(space.base)
    if not props.preorder:
        return False
    # record_witnesses forces a fresh run instead of the cached report
    report = validate_cf(space, record_witnesses=True)
    if not report.ok:
        raise PostconditionFailed(
            "a preorder space failed the consistency re-check")
    return True
