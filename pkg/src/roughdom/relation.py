"""Approximable relations between CF spaces.

A relation between the families of two spaces qualifies as a morphism
when five closure axioms hold; this module validates them, builds the
identity relation, composes relations, and moves back and forth between
relations and Scott-continuous maps of the closed-set posets.  The two
directions are mutually inverse, which the tests enumerate exhaustively
at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cfspace import cf_closed_sets, require_validated
from .errors import (
    InvalidRelation,
    MapNotContinuous,
    NotTopological,
    PostconditionFailed,
    RelationNotValidated,
    SpaceMismatch,
)
from .cfspace import is_topological_cf
from .poset import MonotoneMap, is_scott_continuous


class ApproximableRelation:
    """A set of (F, G) pairs between the families of two CF spaces.

    Stored extensionally so equality stays structural and decidable;
    validation runs on demand and is memoized per content.
    """

    __slots__ = ("source", "target", "pairs", "_ipairs", "_rows", "_validation",
                 "_hash")

    def __init__(self, source, target, pairs):
        ip = set()
        norm = set()
        for F, G in pairs:
            F, G = frozenset(F), frozenset(G)
            if F not in source._findex:
                raise InvalidRelation(f"{set(F)!r} is not in the source family")
            if G not in target._findex:
                raise InvalidRelation(f"{set(G)!r} is not in the target family")
            norm.add((F, G))
            ip.add((source._findex[F], target._findex[G]))
        self.source = source
        self.target = target
        self.pairs = frozenset(norm)
        self._ipairs = frozenset(ip)
        rows = {}
        for i, j in sorted(ip):
            rows.setdefault(i, []).append(j)
        self._rows = {i: tuple(js) for i, js in rows.items()}
        self._validation = None
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, ApproximableRelation):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.pairs == other.pairs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.pairs))
        return self._hash

    def __repr__(self):
        return f"ApproximableRelation({len(self.pairs)} pairs)"

    def __contains__(self, pair):
        F, G = pair
        return (frozenset(F), frozenset(G)) in self.pairs

    @property
    def is_validated(self):
        rep = validate_approximable(self)
        return rep.ok


@dataclass(frozen=True)
class ApproximabilityReport:
    """First failing axiom (1-5) with a counterexample, or a clean pass."""

    ok: bool
    failing: int | None = None
    counterexample: tuple | None = None
    conditions: tuple = (None,) * 5

    def __bool__(self):
        return self.ok


_VALIDATION_MEMO = {}


def _content_key(rel):
    return (rel.source, rel.target, rel.pairs)


def validate_approximable(rel):
    """Check the five morphism axioms exhaustively, stopping at the first failure."""
    if rel._validation is not None:
        return rel._validation
    key = _content_key(rel)
    memo = _VALIDATION_MEMO.get(key)
    if memo is not None:
        rel._validation = memo
        return memo
    report = _validate(rel)
    _VALIDATION_MEMO[key] = report
    rel._validation = report
    return report


def _validate(rel):
    src, tgt = rel.source, rel.target
    fm1, r1 = src._fmasks, src._rmasks
    fm2, r2 = tgt._fmasks, tgt._rmasks
    n1, n2 = len(fm1), len(fm2)
    theta = rel._ipairs
    rows = rel._rows
    conds = [None] * 5

    def fail(k, counter):
        conds[k - 1] = False
        return ApproximabilityReport(False, k, counter, tuple(conds))

    # (1) every source member relates to something
    for i in range(n1):
        if i not in rows:
            conds[0] = False
            return fail(1, (rel.source.family[i],))
    conds[0] = True

    # helper tables: who absorbs whom through upper approximations
    ups1 = [[i2 for i2 in range(n1) if fm1[i] & ~r1[i2] == 0] for i in range(n1)]
    downs2 = [[j2 for j2 in range(n2) if fm2[j2] & ~r2[j] == 0] for j in range(n2)]

    # (2) left absorption: F inside upper(F') propagates the pair to F'
    for (i, j) in theta:
        for i2 in ups1[i]:
            if (i2, j) not in theta:
                return fail(2, (src.family[i], src.family[i2], tgt.family[j]))
    conds[1] = True

    # (3) right absorption: G' inside upper(G) propagates the pair to G'
    for (i, j) in theta:
        for j2 in downs2[j]:
            if (i, j2) not in theta:
                return fail(3, (src.family[i], tgt.family[j], tgt.family[j2]))
    conds[2] = True

    # (4) interpolation: each pair factors through a smaller F' and larger G'
    preds1 = [[i2 for i2 in range(n1) if fm1[i2] & ~r1[i] == 0] for i in range(n1)]
    ups2 = [[j2 for j2 in range(n2) if fm2[j] & ~r2[j2] == 0] for j in range(n2)]
    for (i, j) in theta:
        if not any((i2, j2) in theta for i2 in preds1[i] for j2 in ups2[j]):
            return fail(4, (src.family[i], tgt.family[j]))
    conds[3] = True

    # (5) right directedness: paired targets admit a common bound
    for i, js in rows.items():
        for a in range(len(js)):
            for b in range(a, len(js)):
                union = fm2[js[a]] | fm2[js[b]]
                if not any(union & ~r2[j3] == 0 for j3 in js):
                    return fail(5, (src.family[i], tgt.family[js[a]], tgt.family[js[b]]))
    conds[4] = True

    return ApproximabilityReport(True, None, None, tuple(conds))


def require_relation_validated(rel):
    if not validate_approximable(rel).ok:
        raise RelationNotValidated("the relation fails the morphism axioms")


def identity_relation(space):
    """Pairs (F, G) with G inside the upper approximation of F."""
    require_validated(space)
    pairs = []
    for i, F in enumerate(space.family):
        rf = space._rmasks[i]
        for j, G in enumerate(space.family):
            if space._fmasks[j] & ~rf == 0:
                pairs.append((F, G))
    return ApproximableRelation(space, space, pairs)


def compose(second, first):
    """Relational composition (apply ``first``, then ``second``).

    When both inputs validate, the composite is revalidated and a
    failure raises loudly: closure under composition is guaranteed for
    valid relations, so a failure there means a bug.  Invalid inputs
    compose structurally without the guarantee.
    """
    if first.target != second.source:
        raise SpaceMismatch("inner spaces differ; relations do not compose")
    mid_rows = second._rows
    pairs = []
    fam1, fam3 = first.source.family, second.target.family
    for i, js in first._rows.items():
        seen = set()
        for j in js:
            for k in mid_rows.get(j, ()):
                seen.add(k)
        for k in sorted(seen):
            pairs.append((fam1[i], fam3[k]))
    out = ApproximableRelation(first.source, second.target, pairs)
    if validate_approximable(first).ok and validate_approximable(second).ok:
        rep = validate_approximable(out)
        if not rep.ok:
            raise PostconditionFailed(
                f"composite relation failed axiom ({rep.failing}): {rep.counterexample!r}")
    return out


@dataclass(frozen=True)
class FourForms:
    """The four equivalent ways a pair may be supported by a valid relation."""

    direct: bool
    via_source: bool
    via_target: bool
    via_both: bool

    def all_equal(self):
        return self.direct == self.via_source == self.via_target == self.via_both


def equivalent_forms(rel, F, G):
    F, G = frozenset(F), frozenset(G)
    src, tgt = rel.source, rel.target
    i = src.family_index(F)
    j = tgt.family_index(G)
    theta = rel._ipairs
    fm1, r1 = src._fmasks, src._rmasks
    fm2, r2 = tgt._fmasks, tgt._rmasks
    direct = (i, j) in theta
    via_source = any((i2, j) in theta
                     for i2 in range(len(fm1)) if fm1[i2] & ~r1[i] == 0)
    via_target = any((i, j2) in theta
                     for j2 in range(len(fm2)) if fm2[j] & ~r2[j2] == 0)
    via_both = any((i2, j2) in theta
                   for i2 in range(len(fm1)) if fm1[i2] & ~r1[i] == 0
                   for j2 in range(len(fm2)) if fm2[j] & ~r2[j2] == 0)
    return FourForms(direct, via_source, via_target, via_both)


# --------------------------------------------------------------------------
# relations <-> Scott-continuous maps
# --------------------------------------------------------------------------

def to_map(rel, config=None):
    """The Scott-continuous map a validated relation induces on closed sets.

    Sends E to the union of upper approximations of every target member
    paired with a source member inside E; each value is checked to be
    closed and the whole graph to be order-preserving.
    """
    require_relation_validated(rel)
    cs1 = cf_closed_sets(rel.source, config=config)
    cs2 = cf_closed_sets(rel.target, config=config)
    closed2 = set(cs2.closed_sets)
    fm1 = rel.source._fmasks
    r2 = rel.target._rmasks
    graph = {}
    for E in cs1.closed_sets:
        emask = rel.source.base.mask(E)
        out = 0
        for i, js in rel._rows.items():
            if fm1[i] & ~emask == 0:
                for j in js:
                    out |= r2[j]
        value = rel.target.base.subset(out)
        if value not in closed2:
            raise PostconditionFailed("induced map produced a non-closed value")
        graph[E] = value
    f = MonotoneMap(cs1.poset, cs2.poset, graph)
    if not is_scott_continuous(f):
        raise PostconditionFailed("induced map is not Scott continuous")
    return f


def from_map(f, source_space, target_space, config=None):
    """The relation a Scott-continuous map between closed-set posets induces.

    Pairs (F, G) with G inside f(upper(F)); the result always satisfies
    the morphism axioms, which is asserted.
    """
    cs1 = cf_closed_sets(source_space, config=config)
    cs2 = cf_closed_sets(target_space, config=config)
    if f.source != cs1.poset or f.target != cs2.poset:
        raise SpaceMismatch("map does not run between the stated closed-set posets")
    if not is_scott_continuous(f):
        raise MapNotContinuous("map fails the directed-supremum check")
    pairs = []
    for i, F in enumerate(source_space.family):
        image = f(source_space.base.subset(source_space._rmasks[i]))
        imask = target_space.base.mask(image)
        for j, G in enumerate(target_space.family):
            if target_space._fmasks[j] & ~imask == 0:
                pairs.append((F, G))
    rel = ApproximableRelation(source_space, target_space, pairs)
    rep = validate_approximable(rel)
    if not rep.ok:
        raise PostconditionFailed(
            f"map-induced relation failed axiom ({rep.failing})")
    return rel


# --------------------------------------------------------------------------
# topological variant
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TopologicalApproximabilityReport:
    ok: bool
    failing: int | None = None
    counterexample: tuple | None = None

    def __bool__(self):
        return self.ok


def validate_topological_approximable(rel):
    """Three-axiom characterization available between preorder spaces.

    Must agree with the five-axiom validator on such spaces, which the
    tests check on random relations.
    """
    if not (is_topological_cf(rel.source) and is_topological_cf(rel.target)):
        raise NotTopological("both spaces must be topological CF spaces")
    src, tgt = rel.source, rel.target
    fm1, r1 = src._fmasks, src._rmasks
    fm2, r2 = tgt._fmasks, tgt._rmasks
    n1, n2 = len(fm1), len(fm2)
    theta = rel._ipairs
    rows = rel._rows

    for i in range(n1):
        if i not in rows:
            return TopologicalApproximabilityReport(False, 1, (src.family[i],))

    for (i, j) in theta:
        for i2 in range(n1):
            if fm1[i] & ~r1[i2]:
                continue
            for j2 in range(n2):
                if fm2[j2] & ~r2[j]:
                    continue
                if (i2, j2) not in theta:
                    return TopologicalApproximabilityReport(
                        False, 2,
                        (src.family[i], src.family[i2], tgt.family[j], tgt.family[j2]))

    for i, js in rows.items():
        for a in range(len(js)):
            for b in range(a, len(js)):
                union = fm2[js[a]] | fm2[js[b]]
                if not any(union & ~r2[j3] == 0 for j3 in js):
                    return TopologicalApproximabilityReport(
                        False, 3, (src.family[i], tgt.family[js[a]], tgt.family[js[b]]))

    return TopologicalApproximabilityReport(True)
