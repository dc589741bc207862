"""Functor-law checks and finite equivalence evidence.

Two functors are exercised at desk scale: one sends posets to their
induced spaces and Scott-continuous maps to induced relations, the
other sends topological spaces to their closed-set posets and relations
to induced maps.  The reports here are evidence over the supplied
finite objects, not proofs: the language of the API reflects that.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .config import resolve
from .cfspace import cf_closed_sets, is_topological_cf
from .errors import SizeCapExceeded
from .poset import monotone_maps, identity_map, compose_maps, order_isomorphism
from .relation import (
    ApproximableRelation,
    compose,
    from_map,
    identity_relation,
    to_map,
    validate_approximable,
)
from .represent import (
    InducedSpace,
    induce_cf_from_poset,
    map_from_omega,
    omega_from_map,
    space_self_iso,
)
from .witness import classify_space, default_witness, search_tb_selector
from .ordering import iter_subset_masks


@dataclass(frozen=True)
class ConcreteCategoryInstance:
    """A finite slice of a category: objects plus a hom-set enumerator."""

    objects: tuple
    hom: object = field(compare=False)  # callable (A, B) -> tuple of morphisms


def poset_category(posets, config=None):
    """Posets with monotone (= Scott-continuous) maps, enumerated."""
    cfg = resolve(config)
    return ConcreteCategoryInstance(
        objects=tuple(posets),
        hom=lambda A, B: monotone_maps(A, B, cfg))


def space_category(induced, config=None):
    """Induced spaces with validated relations, enumerated."""
    cfg = resolve(config)
    return ConcreteCategoryInstance(
        objects=tuple(induced),
        hom=lambda A, B: approximable_relations_between(A, B, cfg))


def phi_object(P, config=None):
    """Induced space of a poset (object part of the poset-to-space functor)."""
    return induce_cf_from_poset(P, config).space


def phi_morphism(g, config=None):
    """Induced relation of a Scott-continuous map."""
    return omega_from_map(g, config)


def psi_object(space_like, config=None):
    """Closed-set poset of a space (object part of the space-to-poset functor)."""
    space = space_like.space if isinstance(space_like, InducedSpace) else space_like
    return cf_closed_sets(space, config=config)


def psi_morphism(rel, config=None):
    """Induced Scott-continuous map of a validated relation."""
    return to_map(rel, config)


# --------------------------------------------------------------------------
# morphism enumeration
# --------------------------------------------------------------------------

def approximable_relations_between(ind1, ind2, config=None):
    """Every validated relation between two induced spaces.

    Relations between induced spaces are determined by their action on
    singleton members (the absorption axioms collapse each member to
    its top), so candidates are lifted from element-level relations and
    run through the full validator.  ``element_determined`` re-checks
    that collapse on every survivor.
    """
    cfg = resolve(config)
    L1, L2 = ind1.origin, ind2.origin
    n1, n2 = len(L1.elements), len(L2.elements)
    if n1 * n2 > 16:
        raise SizeCapExceeded("relation enumeration is exhaustive only at tiny sizes")
    if max(len(ind1.space.family), len(ind2.space.family)) > cfg.cap_family:
        raise SizeCapExceeded(f"family sizes exceed cap_family={cfg.cap_family}")
    if n1 * n2 > 9:
        warnings.warn("enumerating relations beyond 3x3 carriers grows as 2**cells",
                      RuntimeWarning, stacklevel=2)
    cells = [(x, y) for x in L1.elements for y in L2.elements]
    out = []
    for mask in iter_subset_masks(len(cells)):
        theta = {cells[i] for i in range(len(cells)) if (mask >> i) & 1}
        pairs = [(F, G)
                 for F in ind1.space.family for G in ind2.space.family
                 if (ind1.top(F), ind2.top(G)) in theta]
        rel = ApproximableRelation(ind1.space, ind2.space, pairs)
        if validate_approximable(rel).ok and rel not in out:
            out.append(rel)
    if len(out) > cfg.cap_hom:
        raise SizeCapExceeded(f"relation hom-set exceeds cap_hom={cfg.cap_hom}")
    return tuple(out)


def brute_force_relations(space1, space2, config=None):
    """All validated relations by raw powerset scan; only for tiny families.

    Independent cross-check for the lifted enumeration above.
    """
    cells = [(F, G) for F in space1.family for G in space2.family]
    if len(cells) > 16:
        raise SizeCapExceeded("powerset relation scan limited to 2**16 candidates")
    out = []
    for mask in iter_subset_masks(len(cells)):
        pairs = [cells[i] for i in range(len(cells)) if (mask >> i) & 1]
        rel = ApproximableRelation(space1, space2, pairs)
        if validate_approximable(rel).ok:
            out.append(rel)
    return tuple(out)


def element_determined(rel, ind1, ind2):
    """A pair holds exactly when the pair of singleton tops holds."""
    for F in ind1.space.family:
        for G in ind2.space.family:
            direct = (F, G) in rel
            collapsed = (frozenset([ind1.top(F)]), frozenset([ind2.top(G)])) in rel
            if direct != collapsed:
                return False
    return True


# --------------------------------------------------------------------------
# functor laws
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctorLawReport:
    identity_ok: bool
    composition_ok: bool
    counterexamples: tuple = ()
    objects_checked: int = 0
    compositions_checked: int = 0

    @property
    def ok(self):
        return self.identity_ok and self.composition_ok


def check_functor_laws(functor, objects, morphism_map=None, config=None):
    """Identity and composition laws over all enumerated morphism pairs.

    ``functor`` is "phi" (posets to spaces) or "psi" (induced spaces to
    closed-set posets).  ``morphism_map`` overrides the morphism part,
    which is how the fault-injection tests corrupt a functor.
    """
    cfg = resolve(config)
    if functor == "phi":
        return _phi_laws(tuple(objects), morphism_map or phi_morphism, cfg)
    if functor == "psi":
        return _psi_laws(tuple(objects), morphism_map or psi_morphism, cfg)
    raise ValueError(f"unknown functor {functor!r}")


def _phi_laws(posets, fmap, cfg):
    counterexamples = []
    identity_ok = True
    for L in posets:
        if fmap(identity_map(L)) != identity_relation(phi_object(L, cfg)):
            identity_ok = False
            counterexamples.append(("identity", L))
    hom = {}
    for A in posets:
        for B in posets:
            hom[(A, B)] = monotone_maps(A, B, cfg)
    image = {}
    compositions = 0
    composition_ok = True
    for A in posets:
        for B in posets:
            for C in posets:
                for h in hom[(A, B)]:
                    fh = image.setdefault(h, fmap(h))
                    for g in hom[(B, C)]:
                        fg = image.setdefault(g, fmap(g))
                        compositions += 1
                        if fmap(compose_maps(g, h)) != compose(fg, fh):
                            composition_ok = False
                            counterexamples.append(("composition", g, h))
    return FunctorLawReport(identity_ok, composition_ok, tuple(counterexamples[:8]),
                            len(posets), compositions)


def _psi_laws(induced, fmap, cfg):
    counterexamples = []
    identity_ok = True
    for ind in induced:
        ident = identity_relation(ind.space)
        if fmap(ident) != identity_map(cf_closed_sets(ind.space).poset):
            identity_ok = False
            counterexamples.append(("identity", ind))
    hom = {}
    for a, A in enumerate(induced):
        for b, B in enumerate(induced):
            hom[(a, b)] = approximable_relations_between(A, B, cfg)
    image = {}
    compositions = 0
    composition_ok = True
    for a in range(len(induced)):
        for b in range(len(induced)):
            for c in range(len(induced)):
                for t in hom[(a, b)]:
                    ft = image.setdefault(t, fmap(t))
                    for u in hom[(b, c)]:
                        fu = image.setdefault(u, fmap(u))
                        compositions += 1
                        if fmap(compose(u, t)) != compose_maps(fu, ft):
                            composition_ok = False
                            counterexamples.append(("composition", u, t))
    return FunctorLawReport(identity_ok, composition_ok, tuple(counterexamples[:8]),
                            len(induced), compositions)


# --------------------------------------------------------------------------
# equivalence evidence
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    full: bool
    faithful: bool
    essentially_surjective: bool
    hom_set_sizes: tuple = ()
    counterexamples: tuple = ()
    findings: tuple = ()

    @property
    def ok(self):
        return self.full and self.faithful and self.essentially_surjective


def _qualify(induced, variant, cfg):
    """Admit objects per variant; divergences are findings, not errors."""
    admitted, findings = [], []
    for ind in induced:
        cls = classify_space(ind.space, default_witness(ind.space))
        if variant == "fs":
            ok = cls.fs
        elif variant == "strong":
            ok = cls.strong_fs
        elif variant == "topological":
            ok = cls.topological_fs
        elif variant == "tb":
            ok = (is_topological_cf(ind.space)
                  and bool(search_tb_selector(ind.space, config=cfg)))
        else:
            raise ValueError(f"unknown variant {variant!r}")
        if ok:
            admitted.append(ind)
        else:
            findings.append((variant, ind))
    return tuple(admitted), tuple(findings)


def check_equivalence_evidence(functor, objects, morphism_map=None,
                               variant="fs", config=None):
    """Fullness, faithfulness and essential surjectivity over finite objects.

    Fullness runs the reverse bridges to find preimages; faithfulness
    checks injectivity on each enumerated hom-set; essential
    surjectivity finds an isomorphic image for every listed target
    object.  The report speaks only about the supplied objects.
    """
    cfg = resolve(config)
    if functor == "phi":
        return _phi_equivalence(tuple(objects), morphism_map or phi_morphism,
                                variant, cfg)
    if functor == "psi":
        return _psi_equivalence(tuple(objects), morphism_map or psi_morphism,
                                variant, cfg)
    raise ValueError(f"unknown functor {functor!r}")


def _phi_equivalence(posets, fmap, variant, cfg):
    counterexamples = []
    induced = tuple(induce_cf_from_poset(L, cfg) for L in posets)
    admitted, findings = _qualify(induced, variant, cfg)
    full = True
    faithful = True
    sizes = []
    for A, iA in zip(posets, induced):
        for B, iB in zip(posets, induced):
            maps = monotone_maps(A, B, cfg)
            rels = approximable_relations_between(iA, iB, cfg)
            sizes.append((len(maps), len(rels)))
            images = {}
            for g in maps:
                fg = fmap(g)
                if fg in images:
                    faithful = False
                    counterexamples.append(("faithful", images[fg], g))
                images[fg] = g
            for rel in rels:
                g = map_from_omega(rel, cfg)
                if fmap(g) != rel:
                    full = False
                    counterexamples.append(("full", rel))
    surj = True
    for ind in admitted:
        try:
            space_self_iso(ind.space, config=cfg)
        except Exception as exc:  # evidence report, not a crash
            surj = False
            counterexamples.append(("essential_surjectivity", ind, repr(exc)))
    return EquivalenceReport(full, faithful, surj, tuple(sizes),
                             tuple(counterexamples[:8]), findings)


def _psi_equivalence(induced, fmap, variant, cfg):
    counterexamples = []
    admitted, findings = _qualify(tuple(induced), variant, cfg)
    full = True
    faithful = True
    sizes = []
    for A in induced:
        for B in induced:
            rels = approximable_relations_between(A, B, cfg)
            maps = monotone_maps(cf_closed_sets(A.space).poset,
                                 cf_closed_sets(B.space).poset, cfg)
            sizes.append((len(rels), len(maps)))
            images = {}
            for rel in rels:
                f = fmap(rel)
                if f in images:
                    faithful = False
                    counterexamples.append(("faithful", images[f], rel))
                images[f] = rel
            for f in maps:
                rel = from_map(f, A.space, B.space, cfg)
                if fmap(rel) != f:
                    full = False
                    counterexamples.append(("full", f))
    surj = True
    for ind in admitted:
        cs = cf_closed_sets(ind.space, config=cfg)
        if order_isomorphism(ind.origin, cs.poset, cfg) is None:
            surj = False
            counterexamples.append(("essential_surjectivity", ind))
    return EquivalenceReport(full, faithful, surj, tuple(sizes),
                             tuple(counterexamples[:8]), findings)
