"""Deciders for firstness and primeness notions of finite modules.

Each notion is decided through the finite characterization that makes it
checkable without quantifying over all preradicals: BJKN-primeness through
four independently computed equivalent conditions (which must agree, or an
InternalInconsistency is raised), primeness through both the annihilator
and the ideal-action route, trace-firstness through pairwise nonzero homs
cross-checked against a generated family of idempotent operators.
Negative verdicts always carry the first witness in canonical scan order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency
from .modules import (cogenerates, endomorphism_ring, enumerate_submodules,
                      hom_nonzero_exists, hom_set, is_essential, submodule,
                      trad_mask)
from .preradicals import Alpha, Join, SOC, product_in
from .rings import enumerate_ideals, is_prime_ring
from .config import DEFAULT_ENDO_RING_CAP


def _nonzero_submodules(module):
    return enumerate_submodules(module).nonzero()


def _require_nonzero(module, notion):
    if module.is_zero():
        raise InternalInconsistency(
            f"{notion} is defined for nonzero modules only")


# ---------------------------------------------------------------------------
# BJKN-primeness: four equivalent conditions computed independently

def _cond_all_submodules_cogenerate(module):
    for n in _nonzero_submodules(module):
        if not cogenerates(n, module):
            return False, {"kind": "non_cogenerating_submodule",
                           "submodule": n.labels()}
    return True, None


def _cond_cyclic_submodules_cogenerate(module):
    from .modules import cyclic_mask
    seen = set()
    for x in range(module.order):
        if x == module.zero:
            continue
        mask = cyclic_mask(module, x)
        if mask in seen:
            continue
        seen.add(mask)
        sub = submodule(module, mask)
        if not cogenerates(sub, module):
            return False, {"kind": "non_cogenerating_cyclic",
                           "generator": module.labels[x],
                           "submodule": sub.labels()}
    return True, None


def _cond_pointwise_separation(module):
    """For every x, y nonzero there is a map into Ry not killing x."""
    from .modules import cyclic_mask
    zero = module.zero
    by_mask = {}
    for y in range(module.order):
        if y == zero:
            continue
        by_mask.setdefault(cyclic_mask(module, y), y)
    for mask, y in sorted(by_mask.items(), key=lambda kv: kv[1]):
        target = submodule(module, mask).as_module()
        tzero = target.zero
        separated = 0
        for f in hom_set(module, target):
            for x in range(module.order):
                if f.map[x] != tzero:
                    separated |= 1 << x
        for x in range(module.order):
            if x != zero and not separated >> x & 1:
                return False, {"kind": "inseparable_pair",
                               "x": module.labels[x],
                               "y": module.labels[y]}
    return True, None


def _cond_products_nonzero(module):
    """Products of nonzero submodule pairs are nonzero.

    The quantifier runs over all nonzero submodules (proper or not): with a
    zero factor the product is trivially zero, and allowing the improper
    factor only adds products that are nonzero anyway whenever the rest
    are.
    """
    subs = _nonzero_submodules(module)
    for left in subs:
        for right in subs:
            if product_in(module, left, right).is_zero():
                return False, {"kind": "zero_product",
                               "left": left.labels(),
                               "right": right.labels()}
    return True, None


def bjkn_prime_detail(module):
    """Verdict plus witness, with the four routes asserted to agree."""
    _require_nonzero(module, "BJKN-primeness")
    routes = {
        "all_submodules_cogenerate": _cond_all_submodules_cogenerate(module),
        "cyclic_submodules_cogenerate": _cond_cyclic_submodules_cogenerate(module),
        "pointwise_separation": _cond_pointwise_separation(module),
        "products_nonzero": _cond_products_nonzero(module),
    }
    verdicts = {name: v for name, (v, _) in routes.items()}
    if len(set(verdicts.values())) != 1:
        raise InternalInconsistency(
            f"BJKN-prime routes disagree on {module!r}: {verdicts}")
    verdict = verdicts["all_submodules_cogenerate"]
    witness = None if verdict else routes["pointwise_separation"][1]
    return verdict, witness


def is_bjkn_prime(module):
    return bjkn_prime_detail(module)[0]


# ---------------------------------------------------------------------------
# primeness (= firstness under the two-sided-ideal action)

def annihilator_mask(module, sub_mask=None):
    """Ring elements killing every element of the given carrier."""
    act = module.act
    zero = module.zero
    els = (range(module.order) if sub_mask is None
           else [i for i in range(module.order) if sub_mask >> i & 1])
    out = 0
    for r in range(module.ring.order):
        row = act[r]
        if all(row[x] == zero for x in els):
            out |= 1 << r
    return out


def prime_module_detail(module):
    """Two routes asserted equal: equal annihilators of all nonzero
    submodules, and no ideal killing a nonzero submodule without killing
    the module."""
    _require_nonzero(module, "primeness")
    ann_m = annihilator_mask(module)
    via_ann = True
    ann_witness = None
    for n in _nonzero_submodules(module):
        if annihilator_mask(module, n.mask) != ann_m:
            via_ann = False
            ann_witness = {"kind": "annihilator_jump", "submodule": n.labels()}
            break
    via_trad = True
    trad_witness = None
    zmask = module.zero_mask()
    for ideal in enumerate_ideals(module.ring, "two-sided"):
        if trad_mask(module, ideal) == zmask:
            continue  # kills the module, nothing to check
        for n in _nonzero_submodules(module):
            if trad_mask(module, ideal, n.mask) == zmask:
                via_trad = False
                trad_witness = {
                    "kind": "ideal_kills_submodule_not_module",
                    "ideal": [module.ring.labels[i] for i in ideal.carrier],
                    "submodule": n.labels()}
                break
        if not via_trad:
            break
    if via_ann != via_trad:
        raise InternalInconsistency(
            f"primeness routes disagree on {module!r}")
    return via_ann, trad_witness or ann_witness


def is_prime_module(module):
    return prime_module_detail(module)[0]


# ---------------------------------------------------------------------------
# firstness for idempotent preradicals

def rpid_first_detail(module, family_join_cap=24):
    """Pairwise nonzero-hom criterion, cross-checked against quantification
    over a generated family of idempotent operators (traces of the nonzero
    submodules, the socle, and a sample of their joins)."""
    _require_nonzero(module, "trace-firstness")
    subs = _nonzero_submodules(module)
    verdict = True
    witness = None
    for n in subs:
        nmod = n.as_module()
        for k in subs:
            if not hom_nonzero_exists(nmod, k.as_module()):
                verdict = False
                witness = {"kind": "hom_vanishes",
                           "source": n.labels(), "target": k.labels()}
                break
        if not verdict:
            break
    family = [Alpha(submodule(n.as_module(), n.as_module().full_mask()))
              for n in subs]
    family.append(SOC)
    joins = 0
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if joins >= family_join_cap:
                break
            family.append(Join((family[i], family[j])))
            joins += 1
        if joins >= family_join_cap:
            break
    via_family = _a_first_value(module, family)
    if via_family != verdict:
        raise InternalInconsistency(
            f"trace-firstness routes disagree on {module!r}")
    return verdict, witness


def is_rpid_first(module):
    return rpid_first_detail(module)[0]


def is_retractable(module):
    """Nonzero maps from the module onto (into) every nonzero submodule."""
    return all(hom_nonzero_exists(module, n.as_module())
               for n in _nonzero_submodules(module))


def endo_prime_implies_rpid_first(module, endo_cap=DEFAULT_ENDO_RING_CAP):
    """Check one module against the retractable/prime-endomorphism
    sufficient condition.  Returns (applies, holds, skipped)."""
    end = endomorphism_ring(module, cap=endo_cap)
    if end is None:
        return False, True, True
    if not (is_retractable(module) and is_prime_ring(end)):
        return False, True, False
    return True, is_rpid_first(module), False


# ---------------------------------------------------------------------------
# firstness relative to a finite family

def _a_first_value(module, family):
    for pr in family:
        if pr.evaluate(module).is_zero():
            continue
        for n in _nonzero_submodules(module):
            nmod = n.as_module()
            if pr.evaluate(nmod).is_zero():
                return False
    return True


def a_first_detail(module, family):
    _require_nonzero(module, "family-firstness")
    for pr in family:
        if pr.evaluate(module).is_zero():
            continue
        for n in _nonzero_submodules(module):
            if pr.evaluate(n.as_module()).is_zero():
                return False, {"kind": "member_kills_submodule",
                               "member": pr.describe(),
                               "submodule": n.labels()}
    return True, None


def is_A_first(module, family):
    return a_first_detail(module, family)[0]


def a_fully_first_detail(module, family):
    for pr in family:
        for n in _nonzero_submodules(module):
            if pr.evaluate(n.as_module()).is_zero():
                return False, {"kind": "member_kills_submodule",
                               "member": pr.describe(),
                               "submodule": n.labels()}
    return True, None


def is_A_fully_first(module, family):
    return a_fully_first_detail(module, family)[0]


def diuniform_detail(module):
    """Every nonzero fully invariant submodule is essential."""
    _require_nonzero(module, "diuniformity")
    lat = enumerate_submodules(module)
    for sub, fi in zip(lat.submodules, lat.fully_invariant):
        if not fi or sub.is_zero():
            continue
        if not is_essential(sub):
            return False, {"kind": "non_essential_fully_invariant",
                           "submodule": sub.labels()}
    return True, None


def is_diuniform(module):
    return diuniform_detail(module)[0]


# ---------------------------------------------------------------------------
# the torsion/torsion-free/first classes of a family

@dataclass(frozen=True)
class ClassMembership:
    """Membership of one module in the four classes attached to a family.

    in_pretorsion: every member fixes the module; in_pretorsion_free: every
    member kills it; in_first_class: zero or family-first; in_fully_first:
    no member kills a nonzero submodule.
    """
    in_pretorsion: bool
    in_pretorsion_free: bool
    in_first_class: bool
    in_fully_first: bool


def class_membership(module, family):
    """Membership record, with the intersection identities asserted.

    The identities checked on the spot: the family classes are the
    intersections of the singleton classes, the first class of a single
    member is the union of its fully-first class and its kill class, and
    both inclusions fully-first/kill-class <= first-class.
    """
    family = list(family)
    in_t = all(pr.evaluate(module).is_full() for pr in family)
    in_f = all(pr.evaluate(module).is_zero() for pr in family)
    if module.is_zero():
        in_p = True
        in_sp = True
    else:
        in_p = _a_first_value(module, family)
        in_sp = a_fully_first_detail(module, family)[0]
    if len(family) == 1:
        # the first class of a single member is its fully-first class
        # together with the modules it kills
        if in_p != (in_sp or in_f):
            raise InternalInconsistency(
                "first class must be fully-first union kill-class")
    elif len(family) > 1:
        singles = [class_membership(module, [pr]) for pr in family]
        if in_t != all(s.in_pretorsion for s in singles):
            raise InternalInconsistency("pretorsion intersection identity")
        if in_f != all(s.in_pretorsion_free for s in singles):
            raise InternalInconsistency("pretorsion-free intersection identity")
        if in_p != all(s.in_first_class for s in singles):
            raise InternalInconsistency("first-class intersection identity")
        if in_sp != all(s.in_fully_first for s in singles):
            raise InternalInconsistency("fully-first intersection identity")
    if in_sp and not in_p:
        raise InternalInconsistency("fully-first must imply first")
    if in_f and not in_p:
        raise InternalInconsistency("pretorsion-free must imply first")
    return ClassMembership(in_t, in_f, in_p, in_sp)


# ---------------------------------------------------------------------------
# reports

@dataclass
class FirstnessReport:
    """Verdicts per notion with a concrete witness for each negative."""
    module_provenance: str
    module_order: int
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        return {"module": self.module_provenance,
                "order": self.module_order,
                "verdicts": dict(self.verdicts),
                "witnesses": dict(self.witnesses)}


NOTIONS = ("bjkn_prime", "prime", "rpid_first", "diuniform")


def firstness_report(module, notions=NOTIONS, families=None):
    """Run the requested deciders and collect verdicts plus witnesses."""
    report = FirstnessReport(module.provenance, module.order)
    deciders = {
        "bjkn_prime": bjkn_prime_detail,
        "prime": prime_module_detail,
        "rpid_first": rpid_first_detail,
        "diuniform": diuniform_detail,
    }
    for notion in notions:
        verdict, witness = deciders[notion](module)
        report.verdicts[notion] = verdict
        if witness is not None:
            report.witnesses[notion] = witness
    for name, family in (families or {}).items():
        verdict, witness = a_first_detail(module, family)
        report.verdicts[f"a_first[{name}]"] = verdict
        if witness:
            report.witnesses[f"a_first[{name}]"] = witness
        verdict, witness = a_fully_first_detail(module, family)
        report.verdicts[f"a_fully_first[{name}]"] = verdict
        if witness:
            report.witnesses[f"a_fully_first[{name}]"] = witness
    return report
