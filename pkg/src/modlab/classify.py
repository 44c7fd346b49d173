"""Ring classification and the equivalence-verification harness.

A ``Universe`` is a deterministic finite family of modules standing in for
the whole module category in class-level statements: the regular module,
its quotients by all submodules (this includes every simple module), and
iterated pairwise direct sums up to the order cap, deduplicated up to
isomorphism.  Every verdict produced here is explicitly "at universe
scale": the harness checks the finite instances of each equivalence, never
the statement about all modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_MODULE_CAP, DEFAULT_UNIVERSE_DEPTH
from .errors import InternalInconsistency, SizeCapExceeded
from .firstness import bjkn_prime_detail, prime_module_detail
from .modules import (direct_sum_module, enumerate_submodules,
                      hom_nonzero_exists, is_injective, is_isomorphic,
                      is_superfluous, is_essential, quotient_module,
                      regular_module, simple_modules, structural_summary,
                      submodule)
from .preradicals import LinearFilter
from .rings import enumerate_ideals, is_simple_ring


@dataclass(frozen=True)
class Universe:
    """A finite generated family of modules over one ring."""
    ring: object
    modules: tuple
    depth: int
    module_cap: int

    def nonzero_modules(self):
        return tuple(m for m in self.modules if not m.is_zero())

    def __repr__(self):
        return (f"Universe({self.ring.provenance}, {len(self.modules)} modules, "
                f"depth={self.depth}, cap={self.module_cap})")


def generate_universe(ring, depth=DEFAULT_UNIVERSE_DEPTH,
                      module_cap=DEFAULT_MODULE_CAP):
    """Deterministic universe: regular module, quotients, then direct sums.

    Quotients of the regular module by maximal submodules are the simple
    modules, so those are always present.  Each extra depth level adds the
    pairwise direct sums of everything already generated (zero summands
    are skipped; the zero module itself stays in the universe).  Modules
    are deduplicated up to isomorphism, first occurrence kept.
    """
    key = ("universe", depth, module_cap)
    if key in ring._cache:
        return ring._cache[key]
    reg = regular_module(ring)
    mods = [reg]

    def add(candidate):
        for m in mods:
            try:
                if is_isomorphic(m, candidate):
                    return
            except SizeCapExceeded:
                # past the search caps, only exact table duplicates merge
                if m.add == candidate.add and m.act == candidate.act:
                    return
        mods.append(candidate)

    for sub in enumerate_submodules(reg).submodules:
        add(quotient_module(reg, sub))
    for _ in range(depth - 1):
        current = [m for m in mods if not m.is_zero()]
        for i, a in enumerate(current):
            for b in current[i:]:
                if a.order * b.order <= module_cap:
                    add(direct_sum_module([a, b], cap=module_cap))
    universe = Universe(ring, tuple(mods), depth, module_cap)
    ring._cache[key] = universe
    return universe


# ---------------------------------------------------------------------------
# ring classification

@dataclass
class RingClassification:
    """Flags with the scans that justify them; universe-scale flags say so."""
    ring_provenance: str
    is_simple: bool
    is_semisimple: bool
    is_homogeneous_semisimple: bool
    is_left_local: bool
    is_left_semiartinian_on_universe: bool
    is_V_ring: bool
    is_BKN_on_universe: bool
    simple_module_count: int
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "ring": self.ring_provenance,
            "is_simple": self.is_simple,
            "is_semisimple": self.is_semisimple,
            "is_homogeneous_semisimple": self.is_homogeneous_semisimple,
            "is_left_local": self.is_left_local,
            "is_left_semiartinian_on_universe":
                self.is_left_semiartinian_on_universe,
            "is_V_ring": self.is_V_ring,
            "is_BKN_on_universe": self.is_BKN_on_universe,
            "simple_module_count": self.simple_module_count,
            "witnesses": dict(self.witnesses),
        }


def classify_ring(ring, universe=None):
    if universe is None:
        universe = generate_universe(ring)
    witnesses = {}
    simple = is_simple_ring(ring)
    reg_summary = structural_summary(regular_module(ring))
    semisimple = reg_summary.is_semisimple
    simples = simple_modules(ring)
    left_local = len(simples) == 1
    homogeneous = semisimple and left_local
    if not left_local:
        witnesses["left_local"] = {
            "kind": "non_isomorphic_simples",
            "orders": [s.order for s in simples[:2]]}
    semiartinian = True
    for m in universe.nonzero_modules():
        if structural_summary(m).socle.is_zero():
            semiartinian = False
            witnesses["semiartinian"] = {"kind": "socle_free_module",
                                         "module": m.provenance}
            break
    v_ring = True
    for s in simples:
        if not is_injective(s):
            v_ring = False
            witnesses["V_ring"] = {"kind": "non_injective_simple",
                                   "order": s.order}
            break
    bkn = True
    nonzero = universe.nonzero_modules()
    for a in nonzero:
        for b in nonzero:
            if not hom_nonzero_exists(a, b):
                bkn = False
                witnesses["BKN"] = {"kind": "hom_zero",
                                    "source": a.provenance,
                                    "target": b.provenance}
                break
        if not bkn:
            break
    return RingClassification(
        ring.provenance, simple, semisimple, homogeneous, left_local,
        semiartinian, v_ring, bkn, len(simples), witnesses)


# ---------------------------------------------------------------------------
# left exact preradicals through linear filters of left ideals

def enumerate_lep(ring, subset_cap=20):
    """All linear filters of left ideals, as evaluable operators.

    A linear filter is a nonempty upward-closed family of left ideals,
    closed under finite intersections and under the shifts
    (I : a) = {r | r.a in I}; the attached operator picks the elements
    whose annihilator lies in the filter and is left exact on every
    universe (certified by the tests and the harness).
    """
    ideals = enumerate_ideals(ring, "left")
    n = len(ideals)
    if n > subset_cap:
        raise SizeCapExceeded(
            f"{n} left ideals; filter enumeration is out of range")
    masks = [i.mask for i in ideals]
    index = {m: i for i, m in enumerate(masks)}
    supersets = [[j for j in range(n) if masks[i] & ~masks[j] == 0]
                 for i in range(n)]
    inters = [[index[masks[i] & masks[j]] for j in range(n)] for i in range(n)]
    mul = ring.mul
    shifts = []
    for i in range(n):
        row = []
        for a in range(ring.order):
            shift_mask = 0
            for r in range(ring.order):
                if masks[i] >> mul[r][a] & 1:
                    shift_mask |= 1 << r
            row.append(index[shift_mask])
        shifts.append(row)
    full_index = n - 1  # canonical order puts R last
    filters = []
    for bits in range(1 << n):
        if not bits >> full_index & 1:
            continue  # a filter always contains R
        members = [i for i in range(n) if bits >> i & 1]
        ok = True
        for i in members:
            if any(not bits >> j & 1 for j in supersets[i]):
                ok = False
                break
            if any(not bits >> inters[i][j] & 1 for j in members):
                ok = False
                break
            if any(not bits >> shifts[i][a] & 1 for a in range(ring.order)):
                ok = False
                break
        if ok:
            filters.append(frozenset(masks[i] for i in members))
    filters.sort(key=lambda f: (len(f), sorted(f)))
    return tuple(LinearFilter(ring, f) for f in filters)


# ---------------------------------------------------------------------------
# the verification harness

THEOREM_IDS = ("T15", "T14", "T14.3", "P14.1", "Perror1", "P12", "P8.5")


@dataclass
class TheoremVerdict:
    """Both sides of one named equivalence, evaluated at universe scale.

    ``consistent`` is what the named statement predicts about the sides
    (equality for equivalences, an implication for Perror1); False here
    means an engine bug, not a mathematical discovery.
    """
    theorem_id: str
    ring_provenance: str
    sides: dict
    consistent: bool
    witnesses: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {"theorem": self.theorem_id, "ring": self.ring_provenance,
                "sides": dict(self.sides), "consistent": self.consistent,
                "witnesses": dict(self.witnesses), "details": dict(self.details)}


def _all_universe_prime(universe):
    for m in universe.nonzero_modules():
        verdict, witness = prime_module_detail(m)
        if not verdict:
            return False, {"module": m.provenance, **(witness or {})}
    return True, None


def _all_universe_bjkn(universe):
    for m in universe.nonzero_modules():
        verdict, witness = bjkn_prime_detail(m)
        if not verdict:
            return False, {"module": m.provenance, **(witness or {})}
    return True, None


def _lep_certify(ring, universe):
    """Left-exactness scan for every filter operator on the universe."""
    from .modules import embed_submask
    evaluators = enumerate_lep(ring)
    for pr in evaluators:
        for u in universe.modules:
            whole = pr.evaluate(u).mask
            for n in enumerate_submodules(u).submodules:
                nmod = n.as_module()
                part = embed_submask(nmod, pr.evaluate(nmod).mask)
                if part != whole & n.mask:
                    raise InternalInconsistency(
                        f"filter operator fails left exactness on {u!r}")
    return evaluators


def _all_universe_lep_first(universe, evaluators):
    for m in universe.nonzero_modules():
        for pr in evaluators:
            if pr.evaluate(m).is_zero():
                continue
            for n in enumerate_submodules(m).nonzero():
                if pr.evaluate(n.as_module()).is_zero():
                    return False, {"module": m.provenance,
                                   "filter": pr.describe(),
                                   "submodule": n.labels()}
    return True, None


def verify_theorem(theorem_id, ring, universe=None, pairs=None):
    """Replay one named equivalence over a ring at universe scale."""
    if universe is None:
        universe = generate_universe(ring)
    cls = classify_ring(ring, universe)
    witnesses = {}
    details = {}

    if theorem_id == "T15":
        lhs = cls.is_simple
        rhs, witness = _all_universe_prime(universe)
        if witness:
            witnesses["non_prime_module"] = witness
        sides = {"ring_is_simple": lhs, "all_universe_modules_prime": rhs}
        consistent = lhs == rhs

    elif theorem_id == "T14":
        lhs = cls.is_left_semiartinian_on_universe and cls.is_left_local
        evaluators = _lep_certify(ring, universe)
        details["filter_count"] = len(evaluators)
        rhs, witness = _all_universe_lep_first(universe, evaluators)
        if witness:
            witnesses["non_lep_first"] = witness
        sides = {"left_semiartinian_and_left_local": lhs,
                 "all_universe_modules_lep_first": rhs}
        consistent = lhs == rhs

    elif theorem_id == "T14.3":
        s1 = (cls.is_left_semiartinian_on_universe and cls.is_left_local
              and cls.is_V_ring)
        s2, witness = _all_universe_bjkn(universe)
        if witness:
            witnesses["non_bjkn_module"] = witness
        s3 = cls.is_homogeneous_semisimple
        sides = {"semiartinian_local_V_ring": s1,
                 "all_universe_modules_bjkn_prime": s2,
                 "homogeneous_semisimple": s3}
        consistent = s1 == s2 == s3

    elif theorem_id == "P14.1":
        if pairs is None:
            pairs = []
            for e in universe.nonzero_modules():
                if not is_injective(e):
                    continue
                lat = enumerate_submodules(e)
                for i in lat.atom_indices():
                    s = lat.submodules[i]
                    if s.is_full() or not is_essential(s):
                        continue
                    pairs.append((s, e))
        checked = []
        consistent = True
        for s, e in pairs:
            if not is_injective(e):
                raise InternalInconsistency(
                    "superfluity check needs an injective ambient module")
            ok = is_superfluous(s)
            checked.append({"simple": s.labels(), "hull": e.provenance,
                            "superfluous": ok})
            if not ok:
                consistent = False
                witnesses["non_superfluous"] = checked[-1]
        details["pairs"] = checked
        sides = {"pairs_checked": len(checked),
                 "all_superfluous": consistent}

    elif theorem_id == "Perror1":
        lhs, witness = _all_universe_bjkn(universe)
        if witness:
            witnesses["non_bjkn_module"] = witness
        rhs = cls.is_BKN_on_universe
        sides = {"all_universe_modules_bjkn_prime": lhs,
                 "BKN_on_universe": rhs}
        consistent = (not lhs) or rhs
        details["converse_fails_here"] = rhs and not lhs

    elif theorem_id == "P12":
        in_p = True
        in_sp = True
        for m in universe.nonzero_modules():
            soc_m = structural_summary(m).socle
            sp = all(not structural_summary(n.as_module()).socle.is_zero()
                     for n in enumerate_submodules(m).nonzero())
            p = sp or soc_m.is_zero()
            in_sp = in_sp and sp
            in_p = in_p and p
            if not p:
                witnesses["module_not_in_first_class"] = {"module": m.provenance}
        sides = {"universe_in_socle_first_class": in_p,
                 "universe_in_socle_fully_first_class": in_sp}
        consistent = in_p == in_sp

    elif theorem_id == "P8.5":
        in_sp = True
        for m in universe.nonzero_modules():
            if any(structural_summary(n.as_module()).socle.is_zero()
                   for n in enumerate_submodules(m).nonzero()):
                in_sp = False
                witnesses["socle_gap"] = {"module": m.provenance}
                break
        sides = {"universe_in_socle_fully_first_class": in_sp,
                 "left_semiartinian_on_universe":
                     cls.is_left_semiartinian_on_universe}
        consistent = in_sp == cls.is_left_semiartinian_on_universe

    else:
        raise InternalInconsistency(f"unknown theorem id {theorem_id!r}")

    return TheoremVerdict(theorem_id, ring.provenance, sides, consistent,
                          witnesses, details)
