"""Finite left modules over explicit finite rings.

Modules carry full addition and scalar-action tables over a ``FiniteRing``.
Submodules are bitmasks over the element indices, interned per module so
they can cache derived data (their own module structure, for instance).
Hom-sets are enumerated by choosing a greedy generating set, recording one
R-linear expression of every element in those generators, and keeping
exactly the generator-image tuples that kill every relation of the
generators; a tuple that kills all relations extends to a unique
well-defined R-map, so no further scan is needed (the test suite still
compares against an all-functions oracle on small instances).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import DEFAULT_MODULE_CAP, MAX_HOM_CANDIDATES
from .errors import (AxiomViolation, InternalInconsistency, RingMismatch,
                     SizeCapExceeded)
from .rings import FiniteRing, enumerate_ideals


class FiniteModule:
    """A finite left module with explicit tables.

    ``add[a][b]`` is the index of a+b; ``act[r][m]`` is the index of r.m
    for a ring element index r.  ``origin`` records how the module was
    built (enough to re-embed carriers of submodules, preimages of
    quotients, and direct-sum components).  Instances hash by identity.
    """

    __slots__ = ("ring", "order", "add", "act", "zero", "neg", "labels",
                 "provenance", "origin", "_cache")

    def __init__(self, ring, add, act, labels=None, provenance="raw",
                 origin=("raw",), cap=DEFAULT_MODULE_CAP):
        add = tuple(tuple(row) for row in add)
        act = tuple(tuple(row) for row in act)
        n = len(add)
        if cap is not None and n > cap:
            raise SizeCapExceeded(f"module order {n} exceeds cap {cap}")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
        self.ring = ring
        self.order = n
        self.add = add
        self.act = act
        self.labels = labels
        self.provenance = provenance
        self.origin = origin
        self._cache = {}
        self.zero, self.neg = _scan_module_axioms(ring, n, add, act)

    def is_zero(self):
        return self.order == 1

    def full_mask(self):
        return (1 << self.order) - 1

    def zero_mask(self):
        return 1 << self.zero

    def element_label(self, i):
        return self.labels[i]

    def __repr__(self):
        return f"FiniteModule({self.provenance}, order={self.order}, over {self.ring.provenance})"


def _scan_module_axioms(ring, n, add, act):
    if n == 0:
        raise AxiomViolation("nonempty carrier", None, "module has no elements")
    rng = range(n)
    if any(len(row) != n for row in add) or len(add) != n:
        raise AxiomViolation("table shape", "add", "add table is not square")
    if len(act) != ring.order or any(len(row) != n for row in act):
        raise AxiomViolation("table shape", "act",
                             "act table is not |R| x |M|")
    for a in rng:
        for b in rng:
            v = add[a][b]
            if not (0 <= v < n):
                raise AxiomViolation("closure", (a, b, v), "add out of range")
    for r in range(ring.order):
        for m in rng:
            v = act[r][m]
            if not (0 <= v < n):
                raise AxiomViolation("closure", (r, m, v), "act out of range")
    zero = None
    for e in rng:
        if all(add[e][x] == x for x in rng):
            zero = e
            break
    if zero is None:
        raise AxiomViolation("additive identity", None)
    for a in rng:
        for b in rng:
            if add[a][b] != add[b][a]:
                raise AxiomViolation("additive commutativity", (a, b))
            for c in rng:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    raise AxiomViolation("additive associativity", (a, b, c))
    neg = [None] * n
    for a in rng:
        for b in rng:
            if add[a][b] == zero:
                neg[a] = b
                break
        if neg[a] is None:
            raise AxiomViolation("additive inverse", (a,))
    one = ring.one
    for m in rng:
        if act[one][m] != m:
            raise AxiomViolation("unit action", (m,))
    radd, rmul = ring.add, ring.mul
    for r in range(ring.order):
        for s in range(ring.order):
            for m in rng:
                if act[radd[r][s]][m] != add[act[r][m]][act[s][m]]:
                    raise AxiomViolation("scalar distributivity", (r, s, m))
                if act[rmul[r][s]][m] != act[r][act[s][m]]:
                    raise AxiomViolation("action associativity", (r, s, m))
        for a in rng:
            for b in rng:
                if act[r][add[a][b]] != add[act[r][a]][act[r][b]]:
                    raise AxiomViolation("module distributivity", (r, a, b))
    return zero, tuple(neg)


# ---------------------------------------------------------------------------
# submodules as bitmasks

class Submodule:
    """A submodule of a fixed parent, as an interned bitmask."""

    __slots__ = ("module", "mask", "carrier", "_mod")

    def __init__(self, module, mask):
        self.module = module
        self.mask = mask
        self.carrier = tuple(i for i in range(module.order) if mask >> i & 1)
        self._mod = None

    @property
    def order(self):
        return len(self.carrier)

    def is_zero(self):
        return self.mask == self.module.zero_mask()

    def is_full(self):
        return self.mask == self.module.full_mask()

    def as_module(self):
        """This submodule as a module in its own right (cached).

        The result's ``origin`` is ``("sub", parent, carrier)``, which is
        what re-embedding of its submodules back into the parent uses.
        """
        if self._mod is None:
            self._mod = _sub_as_module(self.module, self.carrier)
        return self._mod

    def labels(self):
        return tuple(self.module.labels[i] for i in self.carrier)

    def __eq__(self, other):
        return (isinstance(other, Submodule) and self.module is other.module
                and self.mask == other.mask)

    def __hash__(self):
        return hash((id(self.module), self.mask))

    def __repr__(self):
        els = "{" + ",".join(self.labels()) + "}"
        return f"Submodule({els} of {self.module.provenance})"


def submodule(module, mask, check=False):
    """Intern a submodule handle for a carrier bitmask."""
    subs = module._cache.setdefault("subs", {})
    s = subs.get(mask)
    if s is None:
        if check and not is_submodule_mask(module, mask):
            raise AxiomViolation("submodule closure", mask,
                                 "carrier is not closed")
        s = Submodule(module, mask)
        subs[mask] = s
    return s


def is_submodule_mask(module, mask):
    if not mask >> module.zero & 1:
        return False
    els = [i for i in range(module.order) if mask >> i & 1]
    add, act = module.add, module.act
    for a in els:
        for b in els:
            if not mask >> add[a][b] & 1:
                return False
        for r in range(module.ring.order):
            if not mask >> act[r][a] & 1:
                return False
    return True


def cyclic_mask(module, x):
    """Carrier of Rx; already a submodule since rx + sx = (r+s)x."""
    act = module.act
    mask = 0
    for r in range(module.ring.order):
        mask |= 1 << act[r][x]
    return mask


def sum_masks(module, mask_a, mask_b):
    """Sum of two submodules: the set of pairwise sums is already closed."""
    if mask_a == mask_b or mask_b & ~mask_a == 0:
        return mask_a
    if mask_a & ~mask_b == 0:
        return mask_b
    add = module.add
    els_b = [i for i in range(module.order) if mask_b >> i & 1]
    out = 0
    for a in range(module.order):
        if mask_a >> a & 1:
            row = add[a]
            for b in els_b:
                out |= 1 << row[b]
    return out


def additive_closure_mask(module, mask):
    """Close a subset under addition (used for I.U and trace sums)."""
    add = module.add
    els = [i for i in range(module.order) if mask >> i & 1]
    queue = list(els)
    while queue:
        x = queue.pop()
        row = add[x]
        for y in els:
            z = row[y]
            if not mask >> z & 1:
                mask |= 1 << z
                els.append(z)
                queue.append(z)
    return mask


def closure_mask(module, seeds):
    """Smallest submodule containing the given elements."""
    mask = module.zero_mask()
    for x in seeds:
        mask = sum_masks(module, mask, cyclic_mask(module, x))
    return mask


def trad_mask(module, ideal, mask=None):
    """I.N for an ideal I and a submodule carrier N (defaults to all of M)."""
    act = module.act
    els = (range(module.order) if mask is None
           else [i for i in range(module.order) if mask >> i & 1])
    prods = 1 << module.zero
    for i in ideal.carrier:
        row = act[i]
        for u in els:
            prods |= 1 << row[u]
    # r(iu) = (ri)u stays inside, so only additive closure is needed
    return additive_closure_mask(module, prods)


# ---------------------------------------------------------------------------
# the submodule lattice

class SubmoduleLattice:
    """All submodules of a module, with join/meet tables and f.i. flags.

    Canonical order is (size, carrier); index 0 is the zero submodule and
    the last index is the whole module.  ``fully_invariant`` is computed
    lazily from the endomorphism Hom-set.
    """

    def __init__(self, module, submodules):
        self.module = module
        self.submodules = tuple(submodules)
        self.index = {s.mask: i for i, s in enumerate(self.submodules)}
        n = len(self.submodules)
        self.bottom_index = 0
        self.top_index = n - 1
        join = []
        meet = []
        for a in self.submodules:
            jrow = []
            mrow = []
            for b in self.submodules:
                jrow.append(self.index[sum_masks(module, a.mask, b.mask)])
                mrow.append(self.index[a.mask & b.mask])
            join.append(tuple(jrow))
            meet.append(tuple(mrow))
        self.join_table = tuple(join)
        self.meet_table = tuple(meet)
        self._fi = None

    def __len__(self):
        return len(self.submodules)

    def leq(self, i, j):
        return self.submodules[i].mask & ~self.submodules[j].mask == 0

    @property
    def fully_invariant(self):
        if self._fi is None:
            endos = hom_set(self.module, self.module)
            flags = []
            for s in self.submodules:
                mask = s.mask
                ok = True
                for f in endos:
                    fmap = f.map
                    img = 0
                    for x in s.carrier:
                        img |= 1 << fmap[x]
                    if img & ~mask:
                        ok = False
                        break
                flags.append(ok)
            self._fi = tuple(flags)
        return self._fi

    def atom_indices(self):
        out = []
        for i, s in enumerate(self.submodules):
            if i == self.bottom_index:
                continue
            if all(j in (self.bottom_index, i) or not self.leq(j, i)
                   for j in range(len(self.submodules))):
                out.append(i)
        return out

    def maximal_indices(self):
        out = []
        for i, s in enumerate(self.submodules):
            if i == self.top_index:
                continue
            if all(j in (self.top_index, i) or not self.leq(i, j)
                   for j in range(len(self.submodules))):
                out.append(i)
        return out

    def nonzero(self):
        return self.submodules[1:]


def enumerate_submodules(module):
    """The full submodule lattice, by closing cyclics under pairwise sums."""
    if "lattice" in module._cache:
        return module._cache["lattice"]
    zero_mask = module.zero_mask()
    cyclics = []
    seen = {zero_mask}
    for x in range(module.order):
        m = cyclic_mask(module, x)
        if m not in seen:
            seen.add(m)
            cyclics.append(m)
    queue = list(seen)
    while queue:
        m = queue.pop()
        for c in cyclics:
            s = sum_masks(module, m, c)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    subs = [submodule(module, m) for m in seen]
    subs.sort(key=lambda s: (s.order, s.carrier))
    lat = SubmoduleLattice(module, subs)
    module._cache["lattice"] = lat
    return lat


def powerset_submodule_masks(module):
    """All submodule carriers by filtering every subset (test oracle)."""
    if module.order > 16:
        raise SizeCapExceeded("power-set oracle limited to order <= 16")
    zero = module.zero
    hits = []
    for mask in range(1 << module.order):
        if mask >> zero & 1 and is_submodule_mask(module, mask):
            hits.append(mask)
    return sorted(hits)


# ---------------------------------------------------------------------------
# morphisms and hom-sets

class ModuleMorphism:
    """An R-linear map, stored as an image tuple indexed by source element."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source, target, map_, validate=True):
        self.source = source
        self.target = target
        self.map = tuple(map_)
        if validate:
            self.check()

    def check(self):
        src, tgt, f = self.source, self.target, self.map
        if src.ring is not tgt.ring:
            raise RingMismatch("morphism endpoints over different rings")
        if len(f) != src.order or any(not 0 <= v < tgt.order for v in f):
            raise AxiomViolation("map shape", None)
        for a in range(src.order):
            for b in range(src.order):
                if f[src.add[a][b]] != tgt.add[f[a]][f[b]]:
                    raise AxiomViolation("additivity", (a, b))
        for r in range(src.ring.order):
            for a in range(src.order):
                if f[src.act[r][a]] != tgt.act[r][f[a]]:
                    raise AxiomViolation("linearity", (r, a))

    def is_zero(self):
        z = self.target.zero
        return all(v == z for v in self.map)

    def image_of_mask(self, mask):
        f = self.map
        out = 0
        for x in self.source_elements(mask):
            out |= 1 << f[x]
        return out

    def source_elements(self, mask):
        return [i for i in range(self.source.order) if mask >> i & 1]

    def preimage_of_mask(self, mask):
        f = self.map
        out = 0
        for x in range(self.source.order):
            if mask >> f[x] & 1:
                out |= 1 << x
        return out

    def kernel_mask(self):
        return self.preimage_of_mask(1 << self.target.zero)

    def is_injective(self):
        return self.kernel_mask() == 1 << self.source.zero

    def is_bijective(self):
        return self.source.order == self.target.order and self.is_injective()

    def __eq__(self, other):
        return (isinstance(other, ModuleMorphism) and self.source is other.source
                and self.target is other.target and self.map == other.map)

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.map))

    def __repr__(self):
        return f"Morphism({self.source.provenance}->{self.target.provenance}, {self.map})"


def _generator_data(module):
    """Greedy generators, one expression per element, and all relations.

    Returns ``(gens, reps, rel_levels)`` where ``reps[e]`` is a coefficient
    tuple with e = sum_i reps[e][i].g_i, and ``rel_levels[i]`` lists the
    coefficient tuples r with sum r_j.g_j = 0 whose last nonzero slot is i.
    Adding a generator at least doubles the span, so the number of
    generators is at most log2(order).
    """
    if "gendata" in module._cache:
        return module._cache["gendata"]
    ring = module.ring
    add, act = module.add, module.act
    rzero = ring.zero
    gens = []
    reps = {module.zero: ()}
    for x in range(module.order):
        if x in reps:
            continue
        gens.append(x)
        new_reps = {}
        for e in sorted(reps):
            vec = reps[e]
            row_e = add[e]
            for r in range(ring.order):
                e2 = row_e[act[r][x]]
                if e2 not in new_reps:
                    new_reps[e2] = vec + (r,)
        reps = new_reps
    k = len(gens)
    if ring.order ** k > MAX_HOM_CANDIDATES:
        raise SizeCapExceeded(
            f"relation scan over {ring.order}^{k} combinations is out of range")
    # enumerate every coefficient tuple and its value; collect the relations
    partial = [((), module.zero)]
    for g in gens:
        nxt = []
        for vec, s in partial:
            row_s = add[s]
            for r in range(ring.order):
                nxt.append((vec + (r,), row_s[act[r][g]]))
        partial = nxt
    values = {s for _, s in partial}
    if len(values) != module.order:
        raise InternalInconsistency("generators do not span the module")
    rel_levels = [[] for _ in range(k + 1)]
    for vec, s in partial:
        if s != module.zero:
            continue
        level = 0
        for i in range(k - 1, -1, -1):
            if vec[i] != rzero:
                level = i + 1
                break
        if level:
            rel_levels[level].append(vec)
    reps_list = tuple(reps[e] for e in range(module.order))
    data = (tuple(gens), reps_list, tuple(tuple(r) for r in rel_levels))
    module._cache["gendata"] = data
    return data


def hom_set(source, target):
    """All R-linear maps source -> target, canonically ordered (cached).

    A generator-image tuple extends to a well-defined map exactly when it
    kills every relation among the generators, and the extension along the
    recorded expressions is automatically additive and linear.
    """
    if source.ring is not target.ring:
        raise RingMismatch("hom-set endpoints over different rings")
    cache = source._cache.setdefault("homs", {})
    if target in cache:
        return cache[target]
    gens, reps, rel_levels = _generator_data(source)
    k = len(gens)
    ring = source.ring
    rzero = ring.zero
    tadd, tact, tzero = target.add, target.act, target.zero
    if k and target.order ** k > MAX_HOM_CANDIDATES:
        raise SizeCapExceeded(
            f"hom search over {target.order}^{k} candidates is out of range")
    images = []
    hvec = [tzero] * k

    def extend(level):
        if level == k:
            images.append(tuple(hvec))
            return
        rels = rel_levels[level + 1]
        for h in range(target.order):
            hvec[level] = h
            ok = True
            for vec in rels:
                s = tzero
                for j in range(level + 1):
                    rj = vec[j]
                    if rj != rzero:
                        s = tadd[s][tact[rj][hvec[j]]]
                if s != tzero:
                    ok = False
                    break
            if ok:
                extend(level + 1)

    if k == 0:
        images.append(())
    else:
        extend(0)
    homs = []
    for hv in images:
        fmap = [tzero] * source.order
        for e in range(source.order):
            s = tzero
            for r, h in zip(reps[e], hv):
                if r != rzero:
                    s = tadd[s][tact[r][h]]
            fmap[e] = s
        homs.append(ModuleMorphism(source, target, fmap, validate=False))
    homs.sort(key=lambda f: f.map)
    result = tuple(homs)
    cache[target] = result
    return result


def hom_nonzero_exists(source, target):
    """Whether a nonzero map source -> target exists (early exit)."""
    if target in source._cache.get("homs", {}):
        return any(not f.is_zero() for f in source._cache["homs"][target])
    gens, reps, rel_levels = _generator_data(source)
    k = len(gens)
    if k == 0:
        return False
    ring = source.ring
    rzero = ring.zero
    tadd, tact, tzero = target.add, target.act, target.zero
    hvec = [tzero] * k
    # try nonzero images first so a hit surfaces early
    preferred = [h for h in range(target.order) if h != tzero] + [tzero]

    def extend(level):
        if level == k:
            return any(h != tzero for h in hvec)
        rels = rel_levels[level + 1]
        for h in preferred:
            hvec[level] = h
            ok = True
            for vec in rels:
                s = tzero
                for j in range(level + 1):
                    rj = vec[j]
                    if rj != rzero:
                        s = tadd[s][tact[rj][hvec[j]]]
                if s != tzero:
                    ok = False
                    break
            if ok and extend(level + 1):
                return True
        return False

    return extend(0)


def all_function_homs(source, target):
    """Hom-set by filtering every function (test oracle, tiny sizes only)."""
    if target.order ** source.order > 300_000:
        raise SizeCapExceeded("all-functions oracle out of range")
    out = []
    for f in itertools.product(range(target.order), repeat=source.order):
        try:
            out.append(ModuleMorphism(source, target, f, validate=True))
        except AxiomViolation:
            continue
    out.sort(key=lambda m: m.map)
    return tuple(out)


def _element_annihilators(module):
    if "anns" in module._cache:
        return module._cache["anns"]
    act = module.act
    zero = module.zero
    anns = []
    for m in range(module.order):
        mask = 0
        for r in range(module.ring.order):
            if act[r][m] == zero:
                mask |= 1 << r
        anns.append(mask)
    result = tuple(anns)
    module._cache["anns"] = result
    return result


def find_isomorphism(a, b):
    """A bijective map a -> b, or None.

    Searches generator images directly instead of enumerating the whole
    hom-set: candidate images must have the same annihilator as their
    generator (an isomorphism preserves annihilators exactly), must kill
    the generator relations, and the span of the partial image must keep
    the size of the span of the generators (injectivity).  A full
    assignment is then a surjective map between equal orders.
    """
    if a.ring is not b.ring or a.order != b.order:
        return None
    ann_a = _element_annihilators(a)
    ann_b = _element_annihilators(b)
    if sorted(ann_a) != sorted(ann_b):
        return None
    gens, reps, rel_levels = _generator_data(a)
    k = len(gens)
    if k == 0:
        return ModuleMorphism(a, b, (b.zero,), validate=False)
    ring = a.ring
    rzero = ring.zero
    tadd, tact, tzero = b.add, b.act, b.zero
    span_sizes = []
    span = a.zero_mask()
    for g in gens:
        span = sum_masks(a, span, cyclic_mask(a, g))
        span_sizes.append(bin(span).count("1"))
    hvec = [tzero] * k

    def extend(level, image_span):
        if level == k:
            return True
        rels = rel_levels[level + 1]
        want = ann_a[gens[level]]
        for h in range(b.order):
            if ann_b[h] != want:
                continue
            hvec[level] = h
            ok = True
            for vec in rels:
                s = tzero
                for j in range(level + 1):
                    rj = vec[j]
                    if rj != rzero:
                        s = tadd[s][tact[rj][hvec[j]]]
                if s != tzero:
                    ok = False
                    break
            if not ok:
                continue
            new_span = sum_masks(b, image_span, cyclic_mask(b, h))
            if bin(new_span).count("1") != span_sizes[level]:
                continue
            if extend(level + 1, new_span):
                return True
        return False

    if not extend(0, b.zero_mask()):
        return None
    fmap = [tzero] * a.order
    for e in range(a.order):
        s = tzero
        for r, h in zip(reps[e], hvec):
            if r != rzero:
                s = tadd[s][tact[r][h]]
        fmap[e] = s
    return ModuleMorphism(a, b, fmap, validate=False)


def is_isomorphic(a, b):
    if a is b:
        return True
    return find_isomorphism(a, b) is not None


# ---------------------------------------------------------------------------
# constructors

def regular_module(ring):
    """The ring as a left module over itself (one shared instance per ring)."""
    if "regular" not in ring._cache:
        ring._cache["regular"] = FiniteModule(
            ring, ring.add, ring.mul, labels=ring.labels,
            provenance=f"regular({ring.provenance})", origin=("regular", ring),
            cap=None)
    return ring._cache["regular"]


def _sub_as_module(parent, carrier):
    pos = {e: i for i, e in enumerate(carrier)}
    add = [[pos[parent.add[a][b]] for b in carrier] for a in carrier]
    act = [[pos[parent.act[r][a]] for a in carrier]
           for r in range(parent.ring.order)]
    labels = tuple(parent.labels[e] for e in carrier)
    return FiniteModule(parent.ring, add, act, labels=labels,
                        provenance=f"sub(of {parent.provenance})",
                        origin=("sub", parent, tuple(carrier)), cap=None)


def quotient_module(parent, kernel):
    """M/N with cosets labelled by their least member."""
    if kernel.module is not parent:
        raise RingMismatch("kernel is not a submodule of this module")
    n = parent.order
    proj = [None] * n
    reps = []
    for x in range(n):
        if proj[x] is not None:
            continue
        idx = len(reps)
        reps.append(x)
        for e in kernel.carrier:
            proj[parent.add[x][e]] = idx
    m = len(reps)
    add = [[proj[parent.add[reps[a]][reps[b]]] for b in range(m)]
           for a in range(m)]
    act = [[proj[parent.act[r][reps[a]]] for a in range(m)]
           for r in range(parent.ring.order)]
    labels = tuple("[" + parent.labels[r] + "]" for r in reps)
    return FiniteModule(parent.ring, add, act, labels=labels,
                        provenance=f"quotient(of {parent.provenance})",
                        origin=("quotient", parent, kernel, tuple(proj)),
                        cap=None)


def direct_sum_module(summands, cap=DEFAULT_MODULE_CAP):
    summands = list(summands)
    if not summands:
        raise AxiomViolation("nonempty sum", None,
                             "direct sum needs at least one summand")
    ring = summands[0].ring
    if any(s.ring is not ring for s in summands):
        raise RingMismatch("direct sum of modules over different rings")
    order = 1
    for s in summands:
        order *= s.order
    if cap is not None and order > cap:
        raise SizeCapExceeded(f"direct sum order {order} exceeds cap {cap}")
    tuples = list(itertools.product(*[range(s.order) for s in summands]))
    index = {t: i for i, t in enumerate(tuples)}
    add = [[index[tuple(s.add[a][b] for s, a, b in zip(summands, x, y))]
            for y in tuples] for x in tuples]
    act = [[index[tuple(s.act[r][a] for s, a in zip(summands, x))]
            for x in tuples] for r in range(ring.order)]
    labels = tuple("(" + ",".join(s.labels[c] for s, c in zip(summands, x)) + ")"
                   for x in tuples)
    embeddings = []
    for j, s in enumerate(summands):
        emb = []
        for a in range(s.order):
            t = tuple(a if i == j else summands[i].zero
                      for i in range(len(summands)))
            emb.append(index[t])
        embeddings.append(tuple(emb))
    prov = "sum(" + "+".join(s.provenance for s in summands) + ")"
    return FiniteModule(ring, add, act, labels=labels, provenance=prov,
                        origin=("direct_sum", tuple(summands), tuple(embeddings)),
                        cap=cap)


def cyclic_module(parent, x):
    """Rx as a module in its own right."""
    return submodule(parent, cyclic_mask(parent, x)).as_module()


def module_from_tables(ring, add, act, labels=None, cap=DEFAULT_MODULE_CAP):
    return FiniteModule(ring, add, act, labels=labels, cap=cap)


def zero_module(ring):
    if "zeromod" not in ring._cache:
        ring._cache["zeromod"] = FiniteModule(
            ring, ((0,),), tuple((0,) for _ in range(ring.order)),
            labels=("0",), provenance="zero", origin=("zero",), cap=None)
    return ring._cache["zeromod"]


def make_module(spec, cap=DEFAULT_MODULE_CAP):
    """Build a module from a tagged description (mirrors ``make_ring``).

    Shapes: ``("regular", ring)``, ``("quotient", module, submodule)``,
    ``("sub", module, submodule_or_carrier)``, ``("direct_sum", [modules])``,
    ``("cyclic", module, element)``, ``("raw", ring, add, act)``.
    """
    tag = spec[0]
    if tag == "regular":
        return regular_module(spec[1])
    if tag == "quotient":
        return quotient_module(spec[1], _as_submodule(spec[1], spec[2]))
    if tag == "sub":
        return _as_submodule(spec[1], spec[2]).as_module()
    if tag == "direct_sum":
        return direct_sum_module(spec[1], cap=cap)
    if tag == "cyclic":
        return cyclic_module(spec[1], spec[2])
    if tag == "raw":
        return module_from_tables(spec[1], spec[2], spec[3], cap=cap)
    raise AxiomViolation("module constructor", tag,
                         f"unknown constructor {tag!r}")


def _as_submodule(module, ref):
    if isinstance(ref, Submodule):
        if ref.module is not module:
            raise RingMismatch("submodule of a different module")
        return ref
    mask = 1 << module.zero
    for e in ref:
        mask |= 1 << e
    return submodule(module, mask, check=True)


def embed_submask(child, mask):
    """Map a submodule mask of a sub-as-module back into its parent."""
    tag = child.origin[0]
    if tag != "sub":
        raise InternalInconsistency("embed_submask needs a sub-as-module")
    carrier = child.origin[2]
    out = 0
    for i in range(child.order):
        if mask >> i & 1:
            out |= 1 << carrier[i]
    return out


# ---------------------------------------------------------------------------
# structural predicates

@dataclass(frozen=True)
class StructuralSummary:
    is_simple: bool
    is_semisimple: bool
    is_homogeneous_semisimple: bool
    socle: Submodule
    jacobson_radical: Submodule


def structural_summary(module):
    """Socle, radical, and the (homogeneous) semisimplicity flags (cached)."""
    if "structure" in module._cache:
        return module._cache["structure"]
    lat = enumerate_submodules(module)
    atoms = lat.atom_indices()
    soc_mask = module.zero_mask()
    for i in atoms:
        soc_mask = sum_masks(module, soc_mask, lat.submodules[i].mask)
    socle = submodule(module, soc_mask)
    maximals = lat.maximal_indices()
    rad_mask = module.full_mask()
    for i in maximals:
        rad_mask &= lat.submodules[i].mask
    radical = submodule(module, rad_mask)
    is_simple = len(lat) == 2
    is_semisimple = soc_mask == module.full_mask()
    homogeneous = is_semisimple
    if is_semisimple and len(atoms) > 1:
        first = lat.submodules[atoms[0]].as_module()
        for i in atoms[1:]:
            if not is_isomorphic(first, lat.submodules[i].as_module()):
                homogeneous = False
                break
    summary = StructuralSummary(is_simple, is_semisimple, homogeneous,
                                socle, radical)
    module._cache["structure"] = summary
    return summary


@dataclass(frozen=True)
class LatticePosition:
    is_essential: bool
    is_superfluous: bool
    is_atom: bool


def is_essential(sub):
    module = sub.module
    zmask = module.zero_mask()
    if sub.mask == zmask:
        # 0 is essential only in the zero module
        return module.is_zero()
    for other in enumerate_submodules(module).nonzero():
        if sub.mask & other.mask == zmask:
            return False
    return True


def is_superfluous(sub):
    module = sub.module
    full = module.full_mask()
    for other in enumerate_submodules(module).submodules:
        if other.mask != full and sum_masks(module, sub.mask, other.mask) == full:
            return False
    return True


def is_atom(sub):
    lat = enumerate_submodules(sub.module)
    return lat.index[sub.mask] in lat.atom_indices()


def lattice_position(sub):
    return LatticePosition(is_essential(sub), is_superfluous(sub), is_atom(sub))


# ---------------------------------------------------------------------------
# cogeneration and injectivity

def _reject_mask(module, cog):
    """Intersection of the kernels of all maps module -> cog."""
    inter = module.full_mask()
    zmask = module.zero_mask()
    for f in hom_set(module, cog):
        inter &= f.kernel_mask()
        if inter == zmask:
            break
    return inter


def _separating_family(module, cog):
    """Greedy list of maps whose kernels meet trivially, or None.

    A successful family (f_1..f_k) is a monomorphism M -> cog^k written in
    coordinates, so this is the bounded-embedding route to cogeneration.
    """
    homs = hom_set(module, cog)
    remaining = module.full_mask() & ~module.zero_mask()
    family = []
    for f in homs:
        if remaining == 0:
            break
        killed = f.kernel_mask()
        if remaining & ~killed:
            family.append(f)
            remaining &= killed
    if remaining:
        return None
    return family


def cogenerates(cog, module):
    """Whether ``cog`` cogenerates ``module``.

    Two independent routes, asserted equal: the reject of cog in module is
    zero, and a finite separating family of maps into cog exists (at most
    one per nonzero element, i.e. module embeds in a finite power of cog).
    """
    if isinstance(cog, Submodule):
        cog = cog.as_module()
    if cog.ring is not module.ring:
        raise RingMismatch("cogeneration across different rings")
    via_reject = _reject_mask(module, cog) == module.zero_mask()
    family = _separating_family(module, cog)
    via_embedding = family is not None
    if via_reject != via_embedding:
        raise InternalInconsistency(
            f"cogeneration routes disagree on {module!r} vs {cog!r}")
    if via_embedding and len(family) > max(module.order - 1, 1):
        raise InternalInconsistency("separating family longer than promised")
    return via_reject


def is_injective(module):
    """Baer criterion: every map from a left ideal of R extends to R."""
    ring = module.ring
    reg = regular_module(ring)
    full_homs = hom_set(reg, module)
    for ideal in enumerate_ideals(ring, "left"):
        if ideal.is_zero():
            continue
        sub = submodule(reg, ideal.mask)
        imod = sub.as_module()
        carrier = imod.origin[2]
        restrictions = {tuple(g.map[e] for e in carrier) for g in full_homs}
        for f in hom_set(imod, module):
            if f.map not in restrictions:
                return False
    return True


# ---------------------------------------------------------------------------
# simple modules and endomorphism rings

def simple_modules(ring):
    """One representative per isomorphism class of simple left modules.

    Every simple module of a finite ring is a quotient of the regular
    module by a maximal left ideal, so scanning those quotients is
    exhaustive.  Canonical order: by (order, first occurrence).
    """
    if "simples" in ring._cache:
        return ring._cache["simples"]
    reg = regular_module(ring)
    lat = enumerate_submodules(reg)
    reps = []
    for i in lat.maximal_indices():
        q = quotient_module(reg, lat.submodules[i])
        if not any(is_isomorphic(q, r) for r in reps):
            reps.append(q)
    reps.sort(key=lambda m: m.order)
    result = tuple(reps)
    ring._cache["simples"] = result
    return result


def endomorphism_ring(module, cap=None):
    """End(M) as an explicit finite ring; product is composition f.g = f o g.

    Returns None when the endomorphism monoid is larger than ``cap`` (the
    full ring tables would be pointlessly huge for desk-scale checks).
    """
    endos = hom_set(module, module)
    n = len(endos)
    if cap is not None and n > cap:
        return None
    index = {f.map: i for i, f in enumerate(endos)}
    madd = module.add
    add = [[index[tuple(madd[f.map[x]][g.map[x]] for x in range(module.order))]
            for g in endos] for f in endos]
    mul = [[index[tuple(f.map[g.map[x]] for x in range(module.order))]
            for g in endos] for f in endos]
    labels = tuple(f"f{i}" for i in range(n))
    return FiniteRing(add, mul, labels=labels,
                      provenance=f"end({module.provenance})", cap=None)
