"""The preradical calculus: evaluable expressions over a module category.

A preradical assigns to every module a fully invariant submodule,
naturally in all maps.  Here a preradical is an expression tree whose
leaves are trace/reject-style operators frozen at a (submodule, module)
pair, t-radicals I.(-) for a two-sided ideal, socle, radical, the two
constants, and linear-filter operators; the nodes are joins, meets and
composition.  Evaluation on any module over the same ring is exhaustive
through Hom-sets, and every class-level property (idempotent, radical,
left exact, t-radical, the pointwise order) is decided relative to an
explicit finite universe of modules, never for the whole category.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotFullyInvariant, RingMismatch
from .modules import (embed_submask, enumerate_submodules, hom_set,
                      quotient_module, regular_module, simple_modules,
                      structural_summary, submodule, sum_masks, trad_mask)
from .rings import IdealHandle, enumerate_ideals, is_ideal_mask

_EVAL_CACHE = {}

LE, GE, EQ, INCOMPARABLE = "le", "ge", "eq", "incomparable"


class Preradical:
    """Base class: an evaluable, immutable preradical expression."""

    __slots__ = ()

    def ring(self):
        """The ring the expression is pinned to, or None if generic."""
        return None

    def evaluate(self, module):
        """Value on a module, as a submodule of it (cached)."""
        r = self.ring()
        if r is not None and r is not module.ring:
            raise RingMismatch(
                f"preradical over {r.provenance} applied to a module over "
                f"{module.ring.provenance}")
        key = (id(self), id(module))
        hit = _EVAL_CACHE.get(key)
        if hit is None:
            _EVAL_CACHE[key] = hit = (self, module,
                                      submodule(module, self._compute(module)))
        return hit[2]

    def _compute(self, module):
        raise NotImplementedError

    def describe(self):
        raise NotImplementedError

    def __repr__(self):
        return self.describe()


def _sub_token(sub):
    els = ",".join(sub.labels())
    return "{" + els + "}@" + sub.module.provenance


class Alpha(Preradical):
    """Least preradical sending the frozen module M to N (N f.i. in M).

    Value on U: the sum of f(N) over all maps f: M -> U.
    """

    __slots__ = ("sub",)

    def __init__(self, sub):
        lat = enumerate_submodules(sub.module)
        if not lat.fully_invariant[lat.index[sub.mask]]:
            raise NotFullyInvariant(f"{sub!r} is not fully invariant")
        self.sub = sub

    def ring(self):
        return self.sub.module.ring

    def _compute(self, module):
        out = module.zero_mask()
        seen = set()
        for f in hom_set(self.sub.module, module):
            img = f.image_of_mask(self.sub.mask)
            if img in seen or img & ~out == 0:
                continue
            seen.add(img)
            out = sum_masks(module, out, img)
        return out

    def describe(self):
        return f"alpha({_sub_token(self.sub)})"


class Omega(Preradical):
    """Largest preradical sending the frozen module M to N (N f.i. in M).

    Value on U: the intersection of f^{-1}(N) over all maps f: U -> M.
    The hom-set is never empty (the zero map is there), and the zero map
    contributes the whole of U, so an empty intersection cannot occur.
    """

    __slots__ = ("sub",)

    def __init__(self, sub):
        lat = enumerate_submodules(sub.module)
        if not lat.fully_invariant[lat.index[sub.mask]]:
            raise NotFullyInvariant(f"{sub!r} is not fully invariant")
        self.sub = sub

    def ring(self):
        return self.sub.module.ring

    def _compute(self, module):
        out = module.full_mask()
        zmask = module.zero_mask()
        for f in hom_set(module, self.sub.module):
            out &= f.preimage_of_mask(self.sub.mask)
            if out == zmask:
                break
        return out

    def describe(self):
        return f"omega({_sub_token(self.sub)})"


class Beta(Preradical):
    """Like Alpha but the frozen submodule need not be fully invariant."""

    __slots__ = ("sub",)

    def __init__(self, sub):
        self.sub = sub

    def ring(self):
        return self.sub.module.ring

    def _compute(self, module):
        out = module.zero_mask()
        seen = set()
        for f in hom_set(self.sub.module, module):
            img = f.image_of_mask(self.sub.mask)
            if img in seen or img & ~out == 0:
                continue
            seen.add(img)
            out = sum_masks(module, out, img)
        return out

    def describe(self):
        return f"beta({_sub_token(self.sub)})"


class Trad(Preradical):
    """The t-radical U -> I.U for a two-sided ideal I."""

    __slots__ = ("ideal",)

    def __init__(self, ideal):
        if ideal.sidedness != "two-sided":
            raise NotFullyInvariant("t-radicals need a two-sided ideal")
        self.ideal = ideal

    def ring(self):
        return self.ideal.ring

    def _compute(self, module):
        return trad_mask(module, self.ideal)

    def describe(self):
        els = ",".join(self.ideal.ring.labels[i] for i in self.ideal.carrier)
        return "trad({" + els + "})"


class Soc(Preradical):
    __slots__ = ()

    def _compute(self, module):
        return structural_summary(module).socle.mask

    def describe(self):
        return "soc"


class Rad(Preradical):
    __slots__ = ()

    def _compute(self, module):
        return structural_summary(module).jacobson_radical.mask

    def describe(self):
        return "rad"


class ZeroPr(Preradical):
    __slots__ = ()

    def _compute(self, module):
        return module.zero_mask()

    def describe(self):
        return "zero"


class OnePr(Preradical):
    __slots__ = ()

    def _compute(self, module):
        return module.full_mask()

    def describe(self):
        return "one"


class LinearFilter(Preradical):
    """The left exact preradical of a linear filter of left ideals.

    Value on U: the elements whose annihilator belongs to the filter.
    """

    __slots__ = ("_ring", "ideal_masks")

    def __init__(self, ring, ideal_masks):
        self._ring = ring
        self.ideal_masks = frozenset(ideal_masks)

    def ring(self):
        return self._ring

    def _compute(self, module):
        act = module.act
        out = 0
        zero = module.zero
        for m in range(module.order):
            ann = 0
            for r in range(self._ring.order):
                if act[r][m] == zero:
                    ann |= 1 << r
            if ann in self.ideal_masks:
                out |= 1 << m
        return out

    def describe(self):
        ideals = enumerate_ideals(self._ring, "left")
        idx = sorted(i for i, h in enumerate(ideals) if h.mask in self.ideal_masks)
        return "lep(" + ",".join(f"I{i}" for i in idx) + ")"


def _combine_rings(parts):
    ring = None
    for p in parts:
        r = p.ring()
        if r is None:
            continue
        if ring is None:
            ring = r
        elif ring is not r:
            raise RingMismatch("mixed rings inside one preradical expression")
    return ring


class Join(Preradical):
    """Pointwise supremum: the submodule sum of the parts' values."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)
        _combine_rings(self.parts)

    def ring(self):
        return _combine_rings(self.parts)

    def _compute(self, module):
        out = module.zero_mask()
        for p in self.parts:
            out = sum_masks(module, out, p.evaluate(module).mask)
        return out

    def describe(self):
        return "join(" + ",".join(p.describe() for p in self.parts) + ")"


class Meet(Preradical):
    """Pointwise infimum: the intersection of the parts' values."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        self.parts = tuple(parts)
        _combine_rings(self.parts)

    def ring(self):
        return _combine_rings(self.parts)

    def _compute(self, module):
        out = module.full_mask()
        for p in self.parts:
            out &= p.evaluate(module).mask
        return out

    def describe(self):
        return "meet(" + ",".join(p.describe() for p in self.parts) + ")"


class Compose(Preradical):
    """outer(inner(U)): the inner value is taken as a module of its own,
    the outer preradical is evaluated there, and the carrier is re-embedded."""

    __slots__ = ("outer", "inner")

    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner
        _combine_rings((outer, inner))

    def ring(self):
        return _combine_rings((self.outer, self.inner))

    def _compute(self, module):
        k = self.inner.evaluate(module)
        kmod = k.as_module()
        inner_val = self.outer.evaluate(kmod)
        return embed_submask(kmod, inner_val.mask)

    def describe(self):
        return f"comp({self.outer.describe()},{self.inner.describe()})"


SOC = Soc()
RAD = Rad()
ZERO = ZeroPr()
ONE = OnePr()


# ---------------------------------------------------------------------------
# products of submodules

def product_in(module, left, right):
    """The product of two submodules inside their parent.

    Computed as the value at ``right`` of the trace-style operator frozen
    at ``(left, module)``: the sum of f(left) over maps f from the whole
    module into ``right``.  This is the form under which a module is
    BJKN-prime exactly when all products of nonzero submodules are
    nonzero.
    """
    rmod = right.as_module()
    val = Beta(left).evaluate(rmod)
    return submodule(module, embed_submask(rmod, val.mask))


def product_hom_AB(module, left, right):
    """Variant product using maps left -> right instead of module -> right.

    Exposed for comparison only; it does not satisfy the product criterion
    for BJKN-primeness (witness: both products of the socle of Z4 with
    itself).  No correctness claim is attached to this form.
    """
    lmod = left.as_module()
    rmod = right.as_module()
    out = rmod.zero_mask()
    for f in hom_set(lmod, rmod):
        out = sum_masks(rmod, out, f.image_of_mask(lmod.full_mask()))
    return submodule(module, embed_submask(rmod, out))


# ---------------------------------------------------------------------------
# universe-relative properties

def _universe_modules(universe):
    return universe.modules if hasattr(universe, "modules") else tuple(universe)


@dataclass(frozen=True)
class PropertyFlags:
    """Universe-relative property record; never a claim about all modules."""
    idempotent: bool
    radical: bool
    left_exact: bool
    t_radical: bool
    universe_size: int


def property_flags(pr, universe):
    """Decide idempotent/radical/left-exact/t-radical on a finite universe."""
    mods = _universe_modules(universe)
    idem = True
    radical = True
    lex = True
    trad = True
    ring = mods[0].ring
    reg = regular_module(ring)
    sigma_r = pr.evaluate(reg)
    sigma_r_two_sided = is_ideal_mask(ring, sigma_r.mask, "two-sided")
    for u in mods:
        val = pr.evaluate(u)
        if idem:
            kmod = val.as_module()
            if pr.evaluate(kmod).mask != kmod.full_mask():
                idem = False
        if radical:
            q = quotient_module(u, val)
            if not pr.evaluate(q).is_zero():
                radical = False
        if lex:
            for n in enumerate_submodules(u).submodules:
                nmod = n.as_module()
                inner = embed_submask(nmod, pr.evaluate(nmod).mask)
                if inner != val.mask & n.mask:
                    lex = False
                    break
        if trad:
            if not sigma_r_two_sided:
                trad = False
            else:
                ideal = IdealHandle(ring, sigma_r.mask, "two-sided")
                if trad_mask(u, ideal) != val.mask:
                    trad = False
    return PropertyFlags(idem, radical, lex, trad, len(mods))


def compare(a, b, universe):
    """Pointwise order of two preradicals over a finite universe."""
    mods = _universe_modules(universe)
    le = True
    ge = True
    for u in mods:
        va = a.evaluate(u).mask
        vb = b.evaluate(u).mask
        if va & ~vb:
            le = False
        if vb & ~va:
            ge = False
        if not le and not ge:
            return INCOMPARABLE
    if le and ge:
        return EQ
    return LE if le else GE


def idempotent_core_at(pr, module):
    """Value at ``module`` of the largest idempotent preradical below.

    Iterates U >= s(U) >= s(s(U)) >= ... to its fixpoint; finiteness
    guarantees termination.
    """
    current = submodule(module, module.full_mask())
    while True:
        cmod = current.as_module()
        nxt = embed_submask(cmod, pr.evaluate(cmod).mask)
        if nxt == current.mask:
            return current
        current = submodule(module, nxt)


def radical_closure_at(pr, module):
    """Value at ``module`` of the least radical above.

    Iterates K -> preimage of s(U/K) until stable.
    """
    current = pr.evaluate(module)
    while True:
        q = quotient_module(module, current)
        proj = q.origin[3]
        qval = pr.evaluate(q).mask
        nxt = 0
        for x in range(module.order):
            if qval >> proj[x] & 1:
                nxt |= 1 << x
        if nxt == current.mask:
            return current
        current = submodule(module, nxt)


def socle_as_join_of_simple_traces(ring):
    """soc as the join of the trace operators of the simple modules."""
    parts = []
    for s in simple_modules(ring):
        full = submodule(s, s.full_mask())
        parts.append(Alpha(full))
    return Join(parts)


def check_naturality(pr, modules):
    """f(s(A)) <= s(B) for every map between the given modules.

    Returns a witness triple (A, B, map) on failure, else None.
    """
    mods = _universe_modules(modules)
    for a in mods:
        va = pr.evaluate(a)
        for b in mods:
            vb = pr.evaluate(b)
            for f in hom_set(a, b):
                if f.image_of_mask(va.mask) & ~vb.mask:
                    return (a, b, f)
    return None
