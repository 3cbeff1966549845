"""Elementary reduction moves on symmetric generating sets.

Three moves shrink or restructure a finite symmetric generating set Y of a
tower group: merging a shared head of two top-weight generators, splitting a
generator whose head repeats under a weight-zero multiplier, and replacing a
non-cyclically-reduced generator by its conjugator and core.  The reduction
loop applies them to exhaustion and then closes the weight-zero part under
the centralizer elements needed for the conjugation-closure condition.

Every move records a witness: each removed generator is expressed as an
explicit product over the surviving set, so subgroup preservation can be
re-verified from the log alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import tower as T
from .tower import Elem, EPS
from .wordexpr import render


class Inapplicable(Exception):
    """The move's precondition fails for these parameters."""


# ---------------------------------------------------------------------------
# generating sets


class GenSet:
    """A finite symmetric set of tower elements with a witness log."""

    def __init__(self, t, elements, witness_log=None):
        self.tower = t
        seen = {}
        for g in elements:
            if T.is_identity(g):
                continue
            seen[g.key] = g
            gi = T.invert(t, g)
            seen[gi.key] = gi
        self.elements = tuple(sorted(seen.values(), key=lambda g: render(t, g)))
        self.witness_log = list(witness_log or [])

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return any(g.key == x.key for x in self.elements)

    def positive(self):
        """Members with positive top weight (closed under inversion)."""
        return [g for g in self.elements if T.lam_len(self.tower, g) > 0]

    def zero(self):
        """Members with zero top weight (closed under inversion)."""
        return [g for g in self.elements if T.lam_len(self.tower, g) == 0]

    def pair_reps(self, members=None):
        """One representative per inverse pair, in render order."""
        t = self.tower
        out = []
        seen = set()
        for g in (self.elements if members is None else members):
            if g.key in seen:
                continue
            seen.add(g.key)
            seen.add(T.invert(t, g).key)
            out.append(g)
        return out

    def replace(self, removed, added, log_entry):
        t = self.tower
        gone = set()
        for g in removed:
            gone.add(g.key)
            gone.add(T.invert(t, g).key)
        kept = [g for g in self.elements if g.key not in gone]
        return GenSet(t, kept + list(added),
                      self.witness_log + [log_entry])


def lambda_weight(Y: GenSet) -> int:
    """Sum of top weights over one representative per inverse pair."""
    t = Y.tower
    return sum(T.lam_len(t, g) for g in Y.pair_reps(Y.positive()))


def _witness(t, g, factors):
    """Log record expressing g as the product of factors."""
    prod = EPS
    for x in factors:
        prod = T.multiply(t, prod, x)
    if not T.equals(t, prod, g):
        raise T.EngineError("witness product does not rebuild the generator")
    return {"element": g, "factors": list(factors),
            "rendered": (render(t, g), [render(t, x) for x in factors])}


# ---------------------------------------------------------------------------
# weight-zero subgroup machinery


def _fold_graph(words):
    """Folded subgroup graph (Stallings) for free-group words.

    Returns (base, transitions) where transitions maps (state, letter) to a
    state for positive letters in both directions via (state, -letter)."""
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
        return find(rb)

    edges = []  # (src, letter, dst) with letter > 0
    fresh = [1]
    base = 0
    parent[0] = 0
    for w in words:
        cur = base
        for k in w:
            nxt = fresh[0]
            fresh[0] += 1
            parent[nxt] = nxt
            if k > 0:
                edges.append((cur, k, nxt))
            else:
                edges.append((nxt, -k, cur))
            cur = nxt
        union(cur, base)
    # fold: merge targets of equal-labelled edges until deterministic
    changed = True
    while changed:
        changed = False
        fwd, bwd = {}, {}
        for s, k, d in edges:
            s, d = find(s), find(d)
            if (s, k) in fwd and fwd[(s, k)] != d:
                union(fwd[(s, k)], d)
                changed = True
                break
            fwd[(s, k)] = d
            if (d, k) in bwd and bwd[(d, k)] != s:
                union(bwd[(d, k)], s)
                changed = True
                break
            bwd[(d, k)] = s
    trans = {}
    for s, k, d in edges:
        trans[(find(s), k)] = find(d)
        trans[(find(d), -k)] = find(s)
    return find(base), trans


def subgroup_contains(t, gens, x: Elem, radius: int = 3) -> bool:
    """Membership of x in <gens>.  Exact when everything lives in the base
    free layer (folded subgroup graph); otherwise a ball search of the
    given radius, which is sound but not complete."""
    if T.is_identity(x):
        return True
    if not gens:
        return False
    if x.level == 1 and all(g.level == 1 for g in gens):
        base, trans = _fold_graph([g.word for g in gens])
        cur = base
        for k in x.word:
            cur = trans.get((cur, k))
            if cur is None:
                return False
        return cur == base
    for h in ball(t, gens, radius):
        if T.equals(t, h, x):
            return True
    return False


def ball(t, gens, radius: int):
    """All products of at most `radius` generators (with inverses), plus
    the identity, deduplicated; deterministic order."""
    reps = []
    seen = set()
    for g in gens:
        for x in (g, T.invert(t, g)):
            if x.key not in seen and not T.is_identity(x):
                seen.add(x.key)
                reps.append(x)
    out = [EPS]
    known = {EPS.key}
    frontier = [EPS]
    for _ in range(radius):
        nxt = []
        for cur in frontier:
            for g in reps:
                cand = T.multiply(t, cur, g)
                if cand.key not in known:
                    known.add(cand.key)
                    nxt.append(cand)
                    out.append(cand)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# the three moves


def mu(Y: GenSet, f: Elem, g: Elem, h: Elem) -> GenSet:
    """Merge the shared head u of f and h*g (strictly decreasing weight)."""
    t = Y.tower
    lam = lambda x: T.lam_len(t, x)  # noqa: E731
    if lam(f) <= 0 or lam(g) <= 0 or f.key == g.key:
        raise Inapplicable("mu needs distinct positive-weight f, g")
    hg = T.multiply(t, h, g)
    u = T.com(t, f, hg)
    if lam(u) <= 0:
        raise Inapplicable("mu needs a positive-weight common head")
    ui = T.invert(t, u)
    fi = T.invert(t, f)
    if f.key != T.invert(t, g).key:
        w1 = T.multiply(t, ui, f)
        w2 = T.multiply(t, ui, hg)
        added = [u, w1, w2]
        rest = T.multiply(t, fi, hg)
        if lam(rest) == 0 and not T.is_identity(rest):
            added.append(rest)
        entry = {
            "op": "mu", "params": [render(t, x) for x in (f, g, h)],
            "witnesses": [
                _witness(t, f, [u, w1]),
                _witness(t, g, [T.invert(t, h), u, w2]),
            ],
        }
        out = Y.replace([f, g], [x for x in added if not T.is_identity(x)],
                        entry)
    else:
        w2 = T.multiply(t, ui, hg)
        w2u = T.multiply(t, w2, u)
        entry = {
            "op": "mu", "params": [render(t, x) for x in (f, g, h)],
            "witnesses": [
                _witness(t, g, [T.invert(t, h), u, w2u, ui]),
            ],
        }
        out = Y.replace([g], [x for x in (u, w2u) if not T.is_identity(x)],
                        entry)
    if lambda_weight(out) >= lambda_weight(Y):
        raise T.EngineError("mu did not decrease the weight")
    return out


def eta(Y: GenSet, f: Elem, h: Elem) -> GenSet:
    """Split f = u o f1 when its head u repeats in h*f."""
    t = Y.tower
    lam = lambda x: T.lam_len(t, x)  # noqa: E731
    if lam(f) <= 0:
        raise Inapplicable("eta needs positive-weight f")
    u = T.com(t, f, T.multiply(t, h, f))
    if not 0 < lam(u) < lam(f):
        raise Inapplicable("eta needs a proper positive-weight head")
    ui = T.invert(t, u)
    f1 = T.multiply(t, ui, f)
    conj = T.multiply(t, T.multiply(t, ui, h), u)
    entry = {
        "op": "eta", "params": [render(t, x) for x in (f, h)],
        "witnesses": [_witness(t, f, [u, f1])],
    }
    added = [x for x in (f1, u, conj) if not T.is_identity(x)]
    return Y.replace([f], added, entry)


def nu(Y: GenSet, f: Elem) -> GenSet:
    """Replace a non-cyclically-reduced f by its conjugator and core."""
    t = Y.tower
    if T.lam_len(t, f) <= 0:
        raise Inapplicable("nu needs positive-weight f")
    c, core = T.cyclic_decompose(t, f)
    if T.is_identity(c):
        raise Inapplicable("f is already cyclically reduced")
    ci = T.invert(t, c)
    entry = {
        "op": "nu", "params": [render(t, f)],
        "witnesses": [_witness(t, f, [ci, core, c])],
    }
    return Y.replace([f], [c, core], entry)


# ---------------------------------------------------------------------------
# the reduction loop


@dataclass
class ReduceOptions:
    h_radius: int = 3
    max_augment: int = 8


def _find_mu(Y, hs):
    t = Y.tower
    pos = Y.positive()
    best = None
    for f in pos:
        for g in pos:
            if f.key == g.key:
                continue
            for h in hs:
                hg = T.multiply(t, h, g)
                u = T.com(t, f, hg)
                if T.lam_len(t, u) > 0:
                    key = (render(t, f), render(t, g), render(t, h))
                    if best is None or key < best[0]:
                        best = (key, f, g, h)
    return best


def _find_nu(Y):
    t = Y.tower
    best = None
    for f in Y.pair_reps(Y.positive()):
        if not T.is_cyclically_reduced(t, f):
            key = render(t, f)
            if best is None or key < best[0]:
                best = (key, f)
    return best


def _find_eta(Y, hs):
    t = Y.tower
    best = None
    for f in Y.positive():
        for h in hs:
            u = T.com(t, f, T.multiply(t, h, f))
            if 0 < T.lam_len(t, u) < T.lam_len(t, f):
                key = (render(t, f), render(t, h))
                if best is None or key < best[0]:
                    best = (key, f, h)
    return best


def _augment_closure(Y: GenSet, hs, opts) -> GenSet:
    """Add the centralizer elements making condition (d) hold: whenever a
    positive generator is weight-preservingly conjugated by some h of the
    weight-zero subgroup, keep the conjugation inside that subgroup."""
    t = Y.tower
    added = []
    zero = Y.zero()
    for f in Y.positive():
        fi = T.invert(t, f)
        for h in hs:
            if T.is_identity(h):
                continue
            u = T.com(t, f, T.multiply(t, h, f))
            if T.lam_len(t, u) != T.lam_len(t, f) or T.lam_len(t, u) == 0:
                continue
            x = T.multiply(t, T.multiply(t, fi, h), f)
            if T.lam_len(t, x) != 0:
                continue
            if subgroup_contains(t, zero + added, x, opts.h_radius):
                continue
            cen = T.centralizer(t, h)
            for c in T.subgroup_gens(t, cen):
                if T.lam_len(t, c) == 0:
                    added.append(c)
                    added.append(T.multiply(t, T.multiply(t, fi, c), f))
    if not added:
        return Y
    entry = {"op": "augment",
             "params": [],
             "witnesses": [],
             "added": [render(t, x) for x in added]}
    return Y.replace([], added, entry)


def reduce_genset(t, Y, options: ReduceOptions | None = None) -> GenSet:
    """Apply the three moves to exhaustion, then close the weight-zero part.

    Halts within (initial weight)^2 move applications; a failure to do so is
    an internal error, never silent looping."""
    if not isinstance(Y, GenSet):
        Y = GenSet(t, Y)
    opts = options or ReduceOptions()
    bound = max(1, lambda_weight(Y)) ** 2
    steps = 0
    augments = 0
    while True:
        hs = ball(t, Y.zero(), opts.h_radius)
        cand = _find_mu(Y, hs)
        if cand is not None:
            Y = mu(Y, cand[1], cand[2], cand[3])
        else:
            cand = _find_nu(Y)
            if cand is not None:
                Y = nu(Y, cand[1])
            else:
                cand = _find_eta(Y, hs)
                if cand is not None:
                    Y = eta(Y, cand[1], cand[2])
                else:
                    Y2 = _augment_closure(Y, hs, opts)
                    if Y2 is Y:
                        return Y
                    Y = Y2
                    augments += 1
                    if augments > opts.max_augment:
                        raise T.EngineError(
                            "closure augmentation did not stabilize")
                    continue
        steps += 1
        if steps > bound:
            raise T.EngineError(
                f"reduction exceeded its step bound ({bound})")


def is_reduced(t, Y, h_radius: int = 3) -> list[str]:
    """Violations of the reducedness conditions (empty list = reduced).

    (a) every positive generator is cyclically reduced; (b) distinct
    positive generators never share a positive-weight head, under any
    weight-zero multiplier; (c) a positive-weight self-overlap is total;
    (d) total self-overlaps conjugate back into the weight-zero subgroup.
    The weight-zero multipliers h are enumerated in a ball, so (b)-(d) are
    sound but bounded."""
    if not isinstance(Y, GenSet):
        Y = GenSet(t, Y)
    lam = lambda x: T.lam_len(t, x)  # noqa: E731
    out = []
    pos = Y.positive()
    zero = Y.zero()
    hs = ball(t, zero, h_radius)
    for f in Y.pair_reps(pos):
        if not T.is_cyclically_reduced(t, f):
            out.append(f"(a) not cyclically reduced: {render(t, f)}")
    for f in pos:
        for g in pos:
            if f.key == g.key:
                continue
            for h in hs:
                u = T.com(t, f, T.multiply(t, h, g))
                if lam(u) > 0:
                    out.append(
                        f"(b) shared head: f={render(t, f)} g={render(t, g)}"
                        f" h={render(t, h)}")
                    break
            else:
                continue
            break
    for f in pos:
        fi = T.invert(t, f)
        for h in hs:
            u = T.com(t, f, T.multiply(t, h, f))
            if lam(u) == 0:
                continue
            if lam(u) != lam(f):
                out.append(f"(c) partial self-overlap: f={render(t, f)} "
                           f"h={render(t, h)}")
                continue
            x = T.multiply(t, T.multiply(t, fi, h), f)
            if not subgroup_contains(t, zero, x, h_radius):
                out.append(f"(d) conjugate escapes the weight-zero part: "
                           f"f={render(t, f)} h={render(t, h)}")
    return out


def verify_witnesses(t, Y: GenSet) -> bool:
    """Re-check every witness product in the log."""
    for entry in Y.witness_log:
        for w in entry.get("witnesses", ()):
            prod = EPS
            for x in w["factors"]:
                prod = T.multiply(t, prod, x)
            if not T.equals(t, prod, w["element"]):
                return False
    return True
