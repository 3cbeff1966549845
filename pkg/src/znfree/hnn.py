"""HNN extension layer: admissible pairs, attached elements, extension API.

A stable letter z with z^{-1} A z = B can be adjoined when the top axis
generators (u, v) of (A, B) form an admissible pair: both cyclically reduced,
neither a proper power, equal length, and u not conjugate to v^{-1}.  The
connecting element realizing z has a u-periodic head and v-periodic tail, so
adjacency between blocks only behaves well when no letter's tail period
cancels into another's head period; `extend_hnn` repairs such misalignments
automatically by passing to conjugate axis representatives (rotations).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import tower as T
from .tower import (
    AbelianSubgroup,
    Elem,
    GroupTower,
    TowerRejection,
    equals,
    height,
    invert,
    is_conjugate,
    is_cyclically_reduced,
    length,
    letter_elem,
    multiply,
    primitive_root,
    veq,
)
from .tower import verify_phi_conjugation  # re-exported  # noqa: F401


@dataclass(frozen=True)
class AdmissibilityReport:
    cyclically_reduced: tuple[bool, bool]
    proper_power_free: tuple[bool, bool]
    equal_length: bool
    not_conjugate_to_inverse: bool

    @property
    def admissible(self) -> bool:
        return (all(self.cyclically_reduced) and all(self.proper_power_free)
                and self.equal_length and self.not_conjugate_to_inverse)

    def failing_condition(self) -> str | None:
        if not all(self.cyclically_reduced):
            return "admissible-pair: not-cyclically-reduced"
        if not all(self.proper_power_free):
            return "admissible-pair: proper-power"
        if not self.equal_length:
            return "admissible-pair: length-mismatch"
        if not self.not_conjugate_to_inverse:
            return "admissible-pair: conjugate-to-inverse"
        return None


@dataclass(frozen=True)
class AttachmentRecord:
    letter: str
    sign: int
    side: str  # "left" | "right"
    witness: Elem  # the signed letter as an element


def check_admissible(t: GroupTower, u: Elem, v: Elem) -> AdmissibilityReport:
    if T.is_identity(u) or T.is_identity(v):
        raise ValueError("axis generators must be nontrivial")
    cr = (is_cyclically_reduced(t, u), is_cyclically_reduced(t, v))
    pp = tuple(not crx or primitive_root(t, w)[1] == 1
               for w, crx in zip((u, v), cr))
    eqlen = veq(length(t, u), length(t, v))
    nci = not is_conjugate(t, u, invert(t, v))
    return AdmissibilityReport(cr, tuple(pp), eqlen, nci)


def find_attached(t: GroupTower, C: AbelianSubgroup, c: Elem,
                  side: str) -> list[AttachmentRecord]:
    """Signed stable letters above C's height that conjugate C without
    raising its height and concatenate with c (right) or c^{-1} (left)
    without cancellation."""
    out = []
    probe = c if side == "right" else invert(t, c)
    for sl, sign in t.signed_letters():
        if sl.level <= height(t, c):
            continue
        w = letter_elem(t, sl.name, sign)
        conj = multiply(t, multiply(t, invert(t, w), c), w)
        if height(t, conj) != height(t, c):
            continue
        ok, _ = T._additive(t, probe, w)
        if ok:
            out.append(AttachmentRecord(sl.name, sign, side, w))
    return out


def unattached_conjugate(t: GroupTower, A: AbelianSubgroup, u: Elem,
                         side: str) -> tuple[AbelianSubgroup, Elem, Elem]:
    """Follow attached letters until reaching a conjugate representative of
    (A, u) with no side-attached element; returns it with the accumulated
    conjugator g (new axis = g^{-1} A g)."""
    conj = T.EPS
    seen = {u.key}
    cur_gens = list(A.gens)
    cur_u = u
    for _ in range(1 + 2 * len(t.letters) * (len(t.letters) + 1)):
        att = find_attached(t, AbelianSubgroup(tuple(cur_gens)), cur_u, side)
        if not att:
            return AbelianSubgroup(tuple(cur_gens)), cur_u, conj
        w = att[0].witness
        wi = invert(t, w)
        cur_gens = [multiply(t, multiply(t, wi, x), w) for x in cur_gens]
        cur_u = multiply(t, multiply(t, wi, cur_u), w)
        conj = multiply(t, conj, w)
        if cur_u.key in seen:
            raise T.EngineError(
                "attached-element walk cycled; tower is invalid")
        seen.add(cur_u.key)
    raise T.EngineError("attached-element walk did not terminate")


def _rotation_conjugators(t: GroupTower, w: Elem) -> list[Elem]:
    """Prefix conjugators giving the cyclic rotations of a base-level word."""
    if w.level != 1:
        return [T.EPS]
    word = w.word
    return [T.word_elem(word[:i]) for i in range(len(word))]


def extend_hnn(t: GroupTower, name: str, source_gens, target_gens,
               level: int | None = None, aliases=None,
               auto_rotate: bool = True) -> GroupTower:
    """Adjoin a stable letter z with z^{-1} source z = target.

    Validates admissibility and all structural tower conditions.  When the
    raw axes produce a junction misalignment (a tail period cancelling into
    a head period) and auto_rotate is set, conjugate representatives of the
    axes are tried; callers wanting the original letter back can alias it as
    the rotated letter times the rotation conjugator.
    """
    source_gens = tuple(source_gens)
    target_gens = tuple(target_gens)
    if not source_gens or len(source_gens) != len(target_gens):
        raise TowerRejection("axis-mismatch",
                             "source and target need equal positive rank")
    u, v = source_gens[-1], target_gens[-1]
    rep = check_admissible(t, u, v)
    fail = rep.failing_condition()
    if fail is not None:
        raise TowerRejection(fail)
    try:
        return T.extend_tower(t, name, source_gens, target_gens,
                              level=level, aliases=aliases)
    except TowerRejection as exc:
        if not auto_rotate or exc.condition not in (
                "junction-misalignment", "orientation-clash"):
            raise
        first = exc
    for cs in _rotation_conjugators(t, u):
        for ct in _rotation_conjugators(t, v):
            if T.is_identity(cs) and T.is_identity(ct):
                continue
            csi, cti = invert(t, cs), invert(t, ct)
            sg = tuple(multiply(t, multiply(t, csi, x), cs)
                       for x in source_gens)
            tg = tuple(multiply(t, multiply(t, cti, x), ct)
                       for x in target_gens)
            try:
                return T.extend_tower(t, name, sg, tg,
                                      level=level, aliases=aliases)
            except TowerRejection:
                continue
    raise first
