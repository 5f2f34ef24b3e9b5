"""Ribbon Reidemeister rewrites on atomic diagrams.

Moves address the atomized form of a diagram (one token per slice); the
location of a move is (slice index, position).  Every move preserves the
boundary, the component structure, the linking matrix, and the ribbon
isotopy class; the invariance tests exercise exactly that.

    R0 swap     exchange two adjacent slices with disjoint supports
    R0 snakeR   cancel/create a zigzag  [V at p, A at p+1]
    R0 snakeL   cancel/create a zigzag  [V at p, A at p-1]
    R2a / R2b   cancel/create [X+ X-] resp. [X- X+] at equal position
    R3          braid relation, both sign families
    R1ribbon    cancel/create an adjacent pair of opposite kinks
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import ARITY, CAP, CUP, Diagram, DiagramError, ID, XN, XP, analyze, from_events, to_events

_SIGN = {XP: 1, XN: -1}
_TOK = {1: XP, -1: XN}


@dataclass(frozen=True)
class MoveSpec:
    move: str                 # R0 | R1ribbon | R2a | R2b | R3
    index: int                # slice index in the atomized diagram
    pos: int = 0              # position parameter
    direction: str = "apply"  # apply | undo
    variant: str = ""         # R0: swap | snakeR | snakeL; R1ribbon undo: "+"/"-"

    def __str__(self):
        v = f" {self.variant}" if self.variant else ""
        return f"{self.move}{v} @({self.index},{self.pos}) {self.direction}"


def _event_widths(bottom, events):
    w = [len(bottom)]
    for t, _ in events:
        fi, fo = ARITY[t]
        w.append(w[-1] + fo - fi)
    return w


def _kink_shape(events, k):
    """If events[k:k+3] is a single kink on strand position p, return (p, sign)."""
    if k + 3 > len(events):
        return None
    (t1, p1), (t2, p2), (t3, p3) = events[k:k + 3]
    if t1 != CUP or t2 not in _SIGN or t3 != CAP:
        return None
    if p1 == p3 and p2 == p1 - 1:      # right kink: cup/cap at p+1, crossing at p
        return (p2, _SIGN[t2])
    if p1 == p3 and p2 == p1 + 1:      # left kink: cup/cap at p, crossing at p+1
        return (p1, _SIGN[t2])
    return None


def _remap_colors(old: Diagram, bottom, new_events, k0: int, removed: int, inserted: int) -> Diagram:
    new_d = from_events(bottom, new_events)
    if not old.closed_colors:
        return new_d
    oa, na = analyze(old), analyze(new_d)
    shift = inserted - removed

    def level_map(l):
        return l if l <= k0 else l + shift

    colors = {}
    for comp, color in old.closed_colors:
        rep = None
        for port, cc in oa.components.comp_of.items():
            l, p = port
            if cc == comp and (l <= k0 or l >= k0 + removed):
                rep = port
                break
        if rep is None:
            raise DiagramError("closed component trapped inside a move window")
        nc = na.components.comp_of[(level_map(rep[0]), rep[1])]
        colors[nc] = color
    return new_d.with_closed_colors(colors)


def apply_move(d: Diagram, spec: MoveSpec) -> Diagram:
    """Apply (or undo) a move; raises DiagramError when the pattern mismatches."""
    da = d.atomize()
    bottom, events = to_events(da)
    k, p = spec.index, spec.pos
    w = _event_widths(bottom, events)

    def splice(removed: int, new: list):
        if k < 0 or k + removed > len(events):
            raise DiagramError("move index out of range")
        out = events[:k] + new + events[k + removed:]
        return _remap_colors(da, bottom, out, k, removed, len(new))

    if spec.move == "R0":
        if spec.variant in ("", "swap"):
            if k + 2 > len(events):
                raise DiagramError("R0 swap out of range")
            (t1, p1), (t2, p2) = events[k], events[k + 1]
            i1, o1 = ARITY[t1]
            i2, _ = ARITY[t2]
            if p2 >= p1 + o1:
                new = [(t2, p2 + i1 - o1), (t1, p1)]
            elif p2 + i2 <= p1:
                _, o2 = ARITY[t2]
                new = [(t2, p2), (t1, p1 + o2 - i2)]
            else:
                raise DiagramError("R0 swap: overlapping supports")
            return splice(2, new)
        if spec.variant == "snakeR":
            if spec.direction == "apply":
                if k + 2 > len(events) or events[k] != (CUP, p) or events[k + 1] != (CAP, p + 1):
                    raise DiagramError("snakeR pattern mismatch")
                return splice(2, [])
            if not (0 <= p < w[k]):
                raise DiagramError("snakeR undo: no strand here")
            return splice(0, [(CUP, p), (CAP, p + 1)])
        if spec.variant == "snakeL":
            if spec.direction == "apply":
                if k + 2 > len(events) or events[k] != (CUP, p + 1) or events[k + 1] != (CAP, p):
                    raise DiagramError("snakeL pattern mismatch")
                return splice(2, [])
            if not (0 <= p < w[k]):
                raise DiagramError("snakeL undo: no strand here")
            return splice(0, [(CUP, p + 1), (CAP, p)])
        raise DiagramError(f"unknown R0 variant {spec.variant!r}")

    if spec.move in ("R2a", "R2b"):
        first = XP if spec.move == "R2a" else XN
        second = XN if spec.move == "R2a" else XP
        if spec.direction == "apply":
            if k + 2 > len(events) or events[k] != (first, p) or events[k + 1] != (second, p):
                raise DiagramError(f"{spec.move} pattern mismatch")
            return splice(2, [])
        if not (0 <= p and p + 1 < w[k]):
            raise DiagramError(f"{spec.move} undo: need two strands")
        return splice(0, [(first, p), (second, p)])

    if spec.move == "R3":
        if k + 3 > len(events):
            raise DiagramError("R3 out of range")
        (t1, p1), (t2, p2), (t3, p3) = events[k:k + 3]
        if t1 not in _SIGN or t2 not in _SIGN or t3 not in _SIGN:
            raise DiagramError("R3 pattern mismatch")
        e1, e2, e3 = _SIGN[t1], _SIGN[t2], _SIGN[t3]
        if p1 == p3 and abs(p2 - p1) == 1:
            # pattern at adjacent positions (a, b, a)
            if e1 == e2 == e3:
                return splice(3, [(t1, p2), (t2, p1), (t3, p2)])
            if e3 == -e1:
                return splice(3, [(_TOK[-e1], p2), (t2, p1), (_TOK[e1], p2)])
        raise DiagramError("R3 pattern mismatch")

    if spec.move == "R1ribbon":
        if spec.direction == "apply":
            k1 = _kink_shape(events, k)
            k2 = _kink_shape(events, k + 3)
            if k1 is None or k2 is None or k1[0] != k2[0] or k1[1] != -k2[1]:
                raise DiagramError("R1ribbon pattern mismatch")
            return splice(6, [])
        sign = 1 if spec.variant != "-" else -1
        if not (0 <= p < w[k]):
            raise DiagramError("R1ribbon undo: no strand here")
        kink = lambda s: [(CUP, p + 1), (_TOK[s], p), (CAP, p + 1)]
        return splice(0, kink(sign) + kink(-sign))

    raise DiagramError(f"unknown move {spec.move!r}")


def find_moves(d: Diagram, allow_growth: bool = True, max_events: int = 60) -> list[MoveSpec]:
    """Enumerate applicable MoveSpecs on the atomized diagram."""
    da = d.atomize()
    bottom, events = to_events(da)
    w = _event_widths(bottom, events)
    out: list[MoveSpec] = []
    n = len(events)

    for k in range(n - 1):
        (t1, p1), (t2, p2) = events[k], events[k + 1]
        i1, o1 = ARITY[t1]
        i2, _ = ARITY[t2]
        if p2 >= p1 + o1 or p2 + i2 <= p1:
            out.append(MoveSpec("R0", k, p1, "apply", "swap"))
        if t1 == CUP and t2 == CAP and p2 == p1 + 1:
            out.append(MoveSpec("R0", k, p1, "apply", "snakeR"))
        if t1 == CUP and t2 == CAP and p2 == p1 - 1:
            out.append(MoveSpec("R0", k, p2, "apply", "snakeL"))
        if t1 == XP and t2 == XN and p1 == p2:
            out.append(MoveSpec("R2a", k, p1, "apply"))
        if t1 == XN and t2 == XP and p1 == p2:
            out.append(MoveSpec("R2b", k, p1, "apply"))

    for k in range(n - 2):
        (t1, p1), (t2, p2), (t3, p3) = events[k:k + 3]
        if t1 in _SIGN and t2 in _SIGN and t3 in _SIGN and p1 == p3 and abs(p2 - p1) == 1:
            if _SIGN[t1] == _SIGN[t2] == _SIGN[t3] or _SIGN[t3] == -_SIGN[t1]:
                out.append(MoveSpec("R3", k, p1, "apply"))

    for k in range(n - 5):
        k1 = _kink_shape(events, k)
        k2 = _kink_shape(events, k + 3)
        if k1 and k2 and k1[0] == k2[0] and k1[1] == -k2[1]:
            out.append(MoveSpec("R1ribbon", k, k1[0], "apply"))

    if allow_growth and n + 6 <= max_events:
        for k in range(n + 1):
            for p in range(w[k]):
                out.append(MoveSpec("R0", k, p, "undo", "snakeR"))
                out.append(MoveSpec("R0", k, p, "undo", "snakeL"))
                out.append(MoveSpec("R1ribbon", k, p, "undo", "+"))
            for p in range(max(w[k] - 1, 0)):
                out.append(MoveSpec("R2a", k, p, "undo"))
                out.append(MoveSpec("R2b", k, p, "undo"))
    return out
