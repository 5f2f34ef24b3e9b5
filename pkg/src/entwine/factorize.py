"""Diagram surgery: right-handing, extrema pulling, and factorizations.

The workspace keeps an atomic event list together with explicit boundary
letters, per-boundary-position labels naming the original component each
strand belongs to, and per-event tags carrying the same labels on caps and
cups.  Pulling a max to the top removes its cap and extends the two legs to
the top boundary; the pair travels upward in the gaps between strands and
crosses laterally where needed (passing in front by default; both the paths
and the front/back choices are immaterial for evaluation, which the
path-independence tests exercise by randomizing them).

A right-handed diagram has only caps consuming (+,-) and cups producing
(-,+).  Left-pointing extrema are normalized by

    cap (-,+)  ->  [X- crossing ; cap]     counting -1 on the component
    cup (+,-)  ->  [cup ; X+ crossing]     counting +1

and the evaluator compensates with twist powers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import (ARITY, CAP, CUP, Diagram, DiagramError, ID, XN, XP,
                      analyze, classify, from_events, to_events)
from .purebraid import BraidWord, PureBraidWord, RibbonPureBraid, comb, is_pure


@dataclass
class Surgery:
    bottom: list
    events: list
    tags: list
    top: list
    blabels: list
    tlabels: list

    @staticmethod
    def from_diagram(d: Diagram) -> "Surgery":
        da = d.atomize()
        a = analyze(da)
        bottom, events = to_events(da)
        L = len(da.slices)
        tags = []
        for k, (t, p) in enumerate(events):
            if t == CAP:
                tags.append(a.components.comp_of[(k, p)])
            elif t == CUP:
                tags.append(a.components.comp_of[(k + 1, p)])
            else:
                tags.append(None)
        top = list(a.top)
        blabels = [a.components.comp_of[(0, p)] for p in range(len(bottom))]
        tlabels = [a.components.comp_of[(L, p)] for p in range(len(top))]
        return Surgery(list(bottom), list(events), tags, top, blabels, tlabels)

    def diagram(self) -> Diagram:
        return from_events(self.bottom, self.events)

    def analysis(self):
        return analyze(self.diagram())

    def widths(self):
        w = [len(self.bottom)]
        for t, _ in self.events:
            fi, fo = ARITY[t]
            w.append(w[-1] + fo - fi)
        return w

    # -- vertical flip -------------------------------------------------------

    _FLIP = {XP: XN, XN: XP, CAP: CUP, CUP: CAP, ID: ID}

    def flip(self):
        self.events = [(self._FLIP[t], p) for t, p in reversed(self.events)]
        self.tags = list(reversed(self.tags))
        self.bottom, self.top = [(-s, c) for s, c in self.top], \
            [(-s, c) for s, c in self.bottom]
        self.blabels, self.tlabels = self.tlabels, self.blabels

    # -- lateral moves on the top boundary ------------------------------------

    def _append(self, token: str, pos: int, tag=None):
        self.events.append((token, pos))
        self.tags.append(tag)

    def _cross_top_pair_left(self, x: int, over: bool):
        tok = XN if over else XP
        self._append(tok, x - 1)
        self._append(tok, x)
        for lst in (self.top, self.tlabels):
            lst.insert(x + 1, lst.pop(x - 1))

    def _cross_top_pair_right(self, x: int, over: bool):
        tok = XP if over else XN
        self._append(tok, x + 1)
        self._append(tok, x)
        for lst in (self.top, self.tlabels):
            lst.insert(x, lst.pop(x + 2))

    def move_top_strand(self, src: int, dst: int, over: bool = True):
        """Walk the single top strand at src to dst, crossing what is between."""
        while src < dst:
            self._append(XP if over else XN, src)
            for lst in (self.top, self.tlabels):
                lst.insert(src + 1, lst.pop(src))
            src += 1
        while src > dst:
            self._append(XN if over else XP, src - 1)
            for lst in (self.top, self.tlabels):
                lst.insert(src - 1, lst.pop(src))
            src -= 1

    # -- pulling a max to the top ---------------------------------------------

    def pull_max_to_top(self, cap_index: int, target: int, over: bool = True,
                        rng: "random.Random | None" = None, wiggle: int = 0,
                        letters_override=None):
        """Remove the cap and extend its legs to the top at (target, target+1).

        letters_override pins the cap's port letters when the re-analysis
        cannot know them (a closed component re-anchors its orientation)."""
        tok, q = self.events[cap_index]
        if tok != CAP:
            raise DiagramError("pull_max_to_top: not a cap")
        a = self.analysis()
        if letters_override is not None:
            left_letter, right_letter = letters_override
        else:
            left_letter = a.letters[(cap_index, q)]
            right_letter = a.letters[(cap_index, q + 1)]
        label = self.tags[cap_index]
        if label is None:
            comp = a.components.comp_of[(cap_index, q)]
            for p, lab in enumerate(self.blabels):
                if a.components.comp_of[(0, p)] == comp:
                    label = lab
                    break
        if label is None:
            raise DiagramError("cap has no component label")

        tail = list(zip(self.events[cap_index + 1:], self.tags[cap_index + 1:]))
        self.events = self.events[:cap_index]
        self.tags = self.tags[:cap_index]
        g = q  # gap position in pair-free coordinates
        for (t, p), tg in tail:
            fi, fo = ARITY[t]
            if p + fi <= g:
                self._append(t, p, tg)
                g += fo - fi
            elif p >= g:
                self._append(t, p + 2, tg)
            else:
                # blocked: fi == 2 and g == p + 1; move the pair left past
                # the strand at position p
                ctok = XN if over else XP
                self._append(ctok, p)
                self._append(ctok, p + 1)
                g = p
                self._append(t, p + 2, tg)
        self.top.insert(g, right_letter)
        self.top.insert(g, left_letter)
        self.tlabels.insert(g, label)
        self.tlabels.insert(g, label)
        pos = g
        if rng is not None:
            for _ in range(wiggle):
                ov = rng.random() < 0.5
                if rng.random() < 0.5 and pos > 0:
                    self._cross_top_pair_left(pos, ov)
                    pos -= 1
                elif pos + 2 < len(self.top):
                    self._cross_top_pair_right(pos, ov)
                    pos += 1
        while pos > target:
            self._cross_top_pair_left(pos, over)
            pos -= 1
        while pos < target:
            self._cross_top_pair_right(pos, over)
            pos += 1

    def pull_min_to_bottom(self, cup_index: int, target: int, over: bool = True,
                           rng: "random.Random | None" = None, wiggle: int = 0):
        tok, q = self.events[cup_index]
        if tok != CUP:
            raise DiagramError("pull_min_to_bottom: not a cup")
        a = self.analysis()
        l1 = a.letters[(cup_index + 1, q)]
        l2 = a.letters[(cup_index + 1, q + 1)]
        self.flip()
        self.pull_max_to_top(len(self.events) - 1 - cup_index, target, over=over,
                             rng=rng, wiggle=wiggle,
                             letters_override=((-l1[0], l1[1]), (-l2[0], l2[1])))
        self.flip()

    # -- right-handing ---------------------------------------------------------

    def right_hand(self) -> dict:
        """Normalize left-pointing extrema; returns twist counts per label."""
        counts: dict = {}
        k = 0
        while k < len(self.events):
            t, p = self.events[k]
            if t not in (CAP, CUP):
                k += 1
                continue
            a = self.analysis()
            lab = self.tags[k]
            if t == CAP and a.letters[(k, p)][0] == -1:      # left-pointing max
                counts[lab] = counts.get(lab, 0) - 1
                self.events[k:k + 1] = [(XN, p), (CAP, p)]
                self.tags[k:k + 1] = [None, lab]
                k += 1
            elif t == CUP and a.letters[(k + 1, p)][0] == 1:  # left-pointing min
                counts[lab] = counts.get(lab, 0) + 1
                self.events[k:k + 1] = [(CUP, p), (XP, p)]
                self.tags[k:k + 1] = [lab, None]
                k += 1
            k += 1
        return counts

    # -- strand traversal -------------------------------------------------------

    def walk_from(self, port):
        """Turn events met along the strand starting at a boundary port.

        Returns a list of (kind, event_index, position), kind CAP or CUP, in
        traversal order.  Only valid on open components.
        """
        d = self.diagram()
        adj: dict = {}

        def link(p1, p2, tag=None):
            adj.setdefault(p1, []).append((p2, tag))
            adj.setdefault(p2, []).append((p1, tag))

        for k, s in enumerate(d.slices):
            i = o = 0
            for t in s:
                if t == ID:
                    link((k, i), (k + 1, o))
                    i += 1
                    o += 1
                elif t in (XP, XN):
                    link((k, i), (k + 1, o + 1))
                    link((k, i + 1), (k + 1, o))
                    i += 2
                    o += 2
                elif t == CAP:
                    link((k, i), (k, i + 1), (CAP, k, i))
                    i += 2
                elif t == CUP:
                    link((k + 1, o), (k + 1, o + 1), (CUP, k, o))
                    o += 2
        top_level = len(self.events)
        cur, prev = port, None
        out = []
        while True:
            nxt = None
            for q, tag in adj.get(cur, []):
                if q != prev:
                    nxt = (q, tag)
                    break
            if nxt is None:
                break
            q, tag = nxt
            if tag is not None:
                out.append(tag)
            prev, cur = cur, q
            if (cur[0] == 0 or cur[0] == top_level) and cur != port:
                break
        return out


# ---------------------------------------------------------------------------
# full extrema pulling


@dataclass
class PulledFactorization:
    """Outcome of pulling every extremum out of an all-open diagram.

    pulls: ("R" | "L", i) in pull order.  "R": the component is oriented
    upward at its bottom endpoint; the contraction caps strands (i, i+1)
    and cups (i+1, i+2) (1-based).  "L": oriented downward; cap (i+1, i+2),
    cup (i, i+1).
    """

    pulls: list
    braid: BraidWord
    combed: PureBraidWord
    bottom: list
    blabels: list
    counts: dict = field(default_factory=dict)


def pull_all_extrema(surgery: Surgery, rng=None, wiggle: int = 0,
                     counts: "dict | None" = None) -> PulledFactorization:
    """Pull every (max, min) pair out; requires a right-handed diagram whose
    k-th component runs from the k-th bottom to the k-th top position."""
    pulls = []
    while True:
        a = surgery.analysis()
        caps_by_comp: dict = {}
        for (k, p) in a.caps:
            caps_by_comp.setdefault(a.components.comp_of[(k, p)], []).append(k)
        if not caps_by_comp:
            break
        i = min(caps_by_comp)
        if a.components.bottoms[i - 1] != (i - 1,):
            raise DiagramError("component numbering out of sync with positions")
        sigma = surgery.bottom[i - 1][0]
        walk = surgery.walk_from((0, i - 1))
        first = next(w for w in walk if w[0] in (CAP, CUP))
        if first[0] != CAP:
            raise DiagramError("first extremum from the bottom is not a max")
        surgery.pull_max_to_top(first[1], i - 1 if sigma == 1 else i,
                                rng=rng, wiggle=wiggle)
        walk2 = surgery.walk_from((len(surgery.events), i))
        first2 = next(w for w in walk2 if w[0] in (CAP, CUP))
        if first2[0] != CUP:
            raise DiagramError("expected a min after the pulled max")
        surgery.pull_min_to_bottom(first2[1], i if sigma == 1 else i - 1,
                                   rng=rng, wiggle=wiggle)
        pulls.append(("R" if sigma == 1 else "L", i))
    word = []
    width = len(surgery.bottom)
    for t, p in surgery.events:
        if t not in (XP, XN):
            raise DiagramError("leftover extremum after factorization")
        word.append((p + 1, 1 if t == XP else -1))
    sigma_word = BraidWord(width, tuple(word))
    if not is_pure(sigma_word):
        raise DiagramError("factorized braid is not pure")
    return PulledFactorization(pulls, sigma_word, comb(sigma_word),
                               list(surgery.bottom), list(surgery.blabels),
                               dict(counts or {}))


# ---------------------------------------------------------------------------
# turban decomposition


@dataclass
class TurbanDecomposition:
    """Caps * ribbon pure braid * cups presentation of a turban diagram."""

    fact: PulledFactorization
    e_caps: list        # (x, y, sign_left), 1-based slots of the pulled word
    handle_cups: list   # (position 1-based, sign_left, label)
    n_open: int         # width of the original bottom word
    bent_tops: int      # number of original top legs bent down (legs-up)
    framings: list      # per braid strand, after folding the twist counts
    even_normalized: bool = False

    @property
    def braid(self) -> PureBraidWord:
        return self.fact.combed


def _nesting_order(pairs):
    return sorted(pairs, key=lambda xy: (xy[1] - xy[0], xy[0]))


def turban_decompose(d: Diagram, handle_pref: str = "h",
                     handle_order: "list | None" = None,
                     rng=None, wiggle: int = 0,
                     normalize_even: bool = True) -> TurbanDecomposition:
    kind = classify(d)
    if kind == "general":
        raise DiagramError("not a turban diagram (odd inter-component linking)")
    surgery = Surgery.from_diagram(d)
    n_open = len(surgery.bottom)
    b = len(surgery.top)

    # legs-up: pad with the reversed duals of the top word, then cap them off
    pads = [(-s, c) for s, c in reversed(surgery.top)]
    pad_labels = list(reversed(surgery.tlabels))
    surgery.bottom.extend(pads)
    surgery.blabels.extend(pad_labels)
    surgery.top.extend(pads)
    surgery.tlabels.extend(pad_labels)
    for k in range(b):
        surgery._append(CAP, b - 1 - k, surgery.tlabels[b - 1 - k])
        del surgery.top[b - 1 - k: b + 1 - k]
        del surgery.tlabels[b - 1 - k: b + 1 - k]

    # handles: pull one min per closed component to the bottom right
    a = surgery.analysis()
    closed_labels = sorted({surgery.tags[k] for k, (t, _) in enumerate(surgery.events)
                            if t == CUP and surgery.tags[k] is not None
                            and surgery.tags[k] not in surgery.blabels})
    if handle_order is not None:
        closed_labels = sorted(closed_labels, key=handle_order.index)
    handle_cups = []
    for lab in closed_labels:
        a = surgery.analysis()
        cand = []
        for k, (t, p) in enumerate(surgery.events):
            if t == CUP and surgery.tags[k] == lab:
                cand.append((k, a.letters[(k + 1, p)][0]))
        if not cand:
            raise DiagramError("closed component lost its cups")
        pref_sign = -1 if handle_pref == "h" else 1
        pick = next((k for k, s in cand if s == pref_sign), cand[0][0])
        pos = len(surgery.bottom)
        surgery.pull_min_to_bottom(pick, pos, rng=rng, wiggle=wiggle)
        handle_cups.append((pos + 1, surgery.bottom[pos][0], lab))

    counts = surgery.right_hand()

    # one max per component to the top, innermost pairs first
    a = surgery.analysis()
    pairing = []
    for c in range(1, a.components.n + 1):
        bots = a.components.bottoms[c - 1]
        if len(bots) != 2 or a.components.tops[c - 1]:
            raise DiagramError("unexpected boundary after handle pulling")
        pairing.append(bots)
    for (x1, y1) in pairing:
        for (x2, y2) in pairing:
            if x1 < x2 < y1 < y2:
                raise DiagramError("four-leg obstruction: interleaved "
                                   "components in a turban factorization")
    e_caps = []
    placed: list = []
    for (x, y) in _nesting_order(pairing):
        a = surgery.analysis()
        comp = a.components.comp_of[(0, x)]
        caps = sorted(k for (k, p) in a.caps
                      if a.components.comp_of[(k, p)] == comp)
        if not caps:
            raise DiagramError("component with no max after handle pulling")
        sigma_x = surgery.bottom[x][0]
        t_ins = sum(1 for q in placed if q < x)
        mid = y - x - 1
        surgery.pull_max_to_top(caps[0], t_ins, rng=rng, wiggle=wiggle)
        if sigma_x == 1:
            surgery.move_top_strand(t_ins + 1, t_ins + 1 + mid)
        else:
            # the (+) leg passes under its partner so that the pair caps off
            # with the left evaluation: e = eps . c^{-1} . (1 (x) t^{-1}),
            # with the twist compensated through the component count
            lab = surgery.blabels[x]
            counts[lab] = counts.get(lab, 0) - 1
            surgery.move_top_strand(t_ins, t_ins + 1 + mid, over=False)
        e_caps.append((x + 1, y + 1, sigma_x))
        placed.extend((x, y))

    a = surgery.analysis()
    for c in range(1, a.components.n + 1):
        if a.components.bottoms[c - 1] != (c - 1,) or a.components.tops[c - 1] != (c - 1,):
            raise DiagramError("summit pulls did not produce a string link")

    fact = pull_all_extrema(surgery, rng=rng, wiggle=wiggle, counts=counts)

    # fold the right-handing twist counts into strand framings
    framings = [0] * fact.braid.n
    remaining = dict(counts)
    for s, lab in enumerate(fact.blabels):
        if remaining.get(lab):
            framings[s] = remaining.pop(lab)
    if any(remaining.values()):
        raise DiagramError("twist count on a component with no strand")

    dec = TurbanDecomposition(fact, e_caps, handle_cups, n_open, b, framings)
    if normalize_even and kind == "even":
        _normalize_even_framings(dec)
    return dec


def _normalize_even_framings(dec: TurbanDecomposition):
    """Move each component's framing onto one capped strand and trade it
    away two at a time against the strand's cap partner."""
    n = dec.fact.combed.n
    cap_partner = {}
    cup_partner = {}
    for side, i in dec.fact.pulls:
        if side == "R":
            cap_partner[i] = i + 1
            cap_partner[i + 1] = i
            cup_partner[i + 1] = i + 2
            cup_partner[i + 2] = i + 1
        else:
            cap_partner[i + 1] = i + 2
            cap_partner[i + 2] = i + 1
            cup_partner[i] = i + 1
            cup_partner[i + 1] = i
    for x, y, _ in dec.e_caps:
        cap_partner[x] = y
        cap_partner[y] = x
    for pos, _, _ in dec.handle_cups:
        cup_partner[pos] = pos + 1
        cup_partner[pos + 1] = pos
    # strand groups = connected components of the partner graph
    seen = set()
    extra = []
    framings = list(dec.framings)
    for s in range(1, n + 1):
        if s in seen:
            continue
        group = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for v in (cap_partner.get(u), cup_partner.get(u)):
                if v is not None and v not in seen:
                    seen.add(v)
                    group.append(v)
                    stack.append(v)
        total = sum(framings[g - 1] for g in group)
        if total == 0 and all(framings[g - 1] == 0 for g in group):
            continue
        target = next((g for g in group if g in cap_partner), None)
        if target is None or total % 2 != 0:
            continue  # leave untouched (free-ended group or odd total)
        for g in group:
            framings[g - 1] = 0
        t = total
        a, b = sorted((target, cap_partner[target]))
        letters = list(dec.fact.combed.letters)
        while t > 0:
            letters.append((a, b, -1))
            t -= 2
        while t < 0:
            letters.append((a, b, 1))
            t += 2
        dec.fact.combed = PureBraidWord(n, tuple(letters))
    dec.framings = framings
    dec.even_normalized = True


# ---------------------------------------------------------------------------
# diagram-level operations


def right_hand(d: Diagram):
    """Right-handed diagram plus the twist count vector per component."""
    surgery = Surgery.from_diagram(d)
    counts = surgery.right_hand()
    from .diagram import components
    n = components(d).n
    t = tuple(counts.get(c, 0) for c in range(1, n + 1))
    return surgery.diagram(), t


def pull_extremum(d: Diagram, index: int, target: int,
                  direction: str = "max-to-top", over: bool = True,
                  rng=None, wiggle: int = 0) -> Diagram:
    """Pull the cap (resp. cup) at atomic slice `index` to the boundary."""
    surgery = Surgery.from_diagram(d)
    if direction == "max-to-top":
        surgery.pull_max_to_top(index, target, over=over, rng=rng, wiggle=wiggle)
    elif direction == "min-to-bottom":
        surgery.pull_min_to_bottom(index, target, over=over, rng=rng, wiggle=wiggle)
    else:
        raise DiagramError(f"unknown pull direction {direction!r}")
    return surgery.diagram()


def string_link_factorize(d: Diagram):
    """(sorted contraction indices, zero-framed ribbon pure braid).

    The contraction list is normalized with the contraction relations
    c_i c_j = c_{j-2} c_i (i <= j-2) into the sorted presentation.
    """
    from .evaluator import is_string_link
    if not is_string_link(d):
        raise DiagramError("not a string link diagram")
    surgery = Surgery.from_diagram(d)
    a = surgery.analysis()
    for (k, p) in a.caps:
        if a.letters[(k, p)][0] != 1:
            raise DiagramError("diagram is not right-handed")
    for (k, o) in a.cups:
        if a.letters[(k + 1, o)][0] != -1:
            raise DiagramError("diagram is not right-handed")
    fact = pull_all_extrema(surgery)
    js = [i + 1 for _, i in fact.pulls]
    # normalize: reading outermost first, rewrite (x, y), x <= y-2 -> (y-2, x)
    outer = list(reversed(js))
    changed = True
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 10000:
            raise DiagramError("contraction normalization did not terminate")
        for k in range(len(outer) - 1):
            x, y = outer[k], outer[k + 1]
            if x <= y - 2:
                outer[k], outer[k + 1] = y - 2, x
                changed = True
    sorted_js = list(reversed(outer))
    if sorted_js != sorted(sorted_js):
        raise DiagramError("contraction normalization failed")
    rb = RibbonPureBraid(fact.combed, tuple([0] * fact.combed.n))
    return sorted_js, rb


def turban_factorize(d: Diagram, **kw):
    """(caps-only diagram E, ribbon pure braid p, cups-only diagram H).

    p is padded with one trivial strand per original top leg; those strands
    pass through E to the boundary.  compose(H, diagram of p, E) reproduces
    the input up to ribbon isotopy (checked by evaluator equality in tests).
    """
    dec = turban_decompose(d, **kw)
    n = dec.fact.combed.n
    b = dec.bent_tops
    top_letters = analyze(d).top

    padded = PureBraidWord(n + b, dec.fact.combed.letters)
    p = RibbonPureBraid(padded, tuple(dec.framings) + (0,) * b)

    # E: contraction caps then the component caps, innermost first; the
    # b padding strands pass through on the right
    e_events = []
    alive = list(range(1, n + 1))
    for side, i in reversed(dec.fact.pulls):
        x = i if side == "R" else i + 1
        idx = alive.index(x)
        del alive[idx: idx + 2]
        e_events.append((CAP, idx))
    for x, y, _ in dec.e_caps:
        idx = alive.index(x)
        if alive[idx + 1] != y:
            raise DiagramError("component caps are not nested")
        del alive[idx: idx + 2]
        e_events.append((CAP, idx))
    if alive:
        raise DiagramError("uncapped strand in a turban factorization")
    e_bottom = tuple(fact_letters(dec) + list(top_letters))
    E = from_events(e_bottom, e_events)

    # H: the legs-up batch (outermost pair first), handle cups, then the
    # contraction cups in pull order
    h_events = []
    width = dec.n_open
    for j in range(b - 1, -1, -1):
        h_events.append((CUP, width + (b - 1 - j)))
    for pos, _, _ in dec.handle_cups:
        h_events.append((CUP, pos - 1))
    for side, i in dec.fact.pulls:
        h_events.append((CUP, i if side == "R" else i - 1))
    H = from_events(d.bottom, h_events)
    return E, p, H


def fact_letters(dec: TurbanDecomposition) -> list:
    return list(dec.fact.bottom)
