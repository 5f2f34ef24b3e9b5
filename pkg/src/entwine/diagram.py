"""Sliced oriented tangle diagrams.

A diagram is a bottom boundary word plus a stack of slices read bottom to
top; each slice is a row of tokens from

    |    identity strand        (1 in, 1 out)
    X+   crossing, the strand entering bottom-left passes over   (2 in, 2 out)
    X-   crossing, the strand entering bottom-left passes under  (2 in, 2 out)
    A    local max (cap)        (2 in, 0 out)
    V    local min (cup)        (0 in, 2 out)

Boundary letters are (sign, color) pairs; sign +1 means the strand is
oriented upward at that point.  Orientations of interior segments are
propagated from the boundary; a closed component is oriented so that its
scan-first cup is right-pointing, i.e. produces letters (-,+).

Crossing sign convention: a crossing is positive iff rotating the
over-strand's direction by +90 degrees (counterclockwise) gives the
under-strand's direction.  Equivalently sign = t * s1 * s2 where t = +-1 for
the X+/X- token and s1, s2 are the letter signs at the two lower ports.
With both strands upward, X+ is the positive crossing.

The linking matrix is integer-valued: entry (i,j), i != j, is the full
signed crossing sum between components i and j (not halved); entry (i,i) is
the signed self-crossing sum (blackboard framing).  A diagram is *turban* if
all off-diagonal entries are even, *even* if all entries are.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

Letter = tuple[int, "str | None"]  # (sign, color)

ID, XP, XN, CAP, CUP = "|", "X+", "X-", "A", "V"
TOKENS = (ID, XP, XN, CAP, CUP)
ARITY = {ID: (1, 1), XP: (2, 2), XN: (2, 2), CAP: (2, 0), CUP: (0, 2)}


class DiagramError(ValueError):
    pass


def opposite(letter: Letter) -> Letter:
    return (-letter[0], letter[1])


@dataclass(frozen=True)
class Diagram:
    bottom: tuple[Letter, ...] = ()
    slices: tuple[tuple[str, ...], ...] = ()
    closed_colors: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        for s in self.slices:
            if not s:
                raise DiagramError("empty slice")
            for t in s:
                if t not in TOKENS:
                    raise DiagramError(f"malformed token {t!r}")
        widths(self)  # raises on width mismatch

    @property
    def width(self) -> int:
        return len(self.bottom)

    def top(self) -> tuple[Letter, ...]:
        return analyze(self).top

    def closed_color_map(self) -> dict[int, str]:
        return dict(self.closed_colors)

    def with_closed_colors(self, colors: dict[int, str]) -> "Diagram":
        return Diagram(self.bottom, self.slices, tuple(sorted(colors.items())))

    def atomize(self) -> "Diagram":
        bottom, events = to_events(self)
        return from_events(bottom, events, self.closed_colors)


@functools.lru_cache(maxsize=None)
def widths(d: Diagram) -> tuple[int, ...]:
    w = [len(d.bottom)]
    for k, s in enumerate(d.slices):
        fan_in = sum(ARITY[t][0] for t in s)
        fan_out = sum(ARITY[t][1] for t in s)
        if fan_in != w[-1]:
            raise DiagramError(f"width mismatch at slice {k}: {fan_in} inputs vs {w[-1]} strands")
        w.append(fan_out)
    return tuple(w)


# ---------------------------------------------------------------------------
# analysis: strand graph, orientation, components, crossings


@dataclass(frozen=True)
class Crossing:
    slice_index: int
    pos: int          # input position of the crossing in its slice
    token: str
    ports: tuple[tuple[int, int], tuple[int, int]]  # lower-left, lower-right


@dataclass(frozen=True)
class ComponentMap:
    n: int
    comp_of: dict  # port -> component id (1-based)
    closed: tuple[bool, ...]
    bottoms: tuple[tuple[int, ...], ...]  # bottom endpoint positions per comp
    tops: tuple[tuple[int, ...], ...]
    colors: tuple["str | None", ...]

    def color(self, c: int):
        return self.colors[c - 1]

    def is_closed(self, c: int) -> bool:
        return self.closed[c - 1]


@dataclass(frozen=True)
class Analysis:
    widths: tuple[int, ...]
    letters: dict  # port -> Letter
    components: ComponentMap
    crossings: tuple[Crossing, ...]
    caps: tuple[tuple[int, int], ...]  # (slice, input position)
    cups: tuple[tuple[int, int], ...]  # (slice, output position)
    top: tuple[Letter, ...]


@functools.lru_cache(maxsize=None)
def analyze(d: Diagram) -> Analysis:
    w = widths(d)
    L = len(d.slices)
    edges: dict = {(k, p): [] for k in range(L + 1) for p in range(w[k])}
    crossings: list[Crossing] = []
    caps: list[tuple[int, int]] = []
    cups: list[tuple[int, int]] = []

    for k, s in enumerate(d.slices):
        i = o = 0
        for t in s:
            if t == ID:
                edges[(k, i)].append(((k + 1, o), "thru"))
                edges[(k + 1, o)].append(((k, i), "thru"))
                i += 1
                o += 1
            elif t in (XP, XN):
                edges[(k, i)].append(((k + 1, o + 1), "thru"))
                edges[(k + 1, o + 1)].append(((k, i), "thru"))
                edges[(k, i + 1)].append(((k + 1, o), "thru"))
                edges[(k + 1, o)].append(((k, i + 1), "thru"))
                crossings.append(Crossing(k, i, t, ((k, i), (k, i + 1))))
                i += 2
                o += 2
            elif t == CAP:
                edges[(k, i)].append(((k, i + 1), "turn"))
                edges[(k, i + 1)].append(((k, i), "turn"))
                caps.append((k, i))
                i += 2
            elif t == CUP:
                edges[(k + 1, o)].append(((k + 1, o + 1), "turn"))
                edges[(k + 1, o + 1)].append(((k + 1, o), "turn"))
                cups.append((k, o))
                o += 2

    # connected components of the strand graph
    comp_of: dict = {}
    raw_comps: list[list] = []
    for port in edges:
        if port in comp_of:
            continue
        idx = len(raw_comps)
        stack = [port]
        comp_of[port] = idx
        members = []
        while stack:
            p = stack.pop()
            members.append(p)
            for q, _ in edges[p]:
                if q not in comp_of:
                    comp_of[q] = idx
                    stack.append(q)
        raw_comps.append(members)

    # endpoints and numbering
    infos = []
    for idx, members in enumerate(raw_comps):
        bots = sorted(p for (k, p) in members if k == 0)
        tops = sorted(p for (k, p) in members if k == L)
        if L == 0:
            # a bare strand with no slices is open: bottom and top coincide
            tops = bots
        closed = not bots and not tops
        if bots:
            key = (0, bots[0], 0)
        else:
            # scan from the top for components with no bottom endpoint
            best = min((L - k, p) for (k, p) in members)
            key = (1, best[0], best[1])
        infos.append((key, idx, closed, tuple(bots), tuple(tops)))
    infos.sort(key=lambda x: x[0])
    renumber = {idx: c + 1 for c, (_, idx, _, _, _) in enumerate(infos)}
    comp_of = {p: renumber[i] for p, i in comp_of.items()}
    n = len(infos)
    closed_flags = [False] * n
    bot_list: list[tuple[int, ...]] = [()] * n
    top_list: list[tuple[int, ...]] = [()] * n
    for key, idx, closed, bots, tops in infos:
        c = renumber[idx]
        closed_flags[c - 1] = closed
        bot_list[c - 1] = bots
        top_list[c - 1] = tops

    # orientation propagation
    letters: dict = {}
    closed_colors = dict(d.closed_colors)
    for c in range(1, n + 1):
        if closed_colors.get(c) is not None and not closed_flags[c - 1]:
            raise DiagramError(f"closed-color entry for open component {c}")
    seeds: dict = {}
    for p, letter in enumerate(d.bottom):
        if letter[0] not in (1, -1):
            raise DiagramError(f"bad letter sign {letter!r}")
        seeds[(0, p)] = letter
    anchor_of: dict[int, tuple[int, int]] = {}
    for (k, o) in sorted(cups):
        port = (k + 1, o)
        c = comp_of[port]
        if closed_flags[c - 1] and c not in anchor_of:
            anchor_of[c] = port
            seeds[port] = (-1, closed_colors.get(c))
    for c in range(1, n + 1):
        if closed_flags[c - 1] and c not in anchor_of:
            raise DiagramError("closed component without a cup cannot exist")

    for c in range(1, n + 1):
        members = [p for p, cc in comp_of.items() if cc == c]
        comp_seeds = [p for p in members if p in seeds]
        if not comp_seeds:
            # open component with both endpoints on top: orient it downward
            # at its leftmost top endpoint (matches the right-handed cup
            # convention, where the left leg of a cup is the dual one)
            start = (L, top_list[c - 1][0])
            seeds[start] = (-1, None)
            comp_seeds = [start]
        start = comp_seeds[0]
        letters[start] = seeds[start]
        stack = [start]
        seen = {start}
        while stack:
            p = stack.pop()
            s, col = letters[p]
            for q, kind in edges[p]:
                ls = s if kind == "thru" else -s
                if q in seen:
                    if letters[q][0] != ls:
                        raise DiagramError("orientation clash (cap/cup signs)")
                    continue
                seen.add(q)
                letters[q] = (ls, col)
                stack.append(q)
        for p in comp_seeds[1:]:
            if letters[p][0] != seeds[p][0]:
                raise DiagramError("orientation clash at boundary")

    # colors: unique non-None per component
    colors: list = [None] * n
    for p, (s, col) in list(seeds.items()):
        c = comp_of[p]
        if col is not None:
            if colors[c - 1] is None:
                colors[c - 1] = col
            elif colors[c - 1] != col:
                raise DiagramError(f"color clash on component {c}")
    for c, col in closed_colors.items():
        if not (1 <= c <= n):
            raise DiagramError(f"closed-color entry for missing component {c}")
        if col is not None:
            if colors[c - 1] is None:
                colors[c - 1] = col
            elif colors[c - 1] != col:
                raise DiagramError(f"color clash on component {c}")
    letters = {p: (s, colors[comp_of[p] - 1]) for p, (s, _) in letters.items()}

    cmap = ComponentMap(n, comp_of, tuple(closed_flags), tuple(bot_list),
                        tuple(top_list), tuple(colors))
    top = tuple(letters[(L, p)] for p in range(w[L]))
    return Analysis(w, letters, cmap, tuple(crossings), tuple(caps), tuple(cups), top)


def components(d: Diagram) -> ComponentMap:
    return analyze(d).components


def crossing_sign(d: Diagram, x: Crossing) -> int:
    a = analyze(d)
    t = 1 if x.token == XP else -1
    s1 = a.letters[x.ports[0]][0]
    s2 = a.letters[x.ports[1]][0]
    return t * s1 * s2


def linking_matrix(d: Diagram) -> tuple[tuple[int, ...], ...]:
    a = analyze(d)
    n = a.components.n
    m = [[0] * n for _ in range(n)]
    for x in a.crossings:
        ci = a.components.comp_of[x.ports[0]]
        cj = a.components.comp_of[x.ports[1]]
        s = crossing_sign(d, x)
        if ci == cj:
            m[ci - 1][ci - 1] += s
        else:
            m[ci - 1][cj - 1] += s
            m[cj - 1][ci - 1] += s
    return tuple(tuple(r) for r in m)


def classify(d: Diagram) -> str:
    """turban: off-diagonal linking even; even: everything even.

    For a pair of closed components the geometric linking number is half
    the signed crossing sum (the sum itself is always even), and the parity
    condition is on that number; for pairs involving an open component the
    sum is the linking datum itself.
    """
    m = linking_matrix(d)
    cmap = analyze(d).components
    n = len(m)

    def off(i, j):
        v = m[i][j]
        if cmap.closed[i] and cmap.closed[j]:
            if v % 2 != 0:
                raise DiagramError("odd crossing sum between closed components")
            v //= 2
        return v

    off_even = all(off(i, j) % 2 == 0 for i in range(n) for j in range(n) if i != j)
    if not off_even:
        return "general"
    if all(m[i][i] % 2 == 0 for i in range(n)):
        return "even"
    return "turban"


# ---------------------------------------------------------------------------
# composition and tensor


def _inherit_closed_colors(parts, composite: Diagram) -> Diagram:
    """parts: list of (diagram, port_map) with port_map old-port -> new-port."""
    comp_a = analyze(composite)
    out: dict[int, str] = dict(composite.closed_colors)
    for part, port_map in parts:
        pa = analyze(part)
        for c in range(1, pa.components.n + 1):
            col = pa.components.colors[c - 1]
            if col is None:
                continue
            rep = next(p for p, cc in pa.components.comp_of.items() if cc == c)
            nc = comp_a.components.comp_of[port_map(rep)]
            if not comp_a.components.is_closed(nc):
                continue
            if out.get(nc, col) != col:
                raise DiagramError("color clash while composing")
            out[nc] = col
    return composite.with_closed_colors(out)


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """Stack d2 on top of d1; requires top(d1) == bottom(d2)."""
    if analyze(d1).top != d2.bottom:
        raise DiagramError("boundary mismatch in compose")
    raw = Diagram(d1.bottom, d1.slices + d2.slices)
    shift = len(d1.slices)
    return _inherit_closed_colors(
        [(d1, lambda p: p), (d2, lambda p: (p[0] + shift, p[1]))], raw)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Place d2 to the right of d1, padding the shorter stack with identities."""
    w1, w2 = widths(d1), widths(d2)
    s1, s2 = len(d1.slices), len(d2.slices)
    depth = max(s1, s2)

    def slice_at(d, w, s, k):
        if k < s:
            return d.slices[k]
        return (ID,) * w[s] if w[s] else ()

    rows = []
    for k in range(depth):
        left = slice_at(d1, w1, s1, k)
        right = slice_at(d2, w2, s2, k)
        row = left + right
        if not row:
            continue
        rows.append(row)
    raw = Diagram(d1.bottom + d2.bottom, tuple(rows))

    # port maps; absorbed empty rows can only occur when both sides are width 0
    def map1(p):
        k, q = p
        return (min(k, len(raw.slices)), q)

    def map2(p):
        k, q = p
        kk = min(k, len(raw.slices))
        return (kk, q + w1[min(k, s1)])

    return _inherit_closed_colors([(d1, map1), (d2, map2)], raw)


# ---------------------------------------------------------------------------
# events: the atomic internal representation used by rewrites


def to_events(d: Diagram) -> tuple[list[Letter], list[tuple[str, int]]]:
    """Expand slices left-to-right into single-token events.

    Within one slice the tokens act in parallel; firing them left to right
    with each event placed at its token's output position is equivalent.
    """
    events: list[tuple[str, int]] = []
    for s in d.slices:
        o = 0
        for t in s:
            if t != ID:
                events.append((t, o))
            o += ARITY[t][1]
    return list(d.bottom), events


def from_events(bottom, events, closed_colors=()) -> Diagram:
    rows = []
    w = len(bottom)
    for t, p in events:
        fi, fo = ARITY[t]
        if p < 0 or p + fi > w:
            raise DiagramError(f"event {t} at {p} out of range for width {w}")
        rows.append((ID,) * p + (t,) + (ID,) * (w - p - fi))
        w += fo - fi
    return Diagram(tuple(bottom), tuple(rows), tuple(closed_colors))


# ---------------------------------------------------------------------------
# doubling a component


def double_component(d: Diagram, comp: int) -> Diagram:
    """Replace component comp by two blackboard-parallel copies."""
    da = d.atomize()
    a = analyze(da)
    if not (1 <= comp <= a.components.n):
        raise DiagramError(f"no component {comp}")
    in_c = {p for p, c in a.components.comp_of.items() if c == comp}

    def offset(level: int, pos: int) -> int:
        return sum(1 for q in range(pos) if (level, q) in in_c)

    def newpos(level: int, pos: int) -> int:
        return pos + offset(level, pos)

    new_bottom: list[Letter] = []
    for p, letter in enumerate(da.bottom):
        new_bottom.append(letter)
        if (0, p) in in_c:
            new_bottom.append(letter)

    bottom0, events = to_events(da)
    out: list[tuple[str, int]] = []
    level_map = [0]  # old level k -> new level after doubling
    for k, (t, p) in enumerate(events):
        lvl = k  # atomic: event k maps level k to k+1
        if t in (XP, XN):
            a_in = (lvl, p) in in_c
            b_in = (lvl, p + 1) in in_c
            q = newpos(lvl, p)
            if a_in and b_in:
                out += [(t, q + 1), (t, q), (t, q + 2), (t, q + 1)]
            elif a_in:
                out += [(t, q + 1), (t, q)]
            elif b_in:
                out += [(t, q), (t, q + 1)]
            else:
                out.append((t, q))
        elif t == CAP:
            q = newpos(lvl, p)
            if (lvl, p) in in_c:
                out += [(CAP, q + 1), (CAP, q)]
            else:
                out.append((CAP, q))
        elif t == CUP:
            q = newpos(lvl + 1, p)
            if (lvl + 1, p) in in_c:
                out += [(CUP, q), (CUP, q + 1)]
            else:
                out.append((CUP, q))
        level_map.append(len(out))
    raw = from_events(new_bottom, out)

    def port_map(k, p):
        return (level_map[k], newpos(k, p))

    # closed colors: copies inherit the doubled component's color
    ra = analyze(raw)
    colors: dict[int, str] = {}
    for c in range(1, a.components.n + 1):
        col = a.components.colors[c - 1]
        if col is None or not a.components.is_closed(c):
            continue
        rep = next(p for p, cc in a.components.comp_of.items() if cc == c)
        k, p = rep
        q = newpos(k, p)
        targets = ((level_map[k], q), (level_map[k], q + 1)) if c == comp \
            else ((level_map[k], q),)
        for np_ in targets:
            nc = ra.components.comp_of.get(np_)
            if nc is not None and ra.components.is_closed(nc):
                colors[nc] = col
    return raw.with_closed_colors(colors)


# ---------------------------------------------------------------------------
# file format


def parse_letter(tok: str) -> Letter:
    if not tok or tok[0] not in "+-":
        raise DiagramError(f"malformed letter {tok!r}")
    sign = 1 if tok[0] == "+" else -1
    color = tok[1:] or None
    return (sign, color)


def show_letter(letter: Letter) -> str:
    s, c = letter
    return ("+" if s == 1 else "-") + (c or "")


def parse_diagram(text: str) -> Diagram:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != "tangle v1":
        raise DiagramError("missing 'tangle v1' header")
    bottom: tuple[Letter, ...] | None = None
    rows: list[tuple[str, ...]] = []
    closed: list[tuple[int, str]] = []
    for line in lines[1:]:
        if line.startswith("bottom:"):
            if bottom is not None:
                raise DiagramError("duplicate bottom line")
            toks = line[len("bottom:"):].split()
            bottom = tuple(parse_letter(t) for t in toks)
        elif line.startswith("slice:"):
            toks = tuple(line[len("slice:"):].split())
            for t in toks:
                if t not in TOKENS:
                    raise DiagramError(f"malformed token {t!r}")
            rows.append(toks)
        elif line.startswith("closed"):
            head, _, name = line.partition(":")
            name = name.strip()
            try:
                k = int(head[len("closed"):].strip())
            except ValueError as exc:
                raise DiagramError(f"malformed closed line {line!r}") from exc
            if not name:
                raise DiagramError(f"missing color in {line!r}")
            closed.append((k, name))
        else:
            raise DiagramError(f"unrecognized line {line!r}")
    if bottom is None:
        raise DiagramError("missing bottom line")
    d = Diagram(bottom, tuple(rows), tuple(sorted(closed)))
    analyze(d)  # validate orientations and colors now
    return d


def serialize(d: Diagram) -> str:
    out = ["tangle v1"]
    out.append(("bottom: " + " ".join(show_letter(l) for l in d.bottom)).rstrip())
    for s in d.slices:
        out.append("slice: " + " ".join(s))
    for k, name in sorted(d.closed_colors):
        out.append(f"closed {k}: {name}")
    return "\n".join(out) + "\n"


def render_ascii(d: Diagram) -> str:
    """Bottom-to-top ASCII rendering, one line per slice (top line first)."""
    cell = 3
    lines = []
    for k in range(len(d.slices) - 1, -1, -1):
        row = []
        for t in d.slices[k]:
            width = cell * max(ARITY[t][0], ARITY[t][1])
            row.append({ID: "|", XP: "X+", XN: "X-", CAP: "/^\\", CUP: "\\_/"}[t].center(width))
        lines.append("".join(row).rstrip())
    lines.append("".join(show_letter(l).center(cell) for l in d.bottom) or "(empty)")
    return "\n".join(lines)
