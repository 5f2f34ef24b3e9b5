"""Bounded deterministic generator for the frozen diagram corpus.

String links are built the way the factorization theorem says they all
arise: a pure braid on n + 2m strands with m diagrammatic contractions
wrapped around it, optionally shuffled by random ribbon moves.  Closed
links are plat-style closures of pure braids on 2k strands.  The corpus is
generated once with a fixed seed and checked in; regeneration is
reproducible via the CLI maintenance hook in this module.
"""

from __future__ import annotations

import random

from .diagram import (CAP, CUP, Diagram, XN, XP, classify, components,
                      from_events, linking_matrix, serialize)
from .moves import apply_move, find_moves
from .purebraid import BraidWord, is_pure


def random_pure_word(rng: random.Random, n: int, length: int,
                     tries: int = 4000) -> BraidWord:
    if n < 2:
        return BraidWord(n, ())
    for _ in range(tries):
        w = BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1)))
                               for _ in range(length)))
        if is_pure(w):
            return w
    # fall back to squares of generators
    word = []
    for _ in range(max(length // 2, 1)):
        i = rng.randint(1, n - 1)
        word += [(i, 1), (i, 1)]
    return BraidWord(n, tuple(word))


def braid_events(w: BraidWord):
    return [(XP if e == 1 else XN, i - 1) for i, e in w.letters]


def contracted_string_link(rng: random.Random, n: int, fingers: int,
                           crossings: int) -> Diagram:
    """A string link as m wrapped contractions of a pure braid."""
    letters = [(1, None)] * n
    contractions = []
    for _ in range(fingers):
        cur = len(letters)
        j = rng.randint(2, cur + 1)  # 1 < j < cur + 2
        c = letters[j - 2][1]
        letters[j - 1: j - 1] = [(-1, c), (1, c)]
        contractions.append(j)
    w = random_pure_word(rng, len(letters), crossings)
    events = braid_events(w)
    for j in reversed(contractions):
        events = [(CUP, j - 1)] + events + [(CAP, j - 2)]
    return from_events([(1, None)] * n, events)


def shuffled(rng: random.Random, d: Diagram, nmoves: int,
             max_events: int = 46) -> Diagram:
    for _ in range(nmoves):
        moves = find_moves(d, allow_growth=True, max_events=max_events)
        if not moves:
            break
        d = apply_move(d, rng.choice(moves))
    return d


def plat_closure(w: BraidWord, colors: "dict | None" = None) -> Diagram:
    """Sequential cups, the braid, sequential caps; 2k strands -> k circles."""
    if w.n % 2 != 0:
        raise ValueError("plat closure needs an even strand count")
    k = w.n // 2
    events = [(CUP, 2 * i) for i in range(k)]
    events += braid_events(w)
    events += [(CAP, 2 * i) for i in reversed(range(k))]
    d = from_events([], events)
    if colors:
        d = d.with_closed_colors(colors)
    return d


def framed_unknot(framing: int) -> Diagram:
    events = [(CUP, 0)]
    tok = XP if framing >= 0 else XN
    for _ in range(abs(framing)):
        events += [(CUP, 1), (tok, 0), (CAP, 1)]
    events += [(CAP, 0)]
    return from_events([], events)


def identity_link(n: int) -> Diagram:
    return from_events([(1, None)] * n, [])


def hopf_link(sign: int = 1) -> Diagram:
    tok = XP if sign > 0 else XN
    return plat_closure(BraidWord(4, ((2, 1 if sign > 0 else -1),) * 2))


def whitehead_candidates(rng: random.Random, count: int = 400):
    """Plat diagrams with two 0-framed components of linking number 0."""
    out = []
    for _ in range(count):
        w = random_pure_word(rng, 4, rng.choice((6, 8)))
        d = plat_closure(w)
        cm = components(d)
        if cm.n != 2:
            continue
        lk = linking_matrix(d)
        if lk[0][1] == 0 and lk[0][0] == 0 and lk[1][1] == 0:
            out.append(d)
    return out


def string_link_corpus(seed: int = 20260809) -> list:
    rng = random.Random(seed)
    out = []

    def add(name, d):
        out.append((name, d))

    for n in (1, 2, 3):
        add(f"id{n}", identity_link(n))
    # pure braid diagrams
    add("s12", from_events([(1, None)] * 2, braid_events(BraidWord(2, ((1, 1), (1, 1))))))
    add("s12inv", from_events([(1, None)] * 2, braid_events(BraidWord(2, ((1, -1), (1, -1))))))
    add("s13", from_events([(1, None)] * 3,
                           braid_events(BraidWord(3, ((2, 1), (1, 1), (1, 1), (2, -1))))))
    add("fulltwist3", from_events([(1, None)] * 3,
                                  braid_events(BraidWord(3, ((1, 1), (2, 1)) * 3))))
    # kinks and fingers
    add("kink+", from_events([(1, None)], [(CUP, 1), (XP, 0), (CAP, 1)]))
    add("kink-", from_events([(1, None)], [(CUP, 1), (XN, 0), (CAP, 1)]))
    add("kinkpair", from_events([(1, None)],
                                [(CUP, 1), (XP, 0), (CAP, 1), (CUP, 1), (XN, 0), (CAP, 1)]))
    add("finger", from_events([(1, None)], [(CUP, 1), (CAP, 0)]))
    add("leftfinger", from_events([(1, None)], [(CUP, 0), (CAP, 1)]))
    # clasp: two strands hooked with linking 0 (a finger through a loop)
    add("clasp0", contracted_string_link(random.Random(5), 2, 1, 4))
    # systematic contracted braids
    k = 0
    while k < 14:
        n = rng.choice((1, 2, 3))
        d = contracted_string_link(rng, n, rng.choice((0, 1, 1, 2)),
                                   rng.choice((2, 3, 4, 5, 6)))
        if len(d.atomize().slices) <= 40:
            add(f"rand{k}", d)
            k += 1
    # shuffled variants
    for k in range(6):
        n = rng.choice((1, 2, 3))
        base = contracted_string_link(rng, n, rng.choice((0, 1)), rng.choice((2, 4)))
        add(f"shuf{k}", shuffled(rng, base, 6))
    return out


def closed_corpus(seed: int = 20260810) -> list:
    rng = random.Random(seed)
    out = []

    def add(name, d):
        out.append((name, d))

    add("unknot0", framed_unknot(0))
    add("unknot+1", framed_unknot(1))
    add("unknot-1", framed_unknot(-1))
    add("unknot+2", framed_unknot(2))
    add("unlink2", plat_closure(BraidWord(4, ())))
    add("hopf+", hopf_link(1))          # general: the sharpness witness
    add("hopf-", hopf_link(-1))
    add("even-link2", plat_closure(BraidWord(4, ((2, 1),) * 4)))
    add("even-link2-neg", plat_closure(BraidWord(4, ((2, -1),) * 4)))
    add("trefoil", plat_closure(BraidWord(2, ((1, 1),) * 3)))
    wh = whitehead_candidates(rng, 500)
    if wh:
        add("whitehead0", wh[0])
    k = 0
    tries = 0
    while k < 8 and tries < 4000:
        tries += 1
        w = random_pure_word(rng, 4, rng.choice((4, 6, 8)))
        d = plat_closure(w)
        if components(d).n != 2 or len(d.atomize().slices) > 30:
            continue
        if classify(d) != "general":
            add(f"closed{k}", d)
            k += 1
    return out


def write_corpus(root: str):
    import os

    os.makedirs(os.path.join(root, "strings"), exist_ok=True)
    os.makedirs(os.path.join(root, "closed"), exist_ok=True)
    manifest = []
    for name, d in string_link_corpus():
        path = os.path.join(root, "strings", f"{name}.tangle")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialize(d))
        manifest.append(f"strings/{name}.tangle")
    for name, d in closed_corpus():
        path = os.path.join(root, "closed", f"{name}.tangle")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialize(d))
        manifest.append(f"closed/{name}.tangle")
    with open(os.path.join(root, "MANIFEST"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(manifest) + "\n")
    return manifest


def load_corpus(root: str, kind: str = "strings") -> list:
    import os

    from .diagram import parse_diagram

    out = []
    base = os.path.join(root, kind)
    for fname in sorted(os.listdir(base)):
        if fname.endswith(".tangle"):
            with open(os.path.join(base, fname), encoding="utf-8") as fh:
                out.append((fname[:-7], parse_diagram(fh.read())))
    return out
