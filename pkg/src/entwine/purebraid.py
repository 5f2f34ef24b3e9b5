"""Braid words, Markov's pure-braid generators, and combing.

Conventions (used everywhere in this package):

* Strand positions are 1..n left to right; words read bottom to top, and
  w1 * w2 means "w1 first, w2 stacked on top".
* sigma_i is the positive crossing of positions (i, i+1): the strand at
  position i passes OVER while moving right.  With both strands oriented
  upward this is a crossing of sign +1.
* Permutations map starting position to ending position, so
  perm(w1 * w2) = perm(w2) o perm(w1).
* The pure-braid generator is Markov's

      s_{i,j} = sigma_{j-1} ... sigma_{i+1} . sigma_i^2 . sigma_{i+1}^{-1} ... sigma_{j-1}^{-1}

  (strand j dips behind the intermediate strands, double-crosses strand i,
  and returns the way it came, so it links nothing but strand i).  This is
  the form under which the twine evaluation formula reproduces the braided
  evaluation; the all-positive reading of the same letters would link the
  intermediate strands.

Combing uses the Artin action on the free group F_n = <g_1..g_n>:

    rho(sigma_i):      g_i -> g_i g_{i+1} g_i^{-1},   g_{i+1} -> g_i
    rho(sigma_i^{-1}): g_i -> g_{i+1},                g_{i+1} -> g_{i+1}^{-1} g_i g_{i+1}

with letters applied bottom-to-top.  For u in the kernel of "forget strand
n", rho(u)(g_n) reduces to A g_n A^{-1}, and deleting g_n from A gives the
s_{k,n}-word of u letter-for-letter (the Markov form satisfies
A(s_{k,n}) = g_k, which the tests pin down).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class BraidWord:
    """A word in sigma generators: letters (i, sign) with 1 <= i < n."""

    n: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, e in self.letters:
            if not (1 <= i < self.n):
                raise ValueError(f"generator index {i} out of range for n={self.n}")
            if e not in (1, -1):
                raise ValueError(f"bad exponent {e}")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.n != self.n:
            raise ValueError("strand count mismatch")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class PureBraidWord:
    """A word in the Markov generators s_{i,j}: letters (i, j, exp)."""

    n: int
    letters: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        for i, j, e in self.letters:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"bad generator s_{{{i},{j}}} for n={self.n}")
            if e not in (1, -1):
                raise ValueError(f"bad exponent {e}")

    def __mul__(self, other: "PureBraidWord") -> "PureBraidWord":
        if other.n != self.n:
            raise ValueError("strand count mismatch")
        return PureBraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "PureBraidWord":
        return PureBraidWord(self.n, tuple((i, j, -e) for i, j, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class RibbonPureBraid:
    """A pure braid word plus one integer framing per strand."""

    braid: PureBraidWord
    framing: tuple[int, ...] = field(default=())

    def __post_init__(self):
        f = self.framing if self.framing else tuple([0] * self.braid.n)
        object.__setattr__(self, "framing", tuple(f))
        if len(self.framing) != self.braid.n:
            raise ValueError("framing length != strand count")

    @property
    def n(self) -> int:
        return self.braid.n


def split_ribbon(r: RibbonPureBraid) -> tuple[PureBraidWord, tuple[int, ...]]:
    """Project onto (underlying pure braid, framing vector)."""
    return r.braid, r.framing


# ---------------------------------------------------------------------------
# permutations and purity


def permutation(b: BraidWord) -> tuple[int, ...]:
    """perm[p-1] = final position of the strand starting at position p."""
    pos = list(range(1, b.n + 1))  # pos[k] = strand currently at position k+1
    for i, _ in b.letters:
        pos[i - 1], pos[i] = pos[i], pos[i - 1]
    out = [0] * b.n
    for k, strand in enumerate(pos):
        out[strand - 1] = k + 1
    return tuple(out)


def is_pure(b: BraidWord) -> bool:
    return permutation(b) == tuple(range(1, b.n + 1))


# ---------------------------------------------------------------------------
# s-word <-> sigma-word


def expand_generator(n: int, i: int, j: int, exp: int) -> BraidWord:
    """s_{i,j}^{exp} as a sigma-word: strand j dips down to strand i, the
    band passing behind the intermediate strands both ways."""
    descent = [(k, 1) for k in range(j - 1, i, -1)]
    core = [(i, 1), (i, 1)]
    ascent = [(k, -1) for k in range(i + 1, j)]
    word = descent + core + ascent
    w = BraidWord(n, tuple(word))
    return w if exp == 1 else w.inverse()


def expand(p: PureBraidWord) -> BraidWord:
    out = BraidWord(p.n)
    for i, j, e in p.letters:
        out = out * expand_generator(p.n, i, j, e)
    return out


# ---------------------------------------------------------------------------
# free-group machinery for combing

Letter = tuple[int, int]  # (generator index, +-1)


def _reduce(word: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


def _inv_word(word: list[Letter]) -> list[Letter]:
    return [(g, -e) for g, e in reversed(word)]


def _apply_artin_letter(word: list[Letter], i: int, sign: int) -> list[Letter]:
    """Apply rho(sigma_i^{sign}) to a free-group word, reducing as we go."""
    out: list[Letter] = []

    def push(g, e):
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))

    for g, e in word:
        if sign == 1:
            if g == i:
                # g_i -> g_i g_{i+1} g_i^{-1}
                img = [(i, 1), (i + 1, 1), (i, -1)]
            elif g == i + 1:
                img = [(i, 1)]
            else:
                img = [(g, 1)]
        else:
            if g == i:
                img = [(i + 1, 1)]
            elif g == i + 1:
                # g_{i+1} -> g_{i+1}^{-1} g_i g_{i+1}
                img = [(i + 1, -1), (i, 1), (i + 1, 1)]
            else:
                img = [(g, 1)]
        if e == -1:
            img = _inv_word(img)
        for x in img:
            push(*x)
    return out


def _artin_image(b: BraidWord, gen: int) -> list[Letter]:
    """Reduced word rho(b)(g_gen), letters of b applied bottom-to-top."""
    word: list[Letter] = [(gen, 1)]
    for i, e in b.letters:
        word = _apply_artin_letter(word, i, e)
    return word


def _delete_strand(b: BraidWord, strand_pos: int) -> BraidWord:
    """Forget the strand that starts (and, if pure, ends) at strand_pos."""
    p = strand_pos
    out = []
    for i, e in b.letters:
        if i == p:
            p = i + 1
        elif i + 1 == p:
            p = i
        else:
            out.append((i if i + 1 < p else i - 1, e))
    return BraidWord(b.n - 1, tuple(out))


def comb(b: BraidWord) -> PureBraidWord:
    """Rewrite a pure sigma-word as a word in the s_{i,j}.

    No normal form is promised; equality with the input is semantic and is
    exercised by the model-evaluation tests.
    """
    if not is_pure(b):
        raise ValueError("braid word is not pure")
    letters: list[tuple[int, int, int]] = []
    cur = b
    for m in range(b.n, 1, -1):
        v = _delete_strand(cur, m)
        # kernel part: cur * embed(v)^{-1}; embedding leaves letter indices alone
        u = BraidWord(m, cur.letters + BraidWord(m, v.letters).inverse().letters)
        w = _artin_image(u, m)
        if w == [(m, 1)]:
            conj: list[Letter] = []
        else:
            if len(w) % 2 == 0:
                raise AssertionError("conjugate of a generator has odd reduced length")
            mid = len(w) // 2
            if w[mid] != (m, 1) or w[mid + 1:] != _inv_word(w[:mid]):
                raise AssertionError("image of g_n is not in conjugate form")
            conj = w[:mid]
        conj = _reduce([(g, e) for g, e in conj if g != m])
        # the conjugator in the kernel basis: rho(s_{k,m})(g_m) = g_k g_m g_k^-1
        letters.extend((g, m, e) for g, e in conj)
        cur = v
    return PureBraidWord(b.n, tuple(letters))


# ---------------------------------------------------------------------------
# Burau relations


def burau_relation_instances(n: int) -> list[tuple[PureBraidWord, PureBraidWord]]:
    """All instances of the defining pure-braid relations on n strands.

    Bu1 (two index patterns), both equalities of Bu2, and Bu3.
    """
    def w(*ls):
        return PureBraidWord(n, tuple(ls))

    out: list[tuple[PureBraidWord, PureBraidWord]] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                for l in range(k + 1, n + 1):
                    # disjoint or nested index patterns commute
                    if i < j < k < l or i < k < l < j:
                        out.append((w((i, j, 1), (k, l, 1)), w((k, l, 1), (i, j, 1))))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                a, b, c = (i, j, 1), (i, k, 1), (j, k, 1)
                out.append((w(a, b, c), w(b, c, a)))
                out.append((w(b, c, a), w(c, a, b)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    lhs = w((i, k, 1), (j, k, 1), (j, l, 1), (j, k, -1))
                    rhs = w((j, k, 1), (j, l, 1), (j, k, -1), (i, k, 1))
                    out.append((lhs, rhs))
    return out


# ---------------------------------------------------------------------------
# doubling a strand


def double_strand_sigma(b: BraidWord, i: int) -> BraidWord:
    """Replace strand i (by starting position) with two parallel copies."""
    if not (1 <= i <= b.n):
        raise ValueError("strand index out of range")
    p = i  # current position of the doubled strand (left copy at p, right at p+1)
    out: list[tuple[int, int]] = []
    for k, e in b.letters:
        if k == p:
            # doubled pair at (p, p+1) crosses the strand on its... pair is on the left
            # positions in the doubled braid: pair at (p, p+1), other strand at p+2
            out += [(p + 1, e), (p, e)]
            p = p + 1
        elif k + 1 == p:
            # other strand at k crosses the pair from the left
            out += [(k, e), (k + 1, e)]
            p = p - 1
        else:
            out.append((k if k + 1 < p else k + 1, e))
    return BraidWord(b.n + 1, tuple(out))


def double_strand(p: PureBraidWord, i: int) -> PureBraidWord:
    """Double strand i of a pure braid; output is recombed on n+1 strands."""
    return comb(double_strand_sigma(expand(p), i))


# ---------------------------------------------------------------------------
# text syntax: "s1 s1 s2^-1" (sigma words) and "s[1,3]^-1" (Markov words)

_SIGMA_RE = re.compile(r"^s(\d+)(?:\^(-?1))?$")
_SIJ_RE = re.compile(r"^s\[(\d+),(\d+)\](?:\^(-?1))?$")


def parse_braid_word(text: str, n: int | None = None) -> BraidWord | PureBraidWord:
    """Parse the CLI braid syntax; the two generator families cannot mix."""
    toks = text.split()
    sig: list[tuple[int, int]] = []
    sij: list[tuple[int, int, int]] = []
    for t in toks:
        m = _SIGMA_RE.match(t)
        if m:
            sig.append((int(m.group(1)), int(m.group(2) or 1)))
            continue
        m = _SIJ_RE.match(t)
        if m:
            sij.append((int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)))
            continue
        raise ValueError(f"bad braid token {t!r}")
    if sig and sij:
        raise ValueError("cannot mix sigma and s[i,j] generators in one word")
    if sij:
        width = max(j for _, j, _ in sij)
        return PureBraidWord(n or width, tuple(sij))
    width = max((i + 1 for i, _ in sig), default=1)
    return BraidWord(n or width, tuple(sig))


def format_braid_word(w: BraidWord | PureBraidWord) -> str:
    if isinstance(w, BraidWord):
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in w.letters)
    return " ".join(f"s[{i},{j}]" if e == 1 else f"s[{i},{j}]^-1" for i, j, e in w.letters)
