"""Finite monoidal models and axiom checkers.

A Model is semisimple-free on words of simple objects: an object is a word
(tuple) of simple ids, its dimension the product of the simple dimensions,
and a morphism between words is a matrix over the model's ring.  Twines,
twists and braidings are supplied as word-indexed matrix tables; braidings
are given on simples and extended to words by the strict hexagon recursion.

Axiom displays are checked literally as matrix identities:

    DB0:  D_II = 1
    DB1:  (D_XY (x) 1_Z) D_{XY,Z} = (1_X (x) D_YZ) D_{X,YZ}
    DB2:  (D_{XY,Z} (x) 1_T)(1_X (x) D_YZ^-1 (x) 1_T)(1_X (x) D_{Y,ZT})
          commutes with its reverse-ordered product
    TW0:  t_I = 1
    TW1:  the ten-factor identity in four slots
    NAT:  naturality of the table against the duality morphisms

Functoriality is checked against the duality generators only; full
naturality over all morphisms is not finitely checkable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import prod

from .linalg import Matrix, kron_all
from .rings import Ring

Word = tuple[str, ...]


class ModelError(ValueError):
    pass


@dataclass
class Model:
    name: str
    ring: Ring
    simples: tuple[str, ...]
    dims: dict
    dual: dict
    e_map: dict    # simple -> Matrix, X (x) X* -> I
    h_map: dict    # simple -> Matrix, I -> X* (x) X
    eps_map: dict  # simple -> Matrix, X* (x) X -> I
    eta_map: dict  # simple -> Matrix, I -> X (x) X*
    twine_fn: "callable | None" = None        # (Word, Word) -> Matrix
    twist_fn: "callable | None" = None        # Word -> Matrix
    braidings: dict = field(default_factory=dict)  # name -> (simple, simple) -> Matrix
    _cache: dict = field(default_factory=dict, repr=False)

    # -- words -------------------------------------------------------------

    def dim(self, w: Word) -> int:
        return prod(self.dims[x] for x in w)

    def dual_word(self, w: Word) -> Word:
        return tuple(self.dual[x] for x in reversed(w))

    def check_word(self, w: Word):
        for x in w:
            if x not in self.dims:
                raise ModelError(f"undeclared color {x!r}")

    def identity(self, w: Word) -> Matrix:
        return Matrix.identity(self.ring, self.dim(w))

    # -- structure tables ----------------------------------------------------

    def twine(self, u: Word, v: Word) -> Matrix:
        key = ("D", u, v)
        if key not in self._cache:
            if self.twine_fn is None:
                raise ModelError(f"model {self.name} has no twine")
            self._cache[key] = self.twine_fn(u, v)
        return self._cache[key]

    def twine_inv(self, u: Word, v: Word) -> Matrix:
        key = ("Dinv", u, v)
        if key not in self._cache:
            self._cache[key] = self.twine(u, v).inverse()
        return self._cache[key]

    def twist(self, w: Word) -> Matrix:
        key = ("t", w)
        if key not in self._cache:
            if self.twist_fn is None:
                raise ModelError(f"model {self.name} has no twist")
            self._cache[key] = self.twist_fn(w)
        return self._cache[key]

    def twist_power(self, w: Word, k: int) -> Matrix:
        if k == 0:
            return self.identity(w)
        base = self.twist(w) if k > 0 else self.twist(w).inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out @ base
        return out

    def has_braiding(self, which: str = "c") -> bool:
        return which in self.braidings

    def braiding(self, u: Word, v: Word, which: str = "c") -> Matrix:
        """c_{u,v}: u (x) v -> v (x) u by the strict hexagon recursion."""
        key = ("c", which, u, v)
        if key in self._cache:
            return self._cache[key]
        if which not in self.braidings:
            raise ModelError(f"model {self.name} has no braiding {which!r}")
        if not u or not v:
            out = self.identity(u + v)
        elif len(u) == 1 and len(v) == 1:
            out = self.braidings[which](u[0], v[0])
        elif len(u) == 1:
            a, b, rest = u[0], v[0], v[1:]
            left = self.identity((b,)).kron(self.braiding(u, rest, which))
            right = self.braiding(u, (b,), which).kron(self.identity(rest))
            out = left @ right
        else:
            a, rest = u[0], u[1:]
            left = self.braiding((a,), v, which).kron(self.identity(rest))
            right = self.identity((a,)).kron(self.braiding(rest, v, which))
            out = left @ right
        self._cache[key] = out
        return out

    def double_braiding(self, u: Word, v: Word, which: str = "c",
                        which2: "str | None" = None) -> Matrix:
        """c'_{v,u} c_{u,v}; the plain double when which2 is omitted."""
        return self.braiding(v, u, which2 or which) @ self.braiding(u, v, which)

    # -- duality on words ----------------------------------------------------

    def word_e(self, w: Word) -> Matrix:
        """Pairing w (x) w* -> I, nested from the simple evaluations."""
        if not w:
            return Matrix.identity(self.ring, 1)
        a, rest = w[0], w[1:]
        inner = self.identity((a,)).kron(self.word_e(rest)).kron(self.identity((self.dual[a],)))
        return self.e_map[a] @ inner

    def word_h(self, w: Word) -> Matrix:
        if not w:
            return Matrix.identity(self.ring, 1)
        a, rest = w[0], w[1:]
        outer = self.identity(self.dual_word(rest)).kron(self.h_map[a]).kron(self.identity(rest))
        return outer @ self.word_h(rest)

    def word_eps(self, w: Word) -> Matrix:
        if not w:
            return Matrix.identity(self.ring, 1)
        a, rest = w[0], w[1:]
        inner = self.identity(self.dual_word(rest)).kron(self.eps_map[a]).kron(self.identity(rest))
        return self.word_eps(rest) @ inner

    def word_eta(self, w: Word) -> Matrix:
        if not w:
            return Matrix.identity(self.ring, 1)
        a, rest = w[0], w[1:]
        outer = self.identity((a,)).kron(self.word_eta(rest)).kron(self.identity((self.dual[a],)))
        return outer @ self.eta_map[a]

    # -- validation ----------------------------------------------------------

    def check_snakes(self):
        """Duality snake identities on each simple, both sides, both dualities."""
        for x in self.simples:
            xd = self.dual[x]
            ix = self.identity((x,))
            ixd = self.identity((xd,))
            e, h = self.e_map[x], self.h_map[x]
            eps, eta = self.eps_map[x], self.eta_map[x]
            if (e.kron(ix) @ ix.kron(h)) != ix:
                raise ModelError(f"right snake fails on {x}")
            if (ixd.kron(e) @ h.kron(ixd)) != ixd:
                raise ModelError(f"right snake(*) fails on {x}")
            if (ix.kron(eps) @ eta.kron(ix)) != ix:
                raise ModelError(f"left snake fails on {x}")
            if (eps.kron(ixd) @ ixd.kron(eta)) != ixd:
                raise ModelError(f"left snake(*) fails on {x}")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class CheckResult:
    axiom: str
    instance: str
    ok: bool


@dataclass
class Report:
    name: str
    results: list = field(default_factory=list)

    def add(self, axiom: str, instance, ok: bool):
        self.results.append(CheckResult(axiom, str(instance), bool(ok)))

    def extend(self, other: "Report"):
        self.results.extend(other.results)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.ok]

    def to_lines(self) -> list[str]:
        out = [f"AXIOM {r.axiom} {r.instance} {'PASS' if r.ok else 'FAIL'}"
               for r in self.results]
        nf = len(self.failures())
        out.append(f"SUMMARY {self.name} {'PASS' if nf == 0 else 'FAIL'} "
                   f"{len(self.results) - nf}/{len(self.results)}")
        return out


@dataclass(frozen=True)
class CheckScope:
    """Exhaustive word lengths per axiom slot, plus random longer samples."""

    pair_len: int = 2   # DB0/DB1/TW0 slots
    quad_len: int = 1   # DB2/TW1 slots
    samples: int = 100
    sample_len: int = 2
    seed: int = 0


def words_up_to(simples, max_len: int):
    out = [()]
    for n in range(1, max_len + 1):
        out.extend(itertools.product(simples, repeat=n))
    return out


def _sample_words(rng, simples, max_len, count, arity):
    for _ in range(count):
        yield tuple(tuple(rng.choice(simples) for _ in range(rng.randint(0, max_len)))
                    for _ in range(arity))


def _word_str(*ws: Word) -> str:
    return "(" + ";".join(",".join(w) or "I" for w in ws) + ")"


# ---------------------------------------------------------------------------
# twine axioms


def _db1_holds(m: Model, D, x, y, z) -> bool:
    lhs = D(x, y).kron(m.identity(z)) @ D(x + y, z)
    rhs = m.identity(x).kron(D(y, z)) @ D(x, y + z)
    return lhs == rhs


def _db2_holds(m: Model, D, x, y, z, t) -> bool:
    ix, it = m.identity(x), m.identity(t)
    a = D(x + y, z).kron(it)
    b = ix.kron(D(y, z).inverse()).kron(it)
    c = ix.kron(D(y, z + t))
    return a @ b @ c == c @ b @ a


def _naturality_instances(m: Model, rng, count):
    """Sampled (word-with-pair, cap morphism, reduced word) triples."""
    for _ in range(count):
        a = tuple(rng.choice(m.simples) for _ in range(rng.randint(0, 1)))
        b = tuple(rng.choice(m.simples) for _ in range(rng.randint(0, 1)))
        x = rng.choice(m.simples)
        big = a + (x, m.dual[x]) + b
        cap = kron_all(m.ring, [m.identity(a), self_e(m, x), m.identity(b)])
        yield big, cap, a + b


def self_e(m: Model, x: str) -> Matrix:
    return m.e_map[x]


def check_twine_axioms(m: Model, twine=None, scope: CheckScope = CheckScope()) -> Report:
    D = twine or m.twine
    rep = Report(f"twine[{m.name}]")
    rng = random.Random(scope.seed)
    one = Matrix.identity(m.ring, 1)

    rep.add("DB0", "(I;I)", D((), ()) == one)

    pairs = words_up_to(m.simples, scope.pair_len)
    for x, y, z in itertools.product(pairs, repeat=3):
        rep.add("DB1", _word_str(x, y, z), _db1_holds(m, D, x, y, z))
    quads = words_up_to(m.simples, scope.quad_len)
    for x, y, z, t in itertools.product(quads, repeat=4):
        rep.add("DB2", _word_str(x, y, z, t), _db2_holds(m, D, x, y, z, t))
    for x, y, z in _sample_words(rng, m.simples, scope.sample_len, scope.samples, 3):
        rep.add("DB1", _word_str(x, y, z), _db1_holds(m, D, x, y, z))
    for x, y, z, t in _sample_words(rng, m.simples, scope.sample_len,
                                    max(scope.samples // 4, 1), 4):
        rep.add("DB2", _word_str(x, y, z, t), _db2_holds(m, D, x, y, z, t))

    for w in words_up_to(m.simples, scope.pair_len)[: 8]:
        try:
            D(w, w).inverse()
            rep.add("INV", _word_str(w, w), True)
        except ZeroDivisionError:
            rep.add("INV", _word_str(w, w), False)

    for big, cap, small in _naturality_instances(m, rng, 8):
        v = (rng.choice(m.simples),)
        lhs = cap.kron(m.identity(v)) @ D(big, v)
        rhs = D(small, v) @ cap.kron(m.identity(v))
        lhs2 = m.identity(v).kron(cap) @ D(v, big)
        rhs2 = D(v, small) @ m.identity(v).kron(cap)
        rep.add("NAT", _word_str(big, v), lhs == rhs and lhs2 == rhs2)
    return rep


# ---------------------------------------------------------------------------
# twist axioms


def _tw1_holds(m: Model, T, x, y, z, t) -> bool:
    def th(w):
        return T(w)

    def thi(w):
        return T(w).inverse()

    ixy = m.identity(x + y)
    izt = m.identity(z + t)
    ix, it = m.identity(x), m.identity(t)
    f1 = thi(x + y).kron(izt)
    f2 = th(x + y + z).kron(it)
    f3 = ix.kron(thi(y + z)).kron(it)
    f4 = ix.kron(th(y + z + t))
    f5 = ixy.kron(thi(z + t))
    lhs = f1 @ f2 @ f3 @ f4 @ f5
    rhs = f5 @ f4 @ f3 @ f2 @ f1
    return lhs == rhs


def check_twist_axioms(m: Model, twist=None, scope: CheckScope = CheckScope()) -> Report:
    T = twist or m.twist
    rep = Report(f"twist[{m.name}]")
    rng = random.Random(scope.seed)
    rep.add("TW0", "(I)", T(()) == Matrix.identity(m.ring, 1))
    quads = words_up_to(m.simples, scope.quad_len)
    for x, y, z, t in itertools.product(quads, repeat=4):
        rep.add("TW1", _word_str(x, y, z, t), _tw1_holds(m, T, x, y, z, t))
    for x, y, z, t in _sample_words(rng, m.simples, scope.sample_len,
                                    max(scope.samples // 4, 1), 4):
        rep.add("TW1", _word_str(x, y, z, t), _tw1_holds(m, T, x, y, z, t))
    for w in words_up_to(m.simples, 1):
        try:
            T(w).inverse()
            rep.add("INV", _word_str(w), True)
        except ZeroDivisionError:
            rep.add("INV", _word_str(w), False)
    return rep


def twine_from_twist(m: Model, twist=None):
    """D_{X,Y} = (t_X^-1 (x) t_Y^-1) t_{XY}, as a word-indexed table."""
    T = twist or m.twist
    cache: dict = {}
    inv_cache: dict = {}

    def tinv(w: Word) -> Matrix:
        if w not in inv_cache:
            inv_cache[w] = T(w).inverse()
        return inv_cache[w]

    def D(u: Word, v: Word) -> Matrix:
        key = (u, v)
        if key not in cache:
            cache[key] = tinv(u).kron(tinv(v)) @ T(u + v)
        return cache[key]

    return D


def front_back(m: Model, twine, x: Word, y: Word, z: Word):
    """(D^f, D^b); raises if the two defining expressions of either disagree."""
    D = twine
    iz, ix = m.identity(z), m.identity(x)
    df = D(x, y).inverse().kron(iz) @ D(x, y + z)
    df2 = D(x + y, z) @ ix.kron(D(y, z).inverse())
    db = ix.kron(D(y, z).inverse()) @ D(x + y, z)
    db2 = D(x, y + z) @ D(x, y).inverse().kron(iz)
    if df != df2:
        raise ModelError(f"front expressions disagree at {_word_str(x, y, z)}")
    if db != db2:
        raise ModelError(f"back expressions disagree at {_word_str(x, y, z)}")
    return df, db


# ---------------------------------------------------------------------------
# self-duality (per simple object)


def dual_morphism(m: Model, x: str, f: Matrix) -> Matrix:
    """Right transpose X* -> X* of f: X -> X via (e, h)."""
    ixd = m.identity((m.dual[x],))
    return ixd.kron(m.e_map[x]) @ ixd.kron(f).kron(ixd) @ m.h_map[x].kron(ixd)


def check_self_dual(m: Model, twist=None, scope: CheckScope = CheckScope()) -> Report:
    T = twist or m.twist
    D = twine_from_twist(m, T)
    rep = Report(f"selfdual[{m.name}]")
    for x in m.simples:
        xd = m.dual[x]
        wx, wxd = (x,), (xd,)
        tx, txd = T(wx), T(wxd)
        i_ok = txd == dual_morphism(m, x, tx)
        ii = tx @ tx == (m.e_map[x] @ D(wx, wxd).inverse()).kron(m.identity(wx)) \
            @ m.identity(wx).kron(m.h_map[x])
        iip = txd @ txd == m.identity(wxd).kron(m.e_map[x]) \
            @ (D(wxd, wx).inverse()).kron(m.identity(wxd)) \
            @ m.h_map[x].kron(m.identity(wxd))
        rep.add("SD-i", f"({x})", i_ok)
        rep.add("SD-ii", f"({x})", ii)
        rep.add("SD-ii'", f"({x})", iip)
        rep.add("SD-equiv", f"({x})", i_ok == ii == iip)
    return rep


# ---------------------------------------------------------------------------
# sphericity and interchange


def check_sphericity_interchange(m: Model, twist=None, strength: str = "strong",
                                 samples=None, scope: CheckScope = CheckScope()) -> Report:
    """Closure-direction (Sph) and closure-order/position (Int) independence.

    Each sample is a diagram with closed components threaded through a
    string link, with an extra endomorphism insertion on the closed strand
    in the strong variant.  Sph compares the evaluation re-attaching each
    closed component with a right-pointing against a left-pointing min;
    Int permutes the processing order of the closed components.
    """
    from .evaluator import default_sphint_samples, eval_turban, eval_turban_left

    rep = Report(f"sphint[{m.name}]")
    if samples is None:
        samples = default_sphint_samples(m, seed=scope.seed,
                                         strong=(strength == "strong"))
    for tag, d, coloring in samples:
        base = eval_turban(m, d, coloring)
        flipped = eval_turban_left(m, d, coloring)
        rep.add("Sph", tag, base.matrix == flipped.matrix)
        from .diagram import components
        closed = [c for c in range(1, components(d).n + 1)
                  if components(d).is_closed(c)]
        if len(closed) >= 2:
            perm = eval_turban(m, d, coloring, handle_order=list(reversed(closed)))
            rep.add("Int", tag, base.matrix == perm.matrix)
    return rep
