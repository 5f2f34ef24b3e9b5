"""Concrete model constructors and structure-constant checkers.

* group-graded models: one 1-dimensional simple per group element; twines
  are 2-cocycles, twists are maps with t(e) = 1, braidings bicharacters.
* R-matrix models: one simple of dimension d with a braiding matrix and a
  self-dual pairing (the bundled instance is the Temperley-Lieb braiding
  c = A + A^{-1} h.e with loop value -A^2 - A^{-2} and twist -A^3).
* infinitesimal models: scalars extended to dual numbers, D = 1 + eps d.
* bialgebra structure constants over a prime field with twinor / twistor /
  cotwinor / cotwistor axiom checkers (numpy-backed, exact mod p).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from .category import Model, ModelError, Report
from .linalg import Matrix
from .rings import DualNumbers, PrimeField, QQ, Ring, ring_from_name


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupTable:
    elements: tuple[str, ...]
    mult: dict
    unit: str

    def __post_init__(self):
        els = self.elements
        if self.unit not in els:
            raise ModelError("unit not in element list")
        for a, b in itertools.product(els, els):
            if (a, b) not in self.mult or self.mult[(a, b)] not in els:
                raise ModelError("multiplication table incomplete")
        for a in els:
            if self.mult[(self.unit, a)] != a or self.mult[(a, self.unit)] != a:
                raise ModelError("unit law fails")
        for a, b, c in itertools.product(els, els, els):
            if self.mult[(self.mult[(a, b)], c)] != self.mult[(a, self.mult[(b, c)])]:
                raise ModelError("associativity fails")
        for a in els:
            if not any(self.mult[(a, b)] == self.unit for b in els):
                raise ModelError(f"no inverse for {a}")

    def inv(self, a: str) -> str:
        for b in self.elements:
            if self.mult[(a, b)] == self.unit:
                return b
        raise ModelError(f"no inverse for {a}")

    def product(self, word) -> str:
        out = self.unit
        for x in word:
            out = self.mult[(out, x)]
        return out

    @staticmethod
    def cyclic(n: int) -> "GroupTable":
        els = tuple(str(i) for i in range(n))
        mult = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
        return GroupTable(els, mult, "0")

    @staticmethod
    def product_group(g1: "GroupTable", g2: "GroupTable") -> "GroupTable":
        els = tuple(a + b for a in g1.elements for b in g2.elements)
        la, lb = len(g1.elements[0]), len(g2.elements[0])
        mult = {}
        for x in els:
            for y in els:
                mult[(x, y)] = g1.mult[(x[:la], y[:la])] + g2.mult[(x[la:], y[la:])]
        return GroupTable(els, mult, g1.unit + g2.unit)


def check_cocycle(G: GroupTable, ring: Ring, delta: dict) -> Report:
    """delta(e,e) = 1 and delta(g,h) delta(gh,k) = delta(h,k) delta(g,hk)."""
    rep = Report("cocycle")
    rep.add("COC0", "(e,e)", ring.eq(delta[(G.unit, G.unit)], ring.one))
    for g, h, k in itertools.product(G.elements, repeat=3):
        lhs = ring.mul(delta[(g, h)], delta[(G.mult[(g, h)], k)])
        rhs = ring.mul(delta[(h, k)], delta[(g, G.mult[(h, k)])])
        rep.add("COC1", f"({g},{h},{k})", ring.eq(lhs, rhs))
    return rep


def graded_model(G: GroupTable, ring: Ring, cocycle: "dict | None" = None,
                 twist: "dict | None" = None, bichar: "dict | None" = None,
                 bichar2: "dict | None" = None, name: str = "graded",
                 validate: bool = True) -> Model:
    """Graded model: simples k_g of dimension 1, dual k_g* = k_{g^-1}.

    The twine table is, in order of preference: the explicit cocycle, the
    double of the bicharacter, or the twist coboundary; words collapse to
    their group product throughout.
    """
    one = Matrix.identity(ring, 1)

    def scalar(v):
        return Matrix.scalar_matrix(ring, v)

    if validate:
        if twist is not None and not ring.eq(twist[G.unit], ring.one):
            raise ModelError("twist value at the unit is not 1")
        if cocycle is not None:
            r = check_cocycle(G, ring, cocycle)
            if not r.ok:
                raise ModelError(f"cocycle violation at {r.failures()[0].instance}")
        for b in (bichar, bichar2):
            if b is None:
                continue
            for g, h, k in itertools.product(G.elements, repeat=3):
                gh = G.mult[(g, h)]
                if not ring.eq(b[(gh, k)], ring.mul(b[(g, k)], b[(h, k)])) or \
                        not ring.eq(b[(k, gh)], ring.mul(b[(k, g)], b[(k, h)])):
                    raise ModelError("bicharacter law fails")

    table = None
    if cocycle is not None:
        table = cocycle
    elif bichar is not None:
        table = {(g, h): ring.mul(bichar[(g, h)], bichar[(h, g)])
                 for g in G.elements for h in G.elements}
    elif twist is not None:
        table = {(g, h): ring.mul(twist[G.mult[(g, h)]],
                                  ring.inv(ring.mul(twist[g], twist[h])))
                 for g in G.elements for h in G.elements}

    twine_fn = None
    if table is not None:
        twine_fn = lambda u, v: scalar(table[(G.product(u), G.product(v))])
    twist_fn = None
    if twist is not None:
        twist_fn = lambda w: scalar(twist[G.product(w)])

    braidings = {}
    if bichar is not None:
        braidings["c"] = lambda a, b: scalar(bichar[(a, b)])
    if bichar2 is not None:
        braidings["c2"] = lambda a, b: scalar(bichar2[(a, b)])

    m = Model(
        name=name, ring=ring, simples=G.elements,
        dims={g: 1 for g in G.elements},
        dual={g: G.inv(g) for g in G.elements},
        e_map={g: one for g in G.elements}, h_map={g: one for g in G.elements},
        eps_map={g: one for g in G.elements}, eta_map={g: one for g in G.elements},
        twine_fn=twine_fn, twist_fn=twist_fn, braidings=braidings,
    )
    m.group = G
    m.twine_table = table
    m.twist_table = dict(twist) if twist is not None else None
    if validate:
        m.check_snakes()
    return m


# ---------------------------------------------------------------------------
# R-matrix models


def rmatrix_model(ring: Ring, dim: int, c: Matrix, e_row: Matrix, h_col: Matrix,
                  twist: "Matrix | None" = None, c2: "Matrix | None" = None,
                  name: str = "rmatrix", validate: bool = True) -> Model:
    """One self-dual simple V of dimension d with braiding matrix c.

    The twine is the double braiding; the twist defaults to the closure
    (1 (x) e)(c (x) 1)(1 (x) h) when none is supplied.  The left duality is
    derived from the ribbon data: eps = e (t (x) 1) c, eta = (t (x) 1) c h.
    """
    V = "V"
    iV = Matrix.identity(ring, dim)

    def ybe_holds(cm):
        a = cm.kron(iV)
        b = iV.kron(cm)
        return a @ b @ a == b @ a @ b

    if validate and not ybe_holds(c):
        raise ModelError("Yang-Baxter equation fails")
    if validate and c2 is not None and not ybe_holds(c2):
        raise ModelError("Yang-Baxter equation fails for the second braiding")

    if twist is None:
        twist = iV.kron(e_row) @ c.kron(iV) @ iV.kron(h_col)
    try:
        twist.inverse()
    except ZeroDivisionError:
        raise ModelError("proposed twist is not invertible") from None

    eps = e_row @ twist.kron(iV) @ c
    eta = twist.kron(iV) @ c @ h_col

    braidings = {"c": lambda a, b: c}
    if c2 is not None:
        braidings["c2"] = lambda a, b: c2

    m = Model(
        name=name, ring=ring, simples=(V,), dims={V: dim}, dual={V: V},
        e_map={V: e_row}, h_map={V: h_col}, eps_map={V: eps}, eta_map={V: eta},
        braidings=braidings,
    )
    m.twine_fn = lambda u, v: m.double_braiding(u, v)

    def word_twist(w, _m=m, _tv=twist):
        if not w:
            return Matrix.identity(ring, 1)
        if len(w) == 1:
            return _tv
        head, rest = (w[0],), w[1:]
        return word_twist(head) .kron(word_twist(rest)) @ _m.double_braiding(head, rest)

    m.twist_fn = word_twist
    if validate:
        m.check_snakes()
    return m


def tl_model(ring: Ring, A, name: str = "tl") -> Model:
    """Temperley-Lieb data at loop parameter -A^2 - A^{-2}, dimension 2."""
    Ai = ring.inv(A)
    z, o = ring.zero, ring.one
    e_row = Matrix(ring, [[z, A, ring.neg(Ai), z]])
    h_col = Matrix(ring, [[z], [ring.neg(A)], [Ai], [z]])
    u = h_col @ e_row
    c = Matrix.identity(ring, 4).scale(A) + u.scale(Ai)
    theta = Matrix.identity(ring, 2).scale(ring.neg(ring.mul(A, ring.mul(A, A))))
    return rmatrix_model(ring, 2, c, e_row, h_col, twist=theta, name=name)


# ---------------------------------------------------------------------------
# infinitesimal models


def infinitesimal_model(G: GroupTable, base: Ring, d_table: dict,
                        t_table: "dict | None" = None,
                        name: str = "infinitesimal") -> Model:
    """Graded model over dual numbers with D = 1 + eps d (and t = 1 + eps t)."""
    ring = DualNumbers(base)
    twist = None
    if t_table is not None:
        twist = {g: (base.one, t_table[g]) for g in G.elements}
    m = graded_model(G, ring, cocycle={(g, h): (base.one, d_table[(g, h)])
                                       for g in G.elements for h in G.elements},
                     twist=twist, name=name, validate=False)
    m.check_snakes()
    return m


def infinitesimal_conditions(G: GroupTable, base: Ring, d_table: dict) -> Report:
    """(a) d(e,e) = 0;  (b) d(x,y) + d(xy,z) = d(y,z) + d(x,yz)."""
    rep = Report("infinitesimal")
    rep.add("a", "(e,e)", base.eq(d_table[(G.unit, G.unit)], base.zero))
    for x, y, z in itertools.product(G.elements, repeat=3):
        lhs = base.add(d_table[(x, y)], d_table[(G.mult[(x, y)], z)])
        rhs = base.add(d_table[(y, z)], d_table[(x, G.mult[(y, z)])])
        rep.add("b", f"({x},{y},{z})", base.eq(lhs, rhs))
    return rep


# ---------------------------------------------------------------------------
# bialgebra structure constants (over a prime field, numpy-backed)


@dataclass
class AlgebraData:
    """A bialgebra over F_p given by structure constants.

    mu[i, j, k]: coefficient of b_k in b_i b_j;  unit[i]: coefficients of 1;
    delta[i, j, k]: coefficient of b_j (x) b_k in Delta(b_i);  counit[i];
    antipode[i, j]: coefficient of b_j in S(b_i) (optional).
    """

    field: PrimeField
    dim: int
    mu: np.ndarray
    unit: np.ndarray
    delta: np.ndarray
    counit: np.ndarray
    antipode: "np.ndarray | None" = None
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        p = self.field.p
        self.mu = np.asarray(self.mu, dtype=np.int64) % p
        self.unit = np.asarray(self.unit, dtype=np.int64) % p
        self.delta = np.asarray(self.delta, dtype=np.int64) % p
        self.counit = np.asarray(self.counit, dtype=np.int64) % p
        if self.antipode is not None:
            self.antipode = np.asarray(self.antipode, dtype=np.int64) % p
        if not self.basis:
            self.basis = tuple(f"b{i}" for i in range(self.dim))

    # -- H^{(x)k} helpers --------------------------------------------------

    def one_k(self, k: int) -> np.ndarray:
        out = np.array([1], dtype=np.int64)
        for _ in range(k):
            out = np.tensordot(out, self.unit, axes=0)
        return out.reshape([self.dim] * k) % self.field.p if k else out

    def mult_k(self, u: np.ndarray, v: np.ndarray, k: int) -> np.ndarray:
        p = self.field.p
        letters = "abcdefgh"
        outs = "ijklmnop"
        lhs = letters[:k] + "," + letters[k:2 * k] + "," + ",".join(
            letters[m] + letters[k + m] + outs[m] for m in range(k))
        spec = lhs + "->" + outs[:k]
        args = [u % p, v % p] + [self.mu] * k
        return np.einsum(spec, *args) % p

    def delta_power(self, x: np.ndarray, m: int) -> np.ndarray:
        """Iterated coproduct H -> H^{(x)m} applied to a vector."""
        p = self.field.p
        out = x % p
        for _ in range(m - 1):
            # expand the last leg
            out = np.tensordot(out, self.delta, axes=([out.ndim - 1], [0])) % p
        return out

    def embed(self, x: np.ndarray, legs: tuple[int, ...], k: int) -> np.ndarray:
        """Place an H^{(x)len(legs)} element into slots `legs` of H^{(x)k},
        filling the rest with the unit."""
        p = self.field.p
        out = x % p
        cur = list(legs)
        for slot in range(1, k + 1):
            if slot not in cur:
                out = np.tensordot(out, self.unit, axes=0)
                cur.append(slot)
        perm = [cur.index(s) for s in range(1, k + 1)]
        return np.transpose(out, perm) % p

    def conv_forms(self, f: np.ndarray, g: np.ndarray, k: int) -> np.ndarray:
        p = self.field.p
        letters = "abcdefgh"
        outs = "ijklmnop"
        spec = letters[:k] + "," + letters[k:2 * k] + "," + ",".join(
            outs[m] + letters[m] + letters[k + m] for m in range(k)) + "->" + outs[:k]
        args = [f % p, g % p] + [self.delta] * k
        return np.einsum(spec, *args) % p

    def counit_k(self, k: int) -> np.ndarray:
        out = np.array([1], dtype=np.int64)
        for _ in range(k):
            out = np.tensordot(out, self.counit, axes=0)
        return out.reshape([self.dim] * k) % self.field.p if k else out

    def _solve(self, op, k: int, target: np.ndarray) -> "np.ndarray | None":
        """Solve op(x) = target for x in H^{(x)k} (or forms), via Matrix."""
        n = self.dim ** k
        cols = []
        for idx in range(n):
            basis_vec = np.zeros(n, dtype=np.int64)
            basis_vec[idx] = 1
            cols.append(op(basis_vec.reshape([self.dim] * k)).reshape(n))
        mat = Matrix(self.field, np.stack(cols, axis=1).tolist())
        try:
            inv = mat.inverse()
        except ZeroDivisionError:
            return None
        t = Matrix(self.field, [[int(v)] for v in target.reshape(n)])
        sol = inv @ t
        return np.array([r[0] for r in sol.rows], dtype=np.int64).reshape([self.dim] * k)


def verify_bialgebra(H: AlgebraData) -> Report:
    rep = Report("bialgebra")
    p = H.field.p
    n = H.dim
    mu, dl = H.mu, H.delta
    assoc_l = np.einsum("ijx,xky->ijky", mu, mu) % p
    assoc_r = np.einsum("jkx,ixy->ijky", mu, mu) % p
    rep.add("assoc", "*", bool((assoc_l == assoc_r).all()))
    lu = np.einsum("i,ijk->jk", H.unit, mu) % p
    ru = np.einsum("j,ijk->ik", H.unit, mu) % p
    rep.add("unit", "*", bool((lu == np.eye(n, dtype=np.int64)).all()
                              and (ru == np.eye(n, dtype=np.int64)).all()))
    coa_l = np.einsum("ixk,xab->iabk", dl, dl) % p
    coa_r = np.einsum("iax,xbk->iabk", dl, dl) % p
    rep.add("coassoc", "*", bool((coa_l == coa_r).all()))
    cl = np.einsum("ijk,j->ik", dl, H.counit) % p
    cr = np.einsum("ijk,k->ij", dl, H.counit) % p
    rep.add("counit", "*", bool((cl == np.eye(n, dtype=np.int64)).all()
                                and (cr == np.eye(n, dtype=np.int64)).all()))
    # Delta(xy) = Delta(x) Delta(y)
    lhs = np.einsum("ijx,xab->ijab", mu, dl) % p
    rhs = np.einsum("iab,jcd,ace,bdf->ijef", dl, dl, mu, mu) % p
    rep.add("compat", "Delta-mult", bool((lhs == rhs).all()))
    du = np.einsum("i,ijk->jk", H.unit, dl) % p
    rep.add("compat", "Delta-unit", bool((du == np.outer(H.unit, H.unit) % p).all()))
    em = np.einsum("ijk,k->ij", mu, H.counit) % p
    rep.add("compat", "counit-mult", bool((em == np.outer(H.counit, H.counit) % p).all()))
    rep.add("compat", "counit-unit", bool(int(H.counit @ H.unit % p) == 1))
    if H.antipode is not None:
        s = np.einsum("iab,aj,jbk->ik", dl, H.antipode, mu) % p
        t = np.einsum("iab,bj,ajk->ik", dl, H.antipode, mu) % p
        target = np.outer(H.counit, H.unit) % p
        rep.add("antipode", "*", bool((s == target).all() and (t == target).all()))
    return rep


def group_algebra(field: PrimeField, G: GroupTable) -> AlgebraData:
    n = len(G.elements)
    idx = {g: i for i, g in enumerate(G.elements)}
    mu = np.zeros((n, n, n), dtype=np.int64)
    for a in G.elements:
        for b in G.elements:
            mu[idx[a], idx[b], idx[G.mult[(a, b)]]] = 1
    unit = np.zeros(n, dtype=np.int64)
    unit[idx[G.unit]] = 1
    delta = np.zeros((n, n, n), dtype=np.int64)
    for a in G.elements:
        delta[idx[a], idx[a], idx[a]] = 1
    counit = np.ones(n, dtype=np.int64)
    antipode = np.zeros((n, n), dtype=np.int64)
    for a in G.elements:
        antipode[idx[a], idx[G.inv(a)]] = 1
    return AlgebraData(field, n, mu, unit, delta, counit, antipode,
                       basis=G.elements)


# -- twinor / twistor (module side) -----------------------------------------


def check_twinor(H: AlgebraData, d: np.ndarray) -> Report:
    """d in H (x) H:  dt-1, dt0, dt1, dt2."""
    p = H.field.p
    rep = Report("twinor")
    d = np.asarray(d, dtype=np.int64) % p
    dinv = H._solve(lambda x: H.mult_k(d, x, 2), 2, H.one_k(2))
    rep.add("dt-1", "invertible", dinv is not None)
    central = True
    for i in range(H.dim):
        x = np.zeros(H.dim, dtype=np.int64)
        x[i] = 1
        dx = H.delta_power(x, 2)
        if not (H.mult_k(d, dx, 2) == H.mult_k(dx, d, 2)).all():
            central = False
    rep.add("dt-1", "commutes-with-Delta", central)
    dt0 = int(np.einsum("ij,i,j->", d, H.counit, H.counit) % p)
    rep.add("dt0", "*", dt0 == 1)
    d_leg = np.tensordot(d, H.unit, axes=0) % p           # d (x) eta
    lhs3 = np.einsum("ab,aij,bk->ijk", d, H.delta, np.eye(H.dim, dtype=np.int64)) % p
    lhs = H.mult_k(d_leg, lhs3, 3)
    eta_d = np.tensordot(H.unit, d, axes=0) % p
    rhs3 = np.einsum("ab,ai,bjk->ijk", d, np.eye(H.dim, dtype=np.int64), H.delta) % p
    rhs = H.mult_k(eta_d, rhs3, 3)
    rep.add("dt1", "*", bool((lhs == rhs).all()))
    if dinv is not None:
        d13 = H.embed(d, (1, 3), 4)
        d24 = H.embed(d, (2, 4), 4)
        d34 = H.embed(d, (3, 4), 4)
        d34i = H.embed(dinv, (3, 4), 4)
        seq = [d13, d34i, d24, d34]
        lhs4 = seq[0]
        for m_ in seq[1:]:
            lhs4 = H.mult_k(lhs4, m_, 4)
        seq2 = [d34i, d24, d34, d13]
        rhs4 = seq2[0]
        for m_ in seq2[1:]:
            rhs4 = H.mult_k(rhs4, m_, 4)
        rep.add("dt2", "*", bool((lhs4 == rhs4).all()))
    else:
        rep.add("dt2", "*", False)
    return rep


def check_twistor(H: AlgebraData, theta: np.ndarray) -> Report:
    p = H.field.p
    rep = Report("twistor")
    theta = np.asarray(theta, dtype=np.int64) % p
    tinv = H._solve(lambda x: H.mult_k(theta, x, 1), 1, H.one_k(1))
    rep.add("tw-1", "invertible", tinv is not None)
    central = True
    for i in range(H.dim):
        x = np.zeros(H.dim, dtype=np.int64)
        x[i] = 1
        if not (H.mult_k(theta, x, 1) == H.mult_k(x, theta, 1)).all():
            central = False
    rep.add("tw-1", "central", central)
    rep.add("tw0", "*", int(H.counit @ theta % p) == 1)
    if tinv is None:
        rep.add("tw1", "*", False)
        return rep
    dth = H.delta_power(theta, 2)      # Delta(theta)
    dthi = H.delta_power(tinv, 2)      # Delta(theta^-1)
    d3th = H.delta_power(theta, 3)
    f12 = H.embed(dthi, (1, 2), 4)
    f123 = H.embed(d3th, (1, 2, 3), 4)
    f23 = H.embed(dthi, (2, 3), 4)
    f234 = H.embed(d3th, (2, 3, 4), 4)
    f34 = H.embed(dthi, (3, 4), 4)
    def chain(seq):
        out = seq[0]
        for m_ in seq[1:]:
            out = H.mult_k(out, m_, 4)
        return out
    rep.add("tw1", "*", bool((chain([f12, f123, f23, f234, f34])
                              == chain([f34, f234, f23, f123, f12])).all()))
    return rep


def twinor_from_twistor(H: AlgebraData, theta: np.ndarray) -> np.ndarray:
    """(theta^-1 (x) theta^-1) Delta(theta)."""
    tinv = H._solve(lambda x: H.mult_k(theta, x, 1), 1, H.one_k(1))
    if tinv is None:
        raise ModelError("twistor not invertible")
    tt = np.tensordot(tinv, tinv, axes=0) % H.field.p
    return H.mult_k(tt, H.delta_power(theta, 2), 2)


# -- cotwinor / cotwistor (comodule side) ------------------------------------


def check_cotwinor(H: AlgebraData, d: np.ndarray) -> Report:
    """d: H (x) H -> k as a form;  codt-1, codt0, codt1, codt2."""
    p = H.field.p
    rep = Report("cotwinor")
    d = np.asarray(d, dtype=np.int64) % p
    dinv = H._solve(lambda x: H.conv_forms(x, d, 2), 2, H.counit_k(2))
    rep.add("codt-1", "conv-invertible", dinv is not None)
    # d * mu = mu * d in Hom(H (x) H, H); convolution through Delta legs
    lhs = np.einsum("iab,jcd,ac,bdk->ijk", H.delta, H.delta, d, H.mu) % p
    rhs = np.einsum("iab,jcd,ace,bd->ije", H.delta, H.delta, H.mu, d) % p
    rep.add("codt-1", "conv-commutes-with-mult", bool((lhs == rhs).all()))
    rep.add("codt0", "*", int(np.einsum("ij,i,j->", d, H.unit, H.unit) % p) == 1)
    d_eps = np.einsum("ab,c->abc", d, H.counit) % p
    d_mu1 = np.einsum("abx,xc->abc", H.mu, d) % p  # d(mu (x) 1): (a,b,c) -> d(ab, c)
    lhs = H.conv_forms(d_eps, d_mu1, 3)
    eps_d = np.einsum("a,bc->abc", H.counit, d) % p
    d_1mu = np.einsum("bcx,ax->abc", H.mu, d) % p  # d(1 (x) mu): (a,b,c) -> d(a, bc)
    rhs = H.conv_forms(eps_d, d_1mu, 3)
    rep.add("codt1", "*", bool((lhs == rhs).all()))
    if dinv is None:
        rep.add("codt2", "*", False)
        return rep

    def emb(f, legs):
        out = f
        cur = list(legs)
        for slot in range(1, 5):
            if slot not in cur:
                out = np.tensordot(out, H.counit, axes=0)
                cur.append(slot)
        perm = [cur.index(s) for s in range(1, 5)]
        return np.transpose(out, perm) % p

    f13, f24, f34, f34i = emb(d, (1, 3)), emb(d, (2, 4)), emb(d, (3, 4)), emb(dinv, (3, 4))

    def chain(seq):
        out = seq[0]
        for g in seq[1:]:
            out = H.conv_forms(out, g, 4)
        return out

    rep.add("codt2", "*", bool((chain([f13, f34i, f24, f34])
                                == chain([f34i, f24, f34, f13])).all()))
    return rep


def check_cotwistor(H: AlgebraData, theta: np.ndarray, check_theta_s: bool = False) -> Report:
    p = H.field.p
    rep = Report("cotwistor")
    theta = np.asarray(theta, dtype=np.int64) % p
    tinv = H._solve(lambda x: H.conv_forms(x, theta, 1), 1, H.counit_k(1))
    rep.add("cotw-1", "conv-invertible", tinv is not None)
    lhs = np.einsum("iab,a,bj->ij", H.delta, theta, np.eye(H.dim, dtype=np.int64)) % p
    rhs = np.einsum("iab,b,aj->ij", H.delta, theta, np.eye(H.dim, dtype=np.int64)) % p
    rep.add("cotw-1", "cocentral", bool((lhs == rhs).all()))
    rep.add("cotw0", "*", int(theta @ H.unit % p) == 1)
    if tinv is None:
        rep.add("cotw1", "*", False)
    else:
        thmu = np.einsum("abx,x->ab", H.mu, theta) % p       # theta(ab)
        thimu = np.einsum("abx,x->ab", H.mu, tinv) % p
        mu3 = np.einsum("abx,xcy->abcy", H.mu, H.mu) % p
        thmu3 = np.einsum("abcy,y->abc", mu3, theta) % p     # theta(abc)

        def emb(f, legs):
            out = f
            cur = list(legs)
            for slot in range(1, 5):
                if slot not in cur:
                    out = np.tensordot(out, H.counit, axes=0)
                    cur.append(slot)
            perm = [cur.index(s) for s in range(1, 5)]
            return np.transpose(out, perm) % p

        f12, f123 = emb(thimu, (1, 2)), emb(thmu3, (1, 2, 3))
        f23, f234 = emb(thimu, (2, 3)), emb(thmu3, (2, 3, 4))
        f34 = emb(thimu, (3, 4))

        def chain(seq):
            out = seq[0]
            for g in seq[1:]:
                out = H.conv_forms(out, g, 4)
            return out

        rep.add("cotw1", "*", bool((chain([f12, f123, f23, f234, f34])
                                    == chain([f34, f234, f23, f123, f12])).all()))
    if check_theta_s:
        if H.antipode is None:
            raise ModelError("antipode required for the theta*S check")
        rep.add("thetaS", "*", bool(((H.antipode @ theta) % p == theta).all()))
    return rep


# -- modules from twinors -----------------------------------------------------


def model_from_twinor(H: AlgebraData, d: np.ndarray, modules: dict,
                      twistor: "np.ndarray | None" = None,
                      name: str = "modules", validate: bool = True) -> Model:
    """Module-side model from a twinor; modules are 1-dimensional characters
    given as vectors chi[i] = chi(b_i).  Duals are found via the antipode."""
    p = H.field.p
    ring = H.field
    if H.antipode is None:
        raise ModelError("antipode required to form duals")
    chis = {k: np.asarray(v, dtype=np.int64) % p for k, v in modules.items()}
    if validate:
        for k, chi in chis.items():
            ok = (np.einsum("ijk,k->ij", H.mu, chi) % p == np.outer(chi, chi) % p).all()
            if not ok or int(chi @ H.unit % p) != 1:
                raise ModelError(f"module {k} is not an algebra character")
    dual = {}
    for k, chi in chis.items():
        target = (H.antipode @ chi) % p
        for k2, chi2 in chis.items():
            if (chi2 == target).all():
                dual[k] = k2
                break
        else:
            raise ModelError(f"dual of module {k} is not among the given modules")

    def chi_word(w) -> np.ndarray:
        """The character of the tensor product module, as a form on H."""
        if not w:
            return H.counit.copy()
        out = chis[w[0]]
        for x in w[1:]:
            out = np.einsum("iab,a,b->i", H.delta, out, chis[x]) % p
        return out

    one = Matrix.identity(ring, 1)

    def twine_fn(u, v):
        val = int(np.einsum("ab,a,b->", np.asarray(d) % p, chi_word(u), chi_word(v)) % p)
        return Matrix.scalar_matrix(ring, val)

    twist_fn = None
    if twistor is not None:
        def twist_fn(w):
            val = int(chi_word(w) @ (np.asarray(twistor) % p) % p)
            return Matrix.scalar_matrix(ring, val)

    names = tuple(chis)
    m = Model(
        name=name, ring=ring, simples=names, dims={k: 1 for k in names},
        dual=dual,
        e_map={k: one for k in names}, h_map={k: one for k in names},
        eps_map={k: one for k in names}, eta_map={k: one for k in names},
        twine_fn=twine_fn, twist_fn=twist_fn,
    )
    if validate:
        m.check_snakes()
    return m


# ---------------------------------------------------------------------------
# the graded closed form


def closed_form_graded_invariant(model: Model, colors, linking) -> Matrix:
    """Product of twist factors on the diagonal and twine factors on halved
    off-diagonal sums; only valid for closed links in a graded model."""
    G = model.group
    ring = model.ring
    n = len(colors)
    out = ring.one
    for i in range(n):
        th = model.twist_table[G.product(colors[i])]
        out = ring.mul(out, ring.power(th, linking[i][i]))
    for i in range(n):
        for j in range(i + 1, n):
            if linking[i][j] % 2 != 0:
                raise ModelError("odd inter-component crossing sum: not a turban link")
            dval = model.twine_table[(G.product(colors[i]), G.product(colors[j]))]
            out = ring.mul(out, ring.power(dval, linking[i][j] // 2))
    return Matrix.scalar_matrix(ring, out)


# ---------------------------------------------------------------------------
# builtins


def _w_pow(field: PrimeField, w: int, k: int) -> int:
    return pow(w, k % (field.p - 1), field.p)


def builtin_model(name: str) -> Model:
    if name == "graded-z5":
        F = PrimeField(11)
        G = GroupTable.cyclic(5)
        w = 3  # order 5 in F_11
        bichar = {(g, h): pow(w, (int(g) * int(h)) % 5, 11)
                  for g in G.elements for h in G.elements}
        twist = {g: pow(w, (int(g) * int(g)) % 5, 11) for g in G.elements}
        return graded_model(G, F, twist=twist, bichar=bichar, name=name)
    if name == "graded-z5z5":
        F = PrimeField(11)
        G = GroupTable.product_group(GroupTable.cyclic(5), GroupTable.cyclic(5))
        w = 3
        bichar = {(x, y): pow(w, (int(x[0]) * int(y[1])) % 5, 11)
                  for x in G.elements for y in G.elements}
        bichar2 = {(x, y): bichar[(y, x)] for x in G.elements for y in G.elements}
        twist = {x: pow(w, (int(x[0]) * int(x[1])) % 5, 11) for x in G.elements}
        return graded_model(G, F, twist=twist, bichar=bichar, bichar2=bichar2, name=name)
    if name == "tl2-f101":
        return tl_model(PrimeField(101), 2, name=name)
    if name == "tl2-q":
        return tl_model(QQ, QQ.from_int(2), name=name)
    if name == "graded-z4-selfdual":
        # self-dual twist that is not balanced by any braiding: theta(g) = w^{g^2 mod 4}
        F = PrimeField(7)
        G = GroupTable.cyclic(4)
        # theta(1) = theta(3) required for self-duality; theta(e) = 1
        twist = {"0": 1, "1": 3, "2": 5, "3": 3}
        return graded_model(G, F, twist=twist, name=name)
    raise ModelError(f"unknown builtin model {name!r}")


BUILTIN_NAMES = ("graded-z5", "graded-z5z5", "tl2-f101", "tl2-q", "graded-z4-selfdual")


# ---------------------------------------------------------------------------
# model files


def parse_model_file(text: str) -> Model:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != "model v1":
        raise ModelError("missing 'model v1' header")
    fields = {}
    for line in lines[1:]:
        key, _, val = line.partition(":")
        if not _:
            key, _, val = line.partition(" ")
        fields[key.strip()] = val.strip()
    ring = ring_from_name(fields["ring"])
    kind = fields["type"]
    if kind == "builtin":
        return builtin_model(fields["name"])
    if kind == "graded":
        els = tuple(fields["group"].split())
        mult_names = fields["mult"].split()
        n = len(els)
        if len(mult_names) != n * n:
            raise ModelError("mult table size mismatch")
        mult = {(els[i], els[j]): mult_names[i * n + j] for i in range(n) for j in range(n)}
        G = GroupTable(els, mult, fields["unit"])

        def table(key):
            if key not in fields:
                return None
            vals = [ring.parse(v) for v in fields[key].split()]
            if len(vals) != n * n:
                raise ModelError(f"{key} table size mismatch")
            return {(els[i], els[j]): vals[i * n + j] for i in range(n) for j in range(n)}

        tw = None
        if "twist" in fields:
            vals = [ring.parse(v) for v in fields["twist"].split()]
            tw = dict(zip(els, vals))
        return graded_model(G, ring, cocycle=table("cocycle"), twist=tw,
                            bichar=table("bichar"), bichar2=table("bichar2"),
                            name=fields.get("name", "graded-file"),
                            validate=fields.get("validate", "yes") != "no")
    if kind == "rmatrix":
        d = int(fields["dim"])

        def mat(key, rows, cols):
            vals = [ring.parse(v) for v in fields[key].split()]
            if len(vals) != rows * cols:
                raise ModelError(f"{key} block size mismatch")
            return Matrix(ring, [vals[r * cols:(r + 1) * cols] for r in range(rows)])

        c = mat("c", d * d, d * d)
        e_row = mat("e", 1, d * d)
        h_col = mat("h", d * d, 1)
        tw = None if fields.get("twist", "auto") == "auto" else mat("twist", d, d)
        return rmatrix_model(ring, d, c, e_row, h_col, twist=tw,
                             name=fields.get("name", "rmatrix-file"),
                             validate=fields.get("validate", "yes") != "no")
    if kind == "algebra":
        if not isinstance(ring, PrimeField):
            raise ModelError("algebra blocks require a prime field")
        n = int(fields["dim"])

        def block(key, shape):
            vals = [int(v) for v in fields[key].split()]
            if len(vals) != prod(shape):
                raise ModelError(f"{key} block size mismatch")
            return np.array(vals, dtype=np.int64).reshape(shape)

        H = AlgebraData(
            ring, n, block("mult", (n, n, n)), block("unit", (n,)),
            block("comult", (n, n, n)), block("counit", (n,)),
            block("antipode", (n, n)) if "antipode" in fields else None,
            basis=tuple(fields.get("basis", "").split()) or (),
        )
        if fields.get("validate", "yes") != "no":
            r = verify_bialgebra(H)
            if not r.ok:
                raise ModelError(f"bialgebra law fails: {r.failures()[0].axiom}")
        H.kind = "algebra"
        return H
    raise ModelError(f"unknown model type {kind!r}")


def load_model(spec: str) -> "Model | AlgebraData":
    """Load 'builtin:<name>' or a model file path."""
    if spec.startswith("builtin:"):
        return builtin_model(spec[len("builtin:"):])
    with open(spec, encoding="utf-8") as fh:
        return parse_model_file(fh.read())
