"""Relation verification engines.

Every check is exact: a pass asserts literal Scalar equality of all
matrix entries (or Fock components) produced by the two sides of a
defining relation.  Failures carry a witness entry.  The Drinfeld
engine is written against a small representation protocol so the same
sweeps run on the evaluation modules (operators are z-graded matrices,
gamma = 1) and on the level-one bosonic modules (operators act on
vectors, gamma = q).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .qscalar import QQ, Scalar, qint, qbinomial, evaluate
from .cartan import structure_sum, aa_scalar, unfolded_pairing
from . import evalrep
from .evalrep import ZGradedMatrix, chevalley_matrix, drinfeld_matrix, psi_phi_matrix

__all__ = [
    "CheckItem",
    "CheckReport",
    "ModeWindow",
    "qbracket",
    "MatrixRep",
    "CorruptedRep",
    "check_chevalley",
    "check_duality",
    "check_drinfeld",
    "check_iso_degree0",
    "sym_case_table",
    "probe_identities",
]


@dataclass
class CheckItem:
    id: str
    relation: str
    params: dict
    status: str               # "pass" | "fail"
    witness: object = None    # short printable residual data

    def to_json(self):
        out = {"id": self.id, "relation": self.relation,
               "params": {k: str(v) for k, v in self.params.items()},
               "status": self.status}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


@dataclass
class CheckReport:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, cid, relation, params, witness):
        self.checks.append(CheckItem(cid, relation, params,
                                     "pass" if witness is None else "fail", witness))

    def ok(self):
        return all(c.status == "pass" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def normalized(self):
        self.checks.sort(key=lambda c: c.id)
        return self

    def to_json(self):
        return {"suite": self.suite, "ok": self.ok(),
                "checks": [c.to_json() for c in self.checks]}

    def summary(self):
        bad = self.failures()
        return f"{self.suite}: {len(self.checks) - len(bad)}/{len(self.checks)} pass"


@dataclass(frozen=True)
class ModeWindow:
    K: int = 2
    L: int = 2
    Ksym: int = 2

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("mode bound K must be >= 1")


def qbracket(A, B, v=1):
    """[A, B]_v = A B - v B A for composable operators."""
    AB = A * B
    BA = B * A
    if isinstance(v, int) and v == 1:
        return AB - BA
    return AB - BA.scale(v)


# ---------------------------------------------------------------------------
# matrix representation wrapper
# ---------------------------------------------------------------------------

class MatrixRep:
    """The evaluation module V_z (or its dual) as a Drinfeld representation."""

    gamma_q = False

    def __init__(self, alg, variant="module"):
        self.alg = alg
        self.variant = variant
        self.r = alg.r
        self.dim = len(evalrep.basis_index(alg))
        self._cache = {}

    def label(self):
        return f"V_z{'*' if self.variant == 'dual' else ''}({self.alg.type.family},n={self.alg.n})"

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def x(self, sign, i, k):
        return self._memo(("x", sign, i, k),
                          lambda: drinfeld_matrix(self.alg, "x+" if sign > 0 else "x-",
                                                  i, k, self.variant))

    def a(self, i, k):
        return self._memo(("a", i, k),
                          lambda: drinfeld_matrix(self.alg, "a", i, k, self.variant))

    def K(self, i, power=1):
        kind = "t" if power > 0 else "tinv"
        return self._memo(("K", i, power),
                          lambda: chevalley_matrix(self.alg, kind, i, self.variant))

    def K_theta_inv(self):
        def build():
            out = self.identity()
            for j, c in enumerate(self.alg.theta, start=1):
                for _ in range(c):
                    out = out * self.K(j, -1)
            return out
        return self._memo(("Ktheta",), build)

    def psi(self, i, m):
        if m < 0:
            return self.zero()
        return self._memo(("psi", i, m),
                          lambda: psi_phi_matrix(self.alg, i, m, "psi", self.variant))

    def phi(self, i, m):
        if m > 0:
            return self.zero()
        return self._memo(("phi", i, m),
                          lambda: psi_phi_matrix(self.alg, i, -m, "phi", self.variant))

    def gamma_pow(self, half):
        """gamma^{half} as a Scalar (half may be a half integer)."""
        return Scalar.one(self.r)

    def zero(self):
        return ZGradedMatrix.zero(self.r, self.dim)

    def identity(self):
        return ZGradedMatrix.identity(self.r, self.dim)

    def scalar_op(self, c):
        return self.identity().scale(c)

    def residual(self, op):
        return op.witness()


class CorruptedRep(MatrixRep):
    """Negative-control wrapper: one generator gets one entry scaled."""

    def __init__(self, alg, variant, target, factor=None):
        super().__init__(alg, variant)
        self.target = target
        self.factor = factor if factor is not None else Scalar.q_power(alg.r, 1)

    def x(self, sign, i, k):
        op = super().x(sign, i, k)
        if self.target == ("x", sign, i, k) and not op.is_zero():
            op = _corrupt(op, self.factor)
        return op

    def a(self, i, k):
        op = super().a(i, k)
        if self.target == ("a", i, k) and not op.is_zero():
            op = _corrupt(op, self.factor)
        return op


def _corrupt(op, factor):
    out = ZGradedMatrix(op.r, op.dim)
    done = False
    for e in sorted(op.blocks, key=lambda x: (QQ(x),)):
        blk = dict(op.blocks[e])
        if not done:
            rc = sorted(blk)[0]
            blk[rc] = blk[rc] * factor
            done = True
        out.blocks[e] = blk
    return out


# ---------------------------------------------------------------------------
# Chevalley suite
# ---------------------------------------------------------------------------

def _gens(alg):
    return list(range(alg.n + 1))


def check_chevalley(alg, variant="module"):
    """All defining relations of the Chevalley presentation, exactly."""
    rep = MatrixRep(alg, variant)
    r = alg.r
    report = CheckReport(f"chevalley/{variant}/{alg.type.family}/n={alg.n}")
    E = {i: chevalley_matrix(alg, "e", i, variant) for i in _gens(alg)}
    F = {i: chevalley_matrix(alg, "f", i, variant) for i in _gens(alg)}
    T = {i: chevalley_matrix(alg, "t", i, variant) for i in _gens(alg)}
    Tinv = {i: chevalley_matrix(alg, "tinv", i, variant) for i in _gens(alg)}
    I = rep.identity()

    for i in _gens(alg):
        report.add(f"tt/{i}/inv", "t_i t_i^-1 = 1", {"i": i},
                   (T[i] * Tinv[i] - I).witness())
        for j in _gens(alg):
            if j > i:
                report.add(f"tt/{i},{j}", "t_i t_j = t_j t_i", {"i": i, "j": j},
                           (T[i] * T[j] - T[j] * T[i]).witness())

    for i in _gens(alg):
        for j in _gens(alg):
            cij = Scalar.q_power(r, alg.gram_aff[i][j])
            res = T[i] * E[j] * Tinv[i] - E[j].scale(cij)
            report.add(f"te/{i},{j}", "t_i e_j t_i^-1 = q^(ai|aj) e_j",
                       {"i": i, "j": j}, res.witness())
            res = T[i] * F[j] * Tinv[i] - F[j].scale(cij.inverse())
            report.add(f"tf/{i},{j}", "t_i f_j t_i^-1 = q^-(ai|aj) f_j",
                       {"i": i, "j": j}, res.witness())

    for i in _gens(alg):
        for j in _gens(alg):
            lhs = E[i] * F[j] - F[j] * E[i]
            if i == j:
                qi = alg.q_i(i)
                rhs = (T[i] - Tinv[i]).scale((qi - qi.inverse()).inverse())
                lhs = lhs - rhs
            report.add(f"ef/{i},{j}", "[e_i, f_j] = d_ij (t_i - t_i^-1)/(q_i - q_i^-1)",
                       {"i": i, "j": j}, lhs.witness())

    for i in _gens(alg):
        for j in _gens(alg):
            if i == j:
                continue
            N = 1 - alg.cartan[i][j]
            for letter, G in (("e", E), ("f", F)):
                res = rep.zero()
                for m in range(N + 1):
                    k = N - m
                    c = Scalar.from_rational(r, (-1) ** m) * \
                        (qfact_inv(alg, i, m) * qfact_inv(alg, i, k))
                    term = _power(G[i], m) * G[j] * _power(G[i], k)
                    res = res + term.scale(c)
                report.add(f"serre-{letter}/{i},{j}",
                           f"sum (-1)^m {letter}_i^(m) {letter}_j {letter}_i^(k) = 0, m+k=1-a_ij",
                           {"i": i, "j": j, "order": N}, res.witness())
    return report.normalized()


def qfact_inv(alg, i, m):
    from .qscalar import qfactorial
    return qfactorial(m, alg.d[i], alg.r).inverse()


def _power(op, m):
    if m == 0:
        return ZGradedMatrix.identity(op.r, op.dim)
    out = op
    for _ in range(m - 1):
        out = out * op
    return out


# ---------------------------------------------------------------------------
# antipode duality
# ---------------------------------------------------------------------------

def check_duality(alg):
    """<x v*, u> = <v*, S(x) u> for every Chevalley generator."""
    report = CheckReport(f"duality/{alg.type.family}/n={alg.n}")
    for i in _gens(alg):
        e = chevalley_matrix(alg, "e", i, "module")
        f = chevalley_matrix(alg, "f", i, "module")
        t = chevalley_matrix(alg, "t", i, "module")
        tinv = chevalley_matrix(alg, "tinv", i, "module")
        # S(e_i) = -t_i^-1 e_i, S(f_i) = -f_i t_i, S(t_i) = t_i^-1
        cases = [
            ("e", chevalley_matrix(alg, "e", i, "dual"), (tinv * e).scale(Scalar.from_rational(alg.r, -1))),
            ("f", chevalley_matrix(alg, "f", i, "dual"), (f * t).scale(Scalar.from_rational(alg.r, -1))),
            ("t", chevalley_matrix(alg, "t", i, "dual"), tinv),
        ]
        for kind, dual, s_of_x in cases:
            res = dual - s_of_x.transpose()
            report.add(f"antipode/{kind}/{i}", "dual(x) = transpose(S(x))",
                       {"i": i, "gen": kind}, res.witness())
    return report.normalized()


# ---------------------------------------------------------------------------
# Drinfeld suite
# ---------------------------------------------------------------------------

def _modes(alg, i, K, nonzero=False):
    step = alg.mode_step(i)
    out = [k for k in range(-K, K + 1) if k % step == 0]
    if nonzero:
        out = [k for k in out if k]
    return out


def sym_case_table(alg):
    """Applicable Serre-type Sym relations with their P/d case data.

    Returns (quadratic, cubic): quadratic is a list of (i, j, case) with
    case in "fixed-i" / "orbit-fixed-j" / "orbit-orbit" / "self-adjacent";
    cubic lists the nodes with <a_i'|sigma a_i'> = -1.
    """
    quad = []
    for i in range(1, alg.n + 1):
        for j in range(1, alg.n + 1):
            if i == j or unfolded_pairing(alg, i, j, 0) != -1:
                continue
            if alg.is_fixed(i):
                quad.append((i, j, "fixed-i"))
            elif unfolded_pairing(alg, i, i, 1) == -1:
                quad.append((i, j, "self-adjacent"))
            elif alg.is_fixed(j):
                quad.append((i, j, "orbit-fixed-j"))
            else:
                quad.append((i, j, "orbit-orbit"))
    cubic = [i for i in range(1, alg.n + 1) if unfolded_pairing(alg, i, i, 1) == -1]
    return quad, cubic


def _sym_case_data(alg, i, j, case, sign):
    """(P monomial dict {(a1,a2): Scalar}, d_ij) for the quadratic Sym."""
    r = alg.r
    pm = 1 if sign > 0 else -1
    if case == "fixed-i":
        return {(0, 0): Scalar.one(r)}, QQ(r)
    if case == "orbit-fixed-j":
        # (z^r q^{+-2r} - w^r) / (z q^{+-2} - w), expanded
        P = {}
        for t in range(r):
            P[(r - 1 - t, t)] = Scalar.q_power(r, pm * 2 * (r - 1 - t))
        return P, QQ(r)
    if case == "orbit-orbit":
        return {(0, 0): Scalar.one(r)}, QQ(1, 2)
    # self-adjacent: P = z q^{+-r/2} + w
    return {(1, 0): Scalar.q_power(r, QQ(pm * r, 2)), (0, 1): Scalar.one(r)}, QQ(r, 4)


def check_drinfeld(alg, rep, window=ModeWindow()):
    """All loop-presentation relations on one representation, windowed."""
    report = CheckReport(f"drinfeld/{rep.label()}")
    r = alg.r
    n = alg.n
    K = window.K
    one = Scalar.one(r)

    def gpow(h):
        return rep.gamma_pow(h)

    # a-a commutators
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in _modes(alg, i, K, nonzero=True):
                for l in _modes(alg, j, K, nonzero=True):
                    lhs = qbracket(rep.a(i, k), rep.a(j, l))
                    if k + l == 0:
                        c = aa_scalar(alg, i, j, k, gamma_q=rep.gamma_q)
                        lhs = lhs - rep.scalar_op(c)
                    report.add(f"aa/{i},{j}/{k},{l}",
                               "[a_i(k), a_j(l)] = d_{k+l,0} * central scalar",
                               {"i": i, "j": j, "k": k, "l": l}, rep.residual(lhs))

    # a-K commutators
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in _modes(alg, i, min(K, 1), nonzero=True):
                lhs = qbracket(rep.a(i, k), rep.K(j))
                report.add(f"aK/{i},{j}/{k}", "[a_i(k), K_j] = 0",
                           {"i": i, "j": j, "k": k}, rep.residual(lhs))

    # K-x conjugation
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for sign in (1, -1):
                for k in _modes(alg, j, K):
                    x = rep.x(sign, j, k)
                    c = Scalar.q_power(r, sign * alg.gram[i - 1][j - 1])
                    lhs = rep.K(i) * x - (x * rep.K(i)).scale(c)
                    report.add(f"Kx/{i};{'+' if sign > 0 else '-'}{j}/{k}",
                               "K_i x_j(k) K_i^-1 = q^(+-(ai|aj)) x_j(k)",
                               {"i": i, "j": j, "k": k, "sign": sign}, rep.residual(lhs))

    # a-x
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in _modes(alg, i, K, nonzero=True):
                ss = structure_sum(alg, i, j, k)
                for sign in (1, -1):
                    for l in _modes(alg, j, K):
                        lhs = qbracket(rep.a(i, k), rep.x(sign, j, l))
                        c = ss * gpow(QQ(-sign * abs(k), 2))
                        if sign < 0:
                            c = -c
                        rhs = rep.x(sign, j, k + l).scale(c)
                        report.add(f"ax/{i};{'+' if sign > 0 else '-'}{j}/{k},{l}",
                                   "[a_i(k), x_j(l)] = +-(sum_s ...) gamma^(-+|k|/2) x_j(k+l)",
                                   {"i": i, "j": j, "k": k, "l": l, "sign": sign},
                                   rep.residual(lhs - rhs))

    # x+ x- pairing
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            qi = alg.q_i(i)
            denom = (qi - qi.inverse()).inverse()
            mult = Scalar.from_rational(r, r if alg.is_fixed(i) else 1)
            for k in _modes(alg, i, K):
                for l in _modes(alg, j, K):
                    lhs = qbracket(rep.x(1, i, k), rep.x(-1, j, l))
                    if i == j:
                        m = k + l
                        rhs = rep.psi(i, m).scale(gpow(QQ(k - l, 2)) * denom * mult) - \
                            rep.phi(i, m).scale(gpow(QQ(l - k, 2)) * denom * mult)
                        lhs = lhs - rhs
                    report.add(f"xpxm/{i},{j}/{k},{l}",
                               "[x_i^+(k), x_j^-(l)] = delta_ij (gamma^.. psi - gamma^.. phi)/(q_i - q_i^-1)",
                               {"i": i, "j": j, "k": k, "l": l}, rep.residual(lhs))

    # quadratic x x relation, per mode pair
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            pairs = [(u, unfolded_pairing(alg, i, j, s)) for s, u in enumerate(range(r))]
            for sign in (1, -1):
                for k in _modes(alg, i, K):
                    for l in _modes(alg, j, K):
                        res = None
                        # lhs poly: prod_s (z - w^s q^{+-<i|s j>} w); rhs: prod_s (z q^{+-<>} - w^s w)
                        lmon = {(1, 0): one, (0, 0): None}
                        lhs_poly = _poly_prod(alg, i, j, sign, True)
                        rhs_poly = _poly_prod(alg, i, j, sign, False)
                        acc = rep.zero()
                        for (az, aw), c in lhs_poly.items():
                            acc = acc + (rep.x(sign, i, k + az) * rep.x(sign, j, l + aw)).scale(c)
                        for (az, aw), c in rhs_poly.items():
                            acc = acc - (rep.x(sign, j, l + aw) * rep.x(sign, i, k + az)).scale(c)
                        report.add(f"xx/{'+' if sign > 0 else '-'}{i},{j}/{k},{l}",
                                   "prod_s(z - w^s q^{..} w) x_i(z) x_j(w) = prod_s(z q^{..} - w^s w) x_j(w) x_i(z)",
                                   {"i": i, "j": j, "k": k, "l": l, "sign": sign},
                                   rep.residual(acc))

    # Serre-type Sym relations
    quad, cubic = sym_case_table(alg)
    Ks = window.Ksym
    for (i, j, case) in quad:
        for sign in (1, -1):
            P, dij = _sym_case_data(alg, i, j, case, sign)
            binom = [qbinomial(2, s, dij, r) for s in range(3)]
            for k1 in _modes(alg, i, Ks):
                for k2 in _modes(alg, i, Ks):
                    if k1 > k2:
                        continue
                    for l in _modes(alg, j, Ks):
                        acc = rep.zero()
                        for (m1, m2) in ((k1, k2), (k2, k1)):
                            for (a1, a2), c in P.items():
                                u1, u2 = m1 + a1, m2 + a2
                                for s in range(3):
                                    cc = c.scale_dummy() if False else c * binom[s] * \
                                        Scalar.from_rational(r, (-1) ** s)
                                    ops = []
                                    seq = [("i", u1), ("i", u2)]
                                    order = seq[:s] + [("j", l)] + seq[s:]
                                    term = None
                                    for which, mode in order:
                                        op = rep.x(sign, i if which == "i" else j, mode)
                                        term = op if term is None else term * op
                                    acc = acc + term.scale(cc)
                        report.add(f"sym2/{'+' if sign > 0 else '-'}{i},{j}/{k1},{k2},{l}",
                                   "Sym_z1,z2 P_ij sum_s (-1)^s [2 s] x_i..x_j..x_i = 0",
                                   {"i": i, "j": j, "case": case, "k1": k1, "k2": k2,
                                    "l": l, "sign": sign}, rep.residual(acc))
    for i in cubic:
        for sign in (1, -1):
            pm = 1 if sign > 0 else -1
            coeffs = [Scalar.q_power(r, QQ(-pm * 3 * r, 4)),
                      -(Scalar.q_power(r, QQ(r, 4)) + Scalar.q_power(r, QQ(-r, 4))),
                      Scalar.q_power(r, QQ(pm * 3 * r, 4))]
            from itertools import permutations
            for k1 in _modes(alg, i, Ks):
                for k2 in _modes(alg, i, Ks):
                    for k3 in _modes(alg, i, Ks):
                        if not (k1 <= k2 <= k3):
                            continue
                        acc = rep.zero()
                        for perm in permutations((k1, k2, k3)):
                            for t in range(3):
                                modes = list(perm)
                                modes[t] += 1
                                term = rep.x(sign, i, modes[0]) * rep.x(sign, i, modes[1]) \
                                    * rep.x(sign, i, modes[2])
                                acc = acc + term.scale(coeffs[t])
                        report.add(f"sym3/{'+' if sign > 0 else '-'}{i}/{k1},{k2},{k3}",
                                   "Sym_z1,z2,z3 (q^{-+3r/4} z1 - (q^{r/4}+q^{-r/4}) z2 + q^{+-3r/4} z3) x x x = 0",
                                   {"i": i, "k1": k1, "k2": k2, "k3": k3, "sign": sign},
                                   rep.residual(acc))
    return report.normalized()


def _poly_prod(alg, i, j, sign, left):
    """Expand prod_s (z - omega^s q^{e_s} w) or prod_s (z q^{e_s} - omega^s w)."""
    from .qscalar import CycRational
    r = alg.r
    poly = {(0,): None}
    poly = {(0, 0): Scalar.one(r)}
    pm = 1 if sign > 0 else -1
    for s in range(r):
        e = pm * unfolded_pairing(alg, i, j, s)
        w = Scalar.from_cyc(CycRational.omega(r, s))
        if left:
            za, wa = Scalar.one(r), -w * Scalar.q_power(r, e)
        else:
            za, wa = Scalar.q_power(r, e), -w
        new = {}
        for (az, aw), c in poly.items():
            for (dz, dw), f in (((1, 0), za), ((0, 1), wa)):
                key = (az + dz, aw + dw)
                v = c * f
                if key in new:
                    new[key] = new[key] + v
                else:
                    new[key] = v
        poly = {k: v for k, v in new.items() if v}
    return poly


def check_iso_degree0(alg):
    """Degree-zero loop generators against the Chevalley matrices."""
    report = CheckReport(f"iso0/{alg.type.family}/n={alg.n}")
    for variant in ("module", "dual"):
        rep = MatrixRep(alg, variant)
        for i in range(1, alg.n + 1):
            e = chevalley_matrix(alg, "e", i, variant)
            report.add(f"{variant}/e/{i}", "e_i = x_i^+(0)", {"i": i},
                       (rep.x(1, i, 0) - e).witness())
            f = chevalley_matrix(alg, "f", i, variant)
            c = Scalar.from_rational(alg.r, QQ(1, alg.p[i]))
            report.add(f"{variant}/f/{i}", "f_i = (1/p_i) x_i^-(0)", {"i": i},
                       (rep.x(-1, i, 0).scale(c) - f).witness())
        t0 = chevalley_matrix(alg, "t", 0, variant)
        report.add(f"{variant}/t0", "t_0 = gamma K_theta^-1 (gamma = 1)", {},
                   (rep.K_theta_inv() - t0).witness())
    return report.normalized()


# ---------------------------------------------------------------------------
# numeric probe
# ---------------------------------------------------------------------------

def probe_identities(alg, rng, count=20, variant="module"):
    """Sample (label, lhs, rhs) Scalar pairs from passing relation instances.

    Both sides are computed independently so a re-evaluation at a
    numeric point genuinely cross-checks the symbolic arithmetic.
    """
    rep = MatrixRep(alg, variant)
    pairs = []
    n = alg.n
    for _ in range(count * 3):
        i = rng.randrange(1, n + 1)
        j = rng.randrange(1, n + 1)
        kind = rng.choice(["ax", "Kx", "xpxm"])
        if kind == "ax":
            k = rng.choice(_modes(alg, i, 2, nonzero=True))
            l = rng.choice(_modes(alg, j, 2))
            sign = rng.choice([1, -1])
            lhs = qbracket(rep.a(i, k), rep.x(sign, j, l))
            c = structure_sum(alg, i, j, k)
            if sign < 0:
                c = -c
            rhs = rep.x(sign, j, k + l).scale(c)
            label = f"ax/{i},{j},{k},{l},{sign}"
        elif kind == "Kx":
            k = rng.choice(_modes(alg, j, 2))
            sign = rng.choice([1, -1])
            lhs = rep.K(i) * rep.x(sign, j, k)
            rhs = (rep.x(sign, j, k) * rep.K(i)).scale(
                Scalar.q_power(alg.r, sign * alg.gram[i - 1][j - 1]))
            label = f"Kx/{i},{j},{k},{sign}"
        else:
            if i != j:
                continue
            k = rng.choice(_modes(alg, i, 2))
            l = -k
            lhs = qbracket(rep.x(1, i, k), rep.x(-1, i, l))
            qi = alg.q_i(i)
            denom = (qi - qi.inverse()).inverse()
            mult = Scalar.from_rational(alg.r, alg.r if alg.is_fixed(i) else 1)
            rhs = rep.psi(i, 0).scale(denom * mult) - rep.phi(i, 0).scale(denom * mult)
            label = f"xpxm/{i},{k}"
        keys = set()
        for e, blk in lhs.blocks.items():
            keys.update((e, rc) for rc in blk)
        for e, blk in rhs.blocks.items():
            keys.update((e, rc) for rc in blk)
        if not keys:
            continue
        e, rc = sorted(keys, key=lambda t: (QQ(t[0]), t[1]))[rng.randrange(len(keys))]
        zero = Scalar.zero(alg.r)
        pairs.append((label + f"@{e},{rc}",
                      lhs.blocks.get(e, {}).get(rc, zero),
                      rhs.blocks.get(e, {}).get(rc, zero)))
        if len(pairs) >= count:
            break
    return pairs
