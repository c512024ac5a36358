"""Static algebra data for the four twisted families.

Everything is derived from the untwisted simply-laced diagram together
with its automorphism: the twisted Cartan matrix, the symmetrizing
d-vector, the bilinear form on the projected root lattice, the highest
root, marks/dual marks, and the fundamental coweights used by the free
boson realization.  Deriving (rather than transcribing) the affine data
keeps small-rank members of each family consistent automatically.

Families (rank n is the number of finite nodes):

========  ==================  =====  ==========================
key       untwisted diagram   twist  fixed subalgebra
========  ==================  =====  ==========================
A-odd-2   A_{2n-1}  (n >= 2)    2    C_n
D-2       D_{n+1}   (n >= 2)    2    B_n
A-even-2  A_{2n}    (n >= 1)    2    B_n
D4-3      D_4       (n == 2)    3    G_2
========  ==================  =====  ==========================
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .qscalar import QQ, CycRational, Scalar, qint

__all__ = [
    "FAMILIES",
    "TwistedType",
    "AlgebraData",
    "make_algebra",
    "unfolded_pairing",
    "structure_sum",
    "aa_scalar",
    "pairing",
    "algebra_to_json",
]

FAMILIES = ("A-odd-2", "D-2", "A-even-2", "D4-3")

_MIN_RANK = {"A-odd-2": 2, "D-2": 2, "A-even-2": 1, "D4-3": 2}
_MAX_RANK = {"D4-3": 2}


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class TwistedType:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown family {self.family!r}")
        if self.n < _MIN_RANK[self.family]:
            raise ConfigurationError(
                f"{self.family} needs n >= {_MIN_RANK[self.family]}, got n={self.n}")
        if self.family in _MAX_RANK and self.n != _MAX_RANK[self.family]:
            raise ConfigurationError(f"{self.family} is defined only for n=2")


def _untwisted(family, n):
    """Return (N, edges, sigma) of the untwisted diagram; sigma is 1-based."""
    if family == "A-odd-2":
        N = 2 * n - 1
        edges = [(i, i + 1) for i in range(1, N)]
        sigma = {i: N + 1 - i for i in range(1, N + 1)}
    elif family == "A-even-2":
        N = 2 * n
        edges = [(i, i + 1) for i in range(1, N)]
        sigma = {i: N + 1 - i for i in range(1, N + 1)}
    elif family == "D-2":
        N = n + 1
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 1, n), (n - 1, n + 1)]
        sigma = {i: i for i in range(1, n)}
        sigma[n], sigma[n + 1] = n + 1, n
    else:  # D4-3
        N = 4
        edges = [(1, 2), (2, 3), (2, 4)]
        sigma = {1: 3, 2: 2, 3: 4, 4: 1}
    return N, edges, sigma


def _theta0(family, n, N):
    """Coefficients of the distinguished untwisted root used for the 0 node."""
    if family == "A-odd-2":
        return tuple(1 if 1 <= i <= 2 * n - 2 else 0 for i in range(1, N + 1))
    if family == "D-2":
        return tuple(1 if i <= n else 0 for i in range(1, N + 1))
    if family == "A-even-2":
        return (1,) * N
    return (1, 1, 1, 0)


@dataclass(frozen=True)
class AlgebraData:
    type: TwistedType
    r: int
    N: int
    n: int
    sigma: tuple                # sigma[i] for i in 1..N (index 0 unused)
    unfolded_gram: tuple        # N x N, <alpha_i'|alpha_j'>, 1-based via offset
    orbits: tuple               # ((rep, orbit_nodes, p), ...) for rep = 1..n
    p: tuple                    # p[i] for i in 0..n (p[0] unused, kept 1)
    d: tuple                    # d[i] for i in 0..n, QQ
    gram: tuple                 # n x n, (alpha_i|alpha_j) on finite nodes, QQ
    gram_aff: tuple             # (n+1) x (n+1) including the 0 node, QQ
    cartan: tuple               # (n+1) x (n+1) integer Cartan matrix
    theta: tuple                # theta in the basis alpha_1..alpha_n, ints
    marks: tuple                # delta = sum marks[i] * alpha_i, ints, len n+1
    dual_marks: tuple           # canonical central element coefficients, len n+1
    fw: tuple                   # fundamental coweights: fw[i] is a QQ n-vector,
                                # (fw[i] | alpha_j) = delta_ij, for i = 1..n
    lambda1_alpha: tuple        # printed expansion of lambda_1 in alpha_i
    lambdan_alpha: tuple        # printed expansion of lambda_n (D-2 only) or None
    lambda1_unfolded: tuple
    lambdan_unfolded: tuple
    a_epsilon: int
    sectors: tuple              # available level-one sector tags

    # -- basic helpers ---------------------------------------------------

    def q_i(self, i):
        """q_i = q^{d_i} as a Scalar."""
        return Scalar.q_power(self.r, self.d[i])

    def qint_i(self, k, i):
        """[k]_i in base q_i."""
        return qint(k, self.d[i], self.r)

    def is_fixed(self, i):
        return self.sigma[i] == i if 1 <= i <= self.N else False

    def mode_step(self, i):
        """Modes of x_i/a_i are multiples of this (r for sigma-fixed nodes)."""
        return self.r if self.p[i] == self.r else 1

    def mode_allowed(self, i, k):
        return k % self.mode_step(i) == 0

    def fw_vector(self, i):
        return self.fw[i - 1]

    def sector_shift(self, tag):
        """Lattice shift of the sector vacuum, as a QQ n-vector."""
        n = self.n
        if tag == "L0" or (tag == "Ln" and self.type.family == "A-even-2"):
            return (QQ(0),) * n
        if tag == "L1":
            return self.fw[0]
        if tag == "Ln":
            return self.fw[n - 1]
        raise ConfigurationError(f"unknown sector {tag!r} for {self.type.family}")


def _solve(mat, rhs):
    """Solve mat * x = rhs exactly over QQ (mat square, invertible)."""
    n = len(rhs)
    a = [[QQ(mat[i][j]) for j in range(n)] + [QQ(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(row[n] for row in a)


def _null_vector(mat):
    """Positive integer null vector (mat * x = 0) with gcd 1, first entry set."""
    m = len(mat)
    # solve for x_1..x_{m-1} with x_0 = 1 using rows 0..m-2
    sub = [[QQ(mat[i][j]) for j in range(1, m)] for i in range(m - 1)]
    rhs = [-QQ(mat[i][0]) for i in range(m - 1)]
    tail = _solve(sub, rhs)
    vec = (QQ(1),) + tail
    # verify the remaining row and clear denominators
    assert sum(QQ(mat[m - 1][j]) * vec[j] for j in range(m)) == 0
    from math import gcd, lcm
    denom = 1
    for v in vec:
        denom = lcm(denom, int(v.denominator))
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints)


@lru_cache(maxsize=None)
def make_algebra(family, n, d_override_n1=False):
    """Construct the full static data set for one twisted family member.

    ``d_override_n1`` switches A-even-2 at n=1 to the alternative
    normalization d = (4, 1); the default keeps the generic d-vector
    (2, 1/2), which is the one the representation tables satisfy.
    """
    t = TwistedType(family, n)
    r = 3 if family == "D4-3" else 2
    N, edges, sig = _untwisted(family, n)

    gram = [[0] * (N + 1) for _ in range(N + 1)]
    for i in range(1, N + 1):
        gram[i][i] = 2
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1

    def pair(i, j):
        return gram[i][j]

    # sigma orbits, with representatives 1..n
    orbits = []
    p = [1] * (n + 1)
    seen = set()
    for i in range(1, N + 1):
        if i in seen:
            continue
        orb = [i]
        j = sig[i]
        while j != i:
            orb.append(j)
            j = sig[j]
        seen.update(orb)
        rep = min(orb)
        orbits.append((rep, tuple(orb)))
    orbits.sort()
    assert [o[0] for o in orbits] == list(range(1, n + 1))
    orbits_full = []
    for rep, orb in orbits:
        pi = r if len(orb) == 1 else 1
        p[rep] = pi
        orbits_full.append((rep, orb, pi))

    # projected form on the finite nodes: (alpha_i|alpha_j) = sum_s <a_i'|s^s a_j'>
    def s_pair(vi, vj):
        """sum_s <vi | sigma^s vj> for coefficient vectors over unfolded nodes."""
        total = QQ(0)
        wj = list(vj)
        for _ in range(r):
            total += sum(vi[a] * wj[b] * pair(a + 1, b + 1)
                         for a in range(N) for b in range(N)
                         if vi[a] and wj[b])
            wj = [sum(wj[b] for b in range(N) if sig[b + 1] == a + 1) for a in range(N)]
        return total

    unit = [tuple(1 if k == i else 0 for k in range(N)) for i in range(N)]
    G = [[s_pair(unit[i - 1], unit[j - 1]) for j in range(1, n + 1)]
         for i in range(1, n + 1)]

    d = [QQ(0)] * (n + 1)
    for i in range(1, n + 1):
        d[i] = G[i - 1][i - 1] / 2
    if family == "A-even-2" and n == 1 and d_override_n1:
        scale = QQ(2)
        G = [[g * scale for g in row] for row in G]
        for i in range(1, n + 1):
            d[i] = G[i - 1][i - 1] / 2

    th0 = _theta0(family, n, N)
    pair0 = [-s_pair(th0, unit[j - 1]) for j in range(1, n + 1)]
    norm0 = s_pair(th0, th0)
    if family == "A-even-2" and n == 1 and d_override_n1:
        pair0 = [x * 2 for x in pair0]
        norm0 = norm0 * 2
    d[0] = norm0 / 2

    Ga = [[QQ(0)] * (n + 1) for _ in range(n + 1)]
    Ga[0][0] = norm0
    for j in range(1, n + 1):
        Ga[0][j] = Ga[j][0] = pair0[j - 1]
        for k in range(1, n + 1):
            Ga[j][k] = G[j - 1][k - 1]

    A = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            a = Ga[i][j] / d[i]
            assert a.denominator == 1, "Cartan matrix entry must be integral"
            A[i][j] = int(a)
    for i in range(n + 1):
        assert A[i][i] == 2
        for j in range(n + 1):
            assert d[i] * A[i][j] == d[j] * A[j][i], "symmetrizability"

    # theta in the projected basis: orbit content of the unfolded root
    theta = []
    for rep, orb, _pi in orbits_full:
        theta.append(sum(th0[j - 1] for j in orb))
    theta = tuple(theta)
    marks = (1,) + theta
    for j in range(n + 1):
        assert sum(A[j][k] * marks[k] for k in range(n + 1)) == 0, "delta is null"

    dual_marks = _null_vector([[A[j][i] for j in range(n + 1)] for i in range(n + 1)])
    assert all(v > 0 for v in dual_marks)

    fw = tuple(_solve(G, [QQ(1) if k == i else QQ(0) for k in range(n)])
               for i in range(n))

    if family == "A-odd-2":
        l1a = tuple([2] * (n - 1) + [1])
        l1u = (QQ(1),) * N
        lna = lnu = None
        sectors = ("L0", "L1")
        a_eps = 1
    elif family == "D-2":
        l1a = (1,) * n
        l1u = tuple([QQ(1)] * (n - 1) + [QQ(1, 2), QQ(1, 2)])
        lna = tuple([QQ(i) for i in range(1, n)] + [QQ(n, 2)])
        lnu = tuple([QQ(i) for i in range(1, n)] + [QQ(n, 2), QQ(n, 2)])
        sectors = ("L0", "Ln")
        a_eps = 1
    elif family == "A-even-2":
        l1a = (2,) * n
        l1u = (QQ(1),) * N
        lna = lnu = None
        sectors = ("Ln",)
        a_eps = 2
    else:
        l1a = (2, 3)
        l1u = (QQ(2), QQ(3), QQ(2), QQ(2))
        lna = lnu = None
        sectors = ("L0",)
        a_eps = 1

    return AlgebraData(
        type=t, r=r, N=N, n=n,
        sigma=tuple([0] + [sig[i] for i in range(1, N + 1)]),
        unfolded_gram=tuple(tuple(row[1:]) for row in gram[1:]),
        orbits=tuple(orbits_full),
        p=tuple(p), d=tuple(d),
        gram=tuple(tuple(row) for row in G),
        gram_aff=tuple(tuple(row) for row in Ga),
        cartan=tuple(tuple(row) for row in A),
        theta=theta, marks=marks, dual_marks=tuple(dual_marks),
        fw=fw,
        lambda1_alpha=l1a, lambdan_alpha=lna,
        lambda1_unfolded=l1u, lambdan_unfolded=lnu,
        a_epsilon=a_eps, sectors=sectors,
    )


def unfolded_pairing(alg, i, j, s=0):
    """<alpha_i' | sigma^s(alpha_j')> on the untwisted diagram."""
    for _ in range(s % alg.r):
        j = alg.sigma[j]
    return alg.unfolded_gram[i - 1][j - 1]


def qratio(alg, a, d):
    """(q^a - q^-a) / (q^d - q^-d) as a Scalar; a, d half integers."""
    r = alg.r
    num = Scalar.q_power(r, a) - Scalar.q_power(r, -a)
    den = Scalar.q_power(r, d) - Scalar.q_power(r, -d)
    return num / den


_qratio = qratio


def structure_sum(alg, i, j, k):
    """Coefficient of the Heisenberg action on loop generators.

    Returns sum_s ([k <alpha_i'|sigma^s alpha_j'> / d_i]_i / k) * omega^{ks},
    the gamma-free part of the [a_i(k), x_j(l)] constant.
    """
    if k == 0:
        raise ValueError("mode k must be nonzero")
    r = alg.r
    out = Scalar.zero(r)
    for s in range(r):
        u = unfolded_pairing(alg, i, j, s)
        if u == 0:
            continue
        term = _qratio(alg, QQ(k) * u, alg.d[i])
        w = CycRational.omega(r, (k * s) % r)
        out = out + term * Scalar.from_cyc(w)
    return out * Scalar.from_rational(r, QQ(1, k))


def aa_scalar(alg, i, j, k, gamma_q=True):
    """[a_i(k), a_j(-k)] central scalar; gamma_q chooses gamma = q over gamma = 1."""
    if not gamma_q:
        return Scalar.zero(alg.r)
    return structure_sum(alg, i, j, k) * _qratio(alg, QQ(k), alg.d[j])


def pairing(alg, u, v):
    """Projected bilinear form on QQ vectors in the basis alpha_1..alpha_n."""
    total = QQ(0)
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if vj:
                total += QQ(ui) * QQ(vj) * alg.gram[i][j]
    return total


def algebra_to_json(alg):
    """Golden-file dump of the derived static data."""
    return json.dumps({
        "family": alg.type.family,
        "n": alg.n,
        "r": alg.r,
        "N": alg.N,
        "cartan": [list(row) for row in alg.cartan],
        "d": [str(x) for x in alg.d],
        "sigma": list(alg.sigma[1:]),
        "orbits": [{"rep": rep, "orbit": list(orb), "p": p} for rep, orb, p in alg.orbits],
        "gram": [[str(x) for x in row] for row in alg.gram],
        "theta": list(alg.theta),
        "marks": list(alg.marks),
        "dual_marks": list(alg.dual_marks),
        "sectors": list(alg.sectors),
    }, indent=2, sort_keys=True)
