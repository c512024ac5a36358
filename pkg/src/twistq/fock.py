"""Level-one modules on twisted free bosons.

A basis state is a boson monomial (a multiset of creation modes per
orbit node), a point of the projected root lattice, and a sector tag.
The lattice part uses canonical-section coordinates: the group element
behind a point mu is the ordered word e_1^{mu_1} ... e_n^{mu_n} of
section generators, so cocycle values are fixed bimultiplicatively by
their values on generator pairs.  Vertex operator modes are extracted
by the exact degree grading: for a fixed input state and output mode
only finitely many terms of the two exponentials contribute, so every
application is a finite exact computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .qscalar import QQ, CycRational, Scalar
from .cartan import make_algebra, qratio, structure_sum, aa_scalar, unfolded_pairing

__all__ = [
    "SqrtScalar",
    "FockState",
    "FockVector",
    "FockSpace",
    "LinOp",
    "FockRep",
    "enumerate_basis",
    "heisenberg_apply",
    "lattice_apply",
    "weight_apply",
    "X_mode",
    "highest_weight_vector",
    "check_level_one",
]


class SqrtScalar:
    """Element a + b*rho of the quadratic extension Scalar[rho], rho^2 = p.

    p is 2 or 3 (the square root carried by the sigma-fixed vertex
    operators); p = 1 collapses to plain Scalars with b = 0.
    """

    __slots__ = ("a", "b", "p")

    def __init__(self, a, b=None, p=1):
        self.p = p
        if b is None:
            b = Scalar.zero(a.r)
        if p == 1 and b:
            a = a + b
            b = Scalar.zero(a.r)
        self.a = a
        self.b = b

    @classmethod
    def root(cls, r, p):
        """The formal square root of p itself."""
        if p == 1:
            return cls(Scalar.one(r), None, 1)
        return cls(Scalar.zero(r), Scalar.one(r), p)

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def _lift(self, other):
        if isinstance(other, SqrtScalar):
            if other.p != self.p and other.b and self.b:
                raise ValueError("mixed root extensions")
            return other
        return SqrtScalar(other, None, self.p)

    def __add__(self, other):
        o = self._lift(other)
        p = self.p if self.p != 1 else o.p
        return SqrtScalar(self.a + o.a, self.b + o.b, p)

    def __sub__(self, other):
        o = self._lift(other)
        p = self.p if self.p != 1 else o.p
        return SqrtScalar(self.a - o.a, self.b - o.b, p)

    def __neg__(self):
        return SqrtScalar(-self.a, -self.b, self.p)

    def __mul__(self, other):
        if isinstance(other, SqrtScalar):
            a = self.a * other.a + (self.b * other.b) * Scalar.from_rational(self.a.r, self.p)
            b = self.a * other.b + self.b * other.a
            return SqrtScalar(a, b, self.p)
        return SqrtScalar(self.a * other, self.b * other, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.b:
            return SqrtScalar(self.a.inverse(), None, self.p)
        norm = self.a * self.a - self.b * self.b * Scalar.from_rational(self.a.r, self.p)
        ninv = norm.inverse()
        return SqrtScalar(self.a * ninv, -self.b * ninv, self.p)

    def __eq__(self, other):
        o = self._lift(other)
        return self.a == o.a and self.b == o.b

    def __repr__(self):
        if not self.b:
            return repr(self.a)
        if not self.a:
            return f"({self.b!r})*rt{self.p}"
        return f"({self.a!r}) + ({self.b!r})*rt{self.p}"


@dataclass(frozen=True)
class FockState:
    bosons: tuple      # sorted tuple of (node i, positive mode m) for a_i(-m)
    mu: tuple          # integer lattice coordinates, length n
    sector: str

    def level(self):
        return sum(m for _, m in self.bosons)


class FockVector:
    """Finite Scalar[rho]-linear combination of basis states."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for s, c in terms.items():
                if c:
                    self.terms[s] = c

    @classmethod
    def unit(cls, state, coeff):
        v = cls()
        if coeff:
            v.terms[state] = coeff
        return v

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = FockVector()
        out.terms = dict(self.terms)
        for s, c in other.terms.items():
            u = out.terms.get(s)
            w = c if u is None else u + c
            if w:
                out.terms[s] = w
            else:
                out.terms.pop(s, None)
        return out

    def __sub__(self, other):
        return self + other.scale_rat(-1)

    def __neg__(self):
        return self.scale_rat(-1)

    def scale(self, c):
        if isinstance(c, int):
            return self.scale_rat(c)
        out = FockVector()
        for s, u in self.terms.items():
            w = u * c
            if w:
                out.terms[s] = w
        return out

    def scale_rat(self, c):
        if c == 0:
            return FockVector()
        out = FockVector()
        for s, u in self.terms.items():
            r = u.a.r
            out.terms[s] = u * Scalar.from_rational(r, c)
        return out

    def __eq__(self, other):
        keys = set(self.terms) | set(other.terms)
        for s in keys:
            u = self.terms.get(s)
            v = other.terms.get(s)
            if u is None:
                if v:
                    return False
            elif v is None:
                if u:
                    return False
            elif u != v:
                return False
        return True

    def witness(self):
        for s in sorted(self.terms, key=_state_key):
            if self.terms[s]:
                return (s, self.terms[s])
        return None

    def items(self):
        return self.terms.items()

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for s in sorted(self.terms, key=_state_key):
            bits.append(f"({self.terms[s]!r})*|{s.bosons},{s.mu},{s.sector}>")
        return " + ".join(bits)


def _state_key(s):
    return (s.sector, s.mu, s.bosons)


def _partitions(total, step):
    """Multisets of positive parts (multiples of step) summing to total."""
    if total == 0:
        yield ()
        return
    if step <= 0 or total % 1:
        return

    def rec(rem, largest):
        if rem == 0:
            yield ()
            return
        p = step
        while p <= min(rem, largest):
            for tail in rec(rem - p, p):
                yield (p,) + tail
            p += step
    yield from rec(total, total)


class FockSpace:
    """All derived data needed to act on the level-one module of one family."""

    def __init__(self, alg):
        self.alg = alg
        self.r = alg.r
        self.n = alg.n
        self.p0 = alg.r if any(alg.is_fixed(i) for i in range(1, alg.n + 1)) else 1
        # degree quadratic form normalization: the self-adjacent family
        # (no fixed node, odd diagonal) needs the doubled quadratic term
        self.cD = QQ(1) if alg.type.family == "A-even-2" else QQ(1, 2)
        self.G = alg.gram
        self._eps = self._build_cocycle()
        self._B = {}
        self._xcache = {}
        self._coef = {}
        self._shift = {t: alg.sector_shift(t) for t in alg.sectors}

    # -- cocycle -------------------------------------------------------

    def _build_cocycle(self):
        alg = self.alg
        r = alg.r
        n = alg.n
        eps = [[None] * n for _ in range(n)]
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if a < b:
                    eps[a - 1][b - 1] = CycRational.from_rational(r, 1)
                elif a > b:
                    eps[a - 1][b - 1] = self.c_commutator_nodes(a, b)
                else:
                    e = -sum(unfolded_pairing(alg, a, a, s) for s in range(r))
                    eps[a - 1][b - 1] = CycRational.omega(r, e % r)
        return eps

    def c_commutator_nodes(self, a, b):
        """C(alpha_a', alpha_b') = prod_s (-w^s)^{<alpha_a'|s^s alpha_b'>}."""
        alg = self.alg
        r = alg.r
        out = CycRational.from_rational(r, 1)
        for s in range(r):
            e = unfolded_pairing(alg, a, b, s)
            if e == 0:
                continue
            v = CycRational.omega(r, (s * e) % r)
            if e % 2:
                v = -v
            out = out * v
        return out

    def cocycle_phase(self, shift, mu):
        """epsilon(shift, mu) for integer coordinate vectors."""
        r = self.r
        out = CycRational.from_rational(r, 1)
        for a in range(self.n):
            sa = shift[a]
            if not sa:
                continue
            for b in range(self.n):
                mb = mu[b]
                if not mb:
                    continue
                e = self._eps[a][b]
                k = sa * mb
                v = e
                if k != 1:
                    # integer power of a root of unity
                    v = _cyc_pow(e, k)
                out = out * v
        return out

    # -- gradings --------------------------------------------------------

    def mu_eff(self, state):
        sh = self._shift[state.sector]
        return tuple(QQ(m) + sh[i] for i, m in enumerate(state.mu))

    def weight_exp(self, j, state):
        """Integer w with K_j acting as q^w on the state."""
        me = self.mu_eff(state)
        w = sum(self.G[j - 1][b] * me[b] for b in range(self.n))
        assert w.denominator == 1
        return int(w)

    def degree(self, state):
        """Exact degree relative to the sector vacuum (a nonpositive number)."""
        me = self.mu_eff(state)
        sh = self._shift[state.sector]
        q2 = sum(me[a] * self.G[a][b] * me[b] for a in range(self.n) for b in range(self.n))
        q0 = sum(sh[a] * self.G[a][b] * sh[b] for a in range(self.n) for b in range(self.n))
        d = -QQ(state.level()) - self.cD * (q2 - q0)
        return d

    # -- Heisenberg ------------------------------------------------------

    def contraction(self, i, j, k):
        """[a_i(k), a_j(-k)] at gamma = q, for k > 0."""
        key = (i, j, k)
        if key not in self._B:
            self._B[key] = aa_scalar(self.alg, i, j, k, gamma_q=True)
        return self._B[key]


def highest_weight_vector(alg, sector):
    sp = fock_space(alg)
    if sector not in alg.sectors:
        raise ValueError(f"sector {sector!r} not available for {alg.type.family}")
    state = FockState((), (0,) * alg.n, sector)
    return FockVector.unit(state, SqrtScalar(Scalar.one(alg.r), None, sp.p0))


_SPACES = {}


def fock_space(alg):
    sp = _SPACES.get(id(alg))
    if sp is None:
        sp = FockSpace(alg)
        _SPACES[id(alg)] = sp
    return sp


def _cyc_pow(c, k):
    # roots of unity: use exponent arithmetic where possible
    out = CycRational.from_rational(c.r, 1)
    base = c if k > 0 else c.inverse()
    for _ in range(abs(k)):
        out = out * base
    return out


# ---------------------------------------------------------------------------
# elementary operators
# ---------------------------------------------------------------------------

def heisenberg_apply(alg, i, k, vec):
    """a_i(k) on a FockVector (k < 0 creates, k > 0 contracts)."""
    sp = fock_space(alg)
    out = FockVector()
    if k == 0 or not alg.mode_allowed(i, k):
        return out
    for s, c in vec.items():
        if k < 0:
            bos = tuple(sorted(s.bosons + ((i, -k),)))
            out = out + FockVector.unit(FockState(bos, s.mu, s.sector), c)
        else:
            seen = set()
            for idx, (j, m) in enumerate(s.bosons):
                if m != k or (j, m) in seen:
                    continue
                seen.add((j, m))
                t = s.bosons.count((j, m))
                B = sp.contraction(i, j, k)
                if not B:
                    continue
                rest = list(s.bosons)
                rest.remove((j, m))
                coeff = c * (B * Scalar.from_rational(alg.r, t))
                out = out + FockVector.unit(FockState(tuple(rest), s.mu, s.sector), coeff)
    return out


def lattice_apply(alg, shift, vec):
    """Multiplication by the section element over sum_a shift_a alpha_a'."""
    sp = fock_space(alg)
    out = FockVector()
    shift = tuple(int(x) for x in shift)
    for s, c in vec.items():
        phase = sp.cocycle_phase(shift, s.mu)
        mu = tuple(m + d for m, d in zip(s.mu, shift))
        out = out + FockVector.unit(FockState(s.bosons, mu, s.sector),
                                    c * Scalar.from_cyc(phase))
    return out


def weight_apply(alg, base, shift, pair_vec, vec):
    """Scale each state by base^{(pair_vec | mu_eff) + shift}.

    base must be a monomial Scalar; the exponent must resolve to an
    integer on every state, otherwise the lattice bookkeeping is wrong
    and a hard error is raised.
    """
    if not base.is_monomial():
        raise ValueError("weight_apply needs a monomial base")
    sp = fock_space(alg)
    out = FockVector()
    for s, c in vec.items():
        me = sp.mu_eff(s)
        e = sum(QQ(pair_vec[a]) * sp.G[a][b] * me[b]
                for a in range(alg.n) for b in range(alg.n)) + QQ(shift)
        if e.denominator != 1:
            raise ValueError(f"non-integral weight exponent {e}")
        out = out + FockVector.unit(s, c * (base ** int(e)))
    return out


def _k_apply(alg, j, power, vec):
    sp = fock_space(alg)
    out = FockVector()
    for s, c in vec.items():
        w = sp.weight_exp(j, s)
        out = out + FockVector.unit(s, c * Scalar.q_power(alg.r, power * w))
    return out


# ---------------------------------------------------------------------------
# vertex operator modes
# ---------------------------------------------------------------------------

def _exp_coeffs(alg, i, sign):
    """Per-mode coefficients of the two exponentials of X_i^{sign}."""
    r = alg.r
    sp = fock_space(alg)
    cache = sp._coef

    def creation(k):
        key = (sign, i, "c", k)
        v = cache.get(key)
        if v is None:
            v = Scalar.q_power(r, QQ(-sign * k, 2)) / qratio(alg, k, alg.d[i]) \
                * Scalar.from_rational(r, sign)
            cache[key] = v
        return v

    def annihilation(k):
        key = (sign, i, "a", k)
        v = cache.get(key)
        if v is None:
            v = Scalar.q_power(r, QQ(-sign * k, 2)) / qratio(alg, k, alg.d[i]) \
                * Scalar.from_rational(r, -sign)
            cache[key] = v
        return v

    return creation, annihilation


def _x_on_state(sp, sign, i, m, s):
    alg = sp.alg
    r = alg.r
    key = (sign, i, m, s)
    hit = sp._xcache.get(key)
    if hit is not None:
        return hit
    out = FockVector()
    if not alg.mode_allowed(i, m):
        sp._xcache[key] = out
        return out
    step = alg.mode_step(i)
    cre, ann = _exp_coeffs(alg, i, sign)
    d_in = sp.degree(s)
    if alg.p[i] > 1:
        root = SqrtScalar.root(r, sp.p0)
    else:
        root = SqrtScalar(Scalar.one(r), None, sp.p0)
    level = s.level()
    unit = FockVector.unit(s, SqrtScalar(Scalar.one(r), None, sp.p0))
    # annihilation exponential, truncated by the boson level
    for amult in _partitions_upto(level, step):
        coefA = Scalar.one(r)
        w = unit
        mult = {}
        for p in amult:
            mult[p] = mult.get(p, 0) + 1
        for p, t in mult.items():
            coefA = coefA * (ann(p) ** t) * Scalar.from_rational(r, QQ(1, factorial(t)))
            for _ in range(t):
                w = heisenberg_apply(alg, i, p, w)
                if w.is_zero():
                    break
            if w.is_zero():
                break
        if w.is_zero() or not coefA:
            continue
        w = lattice_apply(alg, tuple(sign if a == i - 1 else 0 for a in range(alg.n)), w)
        for u, cu in w.items():
            c_need = sp.degree(u) - (d_in + m)
            if c_need < 0 or c_need.denominator != 1 or int(c_need) % step:
                continue
            for cmult in _partitions(int(c_need), step):
                coefC = Scalar.one(r)
                multc = {}
                for p in cmult:
                    multc[p] = multc.get(p, 0) + 1
                for p, t in multc.items():
                    coefC = coefC * (cre(p) ** t) * Scalar.from_rational(r, QQ(1, factorial(t)))
                bos = tuple(sorted(u.bosons + tuple((i, p) for p in cmult)))
                st = FockState(bos, u.mu, u.sector)
                out = out + FockVector.unit(st, cu * (coefA * coefC) * root)
    sp._xcache[key] = out
    return out


def _partitions_upto(maxtotal, step):
    for total in range(0, maxtotal + 1, step):
        yield from _partitions(total, step)


def X_mode(alg, sign, i, m, vec):
    """Mode m of the level-one vertex operator X_i^{sign} on a FockVector."""
    sp = fock_space(alg)
    out = FockVector()
    for s, c in vec.items():
        out = out + _x_on_state(sp, sign, i, m, s).scale(c)
    return out


# ---------------------------------------------------------------------------
# representation protocol for the Drinfeld suite
# ---------------------------------------------------------------------------

class LinOp:
    """A linear operator on FockVectors, composable like a matrix."""

    __slots__ = ("fn",)

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, vec):
        return self.fn(vec)

    def __mul__(self, other):
        return LinOp(lambda v: self.fn(other.fn(v)))

    def __add__(self, other):
        return LinOp(lambda v: self.fn(v) + other.fn(v))

    def __sub__(self, other):
        return LinOp(lambda v: self.fn(v) - other.fn(v))

    def __neg__(self):
        return LinOp(lambda v: -self.fn(v))

    def scale(self, c):
        return LinOp(lambda v: self.fn(v).scale(c))


class FockRep:
    """Level-one module as a Drinfeld representation (gamma = q)."""

    gamma_q = True

    def __init__(self, alg, sector, L=2):
        self.alg = alg
        self.sector = sector
        self.L = L
        self.r = alg.r
        self.space = fock_space(alg)
        self.basis = enumerate_basis(alg, sector, L)

    def label(self):
        return f"Fock({self.alg.type.family},n={self.alg.n},{self.sector},L={self.L})"

    def x(self, sign, i, k):
        alg = self.alg
        return LinOp(lambda v: X_mode(alg, sign, i, k, v))

    def a(self, i, k):
        alg = self.alg
        return LinOp(lambda v: heisenberg_apply(alg, i, k, v))

    def K(self, i, power=1):
        alg = self.alg
        return LinOp(lambda v: _k_apply(alg, i, power, v))

    def K_theta_inv(self):
        alg = self.alg

        def fn(v):
            out = v
            for j, c in enumerate(alg.theta, start=1):
                for _ in range(c):
                    out = _k_apply(alg, j, -1, out)
            return out
        return LinOp(fn)

    def psi(self, i, m):
        return self._psiphi(i, m, True)

    def phi(self, i, m):
        return self._psiphi(i, -m, False) if m <= 0 else self.zero()

    def _psiphi(self, i, m, is_psi):
        alg = self.alg
        if (is_psi and m < 0) or (not is_psi and m < 0):
            return self.zero()
        qi = alg.q_i(i)
        coef = qi - qi.inverse()
        if not is_psi:
            coef = -coef
        step = alg.mode_step(i)
        r = alg.r

        def fn(v):
            if m == 0:
                return _k_apply(alg, i, 1 if is_psi else -1, v)
            if m % step:
                return FockVector()
            total = FockVector()
            for part in _partitions(m, step):
                mult = {}
                for p in part:
                    mult[p] = mult.get(p, 0) + 1
                w = v
                cnum = Scalar.one(r)
                for p, t in mult.items():
                    cnum = cnum * (coef ** t) * Scalar.from_rational(r, QQ(1, factorial(t)))
                    for _ in range(t):
                        w = heisenberg_apply(alg, i, p if is_psi else -p, w)
                        if w.is_zero():
                            break
                    if w.is_zero():
                        break
                if w.is_zero():
                    continue
                total = total + w.scale(cnum)
            return _k_apply(alg, i, 1 if is_psi else -1, total)
        return LinOp(fn)

    def gamma_pow(self, half):
        return Scalar.s_power(self.r, int(2 * QQ(half)))

    def zero(self):
        return LinOp(lambda v: FockVector())

    def identity(self):
        return LinOp(lambda v: v)

    def scalar_op(self, c):
        return LinOp(lambda v: v.scale(c))

    def residual(self, op):
        for s in self.basis:
            v = FockVector.unit(s, SqrtScalar(Scalar.one(self.r), None, self.space.p0))
            w = op(v)
            wit = w.witness()
            if wit is not None:
                st, c = wit
                return (f"on |{s.bosons},{s.mu}>", f"|{st.bosons},{st.mu}>", repr(c))
        return None


def enumerate_basis(alg, sector, L):
    """All states within degree L of the sector vacuum, in a fixed order."""
    sp = fock_space(alg)
    if L < 0:
        raise ValueError("L must be >= 0")
    n = alg.n
    box = 2 * L + 4
    states = []
    sh = sp._shift[sector]

    def lattice_points(a, mu):
        if a == n:
            yield tuple(mu)
            return
        for m in range(-box, box + 1):
            mu.append(m)
            yield from lattice_points(a + 1, mu)
            mu.pop()

    steps = [alg.mode_step(i) for i in range(1, n + 1)]

    def boson_sets(slack):
        """Multisets of (node, mode) with total mode sum <= slack."""
        items = []
        for i in range(1, n + 1):
            st = steps[i - 1]
            items.extend((i, m) for m in range(st, slack + 1, st))
        items.sort()

        def rec(start, rem):
            yield ()
            for t in range(start, len(items)):
                i, m = items[t]
                if m <= rem:
                    for tail in rec(t, rem - m):
                        yield ((i, m),) + tail
        seen = set()
        for b in rec(0, slack):
            bb = tuple(sorted(b))
            if bb not in seen:
                seen.add(bb)
                yield bb

    for mu in lattice_points(0, []):
        st0 = FockState((), mu, sector)
        d = sp.degree(st0)
        if d < -L:
            continue
        slack = int(QQ(L) + d) if (QQ(L) + d) >= 0 else -1
        if slack < 0:
            continue
        for bos in boson_sets(slack):
            states.append(FockState(bos, mu, sector))
    states.sort(key=lambda s: (-sp.degree(s), _state_key(s)))
    return states


def check_level_one(alg, sector, window=None):
    """Highest weight checks plus the full loop-relation suite at gamma = q."""
    from .relcheck import CheckReport, ModeWindow, check_drinfeld
    if window is None:
        window = ModeWindow(K=2, L=3)
    rep = FockRep(alg, sector, window.L)
    report = CheckReport(f"fock/{rep.label()}")
    hw = highest_weight_vector(alg, sector)
    sp = rep.space
    # K_j weights of the vacuum
    hw_node = {"L0": -1, "L1": 1, "Ln": alg.n}[sector]
    if _basic_sector(alg, sector):
        hw_node = -1
    for j in range(1, alg.n + 1):
        got = _k_apply(alg, j, 1, hw)
        want = hw.scale(Scalar.q_power(alg.r, alg.d[j] if j == hw_node else 0))
        report.add(f"weight/K{j}", "K_j |hw> = q^{d_j delta} |hw>",
                   {"j": j, "sector": sector}, (got - want).witness())
    # t_0 = gamma K_theta^-1 acts by q on the basic vacuum, by 1 otherwise
    got = rep.K_theta_inv()(hw).scale(rep.gamma_pow(1))
    want = hw.scale(Scalar.q_power(alg.r, 1 if _basic_sector(alg, sector) else 0))
    report.add("weight/t0", "gamma K_theta^-1 |hw> = q^{delta-0 pattern} |hw>",
               {"sector": sector}, (got - want).witness())
    # raising modes kill the highest weight vector
    for i in range(1, alg.n + 1):
        for m in range(0, window.K + 1):
            if not alg.mode_allowed(i, m):
                continue
            w = X_mode(alg, 1, i, m, hw)
            report.add(f"hw/x+{i}({m})", "x_i^+(m) |hw> = 0 for m >= 0",
                       {"i": i, "m": m}, w.witness())
    report.checks.extend(check_drinfeld(alg, rep, window).checks)
    return report.normalized()


def _basic_sector(alg, sector):
    return sector == "L0" or (sector == "Ln" and alg.type.family == "A-even-2")
