"""Cocycles over a division-ring backend and the gauge action on them.

A two-cocycle assigns a coefficient automorphism to every support pair and
a unit to every composability triple, subject to two compatibility
identities (one on 3-chains relating the xi values, one on 2-chains
relating compositions of alphas to inner automorphisms). Gauge pairs
(mu, eta) act on cocycles; orbits of that action are what the ring-level
isomorphism machinery consumes. This module provides verification,
normalization, block trivialization, relabeling along semigroup
automorphisms, the equivalence search, and the first cohomology of a
fixed base cocycle.

Convention: automorphism composition is (a*b)(x) = a(b(x)), and the gauge
product is arranged so that act(gauge_mul(a, b), c) = act(b, act(a, c)).
Relabeling composes the other way around: relabel(phi, relabel(psi, c)) =
relabel(psi*phi, c). Both laws are property-tested rather than trusted.
"""

from dataclasses import dataclass
from itertools import product

from .common import DEFAULT_BOUNDS, ValidationReport
from .errors import (
    InfiniteBackend,
    InvalidCocycle,
    InvalidInput,
    MixedBackends,
    NonCommutativeCoefficients,
    SearchBoundExceeded,
)
from .sgrp import automorphisms as semigroup_automorphisms
from .sgrp import sim_classes


def chain_keys(S, m):
    """Key domain of an m-cochain: indices, support pairs, or pair tuples."""
    if m == 0:
        return list(range(1, S.n + 1))
    if m == 1:
        return S.elements()
    return S.tuples(m)


class Cochain:
    """Total map from composable m-chains to nonzero coefficients."""

    __slots__ = ("m", "data")

    def __init__(self, m, data):
        self.m = m
        self.data = dict(data)

    def __getitem__(self, key):
        return self.data[key]

    def __eq__(self, other):
        return isinstance(other, Cochain) and (other.m, other.data) == (self.m, self.data)

    def is_constant_one(self):
        return all(v == v.field.one for v in self.data.values())

    def __repr__(self):
        return f"Cochain(m={self.m}, {self.data!r})"


def random_cochain(S, m, D, rng):
    return Cochain(m, {key: D.random_unit(rng) for key in chain_keys(S, m)})


def _require_total(S, m, phi):
    keys = chain_keys(S, m)
    for key in keys:
        if key not in phi.data:
            raise InvalidInput(f"cochain missing value at {key}", where=str(key))
    if len(phi.data) != len(keys):
        extra = set(phi.data) - set(keys)
        raise InvalidInput(f"cochain has stray keys {sorted(extra)!r}")


def boundary(S, m, phi):
    """Multiplicative boundary of an m-cochain, m in {0, 1, 2, 3}.

    Commutative coefficients only; the alternating-product formula has no
    unambiguous factor order otherwise.
    """
    sample = next(iter(phi.data.values()))
    if not sample.field.is_commutative:
        raise NonCommutativeCoefficients("boundary maps need commutative coefficients")
    if m != phi.m:
        raise InvalidInput(f"cochain has degree {phi.m}, expected {m}")
    _require_total(S, m, phi)
    out = {}
    if m == 0:
        for i, j in S.elements():
            out[(i, j)] = phi[j] * phi[i].inverse()
        return Cochain(1, out)

    def key_of(chain):
        return chain[0] if len(chain) == 1 else chain

    for chain in S.tuples(m + 1):
        acc = phi[key_of(chain[1:])]
        for a in range(1, m + 1):
            merged = chain[: a - 1] + (S.mul(chain[a - 1], chain[a]),) + chain[a + 1 :]
            term = phi[key_of(merged)]
            acc = acc * (term if a % 2 == 0 else term.inverse())
        last = phi[key_of(chain[:m])]
        acc = acc * (last if m % 2 == 1 else last.inverse())
        out[chain] = acc
    return Cochain(m + 1, out)


def is_abelian_cocycle(S, m, phi):
    return boundary(S, m, phi).is_constant_one()


def is_abelian_coboundary(S, m, phi, bounds=DEFAULT_BOUNDS):
    """Exhaustive preimage search over all (m-1)-cochains, or None."""
    sample = next(iter(phi.data.values()))
    D = sample.field
    if not D.is_finite:
        raise InfiniteBackend("coboundary search needs a finite field")
    keys = chain_keys(S, m - 1)
    units = D.units()
    if len(units) ** len(keys) > bounds.max_search:
        raise SearchBoundExceeded(f"(q-1)^{len(keys)} above {bounds.max_search}")
    for values in product(units, repeat=len(keys)):
        candidate = Cochain(m - 1, dict(zip(keys, values)))
        if boundary(S, m - 1, candidate) == phi:
            return candidate
    return None


class TwoCocycle:
    """Pair (alpha, xi): automorphisms on support, units on comp triples."""

    __slots__ = ("alpha", "xi")

    def __init__(self, alpha, xi):
        self.alpha = dict(alpha)
        self.xi = dict(xi)

    @classmethod
    def trivial(cls, S, D):
        return cls(
            {p: D.identity_automorphism() for p in S.support},
            {t: D.one for t in S.comp},
        )

    @property
    def backend(self):
        return next(iter(self.alpha.values())).field

    def is_normal(self):
        one = self.backend.one
        return all(v == one for t, v in self.xi.items() if t[0] == t[1] == t[2])

    def replace_xi(self, t, value):
        xi = dict(self.xi)
        xi[t] = value
        return TwoCocycle(self.alpha, xi)

    def replace_alpha(self, p, value):
        alpha = dict(self.alpha)
        alpha[p] = value
        return TwoCocycle(alpha, self.xi)

    def __eq__(self, other):
        return isinstance(other, TwoCocycle) and (other.alpha, other.xi) == (self.alpha, self.xi)

    def __repr__(self):
        return f"TwoCocycle(alpha={self.alpha!r}, xi={self.xi!r})"


def verify_two_cocycle(S, c):
    """Report every domain defect and identity failure; empty report = valid."""
    rep = ValidationReport()
    for p in sorted(S.support):
        if p not in c.alpha:
            rep.add("missing_alpha", p)
    for t in sorted(S.comp):
        if t not in c.xi:
            rep.add("missing_xi", t)
    for p in sorted(set(c.alpha) - S.support):
        rep.add("stray_alpha", p)
    for t in sorted(set(c.xi) - S.comp):
        rep.add("stray_xi", t)
    if not rep.ok:
        return rep
    D = c.backend
    for t in sorted(S.comp):
        v = c.xi[t]
        if v.field != D or v.is_zero():
            rep.add("xi_not_unit", t, repr(v))
    for p in sorted(S.support):
        if c.alpha[p].field != D:
            rep.add("mixed_backends", p)
    if not rep.ok:
        return rep

    # xi compatibility on every composable 3-chain
    for chain in S.tuples(3):
        (i, j), (_, k), (_, l) = chain
        lhs = c.alpha[(i, j)](c.xi[(j, k, l)]) * c.xi[(i, j, l)]
        rhs = c.xi[(i, j, k)] * c.xi[(i, k, l)]
        if lhs != rhs:
            rep.add("three_chain", chain, f"lhs={lhs!r} rhs={rhs!r}")
    # alpha composition vs inner twist on every composable 2-chain
    for chain in S.tuples(2):
        (i, j), (_, k) = chain
        lhs = c.alpha[(i, j)] * c.alpha[(j, k)]
        rhs = D.inner_automorphism(c.xi[(i, j, k)]) * c.alpha[(i, k)]
        if lhs != rhs:
            rep.add("two_chain", chain, f"lhs={lhs!r} rhs={rhs!r}")
    # forced shape of the diagonal alphas
    for i in range(1, S.n + 1):
        if c.alpha[(i, i)] != D.inner_automorphism(c.xi[(i, i, i)]):
            rep.add("diagonal_alpha", (i, i), "not conjugation by xi(e_i, e_i)")
    return rep


def _aut_key(a):
    # Frobenius exponent or conjugator tuple; both orderable and hashable
    return a.m if hasattr(a, "m") else a.conjugator


def _elem_key(v):
    return v.code if hasattr(v, "code") else v.parts


class GaugeElement:
    """Acting pair: an automorphism per idempotent, a unit per support pair."""

    __slots__ = ("mu", "eta")

    def __init__(self, mu, eta):
        self.mu = dict(mu)
        self.eta = dict(eta)

    @classmethod
    def identity(cls, S, D):
        return cls(
            {i: D.identity_automorphism() for i in range(1, S.n + 1)},
            {p: D.one for p in S.support},
        )

    def is_identity(self):
        return all(a.is_identity() for a in self.mu.values()) and all(
            v == v.field.one for v in self.eta.values()
        )

    def canonical_key(self):
        mu = tuple((i, _aut_key(a)) for i, a in sorted(self.mu.items(), key=lambda kv: kv[0]))
        eta = tuple((p, _elem_key(v)) for p, v in sorted(self.eta.items(), key=lambda kv: kv[0]))
        return (mu, eta)

    def __eq__(self, other):
        return isinstance(other, GaugeElement) and (other.mu, other.eta) == (self.mu, self.eta)

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"GaugeElement(mu={self.mu!r}, eta={self.eta!r})"


def gauge_mul(S, a, b):
    """Group product; by construction act(gauge_mul(a,b), c) = act(b, act(a,c))."""
    mu = {i: a.mu[i] * b.mu[i] for i in a.mu}
    eta = {p: a.mu[p[0]](b.eta[p]) * a.eta[p] for p in a.eta}
    return GaugeElement(mu, eta)


def gauge_inv(S, a):
    mu = {i: f.inverse() for i, f in a.mu.items()}
    eta = {p: a.mu[p[0]].inverse()(v.inverse()) for p, v in a.eta.items()}
    return GaugeElement(mu, eta)


def random_gauge(S, D, rng):
    return GaugeElement(
        {i: D.random_automorphism(rng) for i in range(1, S.n + 1)},
        {p: D.random_unit(rng) for p in S.support},
    )


def act(S, g, c, check=True):
    """Gauge action on a two-cocycle; preserves validity."""
    if check:
        rep = verify_two_cocycle(S, c)
        if not rep.ok:
            raise InvalidCocycle(rep.as_json())
    D = c.backend
    beta = {}
    for p in S.support:
        i, j = p
        tw = D.inner_automorphism(g.eta[p])
        beta[p] = g.mu[i].inverse() * tw * c.alpha[p] * g.mu[j]
    zeta = {}
    for t in S.comp:
        i, j, k = t
        inner = g.eta[(i, j)] * c.alpha[(i, j)](g.eta[(j, k)]) * c.xi[t] * g.eta[(i, k)].inverse()
        zeta[t] = g.mu[i].inverse()(inner)
    return TwoCocycle(beta, zeta)


def normalize(S, c):
    """Gauge c until all diagonal xi values are 1; returns (result, witness)."""
    rep = verify_two_cocycle(S, c)
    if not rep.ok:
        raise InvalidCocycle(rep.as_json())
    D = c.backend
    witness = GaugeElement.identity(S, D)
    current = c
    for _ in range(4):
        if current.is_normal():
            return current, witness
        eta = {p: D.one for p in S.support}
        for i in range(1, S.n + 1):
            eta[(i, i)] = current.xi[(i, i, i)].inverse()
        step = GaugeElement({i: D.identity_automorphism() for i in range(1, S.n + 1)}, eta)
        current = act(S, step, current, check=False)
        witness = gauge_mul(S, witness, step)
    raise InvalidCocycle("diagonal xi values did not stabilize at 1")


def trivialize_on_blocks(S, c):
    """Gauge a normal cocycle to (identity, 1) on every mutual-splitting class.

    Per class with base index b: mu_j = alpha_bj^(-1) and
    eta(s_jk) = mu_j(xi(s_bj, s_jk)^(-1)) inside the class, identity/1
    elsewhere. Returns (result, witness); the restriction is re-checked.
    """
    rep = verify_two_cocycle(S, c)
    if not rep.ok:
        raise InvalidCocycle(rep.as_json())
    if not c.is_normal():
        raise InvalidCocycle("block trivialization expects a normal cocycle")
    D = c.backend
    mu = {i: D.identity_automorphism() for i in range(1, S.n + 1)}
    eta = {p: D.one for p in S.support}
    classes = [cls for cls in sim_classes(S) if len(cls) > 1]
    for cls in classes:
        b = cls[0]
        for j in cls:
            mu[j] = c.alpha[(b, j)].inverse()
        for j in cls:
            for k in cls:
                eta[(j, k)] = mu[j](c.xi[(b, j, k)].inverse())
    witness = GaugeElement(mu, eta)
    out = act(S, witness, c, check=False)
    for cls in classes:
        members = set(cls)
        for p in S.support:
            if p[0] in members and p[1] in members and not out.alpha[p].is_identity():
                raise InvalidCocycle(f"alpha at {p} not trivialized")
        for t in S.comp:
            if set(t) <= members and out.xi[t] != D.one:
                raise InvalidCocycle(f"xi at {t} not trivialized")
    return out, witness


def relabel(S, phi, c):
    """Pull a cocycle back along a semigroup automorphism (pure reindexing)."""
    alpha = {p: c.alpha[phi.pair(p)] for p in S.support}
    xi = {t: c.xi[phi.triple(t)] for t in S.comp}
    return TwoCocycle(alpha, xi)


def _mu_candidates(S, c1, c2, D):
    """All idempotent-automorphism maps compatible with the alpha equations.

    Over a field the support-pair equation reads mu_i - mu_j = a1 - a2 in
    Frobenius exponents, a difference constraint per pair; solutions are a
    base assignment per weak component shifted by a free exponent.
    """
    k = D.k
    adjacency = {i: [] for i in range(1, S.n + 1)}
    for i, j in S.support:
        if i != j:
            d = (c1.alpha[(i, j)].m - c2.alpha[(i, j)].m) % k
            adjacency[i].append((j, -d))
            adjacency[j].append((i, d))
    base = {}
    components = []
    for root in range(1, S.n + 1):
        if root in base:
            continue
        component = [root]
        base[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for w, d in adjacency[v]:
                if w not in base:
                    base[w] = (base[v] + d) % k
                    component.append(w)
                    queue.append(w)
        components.append(component)
    for i, j in S.support:
        want = (c1.alpha[(i, j)].m - c2.alpha[(i, j)].m) % k
        if (base[i] - base[j]) % k != want:
            return []
    out = []
    for shifts in product(range(k), repeat=len(components)):
        mu = {}
        for component, shift in zip(components, shifts):
            for i in component:
                mu[i] = D.frobenius((base[i] + shift) % k)
        out.append(mu)
    return out


def _eta_search(S, D, alpha1, targets, all_solutions, budget):
    """Solve x(ij) * alpha1_ij(x(jk)) * x(ik)^(-1) = target(ijk) over units.

    Constraint propagation with per-triple candidate scans (unknowns may
    occupy several slots of one triple, so cancellation is handled by
    scanning rather than by case algebra), then deterministic branching on
    whatever stays free.
    """
    units = D.units()
    support = sorted(S.support)
    triples = sorted(S.comp)
    solutions = []
    nodes = [0]

    def value(t, assign):
        i, j, k = t
        return assign[(i, j)] * alpha1[(i, j)](assign[(j, k)]) * assign[(i, k)].inverse()

    def propagate(assign):
        changed = True
        while changed:
            changed = False
            for t in triples:
                i, j, k = t
                slots = {(i, j), (j, k), (i, k)}
                unknown = [s for s in slots if s not in assign]
                if not unknown:
                    if value(t, assign) != targets[t]:
                        return False
                elif len(unknown) == 1:
                    v = unknown[0]
                    fits = []
                    for u in units:
                        assign[v] = u
                        if value(t, assign) == targets[t]:
                            fits.append(u)
                        del assign[v]
                    if not fits:
                        return False
                    if len(fits) == 1:
                        assign[v] = fits[0]
                        changed = True
        return True

    def search(assign):
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchBoundExceeded(f"witness search exceeded {budget} nodes")
        assign = dict(assign)
        if not propagate(assign):
            return False
        free = [p for p in support if p not in assign]
        if not free:
            if all(value(t, assign) == targets[t] for t in triples):
                solutions.append(assign)
                return not all_solutions
            return False
        v = free[0]
        for u in units:
            assign[v] = u
            if search(assign):
                return True
        return False

    search({})
    return solutions


def cohomologous(S, c1, c2, bounds=DEFAULT_BOUNDS):
    """A gauge witness g with act(g, c1) = c2, or None after complete search."""
    D = c1.backend
    if not D.is_finite:
        raise InfiniteBackend("equivalence search needs a finite field")
    if D != c2.backend:
        raise MixedBackends("cocycles over different backends")
    for c in (c1, c2):
        rep = verify_two_cocycle(S, c)
        if not rep.ok:
            raise InvalidCocycle(rep.as_json())
    for mu in _mu_candidates(S, c1, c2, D):
        targets = {t: mu[t[0]](c2.xi[t]) * c1.xi[t].inverse() for t in S.comp}
        sols = _eta_search(S, D, c1.alpha, targets, all_solutions=False, budget=bounds.max_search)
        if sols:
            g = GaugeElement(mu, sols[0])
            assert act(S, g, c1, check=False) == c2
            return g
    return None


def cohomologous_with_relabel(S, c1, c2, bounds=DEFAULT_BOUNDS):
    """Search Aut S x gauge for act(g, relabel(phi, c1)) = c2."""
    for phi in semigroup_automorphisms(S, bounds):
        g = cohomologous(S, relabel(S, phi, c1), c2, bounds)
        if g is not None:
            return phi, g
    return None


def stabilizer(S, c, bounds=DEFAULT_BOUNDS):
    """Semigroup automorphisms whose relabeling stays in the gauge orbit."""
    return [
        phi
        for phi in semigroup_automorphisms(S, bounds)
        if cohomologous(S, c, relabel(S, phi, c), bounds) is not None
    ]


def verify_one_cocycle(S, base, g):
    """Does g fix the base cocycle? Checked by the two defining equations."""
    D = base.backend
    for p in S.support:
        i, j = p
        lhs = g.mu[i] * base.alpha[p] * g.mu[j].inverse()
        rhs = D.inner_automorphism(g.eta[p]) * base.alpha[p]
        if lhs != rhs:
            return False
    for t in S.comp:
        i, j, k = t
        lhs = g.mu[i](base.xi[t])
        rhs = g.eta[(i, j)] * base.alpha[(i, j)](g.eta[(j, k)]) * base.xi[t] * g.eta[(i, k)].inverse()
        if lhs != rhs:
            return False
    return True


def one_cocycles(S, base, bounds=DEFAULT_BOUNDS):
    """All gauge elements fixing base, in canonical order."""
    D = base.backend
    if not D.is_finite:
        raise InfiniteBackend("fixed-point enumeration needs a finite field")
    rep = verify_two_cocycle(S, base)
    if not rep.ok:
        raise InvalidCocycle(rep.as_json())
    out = []
    for mu in _mu_candidates(S, base, base, D):
        targets = {t: mu[t[0]](base.xi[t]) * base.xi[t].inverse() for t in S.comp}
        for eta in _eta_search(S, D, base.alpha, targets, all_solutions=True, budget=bounds.max_search):
            out.append(GaugeElement(mu, eta))
    out.sort(key=lambda g: g.canonical_key())
    return out


def coboundary_star(S, base, nu, g):
    """The diagonal-unit action on fixing pairs: nu is a map index -> unit."""
    D = base.backend
    mu = {i: D.inner_automorphism(nu[i]) * g.mu[i] for i in g.mu}
    eta = {
        (i, j): nu[i] * g.eta[(i, j)] * base.alpha[(i, j)](nu[j].inverse())
        for (i, j) in g.eta
    }
    return GaugeElement(mu, eta)


def one_coboundaries(S, base, bounds=DEFAULT_BOUNDS):
    """Orbit of the identity pair under the diagonal-unit action."""
    D = base.backend
    if not D.is_finite:
        raise InfiniteBackend("orbit enumeration needs a finite field")
    units = D.units()
    if len(units) ** S.n > bounds.max_search:
        raise SearchBoundExceeded(f"(q-1)^{S.n} above {bounds.max_search}")
    identity = GaugeElement.identity(S, D)
    seen = {}
    for values in product(units, repeat=S.n):
        nu = dict(zip(range(1, S.n + 1), values))
        g = coboundary_star(S, base, nu, identity)
        seen[g.canonical_key()] = g
    return [seen[key] for key in sorted(seen)]


@dataclass
class H1Result:
    order: int
    reps: list
    z1: list
    b1: list


def first_cohomology(S, base, bounds=DEFAULT_BOUNDS):
    """Fixing pairs modulo the identity orbit; orbit normality is re-checked."""
    z1 = one_cocycles(S, base, bounds)
    b1 = one_coboundaries(S, base, bounds)
    z1_keys = {g.canonical_key() for g in z1}
    b1_keys = {g.canonical_key() for g in b1}
    assert b1_keys <= z1_keys
    for z in z1:
        for b in b1:
            conj = gauge_mul(S, gauge_mul(S, z, b), gauge_inv(S, z))
            assert conj.canonical_key() in b1_keys
    seen = set()
    reps = []
    for z in z1:
        coset = frozenset(gauge_mul(S, z, b).canonical_key() for b in b1)
        if coset not in seen:
            seen.add(coset)
            reps.append(z)
    assert len(reps) * len(b1) == len(z1)
    return H1Result(order=len(reps), reps=reps, z1=z1, b1=b1)
