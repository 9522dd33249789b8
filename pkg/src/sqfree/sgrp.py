"""Square-free semigroups with zero, encoded combinatorially.

The data is the idempotent count n, the support set of pairs (i,j) meaning
e_i*S*e_j has a nonzero element s_ij, and the composability set of triples
(i,j,k) meaning s_ij*s_jk = s_ik (anything not listed multiplies to zero).
Indices are 1-based throughout, matching the wire format.

Semigroup elements are represented by their support pair; e_i is (i,i).
"""

from dataclasses import dataclass
from itertools import product

from .common import DEFAULT_BOUNDS, ValidationReport
from .errors import BlockNotMatrixUnits, SearchBoundExceeded


@dataclass(frozen=True)
class SquareFreeSemigroup:
    n: int
    support: frozenset
    comp: frozenset

    @classmethod
    def make(cls, n, support, comp, close_units=True):
        """Build from iterables; optionally add the unit-law triples."""
        support = frozenset((int(i), int(j)) for i, j in support)
        comp = set((int(i), int(j), int(k)) for i, j, k in comp)
        if close_units:
            for i, j in support:
                comp.add((i, i, j))
                comp.add((i, j, j))
        return cls(n, support, frozenset(comp))

    def has(self, i, j):
        return (i, j) in self.support

    def mul(self, p, q):
        """Product of two elements-as-pairs, or None for zero."""
        if p[1] != q[0]:
            return None
        t = (p[0], p[1], q[1])
        return (p[0], q[1]) if t in self.comp else None

    def idempotent_pairs(self):
        return [(i, i) for i in range(1, self.n + 1)]

    def arrows(self):
        return sorted(p for p in self.support if p[0] != p[1])

    def elements(self):
        return sorted(self.support)

    def tuples(self, m):
        """Composable m-chains: lists of pairs for m <= 1, m-tuples of pairs beyond.

        m = 0 gives the idempotents, m = 1 all of the support, m >= 2 the
        m-tuples with every prefix product nonzero.
        """
        if m == 0:
            return self.idempotent_pairs()
        if m == 1:
            return self.elements()
        chains = [((p,), p) for p in self.elements()]
        for _ in range(m - 1):
            grown = []
            for chain, acc in chains:
                for q in self.elements():
                    prod = self.mul(acc, q)
                    if prod is not None:
                        grown.append((chain + (q,), prod))
            chains = grown
        return [c for c, _ in chains]

    def validate(self):
        rep = ValidationReport()
        rng = range(1, self.n + 1)
        for p in sorted(self.support):
            if not (p[0] in rng and p[1] in rng):
                rep.add("index_out_of_range", p)
        for t in sorted(self.comp):
            if not all(x in rng for x in t):
                rep.add("index_out_of_range", t)
        if not rep.ok:
            return rep
        for i in rng:
            if (i, i) not in self.support:
                rep.add("missing_idempotent", (i, i), "diagonal pair absent from support")
        for t in sorted(self.comp):
            i, j, k = t
            for p in ((i, j), (j, k), (i, k)):
                if p not in self.support:
                    rep.add("comp_without_support", t, f"pair {p} absent")
        for i, j in sorted(self.support):
            if (i, i, j) not in self.comp:
                rep.add("unit_law", (i, i, j), "left unit triple absent")
            if (i, j, j) not in self.comp:
                rep.add("unit_law", (i, j, j), "right unit triple absent")
        # (s_ij s_jk) s_kl and s_ij (s_jk s_kl) must vanish together
        for i, j in sorted(self.support):
            for k in rng:
                if (j, k) not in self.support:
                    continue
                for l in rng:
                    if (k, l) not in self.support:
                        continue
                    left = (i, j, k) in self.comp and (i, k, l) in self.comp
                    right = (j, k, l) in self.comp and (i, j, l) in self.comp
                    if left != right:
                        rep.add("associativity", (i, j, k, l), f"left={left} right={right}")
        return rep


def sim_classes(S):
    """Partition of the idempotent indices by mutual splitting.

    i ~ j when s_ij and s_ji exist and compose back to the idempotents.
    """
    parent = list(range(S.n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(1, S.n + 1):
        for j in range(i + 1, S.n + 1):
            if (
                (i, j) in S.support
                and (j, i) in S.support
                and (i, j, i) in S.comp
                and (j, i, j) in S.comp
            ):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(1, S.n + 1):
        groups.setdefault(find(i), []).append(i)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def blocks(S):
    """The ~-classes as standalone matrix-unit semigroups.

    Returns (block, parent_indices) pairs; block index a corresponds to
    parent index parent_indices[a-1]. Raises BlockNotMatrixUnits when a
    class is not a full matrix-unit pattern.
    """
    out = []
    for cls in sim_classes(S):
        m = len(cls)
        for a, b in product(cls, repeat=2):
            if (a, b) not in S.support:
                raise BlockNotMatrixUnits(f"class {cls}: pair {(a, b)} missing")
        for a, b, c in product(cls, repeat=3):
            if (a, b, c) not in S.comp:
                raise BlockNotMatrixUnits(f"class {cls}: triple {(a, b, c)} missing")
        sub = SquareFreeSemigroup.make(
            m,
            [(a, b) for a, b in product(range(1, m + 1), repeat=2)],
            [(a, b, c) for a, b, c in product(range(1, m + 1), repeat=3)],
            close_units=False,
        )
        out.append((sub, tuple(cls)))
    return out


def reduced(S):
    """Restriction to the least index of every ~-class, reindexed densely."""
    reps = [cls[0] for cls in sim_classes(S)]
    pos = {r: a + 1 for a, r in enumerate(reps)}
    support = [(pos[i], pos[j]) for i, j in S.support if i in pos and j in pos]
    comp = [
        (pos[i], pos[j], pos[k])
        for i, j, k in S.comp
        if i in pos and j in pos and k in pos
    ]
    return SquareFreeSemigroup.make(len(reps), support, comp, close_units=False), tuple(reps)


@dataclass(frozen=True)
class SemigroupAutomorphism:
    """Support- and composability-preserving permutation of idempotent indices."""

    perm: tuple  # perm[i-1] is the image of i

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i):
        return self.perm[i - 1]

    def pair(self, p):
        return (self.perm[p[0] - 1], self.perm[p[1] - 1])

    def triple(self, t):
        return (self.perm[t[0] - 1], self.perm[t[1] - 1], self.perm[t[2] - 1])

    def __mul__(self, other):
        # (a*b)(i) = a(b(i))
        return SemigroupAutomorphism(tuple(self.perm[other.perm[i] - 1] for i in range(len(self.perm))))

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, img in enumerate(self.perm):
            inv[img - 1] = i + 1
        return SemigroupAutomorphism(tuple(inv))

    def is_identity(self):
        return all(img == i + 1 for i, img in enumerate(self.perm))

    def __repr__(self):
        return f"perm{self.perm}"


def automorphisms(S, bounds=DEFAULT_BOUNDS):
    """All automorphisms, by backtracking on images with incremental checks."""
    if S.n > bounds.aut_s_max_n:
        raise SearchBoundExceeded(f"n={S.n} above automorphism bound {bounds.aut_s_max_n}")
    n = S.n
    found = []
    image = [0] * (n + 1)

    def consistent(i):
        for j in range(1, i + 1):
            for a, b in ((i, j), (j, i)):
                if ((a, b) in S.support) != ((image[a], image[b]) in S.support):
                    return False
            for a, b, c in ((i, j, j), (j, i, j), (j, j, i), (i, i, j), (i, j, i), (j, i, i), (i, i, i)):
                if ((a, b, c) in S.comp) != ((image[a], image[b], image[c]) in S.comp):
                    return False
        return True

    def full_triple_check(phi):
        return all((phi.triple(t) in S.comp) for t in S.comp) and all(
            (phi.pair(p) in S.support) for p in S.support
        )

    def place(i, used):
        if i > n:
            phi = SemigroupAutomorphism(tuple(image[1:]))
            if full_triple_check(phi) and full_triple_check(phi.inverse()):
                found.append(phi)
            return
        for img in range(1, n + 1):
            if img in used:
                continue
            image[i] = img
            if consistent(i):
                place(i + 1, used | {img})
        image[i] = 0

    place(1, frozenset())
    found.sort(key=lambda f: f.perm)
    return found


def is_normal_automorphism(S, phi):
    """Does phi preserve each index's rank inside its ~-class?"""
    rank = {}
    for cls in sim_classes(S):
        for pos, i in enumerate(cls):
            rank[i] = pos
    return all(rank[phi(i)] == rank[i] for i in range(1, S.n + 1))
