"""Search bounds and violation reports used by every checking routine."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Bounds:
    # cap on element/unit/idempotent enumeration of a finite ring (q^|support|)
    max_units: int = 2**20
    # cap on backtracking search spaces (witness searches, coboundary preimages)
    max_search: int = 10**7
    # cap on the idempotent count for semigroup automorphism enumeration
    aut_s_max_n: int = 8


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str = ""

    def as_json(self):
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, where, detail=""):
        self.violations.append(Violation(kind, tuple(where), detail))

    def extend(self, other):
        self.violations.extend(other.violations)

    def as_json(self):
        return {"ok": self.ok, "violations": [v.as_json() for v in self.violations]}

    def __bool__(self):
        return self.ok
