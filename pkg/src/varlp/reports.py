"""Result records shared by the inequality checkers and suites."""

from dataclasses import dataclass, field
import hashlib

import numpy as np

__all__ = ('InequalityReport', 'SuiteResult', 'digest', 'SLACK')

SLACK = 1e-6


def digest(*arrays):
    """Short stable fingerprint of the arrays/scalars defining an instance."""
    h = hashlib.sha1()
    for a in arrays:
        h.update(np.ascontiguousarray(np.asarray(a, dtype=float)).tobytes())
    return h.hexdigest()[:12]


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of checking ``lhs <= rhs * (1 + slack)``."""

    name: str
    lhs: float
    rhs: float
    constant: float
    passed: bool
    instance: str = ''
    details: dict = field(default_factory=dict, compare=False)

    @classmethod
    def compare(cls, name, lhs, rhs, constant=1.0, instance='', slack=SLACK,
                **details):
        ok = bool(lhs <= rhs * (1 + slack))
        return cls(name, float(lhs), float(rhs), float(constant), ok,
                   instance, details)

    def __bool__(self):
        return self.passed


@dataclass
class SuiteResult:
    """Aggregate of many seeded instances of one invariant."""

    name: str
    instances: int = 0
    failures: list = field(default_factory=list)
    expected_failures: list = field(default_factory=list)
    worst: float = 0.0
    notes: str = ''

    @property
    def passed(self):
        return not self.failures

    def record(self, ok, label, margin=None):
        self.instances += 1
        if not ok:
            self.failures.append(label)
        if margin is not None and margin > self.worst:
            self.worst = float(margin)

    def line(self):
        status = 'PASS' if self.passed else 'FAIL'
        extra = f' expected-failures={len(self.expected_failures)}' \
            if self.expected_failures else ''
        return (f'[{status}] {self.name}: {self.instances} instances, '
                f'{len(self.failures)} violations, worst ratio '
                f'{self.worst:.6g}{extra}')
