"""Order-k recurrences over the polynomial ring.

A :class:`RecurrenceSpec` bundles the order, the coefficient polynomials
c_1..c_k, and the initial window P_0..P_{k-1}.  The characteristic
polynomial X^k - c_1 X^{k-1} - ... - c_k is derived from the coefficients
and never stored.

Engines here are plain iteration, the delta-initial basis sequences, the
decomposition of an arbitrary solution over those basis sequences, and a
companion-matrix power engine.  Symbolic terms can grow quickly for
multivariate coefficients, so every engine accepts an optional term-count
budget (maximum term count of any produced polynomial) and fails cleanly
when it is exceeded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BudgetExceededError, StructuralError
from .ring import MultiPoly


@dataclass(frozen=True)
class RecurrenceSpec:
    """One order-k recurrence: P_{n+k} = sum_i c_i P_{n+k-i}."""

    variables: tuple[str, ...]
    order: int
    coeffs: tuple[MultiPoly, ...]
    initial: tuple[MultiPoly, ...]

    def __post_init__(self):
        if self.order < 1:
            raise StructuralError(f"order must be >= 1, got {self.order}")
        if len(self.coeffs) != self.order:
            raise StructuralError(
                f"expected {self.order} coefficients, got {len(self.coeffs)}"
            )
        if len(self.initial) != self.order:
            raise StructuralError(
                f"expected {self.order} initial terms, got {len(self.initial)}"
            )
        for p in (*self.coeffs, *self.initial):
            if p.variables != self.variables:
                raise StructuralError(
                    f"member polynomial over {list(p.variables)} does not match "
                    f"spec variables {list(self.variables)}"
                )

    @classmethod
    def make(cls, variables: Sequence[str], coeffs: Sequence[MultiPoly],
             initial: Sequence[MultiPoly]) -> "RecurrenceSpec":
        return cls(tuple(variables), len(coeffs), tuple(coeffs), tuple(initial))

    def with_initial(self, initial: Sequence[MultiPoly]) -> "RecurrenceSpec":
        return RecurrenceSpec(self.variables, self.order, self.coeffs, tuple(initial))

    def delta_spec(self, j: int) -> "RecurrenceSpec":
        """The same recurrence with delta initial conditions at position j."""
        if not 0 <= j < self.order:
            raise StructuralError(f"basis index {j} out of range 0..{self.order - 1}")
        initial = tuple(
            MultiPoly.const(self.variables, 1 if i == j else 0)
            for i in range(self.order)
        )
        return self.with_initial(initial)

    def has_delta_initials(self) -> bool:
        """True when the initial window is (0, ..., 0, 1)."""
        return all(
            p == (1 if i == self.order - 1 else 0)
            for i, p in enumerate(self.initial)
        )


def _charge(poly: MultiPoly, budget: Optional[int]) -> MultiPoly:
    if budget is not None and poly.term_count() > budget:
        raise BudgetExceededError(
            f"term count {poly.term_count()} exceeds budget {budget}"
        )
    return poly


def iterate_terms(spec: RecurrenceSpec, n_max: int,
                  term_budget: Optional[int] = None) -> list[MultiPoly]:
    """Return [P_0, ..., P_{n_max}] by direct iteration of the recurrence."""
    if n_max < 0:
        raise StructuralError(f"n_max must be >= 0, got {n_max}")
    terms = list(spec.initial[: n_max + 1])
    while len(terms) <= n_max:
        nxt = MultiPoly.zero(spec.variables)
        for i, c in enumerate(spec.coeffs, start=1):
            nxt = nxt + c * terms[-i]
        terms.append(_charge(nxt, term_budget))
    return terms


def basis_sequence(spec: RecurrenceSpec, j: int, n_max: int,
                   term_budget: Optional[int] = None) -> list[MultiPoly]:
    """The solution P^(j) with initial terms delta_{ij}, up to index n_max."""
    return iterate_terms(spec.delta_spec(j), n_max, term_budget)


def decompose_check(spec: RecurrenceSpec, n_max: int,
                    basis: Optional[Sequence[Sequence[MultiPoly]]] = None,
                    ) -> tuple[bool, Optional[tuple[int, MultiPoly, MultiPoly]]]:
    """Verify P_n = sum_i P_i * P^(i)_n symbolically for all n <= n_max.

    Returns (True, None) on success or (False, (n, lhs, rhs)) at the first
    mismatching index.  ``basis`` overrides the internally computed basis
    sequences; it exists for negative-control testing.
    """
    terms = iterate_terms(spec, n_max)
    if basis is None:
        basis = [basis_sequence(spec, j, n_max) for j in range(spec.order)]
    for n in range(n_max + 1):
        rhs = MultiPoly.zero(spec.variables)
        for i in range(spec.order):
            rhs = rhs + spec.initial[i] * basis[i][n]
        if terms[n] != rhs:
            return False, (n, terms[n], rhs)
    return True, None


def _mat_mul(a, b, budget: Optional[int]):
    k = len(a)
    out = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(_charge(acc, budget))
        out.append(row)
    return out


def companion_matrix(spec: RecurrenceSpec) -> list[list[MultiPoly]]:
    """Companion matrix M with state vector (P_n, ..., P_{n+k-1}).

    Rows 0..k-2 shift the window; the last row applies the recurrence, so
    M . (P_n, ..., P_{n+k-1})^T = (P_{n+1}, ..., P_{n+k})^T.
    """
    k = spec.order
    zero = MultiPoly.zero(spec.variables)
    one = MultiPoly.const(spec.variables, 1)
    rows = []
    for i in range(k - 1):
        rows.append([one if j == i + 1 else zero for j in range(k)])
    # P_{n+k} = c_1 P_{n+k-1} + ... + c_k P_n
    rows.append([spec.coeffs[k - 1 - j] for j in range(k)])
    return rows


def companion_power_term(spec: RecurrenceSpec, n: int,
                         term_budget: Optional[int] = None) -> MultiPoly:
    """P_n via binary exponentiation of the companion matrix."""
    if n < 0:
        raise StructuralError(f"n must be >= 0, got {n}")
    k = spec.order
    if n < k:
        return spec.initial[n]
    zero = MultiPoly.zero(spec.variables)
    one = MultiPoly.const(spec.variables, 1)
    power = [[one if i == j else zero for j in range(k)] for i in range(k)]
    base = companion_matrix(spec)
    m = n
    while m:
        if m & 1:
            power = _mat_mul(power, base, term_budget)
        m >>= 1
        if m:
            base = _mat_mul(base, base, term_budget)
    # First state component after n steps from (P_0, ..., P_{k-1}).
    acc = power[0][0] * spec.initial[0]
    for j in range(1, k):
        acc = acc + power[0][j] * spec.initial[j]
    return _charge(acc, term_budget)
