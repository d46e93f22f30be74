"""Root-based numeric engines for the delta-initial sequence P^(k-1).

Roots of the characteristic polynomial are found by Durand-Kerner
simultaneous iteration and clustered into multiplicities; the value
P^(k-1)_{n+k-1} is then the complete homogeneous sum over the roots
(distinct case), the binomial-weighted composition sum (multiple roots),
or binom(n+k-1, n) alpha^n (single root).

Composition sums are enumerated directly, matching the shape of the
formulas they implement; an enumeration budget keeps that desk-scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import BudgetExceededError, RootFindingError, StructuralError

DEFAULT_COMPOSITION_BUDGET = 5_000_000
CLUSTER_RADIUS = 1e-6
RESIDUAL_TOL = 1e-12
MAX_ITERATIONS = 1000


@dataclass(frozen=True)
class RootProfile:
    """Clustered roots of a characteristic polynomial with multiplicities."""

    roots: tuple[complex, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        if len(self.roots) != len(self.mults):
            raise StructuralError("roots and multiplicities must align")
        if any(m < 1 for m in self.mults):
            raise StructuralError("multiplicities must be positive")

    @property
    def k(self) -> int:
        return sum(self.mults)

    def all_simple(self) -> bool:
        return all(m == 1 for m in self.mults)


def _poly_eval(monic: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in monic:
        acc = acc * z + c
    return acc


def char_roots(coeff_values: Sequence[complex],
               max_iterations: int = MAX_ITERATIONS,
               residual_tol: float = RESIDUAL_TOL,
               cluster_radius: float = CLUSTER_RADIUS) -> RootProfile:
    """All k roots of X^k - c_1 X^{k-1} - ... - c_k, clustered by multiplicity.

    Durand-Kerner simultaneous iteration; roots within relative distance
    ``cluster_radius`` of each other are merged into one cluster represented
    by its centroid, with summed multiplicity.  Raises RootFindingError when
    a reported root's residual exceeds the tolerance at its scale.
    """
    k = len(coeff_values)
    if k < 1:
        raise StructuralError("need at least one coefficient")
    monic = [1 + 0j] + [-complex(c) for c in coeff_values]
    if k == 1:
        roots = [complex(coeff_values[0])]
    else:
        radius = 1.0 + max(abs(c) for c in coeff_values)
        seed = 0.4 + 0.9j
        roots = [radius * seed ** (j + 1) for j in range(k)]
        scale = max(1.0, radius)
        for _ in range(max_iterations):
            max_step = 0.0
            for i in range(k):
                denom = 1 + 0j
                for j in range(k):
                    if j != i:
                        denom *= roots[i] - roots[j]
                if denom == 0:
                    roots[i] += (1e-8 + 1e-8j) * scale
                    max_step = scale
                    continue
                step = _poly_eval(monic, roots[i]) / denom
                roots[i] -= step
                max_step = max(max_step, abs(step))
            if max_step < 1e-14 * scale:
                break

    # Transitive clustering (union-find) on relative distance.
    parent = list(range(k))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(k), 2):
        lim = cluster_radius * max(1.0, abs(roots[i]), abs(roots[j]))
        if abs(roots[i] - roots[j]) <= lim:
            parent[find(i)] = find(j)

    clusters: dict[int, list[complex]] = {}
    for i in range(k):
        clusters.setdefault(find(i), []).append(roots[i])
    centroids = []
    mults = []
    for members in clusters.values():
        centroids.append(sum(members) / len(members))
        mults.append(len(members))
    order = sorted(range(len(centroids)),
                   key=lambda i: (centroids[i].real, centroids[i].imag))
    centroids = [centroids[i] for i in order]
    mults = [mults[i] for i in order]

    coeff_scale = 1.0 + max(abs(c) for c in coeff_values)
    for root in centroids:
        tol = residual_tol * coeff_scale * max(1.0, abs(root)) ** k
        residual = abs(_poly_eval(monic, root))
        if residual > tol:
            raise RootFindingError(
                f"root {root} has residual {residual:.3e} above tolerance {tol:.3e} "
                f"after {max_iterations} iterations"
            )
    return RootProfile(tuple(centroids), tuple(mults))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts < 1:
        raise StructuralError(f"parts must be >= 1, got {parts}")
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first, *rest)


def _check_budget(total: int, parts: int, budget: int) -> None:
    count = math.comb(total + parts - 1, parts - 1)
    if count > budget:
        raise BudgetExceededError(
            f"composition count {count} exceeds enumeration budget {budget}"
        )


def _power_table(value: complex, top: int) -> list[complex]:
    row = [1 + 0j]
    for _ in range(top):
        row.append(row[-1] * value)
    return row


def binet_distinct(profile: RootProfile, n: int,
                   budget: int = DEFAULT_COMPOSITION_BUDGET) -> complex:
    """P^(k-1)_{n+k-1} = sum over i_1+...+i_k = n of alpha_1^{i_1}...alpha_k^{i_k}."""
    if not profile.all_simple():
        raise StructuralError("binet_distinct requires all multiplicities equal to 1")
    if n < 0:
        raise StructuralError(f"n must be >= 0, got {n}")
    k = len(profile.roots)
    _check_budget(n, k, budget)
    powers = [_power_table(root, n) for root in profile.roots]
    total = 0j
    for counts in compositions(n, k):
        term = 1 + 0j
        for row, e in zip(powers, counts):
            term *= row[e]
        total += term
    return total


def binet_multiple(profile: RootProfile, n: int,
                   budget: int = DEFAULT_COMPOSITION_BUDGET) -> complex:
    """The binomial-weighted composition sum over the distinct roots.

    Reduces to :func:`binet_distinct` when every multiplicity is 1.
    """
    if n < 0:
        raise StructuralError(f"n must be >= 0, got {n}")
    s = len(profile.roots)
    _check_budget(n, s, budget)
    powers = [_power_table(root, n) for root in profile.roots]
    total = 0j
    for counts in compositions(n, s):
        term = 1 + 0j
        for j, e in enumerate(counts):
            term *= math.comb(e + profile.mults[j] - 1, e) * powers[j][e]
        total += term
    return total


def binet_single(alpha: complex, k: int, n: int) -> complex:
    """P^(k-1)_{n+k-1} = binom(n+k-1, n) alpha^n for a k-fold single root."""
    if k < 1:
        raise StructuralError(f"k must be >= 1, got {k}")
    if n < 0:
        raise StructuralError(f"n must be >= 0, got {n}")
    return math.comb(n + k - 1, n) * complex(alpha) ** n
