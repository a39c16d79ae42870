"""Exhaustive oracle over the elements of S_n for tiny n.

Nothing here touches centralizer formulas or generating functions: cycle
types are tallied element by element, and A_n classes are found as orbits of
explicit conjugation by the 3-cycles (0 1 j), which generate A_n.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import permutations

from .exceptions import UsageError
from .probabilities import BRUTE_FORCE, ProbTable

MAX_N = 8


def _cycle_lengths(p: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _is_even(p: tuple[int, ...]) -> bool:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2 == 0


def _conjugate(g: tuple[int, ...], s: tuple[int, ...]) -> tuple[int, ...]:
    # g s g^-1 sends g(x) to g(s(x))
    out = [0] * len(s)
    for x, sx in enumerate(s):
        out[g[x]] = g[sx]
    return tuple(out)


def _alternating_generators(n: int) -> list[tuple[int, ...]]:
    gens = []
    for j in range(2, n):
        g = list(range(n))
        g[0], g[1], g[j] = 1, j, 0
        gens.append(tuple(g))
    return gens


def alternating_classes(n: int) -> list[frozenset]:
    """Conjugacy classes of A_n, as sets of image tuples."""
    if n > MAX_N:
        raise UsageError(f"brute force refused for n = {n} > {MAX_N}")
    evens = [p for p in permutations(range(n)) if _is_even(p)]
    gens = _alternating_generators(n)
    unseen = set(evens)
    classes = []
    for p in evens:
        if p not in unseen:
            continue
        orbit = {p}
        frontier = [p]
        while frontier:
            q = frontier.pop()
            for g in gens:
                r = _conjugate(g, q)
                if r not in orbit:
                    orbit.add(r)
                    frontier.append(r)
        unseen -= orbit
        classes.append(frozenset(orbit))
    return classes


def brute_force_table(n: int) -> dict[str, ProbTable]:
    """Every quantity at *n* by explicit enumeration of S_n."""
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    if n > MAX_N:
        raise UsageError(f"brute force refused for n = {n} > {MAX_N}")
    elements = list(permutations(range(n)))
    order = len(elements)
    types = Counter()
    even_types = Counter()
    odd_types = Counter()
    longest = Counter()
    for p in elements:
        t = _cycle_lengths(p)
        types[t] += 1
        (even_types if _is_even(p) else odd_types)[t] += 1
        longest[t[0] if t else 0] += 1
    n_even = sum(even_types.values())
    n_odd = sum(odd_types.values())

    def pair_prob(counter, population):
        if population == 0:
            return Fraction(0)
        return sum(Fraction(c, population) ** 2 for c in counter.values())

    split = Counter({t: c for t, c in types.items() if all(x % 2 for x in t) and len(set(t)) == len(t)})
    values = {
        "kappa_sym": pair_prob(types, order),
        "kappa_even": pair_prob(even_types, n_even),
        "kappa_odd": pair_prob(odd_types, n_odd),
        "q_split": sum(Fraction(c, order) ** 2 for c in split.values()),
    }
    classes = alternating_classes(n)
    values["kappa_alt"] = sum(Fraction(len(c), n_even) ** 2 for c in classes)
    for k in range(1, n + 2):
        values[f"s_below({k})"] = Fraction(sum(c for m, c in longest.items() if m < k), order)
    out = {}
    for quantity, value in values.items():
        table = ProbTable(quantity, BRUTE_FORCE)
        table.add(n, value)
        out[quantity] = table
    return out
