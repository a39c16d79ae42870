"""Monte Carlo estimates of the conjugacy probabilities.

This is a statistically independent oracle for the exact engine: it samples
uniform permutations, decides conjugacy directly from the sampled elements,
and never consults a formula.

Permutations act on ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``.
Cycle notation passed to :meth:`Permutation.from_cycles` is 1-based.

Randomness comes from numpy's PCG64.  Worker ``i`` of ``w`` draws from the
stream ``PCG64(seed).jumped(i)``, so a run is reproducible for a fixed
``(seed, samples, workers)`` whether or not the workers run in parallel.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import UsageError
from .partitions import Partition

BATCH_SIZE = 50_000
MAX_EMPTY_DRAWS = 64

QUANTITIES = ("kappa_sym", "kappa_even", "kappa_odd", "q_split", "kappa_alt", "s_below")


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise UsageError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> Permutation:
        """Build from 1-based cycles, e.g. ``from_cycles(4, [(1, 2, 3)])``."""
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: ``(self * other)(x) == self(other(x))``."""
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv))

    def conjugate_by(self, g: Permutation) -> Permutation:
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycles sorted by (length, minimum), each starting at its minimum."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        out.sort(key=lambda c: (len(c), c[0]))
        return out

    @property
    def sign(self) -> int:
        return cycle_type(self).sign

    @property
    def is_even(self) -> bool:
        return self.sign == 1

    def inversion_sign(self) -> int:
        p = self.images
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
        return -1 if inv % 2 else 1


def sample_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """Uniform element of S_n by the swap (Fisher-Yates) shuffle."""
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    a = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        a[i], a[j] = a[j], a[i]
    return Permutation(tuple(a))


def cycle_type(p: Permutation) -> Partition:
    return Partition.from_parts(len(c) for c in p.cycles())


def canonical_conjugator(sigma: Permutation, tau: Permutation) -> Permutation:
    """The g with ``g sigma g^-1 == tau`` that matches cycles in canonical order."""
    if sigma.n != tau.n:
        raise UsageError("permutations act on different sets")
    cs, ct = sigma.cycles(), tau.cycles()
    if [len(c) for c in cs] != [len(c) for c in ct]:
        raise UsageError("permutations are not conjugate in S_n")
    g = [0] * sigma.n
    for a, b in zip(cs, ct):
        for x, y in zip(a, b):
            g[x] = y
    return Permutation(tuple(g))


def conjugate_in_alternating(sigma: Permutation, tau: Permutation) -> bool:
    """Whether two even permutations are conjugate in A_n."""
    if sigma.n != tau.n:
        raise UsageError("permutations act on different sets")
    if not (sigma.is_even and tau.is_even):
        raise UsageError("both permutations must be even")
    t = cycle_type(sigma)
    if t != cycle_type(tau):
        return False
    if not t.is_split:
        return True
    # a split class has its centralizer inside A_n, so any conjugator's sign decides
    return canonical_conjugator(sigma, tau).is_even


# ---------------------------------------------------------------------------
# vectorized batches


def sample_permutations(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent uniform permutations as rows, by a batched swap shuffle."""
    return _shuffle(n, size, rng)[0]


def _shuffle(n: int, size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Batched swap shuffle; also returns each row's parity (True = odd).

    Every swap with j != i is a transposition, so the parity is the count of
    such swaps mod 2.
    """
    perms = np.tile(np.arange(n, dtype=np.intp), (size, 1))
    odd = np.zeros(size, dtype=bool)
    rows = np.arange(size)
    for i in range(n - 1, 0, -1):
        j = rng.integers(0, i + 1, size=size)
        held = perms[rows, j]
        perms[rows, j] = perms[:, i]
        perms[:, i] = held
        odd ^= j != i
    return perms, odd


class _Batch:
    """Per-point cycle data for a stack of permutations."""

    def __init__(self, perms: np.ndarray):
        self.perms = perms
        size, n = perms.shape
        self.n = n
        rows = np.arange(size)[:, None]
        base = rows * n
        # orbit minimum by pointer doubling: after j rounds each label covers 2^j steps
        label = np.broadcast_to(np.arange(n, dtype=perms.dtype), perms.shape).copy()
        jump = perms + base  # flat indices of the image of each point
        span = 1
        while span < n:
            np.minimum(label, label.take(jump), out=label)
            jump = jump.take(jump)
            span *= 2
        # a point's cycle length is the number of points sharing its label
        members = np.bincount((base + label).ravel(), minlength=size * n)
        length = members.take(base + label)
        self.length = length
        self.label = label
        # counts[:, t-1] = number of points lying in t-cycles
        self.counts = np.bincount(
            (rows * (n + 1) + length).ravel(), minlength=size * (n + 1)
        ).reshape(size, n + 1)[:, 1:]
        n_cycles = sum(self.counts[:, t - 1] // t for t in range(1, n + 1)) if n else np.zeros(size, int)
        self.odd = (n - n_cycles) % 2 == 1
        sizes = np.arange(1, n + 1)
        ok = (self.counts == 0) | ((self.counts == sizes) & (sizes % 2 == 1))
        self.split = ok.all(axis=1)
        self.longest = length.max(axis=1) if n else np.zeros(size, int)

    def same_type(self, other: _Batch) -> np.ndarray:
        return (self.counts == other.counts).all(axis=1)

    def canonical_parity(self, mask: np.ndarray) -> np.ndarray:
        """Parity of the canonical cycle sequence for the masked rows (True = odd)."""
        perms = self.perms[mask]
        length = self.length[mask]
        label = self.label[mask]
        size, n = perms.shape
        base = np.arange(size)[:, None] * n
        flat = (perms + base).ravel()
        # steps from each point forward to its cycle minimum
        steps = np.zeros(perms.shape, dtype=np.intp)
        cur = base + np.arange(n)
        target = base + label
        for t in range(1, int(length.max(initial=1))):
            cur = flat.take(cur)
            steps[(cur == target) & (steps == 0)] = t
        # a fixed point or a cycle minimum has steps 0, which is also correct
        pos = (length - steps) % length
        key = length * (n + 1) + label
        before = (key[:, None, :] < key[:, :, None]).sum(axis=2)
        index = before + pos
        upper = np.triu(np.ones((n, n), dtype=bool), 1)
        inversions = ((index[:, :, None] > index[:, None, :]) & upper).sum(axis=(1, 2))
        return inversions % 2 == 1


def _draw(n: int, size: int, rng, parity: str | None) -> np.ndarray | None:
    """``size`` uniform permutations, rejection-filtered to *parity* if given."""
    if parity is None:
        return sample_permutations(n, size, rng)
    want_odd = parity == "odd"
    kept, have, empty = [], 0, 0
    while have < size:
        cand, odd = _shuffle(n, 2 * (size - have) + 16, rng)
        sel = cand[odd == want_odd]
        if len(sel) == 0:
            empty += 1
            if empty >= MAX_EMPTY_DRAWS:
                return None
            continue
        kept.append(sel)
        have += len(sel)
    return np.concatenate(kept)[:size]


def _conjugate_rows(sigma: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row-wise g sigma g^-1: sends g(x) to g(sigma(x))."""
    out = np.empty_like(sigma)
    rows = np.arange(len(sigma))[:, None]
    out[rows, g] = np.take_along_axis(g, sigma.astype(np.intp), axis=1)
    return out


def _batch_hits(quantity: str, n: int, size: int, k: int | None, rng) -> tuple[int, int] | None:
    """(trials, hits) for one batch, or None when the conditioning event is empty."""
    if quantity == "s_below":
        b = _Batch(_draw(n, size, rng, None))
        return size, int((b.longest < k).sum())
    if quantity == "split_half_rate":
        kept, have, empty = [], 0, 0
        while have < size:
            sigma = sample_permutations(n, size - have + 16, rng)
            g = sample_permutations(n, len(sigma), rng)
            b = _Batch(sigma)
            sel = b.split
            if not sel.any():
                empty += 1
                if empty >= MAX_EMPTY_DRAWS:
                    return None
                continue
            kept.append((sigma[sel], _conjugate_rows(sigma, g)[sel]))
            have += int(sel.sum())
        sigma = np.concatenate([s for s, _ in kept])[:size]
        tau = np.concatenate([t for _, t in kept])[:size]
        bs, bt = _Batch(sigma), _Batch(tau)
        every = np.ones(size, dtype=bool)
        return size, int((bs.canonical_parity(every) == bt.canonical_parity(every)).sum())
    parity = {"kappa_even": "even", "kappa_alt": "even", "kappa_odd": "odd"}.get(quantity)
    sigma = _draw(n, size, rng, parity)
    tau = _draw(n, size, rng, parity)
    if sigma is None or tau is None:
        return None
    bs, bt = _Batch(sigma), _Batch(tau)
    same = bs.same_type(bt)
    if quantity in ("kappa_sym", "kappa_even", "kappa_odd"):
        return size, int(same.sum())
    if quantity == "q_split":
        return size, int((same & bs.split).sum())
    if quantity == "kappa_alt":
        need = same & bs.split
        agree = np.ones(size, dtype=bool)
        if need.any():
            agree[need] = bs.canonical_parity(need) == bt.canonical_parity(need)
        return size, int((same & agree).sum())
    raise UsageError(f"unknown quantity {quantity!r}")


def _worker(args) -> tuple[int, int, list[tuple[int, int, int, int]]] | None:
    quantity, n, k, count, seed, index, batch_size = args
    rng = np.random.Generator(np.random.PCG64(seed).jumped(index))
    trials = hits = 0
    batches = []
    b = 0
    while trials < count:
        size = min(batch_size, count - trials)
        got = _batch_hits(quantity, n, size, k, rng)
        if got is None:
            return None
        t, h = got
        trials += t
        hits += h
        batches.append((index, b, t, h))
        b += 1
    return trials, hits, batches


@dataclass(frozen=True)
class McEstimate:
    quantity: str
    n: int
    point: float
    std_error: float
    samples: int
    seed: int
    workers: int = 1
    hits: int = 0
    k: int | None = None
    degenerate: bool = False
    batches: tuple = field(default=(), repr=False)

    def within(self, exact, sigmas: float = 4.0) -> bool:
        return abs(self.point - float(exact)) <= sigmas * self.std_error

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "n": self.n,
            "k": self.k,
            "point": self.point,
            "std_error": self.std_error,
            "samples": self.samples,
            "hits": self.hits,
            "seed": self.seed,
            "workers": self.workers,
            "degenerate": self.degenerate,
        }


def _run(quantity, n, samples, seed, k, workers, batch_size) -> McEstimate:
    if samples <= 0:
        raise UsageError(f"samples must be positive, got {samples}")
    if workers < 1:
        raise UsageError(f"workers must be >= 1, got {workers}")
    if not 0 <= seed < 2**64:
        raise UsageError("seed must be a 64-bit unsigned integer")
    base, extra = divmod(samples, workers)
    jobs = [
        (quantity, n, k, base + (1 if i < extra else 0), seed, i, batch_size)
        for i in range(workers)
    ]
    jobs = [j for j in jobs if j[3] > 0]
    if len(jobs) == 1:
        results = [_worker(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            results = list(pool.map(_worker, jobs))
    if any(r is None for r in results):
        return McEstimate(quantity, n, 0.0, 0.0, 0, seed, workers, 0, k, degenerate=True)
    trials = sum(r[0] for r in results)
    hits = sum(r[1] for r in results)
    batches = tuple(b for r in results for b in r[2])
    p = hits / trials
    return McEstimate(
        quantity, n, p, math.sqrt(p * (1 - p) / trials), trials, seed, workers, hits, k,
        batches=batches,
    )


def estimate(
    quantity: str,
    n: int,
    samples: int,
    seed: int,
    k: int | None = None,
    workers: int = 1,
    batch_size: int = BATCH_SIZE,
) -> McEstimate:
    """Bernoulli estimate of *quantity* at *n*.

    Conditional quantities (kappa_even, kappa_odd, kappa_alt) sample each
    permutation by rejection on parity; *samples* counts accepted pairs.
    """
    if quantity not in QUANTITIES:
        raise UsageError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    if n < 0:
        raise UsageError(f"n must be >= 0, got {n}")
    if quantity == "s_below" and (k is None or k < 1):
        raise UsageError("s_below needs k >= 1")
    if quantity == "kappa_odd" and n < 2:
        return McEstimate(quantity, n, 0.0, 0.0, 0, seed, workers, 0, k, degenerate=True)
    return _run(quantity, n, samples, seed, k, workers, batch_size)


def split_half_rate(n: int, samples: int, seed: int, workers: int = 1, batch_size: int = BATCH_SIZE) -> McEstimate:
    """Fraction of S_n-conjugate pairs of split type that are A_n-conjugate.

    Pairs are (sigma, g sigma g^-1) with sigma and g uniform and sigma of
    split type; A_n-conjugacy is decided from the canonical conjugator, not g.
    """
    return _run("split_half_rate", n, samples, seed, None, workers, batch_size)
