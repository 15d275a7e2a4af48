"""Seeded Monte Carlo estimates for the product of k uniform maximal cycles.

Trials are cut into fixed-size chunks.  Chunk ``c`` draws from its own
generator seeded with ``(seed, c)``, so the hit count is a pure function of
``(seed, trials, N, k, event)`` and does not depend on how many workers run
the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist
from typing import Callable, Iterable, Sequence

import numpy as np

from .oracle import Permutation

__all__ = [
    "McConfig",
    "McResult",
    "Event",
    "sample_maximal_cycle",
    "sample_products",
    "wilson_interval",
    "estimate",
    "estimate_events",
    "parse_event",
    "EVENT_NAMES",
]

DEFAULT_CHUNK = 100_000
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class McConfig:
    N: int
    k: int
    trials: int
    seed: int = 0
    confidence: float = 0.95
    workers: int = 1
    chunk_size: int = DEFAULT_CHUNK

    def __post_init__(self) -> None:
        if self.N < 1 or self.k < 1:
            raise ValueError("need N >= 1 and k >= 1")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.confidence not in (0.95, 0.99):
            raise ValueError("confidence must be 0.95 or 0.99")
        if self.workers < 1 or self.chunk_size < 1:
            raise ValueError("workers and chunk_size must be positive")


@dataclass(frozen=True)
class McResult:
    event: str
    hits: int
    trials: int
    confidence: float
    low: float
    high: float

    @property
    def estimate(self) -> Fraction:
        return Fraction(self.hits, self.trials)

    def contains(self, value: Fraction | float) -> bool:
        return self.low <= float(value) <= self.high


def _rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & _U64, chunk])))


def sample_maximal_cycle(N: int, rng: np.random.Generator) -> Permutation:
    """Uniform N-cycle: a uniform arrangement of 2..N placed after 1, then closed up."""
    if N < 1:
        raise ValueError("N must be positive")
    order = np.concatenate(([0], 1 + rng.permutation(N - 1)))
    img = np.empty(N, dtype=np.intp)
    img[order] = np.roll(order, -1)
    return Permutation(tuple(int(v) + 1 for v in img))


def _cycle_batch(N: int, n: int, rng: np.random.Generator) -> np.ndarray:
    # n independent uniform N-cycles, 0-based images, one per row
    rest = rng.permuted(np.broadcast_to(np.arange(1, N, dtype=np.intp), (n, N - 1)), axis=1)
    order = np.concatenate((np.zeros((n, 1), dtype=np.intp), rest), axis=1)
    img = np.empty((n, N), dtype=np.intp)
    np.put_along_axis(img, order, np.roll(order, -1, axis=1), axis=1)
    return img


def sample_products(N: int, k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n samples of p_1 ... p_k as 0-based image rows, with (pq)(i) = p(q(i))."""
    sigma = _cycle_batch(N, n, rng)
    for _ in range(k - 1):
        left = _cycle_batch(N, n, rng)
        sigma = np.take_along_axis(left, sigma, axis=1)
    return sigma


# -- vectorised events --------------------------------------------------------


def _orbit_min(sig: np.ndarray) -> np.ndarray:
    # smallest element of each element's cycle, by pointer doubling
    lab = np.broadcast_to(np.arange(sig.shape[1]), sig.shape).copy()
    jump = sig.copy()
    steps = max(1, math.ceil(math.log2(max(sig.shape[1], 2)))) + 1
    for _ in range(steps):
        lab = np.minimum(lab, np.take_along_axis(lab, jump, axis=1))
        jump = np.take_along_axis(jump, jump, axis=1)
    return lab


def _is_cycle(sig: np.ndarray) -> np.ndarray:
    n, N = sig.shape
    x = np.zeros(n, dtype=np.intp)
    ok = np.ones(n, dtype=bool)
    rows = np.arange(n)
    for _ in range(N - 1):
        x = sig[rows, x]
        ok &= x != 0
    return ok


def _identity(sig: np.ndarray) -> np.ndarray:
    return (sig == np.arange(sig.shape[1])).all(axis=1)


def _derangement(sig: np.ndarray) -> np.ndarray:
    return (sig != np.arange(sig.shape[1])).all(axis=1)


def _blocks(ell: int) -> Callable[[np.ndarray], np.ndarray]:
    def f(sig: np.ndarray) -> np.ndarray:
        if ell == 0:
            return np.ones(sig.shape[0], dtype=bool)
        inv = np.empty_like(sig)
        np.put_along_axis(inv, sig, np.broadcast_to(np.arange(sig.shape[1]), sig.shape), axis=1)
        nxt, prv = sig[:, :ell], inv[:, :ell]
        fixed = nxt == np.arange(ell)
        return ((nxt >= ell) & (prv >= ell) & ~fixed).all(axis=1)

    return f


def _separates(sizes: Sequence[int]) -> Callable[[np.ndarray], np.ndarray]:
    owner = np.repeat(np.arange(len(sizes)), sizes)
    ell = int(sum(sizes))

    def f(sig: np.ndarray) -> np.ndarray:
        lab = _orbit_min(sig)[:, :ell]
        ok = np.ones(sig.shape[0], dtype=bool)
        for i in range(ell):
            for j in range(i + 1, ell):
                if owner[i] != owner[j]:
                    ok &= lab[:, i] != lab[:, j]
        return ok

    return f


def _all_cycles_meet(ell: int) -> Callable[[np.ndarray], np.ndarray]:
    def f(sig: np.ndarray) -> np.ndarray:
        n, N = sig.shape
        lab = _orbit_min(sig)
        cycles = (lab == np.arange(N)).sum(axis=1)
        hit = np.zeros((n, N), dtype=bool)
        np.put_along_axis(hit, lab[:, :ell], True, axis=1)
        return hit.sum(axis=1) == cycles

    return f


def _one_cycle_holds(ell: int) -> Callable[[np.ndarray], np.ndarray]:
    def f(sig: np.ndarray) -> np.ndarray:
        if ell < 2:
            return np.ones(sig.shape[0], dtype=bool)
        lab = _orbit_min(sig)[:, :ell]
        return (lab == lab[:, :1]).all(axis=1)

    return f


@dataclass(frozen=True)
class Event:
    """A named event on the product, evaluated on a whole batch at once."""

    name: str
    batch: Callable[[np.ndarray], np.ndarray] = field(compare=False)

    @classmethod
    def from_predicate(cls, name: str, predicate: Callable[[Permutation], bool]) -> "Event":
        """Wrap a per-permutation predicate (slow; one Python call per trial)."""

        def f(sig: np.ndarray) -> np.ndarray:
            return np.fromiter(
                (bool(predicate(Permutation(tuple(int(v) + 1 for v in row)))) for row in sig),
                dtype=bool,
                count=sig.shape[0],
            )

        return cls(name, f)


EVENT_NAMES = ("is-cycle", "identity", "derangement", "blocks:L", "separates:S1,S2,...", "a1:L", "a2:L")


def parse_event(text: str) -> Event:
    """Build an event from ``is-cycle``, ``identity``, ``derangement``, ``blocks:2``,
    ``separates:1,1``, ``a1:3`` or ``a2:3``."""
    name, _, arg = text.strip().partition(":")
    try:
        if name == "is-cycle" and not arg:
            return Event(text, _is_cycle)
        if name == "identity" and not arg:
            return Event(text, _identity)
        if name == "derangement" and not arg:
            return Event(text, _derangement)
        if name == "blocks":
            return Event(text, _blocks(int(arg)))
        if name == "separates":
            sizes = [int(s) for s in arg.split(",")]
            if not sizes or min(sizes) < 1:
                raise ValueError
            return Event(text, _separates(sizes))
        if name == "a1":
            return Event(text, _all_cycles_meet(int(arg)))
        if name == "a2":
            return Event(text, _one_cycle_holds(int(arg)))
    except ValueError:
        pass
    raise ValueError(f"unknown event {text!r}; expected one of {', '.join(EVENT_NAMES)}")


def _event_size(ev: Event) -> int:
    # largest element index an event looks at, for validation against N
    name, _, arg = ev.name.partition(":")
    if name in ("blocks", "a1", "a2"):
        return int(arg)
    if name == "separates":
        return sum(int(s) for s in arg.split(","))
    return 0


# -- estimation ---------------------------------------------------------------


def wilson_interval(hits: int, trials: int, confidence: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= hits <= trials:
        raise ValueError("need 0 <= hits <= trials and trials >= 1")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = hits / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # the bounds are exactly 0 and 1 at the extremes; pin them against rounding
    low = 0.0 if hits == 0 else max(0.0, centre - half)
    high = 1.0 if hits == trials else min(1.0, centre + half)
    return low, high


def _chunk_hits(cfg: McConfig, events: Sequence[Event], chunk: int) -> list[int]:
    start = chunk * cfg.chunk_size
    n = min(cfg.chunk_size, cfg.trials - start)
    sig = sample_products(cfg.N, cfg.k, n, _rng(cfg.seed, chunk))
    return [int(ev.batch(sig).sum()) for ev in events]


def estimate_events(cfg: McConfig, events: Iterable[Event | str]) -> list[McResult]:
    """Estimate several events from one shared set of samples."""
    evs = [parse_event(e) if isinstance(e, str) else e for e in events]
    for ev in evs:
        if _event_size(ev) > cfg.N:
            raise ValueError(f"event {ev.name!r} needs N >= {_event_size(ev)}")
    chunks = range(math.ceil(cfg.trials / cfg.chunk_size))
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            per_chunk = list(pool.map(lambda c: _chunk_hits(cfg, evs, c), chunks))
    else:
        per_chunk = [_chunk_hits(cfg, evs, c) for c in chunks]
    out = []
    for i, ev in enumerate(evs):
        hits = sum(row[i] for row in per_chunk)
        low, high = wilson_interval(hits, cfg.trials, cfg.confidence)
        out.append(McResult(ev.name, hits, cfg.trials, cfg.confidence, low, high))
    return out


def estimate(cfg: McConfig, event: Event | str | Callable[[Permutation], bool]) -> McResult:
    """Point estimate and Wilson interval for one event."""
    if not isinstance(event, (Event, str)):
        event = Event.from_predicate(getattr(event, "__name__", "predicate"), event)
    return estimate_events(cfg, [event])[0]
