"""Brute-force enumeration of two-photon amplitude products.

Each photon takes one of 2^N routes through the interferometer, so the TPA
probability is the modulus squared of a 4^N-term sum, i.e. 16^N products
A A*. Only the arm-2 visit count of a route matters for its delay, so a
product is classified by ``(k_a, k_b)``, the difference in arm-2 visits
between each photon's route and its conjugate route. The random initial
phases of the two photons multiply every amplitude identically and cancel
in each product, so no phase averaging is needed here.

This module is deliberately slow and literal; it exists to check the
closed-form counts in :mod:`superbunch.coherence` and :mod:`superbunch.synth`.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from .coherence import _check_passes
from .errors import DomainError, EnumerationBudgetError
from .synth import FS, DelayGrid, Interferogram, SpectrumModel, sinc

ENUMERATION_CAP = 8

Route = Tuple[int, ...]


def arm2_count(route: Route) -> int:
    return sum(1 for arm in route if arm == 2)


@dataclass(frozen=True)
class AmplitudeProductTerm:
    route_a: Route
    route_b: Route
    route_a_conjugate: Route
    route_b_conjugate: Route

    @property
    def k_a(self) -> int:
        return arm2_count(self.route_a) - arm2_count(self.route_a_conjugate)

    @property
    def k_b(self) -> int:
        return arm2_count(self.route_b) - arm2_count(self.route_b_conjugate)


def _check_budget(n: int, cap: int) -> None:
    _check_passes(n)
    if n > cap:
        raise EnumerationBudgetError(
            f"enumerating 16^{n} = {16**n:.3e} products exceeds the N <= {cap} cap; "
            "use census(n, mode='closed') or synth.full_trace instead"
        )


def enumerate_terms(
    n: int, prefix: Route = (), cap: int = ENUMERATION_CAP
) -> Iterator[AmplitudeProductTerm]:
    """Yield every amplitude product for ``n`` passes.

    ``prefix`` pins the leading arms of photon a's route, which splits the
    enumeration into disjoint partitions that can be run separately and merged.
    """
    _check_budget(n, cap)
    if len(prefix) > n or any(arm not in (1, 2) for arm in prefix):
        raise DomainError(f"invalid route prefix {prefix!r} for N={n}")
    routes = list(itertools.product((1, 2), repeat=n))
    heads = [r for r in routes if r[: len(prefix)] == tuple(prefix)]
    for ra in heads:
        for rb, ra_c, rb_c in itertools.product(routes, repeat=3):
            yield AmplitudeProductTerm(ra, rb, ra_c, rb_c)


@dataclass(frozen=True)
class TermCensus:
    n: int
    counts: Dict[Tuple[int, int], int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return self.counts.get(key, 0)

    def merge(self, other: "TermCensus") -> "TermCensus":
        if other.n != self.n:
            raise DomainError("cannot merge censuses for different pass counts")
        merged = Counter(self.counts)
        merged.update(other.counts)
        return TermCensus(self.n, dict(merged))

    def constant(self) -> int:
        return self[(0, 0)]

    def interference(self, m: int) -> int:
        return self[(m, -m)] + self[(-m, m)]


def closed_form_census(n: int) -> TermCensus:
    """Census from u(k_a) u(k_b) with u(k) = C(2N, N - |k|)."""
    _check_passes(n)
    u = {k: math.comb(2 * n, n - abs(k)) for k in range(-n, n + 1)}
    return TermCensus(n, {(ka, kb): u[ka] * u[kb] for ka in u for kb in u})


def direct_census(n: int, prefix: Route = (), cap: int = ENUMERATION_CAP) -> TermCensus:
    tally = Counter((t.k_a, t.k_b) for t in enumerate_terms(n, prefix, cap))
    return TermCensus(n, dict(tally))


def census(n: int, mode: str = "auto", cap: int = ENUMERATION_CAP) -> TermCensus:
    """Count amplitude products per ``(k_a, k_b)`` class.

    ``mode`` is ``"direct"`` (enumerate), ``"closed"`` (binomial formula) or
    ``"auto"`` (direct for N <= 3, closed beyond).
    """
    if mode == "direct":
        return direct_census(n, cap=cap)
    if mode == "closed":
        return closed_form_census(n)
    if mode == "auto":
        return direct_census(n, cap=cap) if n <= min(cap, 3) else closed_form_census(n)
    raise DomainError(f"unknown census mode {mode!r}")


def brute_trace(
    n: int,
    spectrum: SpectrumModel,
    delays: DelayGrid,
    term_census: Optional[TermCensus] = None,
) -> Interferogram:
    """Raw trace summed class by class over the census.

    Each class contributes count * sinc(k_a dw tau/2) sinc(k_b dw tau/2)
    * cos((k_a + k_b) w0 tau); the rectangular spectrum integral of each
    photon's phase factor gives the sinc and carrier.
    """
    if delays.samples < 1:
        raise DomainError("empty delay grid")
    tc = term_census if term_census is not None else census(n)
    t = delays.taus() * FS
    dwt = spectrum.delta_omega * t
    wt = spectrum.omega0 * t
    out = np.zeros(delays.samples)
    for (ka, kb), count in sorted(tc.counts.items()):
        out += (
            float(count)
            * sinc(0.5 * ka * dwt)
            * sinc(0.5 * kb * dwt)
            * np.cos((ka + kb) * wt)
        )
    return Interferogram(delays, out, "raw", "full", n, spectrum)
