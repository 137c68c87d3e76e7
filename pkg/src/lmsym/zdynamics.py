"""Mixed z-measures on Young diagrams and the associated jump process.

The measure puts mass
    M(lam) = (1-xi)^{zz'} * prod_boxes (z+c)(z'+c) * xi^{|lam|} * (dim lam/|lam|!)^2
on each diagram; it is the invariant and symmetrizing law of the continuous
time jump chain whose rates are the coefficients of the Meixner generator.
The non-polynomial prefactor (1-xi)^{zz'} is handled only in log space; the
rest of the mass is exact.

Simulation is exact Gillespie: exponential holding time at total rate
C(lam) = (1+2t)|lam| + t zz', categorical jump choice. Randomness comes from
numpy Generators; an ensemble of n trajectories with master seed s gives
trajectory i the stream SeedSequence(s).spawn(n)[i], so parallel runs are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import laguerre as _laguerre
from . import meixner as _meixner
from .coeffring import MPoly, NumericParams, as_rat, classify_pair
from .partition import (
    EMPTY,
    Partition,
    add_box,
    as_partition,
    boxes,
    conjugate,
    content,
    corners,
    dim_syt,
    enumerate_partitions,
    frobenius,
    log_dim_syt,
    partitions_up_to,
    remove_box,
    to_string,
)
from .symcore import SymFunc, ThomaPoint, eval_on_thoma


def classify(*, z=None, zp=None, z_re=None, z_im=None) -> str:
    """Series tag of a parameter pair, given either a real pair (z, zp) or a
    conjugate pair z = z_re + i z_im, z' = conj(z)."""
    if z_re is not None or z_im is not None:
        if z is not None or zp is not None:
            raise ValueError("give either a real pair or a conjugate pair, not both")
        return classify_pair("conj", as_rat(z_re), as_rat(z_im if z_im is not None else 0))
    if z is None or zp is None:
        raise ValueError("a real pair needs both z and zp")
    return classify_pair("real", as_rat(z), as_rat(zp))


class ZMeasure:
    """The mixed z-measure at an admissible parameter point."""

    def __init__(self, np_: NumericParams):
        np_.require_admissible()
        self.params = np_
        self.log_prefactor = float(np_.zzp) * math.log1p(-float(np_.xi))
        self._cache: dict[Partition, float] = {}

    def pmf_exact_scaled(self, lam) -> Fraction:
        """Exact mass without the (1-xi)^{zz'} prefactor."""
        lam = as_partition(lam)
        n = sum(lam)
        prod = Fraction(1)
        for box in boxes(lam):
            prod *= self.params.content_factor(content(box))
        if not prod:
            return Fraction(0)
        d = dim_syt(lam)
        return prod * self.params.xi ** n * Fraction(d * d, math.factorial(n) ** 2)

    def log_pmf_scaled(self, lam) -> float:
        """Float log of the scaled mass (for bulk sums); -inf on zero mass."""
        lam = as_partition(lam)
        n = sum(lam)
        tot = n * math.log(float(self.params.xi))
        for box in boxes(lam):
            f = self.params.content_factor(content(box))
            if f == 0:
                return -math.inf
            tot += math.log(float(f))
        tot += 2.0 * (log_dim_syt(lam) - math.lgamma(n + 1))
        return tot

    def pmf(self, lam) -> float:
        lam = as_partition(lam)
        val = self._cache.get(lam)
        if val is None:
            val = math.exp(self.log_prefactor + self.log_pmf_scaled(lam))
            self._cache[lam] = val
        return val

    def bulk_pmf(self, cutoff: int):
        """(states, probabilities) for every diagram with |lam| <= cutoff.

        One tight log-space pass: log mass = sum over boxes of
        [log factor(content) - 2 log hook] + |lam| log xi + zz' log(1-xi),
        with the factorial terms cancelled against the hook products.
        """
        offset = cutoff
        flogc: list[float | None] = []
        for c in range(-cutoff, cutoff + 1):
            v = self.params.content_factor(c)
            flogc.append(math.log(float(v)) if v else None)
        logh = [0.0] * (2 * cutoff + 2)
        for h in range(1, len(logh)):
            logh[h] = math.log(h)
        logxi = math.log(float(self.params.xi))
        states = []
        logs = []
        for lam in partitions_up_to(cutoff):
            conj = conjugate(lam)
            tot = sum(lam) * logxi
            dead = False
            for i, r in enumerate(lam):
                for j in range(r):
                    lf = flogc[j - i + offset]
                    if lf is None:
                        dead = True
                        break
                    tot += lf - 2.0 * logh[r - j + conj[j] - i - 1]
                if dead:
                    break
            states.append(lam)
            logs.append(-math.inf if dead else tot)
        probs = np.exp(np.array(logs) + self.log_prefactor)
        return states, probs

    def normalization_check(self, cutoff: int, f: Callable[[Partition], float] | None = None):
        """Partial sum of the pmf over |lam| <= cutoff, its defect from 1,
        and optionally the partial expectation of a diagram function f."""
        states, probs = self.bulk_pmf(cutoff)
        total = float(probs.sum())
        report = {"cutoff": cutoff, "partial_sum": total, "defect": 1.0 - total}
        if f is not None:
            report["moment"] = float(sum(f(lam) * p for lam, p in zip(states, probs)))
        return report


def detailed_balance_check(lam, box, np_: NumericParams | None = None, symbolic: bool = True) -> bool:
    """M(lam) A(lam,box) = M(lam+box) B(lam+box,box), with the common
    (1-xi)^{zz'} prefactor cancelled.

    Symbolically the identity is polynomial in (z, z', t) once xi is written
    as t/(1+t) and both sides are multiplied by (1+t); numerically it is
    checked with exact rationals at np_.
    """
    lam = as_partition(lam)
    up = add_box(lam, box)
    n = sum(lam)
    c = content(box)
    d_lam, d_up = dim_syt(lam), dim_syt(up)
    if symbolic:
        from .coeffring import PP_T
        from .partition import content_product

        p_lam = content_product(boxes(lam))
        p_up = content_product(boxes(up))
        add_rates, _, _ = _meixner.jump_rates(lam)
        _, rem_rates, _ = _meixner.jump_rates(up)
        # both sides scaled by (1+t) / xi^{|lam|}; xi (1+t) = t stays polynomial
        lhs = p_lam * Fraction(d_lam * d_lam, math.factorial(n) ** 2) \
            * (PP_T + 1) * add_rates[box]
        rhs = p_up * Fraction(d_up * d_up, math.factorial(n + 1) ** 2) \
            * PP_T * rem_rates[box]
        return lhs == rhs
    if np_ is None:
        raise ValueError("numeric check needs parameters")
    t = np_.t
    a_rate = t * np_.content_factor(c) * Fraction(d_up, (n + 1) * d_lam)
    b_rate = (1 + t) * Fraction((n + 1) * d_lam, d_up)
    zm = ZMeasure(np_)
    return zm.pmf_exact_scaled(lam) * a_rate == zm.pmf_exact_scaled(up) * b_rate


def rate_sum_check(lam) -> bool:
    """sum of add rates + sum of remove rates == (1+2t)|lam| + t zz', symbolically."""
    add, remove, total = _meixner.jump_rates(lam)
    acc = MPoly(3)
    for r in add.values():
        acc = acc + r
    for r in remove.values():
        acc = acc + r
    return acc == total


# ---------------------------------------------------------------------------
# Simulation.


@dataclass(frozen=True)
class Trajectory:
    """One realization of the jump chain: initial state plus jump events.

    Events are (time, "+"/"-", box); consecutive states differ by one box and
    times increase strictly. Reproducible from (params, initial, seed).
    """

    initial: Partition
    events: tuple
    seed: object
    params: NumericParams
    final_time: float

    def states(self):
        """Yield (time, partition) starting at time 0."""
        lam = self.initial
        yield 0.0, lam
        for time, kind, box in self.events:
            lam = add_box(lam, box) if kind == "+" else remove_box(lam, box)
            yield time, lam

    def state_at(self, time: float) -> Partition:
        lam = self.initial
        for when, kind, box in self.events:
            if when > time:
                break
            lam = add_box(lam, box) if kind == "+" else remove_box(lam, box)
        return lam

    def to_csv(self) -> str:
        lines = ["time,event,partition"]
        lam = self.initial
        for time, kind, box in self.events:
            lam = add_box(lam, box) if kind == "+" else remove_box(lam, box)
            lines.append(f'{time!r},"{kind}{box[0]},{box[1]}","{to_string(lam)}"')
        return "\n".join(lines) + "\n"


class JumpProcess:
    """The diagram-valued jump chain at fixed admissible parameters.

    Rates at each visited diagram are cached, so long runs and large
    ensembles over a small effective state space stay fast.
    """

    def __init__(self, np_: NumericParams):
        np_.require_admissible()
        self.params = np_
        self._moves: dict[Partition, tuple] = {}

    def support_check(self, lam: Partition):
        """Degenerate parameters confine the chain; reject states off support."""
        series = self.params.series
        if series != "degenerate":
            return
        zm = ZMeasure(self.params)
        if zm.pmf_exact_scaled(lam) == 0:
            raise ValueError(f"initial state {lam} is outside the support")

    def moves(self, lam: Partition):
        """((move, kind, box), rates array, total rate) at lam."""
        entry = self._moves.get(lam)
        if entry is None:
            np_ = self.params
            t = np_.t
            n = sum(lam)
            d_lam = dim_syt(lam)
            addable, removable = corners(lam)
            movelist = []
            rates = []
            for box in addable:
                rate = t * np_.content_factor(content(box)) \
                    * Fraction(dim_syt(add_box(lam, box)), (n + 1) * d_lam)
                if rate:
                    movelist.append((add_box(lam, box), "+", box))
                    rates.append(float(rate))
            for box in removable:
                rate = (1 + t) * Fraction(n * dim_syt(remove_box(lam, box)), d_lam)
                if rate:
                    movelist.append((remove_box(lam, box), "-", box))
                    rates.append(float(rate))
            arr = np.array(rates)
            entry = (tuple(movelist), arr, float(arr.sum()))
            self._moves[lam] = entry
        return entry

    def simulate(self, initial, t_max: float | None, seed, max_events: int | None = None,
                 rng: np.random.Generator | None = None) -> Trajectory:
        if t_max is None and max_events is None:
            raise ValueError("need a stopping rule: t_max or max_events")
        lam = as_partition(initial)
        self.support_check(lam)
        if rng is None:
            rng = np.random.default_rng(np.random.SeedSequence(seed))
        events = []
        time = 0.0
        while True:
            if max_events is not None and len(events) >= max_events:
                break
            movelist, rates, total = self.moves(lam)
            if total == 0.0:
                time = t_max if t_max is not None else time
                break
            time += rng.exponential(1.0 / total)
            if t_max is not None and time > t_max:
                time = t_max
                break
            u = rng.random() * total
            acc = 0.0
            idx = len(rates) - 1
            for k, r in enumerate(rates):
                acc += r
                if u < acc:
                    idx = k
                    break
            nxt, kind, box = movelist[idx]
            events.append((time, kind, box))
            lam = nxt
        return Trajectory(as_partition(initial), tuple(events), seed, self.params, time)

    def ensemble_states(self, initial, times: Sequence[float], n_traj: int, seed):
        """States of n_traj independent runs observed at the given times.

        Trajectory i uses SeedSequence(seed).spawn(n_traj)[i].
        Returns {time: {partition: count}}.
        """
        times = sorted(times)
        counts = {s: {} for s in times}
        streams = np.random.SeedSequence(seed).spawn(n_traj)
        initial = as_partition(initial)
        for stream in streams:
            rng = np.random.default_rng(stream)
            lam = initial
            time = 0.0
            ti = 0
            while ti < len(times):
                movelist, rates, total = self.moves(lam)
                wait = rng.exponential(1.0 / total) if total > 0 else math.inf
                nxt_time = time + wait
                while ti < len(times) and nxt_time > times[ti]:
                    bucket = counts[times[ti]]
                    bucket[lam] = bucket.get(lam, 0) + 1
                    ti += 1
                if ti >= len(times):
                    break
                time = nxt_time
                u = rng.random() * total
                acc = 0.0
                idx = len(rates) - 1
                for k, r in enumerate(rates):
                    acc += r
                    if u < acc:
                        idx = k
                        break
                lam = movelist[idx][0]
        return counts

    def occupation_fractions(self, trajectory: Trajectory):
        """Time-averaged occupation of each state along a trajectory."""
        weights: dict[Partition, float] = {}
        prev_time = 0.0
        lam = trajectory.initial
        for time, kind, box in trajectory.events:
            weights[lam] = weights.get(lam, 0.0) + (time - prev_time)
            prev_time = time
            lam = add_box(lam, box) if kind == "+" else remove_box(lam, box)
        if trajectory.final_time > prev_time:
            weights[lam] = weights.get(lam, 0.0) + (trajectory.final_time - prev_time)
        total = sum(weights.values())
        return {lam: w / total for lam, w in weights.items()}


def simulate(initial, t_max, np_: NumericParams, seed, max_events=None) -> Trajectory:
    return JumpProcess(np_).simulate(initial, t_max, seed, max_events=max_events)


# ---------------------------------------------------------------------------
# Spectral transition probabilities.


def transition_prob(lam, kappa, time: float, np_: NumericParams, cutoff: int):
    """Spectral form of the transition function, truncated at |nu| <= cutoff:

    P(time; lam, kappa) = sum_nu e^{-time |nu|}
        M_nu(lam) M_nu(kappa) / <M_nu, M_nu> * M(kappa),

    with <M_nu, M_nu> = (t(1+t))^{|nu|} * content product. Returns
    (value, magnitude of the last spectral shell) as a truncation diagnostic.
    """
    lam = as_partition(lam)
    kappa = as_partition(kappa)
    np_.require_admissible()
    if np_.series == "degenerate":
        raise ValueError("spectral expansion needs nondegenerate parameters")
    zm = ZMeasure(np_)
    mass = zm.pmf(kappa)
    total = 0.0
    last_shell = 0.0
    for shell in range(cutoff + 1):
        shell_sum = 0.0
        for nu in enumerate_partitions(shell):
            # C''^2 / <M_nu, M_nu> collapses exactly to xi^|nu| (dim/|nu|!)^2 P_nu
            w = _spectral_weight(nu, np_)
            if w == 0.0:
                continue
            shell_sum += w * float(_meixner.meixner_value_normalized(nu, lam, np_)) \
                * float(_meixner.meixner_value_normalized(nu, kappa, np_))
        total += math.exp(-time * shell) * shell_sum * mass
        last_shell = abs(math.exp(-time * shell) * shell_sum * mass)
    return total, last_shell


@lru_cache(maxsize=None)
def _spectral_weight(nu: Partition, np_: NumericParams) -> float:
    n = sum(nu)
    prod = Fraction(1)
    for box in boxes(nu):
        prod *= np_.content_factor(content(box))
    d = dim_syt(nu)
    return float(np_.xi ** n * Fraction(d * d, math.factorial(n) ** 2) * prod)


# ---------------------------------------------------------------------------
# Embedding into the Thoma cone and scaling-limit statistics.


def embed(lam, eps) -> ThomaPoint:
    """iota_eps: scale the modified Frobenius coordinates by eps and set
    delta = eps |lam|, so gamma = 0."""
    lam = as_partition(lam)
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    a, b = frobenius(lam)
    return ThomaPoint(tuple(eps * x for x in a), tuple(eps * x for x in b), eps * sum(lam))


def stationary_sampler(np_: NumericParams, cutoff: int):
    """Inverse-CDF sampler for the z-measure truncated to |lam| <= cutoff.

    Returns (draw(rng) -> Partition, tail mass beyond the cutoff).
    """
    zm = ZMeasure(np_)
    states, probs = zm.bulk_pmf(cutoff)
    tail = 1.0 - float(probs.sum())
    cdf = np.cumsum(probs)
    norm = cdf[-1]

    def draw(rng: np.random.Generator) -> Partition:
        u = rng.random() * norm
        idx = int(np.searchsorted(cdf, u, side="right"))
        return states[min(idx, len(states) - 1)]

    return draw, tail


def _size_distribution(np_: NumericParams, tol: float = 1e-14):
    """The law of |lam| under the z-measure: a negative-binomial-type law
    P(n) = (1-xi)^{zz'} (zz')_n xi^n / n!, truncated when the tail < tol."""
    zzp = float(np_.zzp)
    xi = float(np_.xi)
    probs = [math.exp(float(np_.zzp) * math.log1p(-xi))]
    total = probs[0]
    n = 0
    while total < 1.0 - tol and n < 100000:
        probs.append(probs[-1] * xi * (zzp + n) / (n + 1))
        total += probs[-1]
        n += 1
    return np.array(probs)


def sample_diagram(np_: NumericParams, rng: np.random.Generator,
                   size_cdf=None) -> Partition:
    """Draw a diagram from the z-measure by sequential growth.

    The size is negative-binomial; conditioned on the size, growing from the
    empty diagram with up-step law
    p(lam -> lam+box) = (z+c)(z'+c) dim(lam+box) / ((|lam|+1)(zz'+|lam|) dim lam)
    reaches each lam of that size with its conditional z-measure weight (the
    dim ratios telescope along paths and the content products multiply).
    """
    if size_cdf is None:
        size_cdf = np.cumsum(_size_distribution(np_))
    n = int(np.searchsorted(size_cdf, rng.random() * size_cdf[-1], side="right"))
    lam = EMPTY
    zzp = np_.zzp
    for step in range(n):
        addable = corners(lam)[0]
        d_lam = dim_syt(lam)
        weights = []
        for box in addable:
            w = np_.content_factor(content(box)) * Fraction(dim_syt(add_box(lam, box)), d_lam)
            weights.append(float(w / ((step + 1) * (zzp + step))))
        arr = np.array(weights)
        idx = int(np.searchsorted(np.cumsum(arr), rng.random() * arr.sum(), side="right"))
        lam = add_box(lam, addable[min(idx, len(addable) - 1)])
    return lam


def scaling_limit_stats(param_seq: Sequence[NumericParams], f: SymFunc,
                        samples: int, seed) -> list[dict]:
    """Monte Carlo pushforward moments along a xi -> 1 sequence.

    For each parameter point, estimates E[f(iota_{1-xi}(lam))] under the
    z-measure and reports it against the Laguerre moment of f. When f is a
    polynomial in p_1 alone, the statistic depends on the diagram only
    through |lam| (p_1 of the embedded point is (1-xi)|lam|), so sampling
    reduces to the exact size law; general f uses full growth sampling.
    """
    fp = f.in_basis("p")
    p1_only = all(all(part == 1 for part in mono) for mono in fp.terms)
    reports = []
    reference_poly = _laguerre.moment(f)
    streams = np.random.SeedSequence(seed).spawn(len(param_seq))
    for np_, stream in zip(param_seq, streams):
        rng = np.random.default_rng(stream)
        reference = float(np_.param_eval(reference_poly))
        eps = 1 - np_.xi
        if p1_only:
            coeffs = {len(mono): float(np_.param_eval(c)) for mono, c in fp.terms.items()}
            size_probs = _size_distribution(np_)
            sizes = rng.choice(len(size_probs), size=samples,
                               p=size_probs / size_probs.sum())
            delta = float(eps) * sizes.astype(float)
            vals = np.zeros(samples)
            for k, c in coeffs.items():
                vals += c * delta ** k
        else:
            size_cdf = np.cumsum(_size_distribution(np_))
            out = []
            for _ in range(samples):
                lam = sample_diagram(np_, rng, size_cdf)
                out.append(float(eval_on_thoma(f, embed(lam, eps)).const_value()))
            vals = np.array(out)
        est = float(vals.mean())
        stderr = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
        reports.append({"xi": float(np_.xi), "estimate": est,
                        "reference": reference, "stderr": stderr, "n": samples})
    return reports
