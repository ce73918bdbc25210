"""Breakpoint-based coarse distance estimation along the diagonal flow.

The pipeline samples the widest-annulus marking on a grid of flow
times, compresses the marking path into breakpoints whose pairwise
curve-graph distance is certified to be at least 3, and converts the
breakpoint gap count n into the two-sided bracket

    max(0, n/theta - theta)  <=  d  <=  n*(3 + 2*kappa) + 3

with kappa and theta calibrated against exact oracles on a corpus.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from fractions import Fraction

from .cylinders import core_curves
from .errors import CGFlowError, DomainError
from .extremal import short_curves_at, systole_estimate
from .farey import farey_distance, normalize_slope
from .flow import FlowPoint
from .forms import as_fraction
from .intersection import bounded_distance_search, distance_geq3
from .origami import Origami
from .toruspair import TorusPair
from .widecurve import mark_widest


def exact_step(step) -> Fraction:
    """Grid step as an exact rational; float steps read as decimals.

    Fraction(0.1) would be the binary neighbour of one tenth and grid
    times would drift from their printed values, so floats go through
    their shortest decimal representation instead.
    """
    if isinstance(step, float):
        if not math.isfinite(step):
            raise DomainError(f"non-finite step {step!r}")
        return Fraction(str(step))
    return as_fraction(step)


class OrigamiFlowModel:
    """Grid-time geometry queries for an origami instance."""

    kind = "origami"

    __slots__ = (
        "instance", "budget", "sc_bound", "xi", "zeta",
        "_xi_form", "_zeta_form", "_geq3", "_exact",
    )

    def __init__(self, surface: Origami, budget: int = 24, sc_bound=None):
        self.instance = surface
        self.budget = budget
        self.sc_bound = sc_bound
        self.xi, self.zeta = core_curves(surface)
        self._xi_form = self.xi.length_form()
        self._zeta_form = self.zeta.length_form()
        self._geq3 = {}
        self._exact = {}

    @property
    def n(self) -> int:
        return self.instance.n

    def mark(self, t, delta):
        return mark_widest(FlowPoint(self.instance, t), delta, self.sc_bound)

    def mark_key(self, mark):
        return mark.curve.point_set_key()

    def core_lengths(self, t) -> tuple[float, float]:
        return self._xi_form.value(t), self._zeta_form.value(t)

    def systole(self, t) -> float:
        return systole_estimate(FlowPoint(self.instance, t)).value

    def short_count(self, t, epsilon, epsilon0) -> int:
        P = FlowPoint(self.instance, t)
        _, shorts, _ = short_curves_at(P, epsilon, epsilon0)
        return len(shorts)

    def distance_geq3(self, a, b) -> bool:
        ka, kb = self.mark_key(a), self.mark_key(b)
        if ka == kb:
            return False
        key = frozenset((ka, kb))
        hit = self._geq3.get(key)
        if hit is None:
            hit = distance_geq3(a.curve, b.curve)
            self._geq3[key] = hit
        return hit

    def _slope(self, curve):
        dx, dy = curve.direction
        return normalize_slope(dy, dx)

    def exact_distance(self, a, b) -> int | None:
        """Certified curve-graph distance between two marks, else None."""
        ka, kb = self.mark_key(a), self.mark_key(b)
        if ka == kb:
            return 0
        key = frozenset((ka, kb))
        if key in self._exact:
            return self._exact[key]
        if self.instance.surface_sig.complexity < 2:
            value = farey_distance(self._slope(a.curve), self._slope(b.curve))
        else:
            bound = bounded_distance_search(
                a.curve, b.curve, max_depth=3, budget=self.budget
            )
            value = bound.lower if bound.lower == bound.upper else None
        self._exact[key] = value
        return value

    def oracle_pair(self):
        """(certified distance or None, fallback interval or None) for (xi, zeta)."""
        if self.instance.surface_sig.complexity < 2:
            return farey_distance(self._slope(self.xi), self._slope(self.zeta)), None
        bound = bounded_distance_search(
            self.xi, self.zeta, max_depth=3, budget=self.budget
        )
        if bound.lower == bound.upper:
            return bound.lower, None
        return None, (bound.lower, bound.upper)


class TorusPairFlowModel:
    """Grid-time geometry queries for a marked-torus curve pair."""

    kind = "torus-pair"

    __slots__ = ("instance",)

    def __init__(self, pair: TorusPair):
        self.instance = pair

    @property
    def n(self) -> int:
        return self.instance.n

    def mark(self, t, delta):
        return self.instance.widest_mark(t, delta)

    def mark_key(self, mark):
        return mark.curve.vector

    def core_lengths(self, t) -> tuple[float, float]:
        xi, zeta = self.instance.core_curves()
        return xi.flat_length(t), zeta.flat_length(t)

    def systole(self, t) -> float:
        return self.instance.systole_sq(t)

    def short_count(self, t, epsilon, epsilon0) -> int:
        eps = as_fraction(epsilon)
        cap = as_fraction(epsilon0)
        if not 0 < eps <= cap:
            raise DomainError("epsilon must lie in (0, epsilon0]")
        # distinct torus curve classes always intersect, so at most one
        # class is short at a time
        return 1 if self.instance.systole_sq(t) < float(eps) else 0

    def distance_geq3(self, a, b) -> bool:
        return self.instance.farey_between(a.curve, b.curve) >= 3

    def exact_distance(self, a, b) -> int:
        return self.instance.farey_between(a.curve, b.curve)

    def oracle_pair(self):
        return self.instance.oracle_distance(), None


def as_flow_model(instance, budget: int = 24, sc_bound=None):
    """Wrap an instance in its flow model; models pass through."""
    if isinstance(instance, (OrigamiFlowModel, TorusPairFlowModel)):
        return instance
    if isinstance(instance, Origami):
        return OrigamiFlowModel(instance, budget, sc_bound)
    if isinstance(instance, TorusPair):
        return TorusPairFlowModel(instance)
    raise DomainError(f"no flow model for {type(instance).__name__}")


class TraceSample:
    """Geometry summary at one grid time."""

    __slots__ = ("t", "mark", "len_xi", "len_zeta", "systole", "short_count")

    def __init__(self, t, mark, len_xi, len_zeta, systole, short_count):
        self.t = t
        self.mark = mark
        self.len_xi = len_xi
        self.len_zeta = len_zeta
        self.systole = systole
        self.short_count = short_count

    def __repr__(self):
        return (
            f"TraceSample(t={float(self.t):.6g}, mark={self.mark.id_string()}, "
            f"systole={self.systole:.6g})"
        )


class FlowTrace:
    """Sampled widest-mark path over a window of flow times."""

    __slots__ = ("model", "delta", "epsilon", "window", "step", "grid", "samples")

    def __init__(self, model, delta, epsilon, window, step, grid, samples):
        self.model = model
        self.delta = delta
        self.epsilon = epsilon
        self.window = window
        self.step = step
        self.grid = grid
        self.samples = samples

    @property
    def instance(self):
        return self.model.instance

    def __len__(self):
        return len(self.samples)


class BreakpointSequence:
    """Grid times t_0 < t_1 < ... selected by the one-step greedy rule."""

    __slots__ = ("times",)

    def __init__(self, times):
        times = tuple(times)
        if not times:
            raise DomainError("a breakpoint sequence needs at least one time")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("breakpoint times must strictly increase")
        self.times = times

    @property
    def gap_count(self) -> int:
        return len(self.times) - 1

    def __repr__(self):
        shown = ", ".join(f"{float(t):.6g}" for t in self.times)
        return f"BreakpointSequence([{shown}])"


def default_window(instance, margin=2.0) -> tuple[float, float]:
    """Symmetric window (-T, T) with T = ln(n)/2 + margin.

    At |t| = ln(n)/2 the two core curves reach unit-order flat length
    and dominate the widest-annulus choice beyond, so the margin is the
    only knob that matters for endpoint stability.
    """
    margin = float(margin)
    if margin < 0:
        raise DomainError("window margin must be nonnegative")
    n = instance.n
    top = 0.5 * math.log(n) + margin
    return (-top, top)


def flow_grid(window, step) -> tuple[Fraction, ...]:
    """Exact multiples of step inside [window[0], window[1]].

    Anchoring at zero makes symmetric windows produce symmetric grids,
    and makes window growth and step halving produce supersets.
    """
    step = exact_step(step)
    if step <= 0:
        raise DomainError("step must be positive")
    lo, hi = as_fraction(window[0]), as_fraction(window[1])
    first = math.ceil(lo / step)
    last = math.floor(hi / step)
    if first > last:
        raise DomainError("window contains no grid times")
    return tuple(i * step for i in range(first, last + 1))


def sample_window(instance, window, step, delta, *,
                  epsilon=None, budget: int = 24, sc_bound=None) -> FlowTrace:
    """Evaluate marks and flat-geometry summaries at every grid time."""
    model = as_flow_model(instance, budget, sc_bound)
    if not float(delta) > 0:
        raise DomainError("width target must be positive")
    if epsilon is None:
        epsilon = exact_step(delta) ** 2 / 4
    eps = as_fraction(epsilon)
    if eps <= 0:
        raise DomainError("epsilon must be positive")
    grid = flow_grid(window, step)
    samples = []
    for t in grid:
        mark = model.mark(t, delta)
        len_xi, len_zeta = model.core_lengths(t)
        samples.append(TraceSample(
            t, mark, len_xi, len_zeta,
            model.systole(t), model.short_count(t, eps, eps),
        ))
    return FlowTrace(
        model, float(delta), eps,
        (float(window[0]), float(window[1])), exact_step(step),
        grid, tuple(samples),
    )


def greedy_breakpoints(trace: FlowTrace) -> BreakpointSequence:
    """One-step greedy breakpoint selection over the trace grid.

    t_0 is the first grid time; t_{i+1} is the smallest grid time
    >= t_i + 1 such that every grid pair (s <= t_i, t >= t_{i+1}) has
    marks at curve-graph distance >= 3; stops when none exists.
    """
    if not trace.samples:
        raise DomainError("cannot pick breakpoints from an empty trace")
    grid = trace.grid
    marks = [s.mark for s in trace.samples]
    model = trace.model
    count = len(grid)

    # suffix[s] bit u set  <=>  every grid time >= u is far from s
    suffix = [0] * count
    for s in range(count):
        mask = 0
        for u in range(count - 1, s, -1):
            if not model.distance_geq3(marks[s], marks[u]):
                break
            mask |= 1 << u
        suffix[s] = mask

    times = [grid[0]]
    cur = 0
    combined = suffix[0]
    while True:
        target = grid[cur] + 1
        lowest = bisect_left(grid, target)
        rest = combined >> lowest
        if rest == 0:
            break
        nxt = lowest + (rest & -rest).bit_length() - 1
        times.append(grid[nxt])
        for s in range(cur + 1, nxt + 1):
            combined &= suffix[s]
        cur = nxt
    return BreakpointSequence(times)


def verify_breakpoints(trace: FlowTrace, breakpoints) -> list[str]:
    """Independent post-hoc check of the two breakpoint hypotheses.

    Re-derives every quantified pair from the invariant definitions
    instead of trusting the greedy bookkeeping.  Returns a list of
    violation messages, empty when the sequence is valid.
    """
    times = (
        breakpoints.times
        if isinstance(breakpoints, BreakpointSequence)
        else tuple(breakpoints)
    )
    if not times:
        return ["breakpoint sequence is empty"]
    grid = trace.grid
    tol = float(trace.step) * 1e-6
    problems: list[str] = []
    idx: list[int | None] = []
    for t in times:
        tf = float(t)
        best = min(range(len(grid)), key=lambda i: abs(float(grid[i]) - tf))
        if abs(float(grid[best]) - tf) > tol:
            problems.append(f"time {tf!r} is not on the sampling grid")
            idx.append(None)
        else:
            idx.append(best)
    if problems:
        return problems
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            return ["breakpoint times must strictly increase"]

    for i in range(len(idx) - 1):
        gap = grid[idx[i + 1]] - grid[idx[i]]
        if gap < 1:
            problems.append(
                f"hypothesis (1) fails: t_{i + 1} - t_{i} = {float(gap):.6g} < 1"
            )

    marks = [s.mark for s in trace.samples]
    model = trace.model
    for i in range(len(idx) - 1):
        bad = None
        for si in range(idx[i] + 1):
            for ti in range(idx[i + 1], len(grid)):
                if not model.distance_geq3(marks[si], marks[ti]):
                    bad = (si, ti)
                    break
            if bad:
                break
        if bad:
            problems.append(
                f"hypothesis (2) fails for gap {i}: "
                f"d(upsilon({float(grid[bad[0]]):.6g}), "
                f"upsilon({float(grid[bad[1]]):.6g})) < 3"
            )
    return problems


class EstimateReport:
    """Two-sided distance bracket for one instance."""

    __slots__ = (
        "n", "kappa_used", "theta_used", "lower", "upper",
        "oracle_distance", "oracle_interval", "achieved_delta_min",
        "window", "step", "flags", "breakpoints", "trace",
    )

    def __init__(self, n, kappa_used, theta_used, lower, upper,
                 oracle_distance, oracle_interval, achieved_delta_min,
                 window, step, flags, breakpoints, trace):
        if lower > upper:
            raise DomainError("estimate bracket is inverted")
        self.n = n
        self.kappa_used = kappa_used
        self.theta_used = theta_used
        self.lower = lower
        self.upper = upper
        self.oracle_distance = oracle_distance
        self.oracle_interval = oracle_interval
        self.achieved_delta_min = achieved_delta_min
        self.window = window
        self.step = step
        self.flags = flags
        self.breakpoints = breakpoints
        self.trace = trace

    def __repr__(self):
        oracle = self.oracle_distance
        if oracle is None and self.oracle_interval is not None:
            oracle = self.oracle_interval
        return (
            f"EstimateReport(n={self.n}, lower={self.lower:.4g}, "
            f"upper={self.upper:.4g}, oracle={oracle})"
        )


def estimate(instance, theta, kappa, *, delta=0.1, epsilon=None,
             step=Fraction(1, 10), margin=2.0, window=None,
             budget: int = 24, sc_bound=None) -> EstimateReport:
    """Full pipeline: window, trace, breakpoints, bracket, oracle.

    theta scales the lower bound max(0, n/theta - theta); kappa the
    upper bound n*(3 + 2*kappa) + 3.  Reports are flagged rather than
    refused when the instance sits outside the distance >= 3 regime or
    the width target was not met.
    """
    model = as_flow_model(instance, budget, sc_bound)
    theta = float(theta)
    kappa = float(kappa)
    if not theta > 0:
        raise DomainError("theta must be positive")
    if kappa < 0:
        raise DomainError("kappa must be nonnegative")
    delta_fr = exact_step(delta)
    if delta_fr <= 0:
        raise DomainError("width target must be positive")
    if epsilon is None:
        eps = delta_fr ** 2 / 4
    else:
        eps = as_fraction(epsilon)
    if not 0 < eps < delta_fr ** 2 / 2:
        raise DomainError("epsilon must lie in (0, delta^2/2)")
    if window is None:
        window = default_window(model, margin)
    trace = sample_window(model, window, step, delta, epsilon=eps)
    breakpoints = greedy_breakpoints(trace)
    violations = verify_breakpoints(trace, breakpoints)
    if violations:
        raise CGFlowError(
            "breakpoint invariants failed the post-hoc check: "
            + "; ".join(violations)
        )

    n = breakpoints.gap_count
    lower = max(0.0, n / theta - theta)
    upper = n * (3 + 2 * kappa) + 3
    oracle_distance, oracle_interval = model.oracle_pair()

    flags = []
    if any(s.mark.below_target for s in trace.samples):
        flags.append("below-target-delta")
    known_upper = oracle_distance
    if known_upper is None and oracle_interval is not None:
        known_upper = oracle_interval[1]
    if known_upper is not None and known_upper < 3:
        flags.append("outside-theorem-hypotheses")

    return EstimateReport(
        n, kappa, theta, lower, upper,
        oracle_distance, oracle_interval,
        min(s.mark.achieved_delta for s in trace.samples),
        trace.window, trace.step, tuple(flags), breakpoints, trace,
    )


class InstanceCalibration:
    """Per-instance trace statistics shared by the two calibrators.

    Marks are piecewise constant in t, so the grid is compressed into
    runs of equal mark and all exact distances are taken between run
    representatives; defect maxima over grid pairs and triples are then
    exact, not sampled.
    """

    __slots__ = ("label", "model", "trace", "breakpoints", "runs",
                 "distances", "oracle")

    def __init__(self, label, model, trace, breakpoints, runs, distances, oracle):
        self.label = label
        self.model = model
        self.trace = trace
        self.breakpoints = breakpoints
        self.runs = runs
        self.distances = distances
        self.oracle = oracle

    @property
    def gap_count(self) -> int:
        return self.breakpoints.gap_count


def trace_statistics(instance, *, label=None, delta=0.1, epsilon=None,
                     step=Fraction(1, 10), margin=2.0, budget: int = 24,
                     sc_bound=None) -> InstanceCalibration:
    """Trace an instance and compute exact run-to-run distances."""
    model = as_flow_model(instance, budget, sc_bound)
    window = default_window(model, margin)
    trace = sample_window(model, window, step, delta, epsilon=epsilon)
    breakpoints = greedy_breakpoints(trace)

    runs: list[tuple[int, int]] = []
    keys = [model.mark_key(s.mark) for s in trace.samples]
    start = 0
    for i in range(1, len(keys) + 1):
        if i == len(keys) or keys[i] != keys[start]:
            runs.append((start, i - 1))
            start = i
    marks = [s.mark for s in trace.samples]
    distances = {}
    for i in range(len(runs)):
        for j in range(i, len(runs)):
            a = marks[runs[i][0]]
            b = marks[runs[j][0]]
            d = model.exact_distance(a, b)
            if d is None:
                raise DomainError(
                    f"calibration needs exact distances; none certified for "
                    f"{label or 'instance'} runs {i} and {j}"
                )
            distances[i, j] = d

    oracle, _ = model.oracle_pair()
    if oracle is None:
        raise DomainError(
            f"calibration needs an exact endpoint oracle for {label or 'instance'}"
        )
    return InstanceCalibration(
        label, model, trace, breakpoints, tuple(runs), distances, oracle,
    )


def _as_calibrations(corpus, config) -> list[InstanceCalibration]:
    items = list(corpus)
    if not items:
        raise DomainError("calibration needs a nonempty corpus")
    out = []
    for i, item in enumerate(items):
        if isinstance(item, InstanceCalibration):
            out.append(item)
            continue
        label = f"instance-{i}"
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str):
            label, item = item
        out.append(trace_statistics(item, label=label, **config))
    return out


class KappaCalibration:
    """Corpus-wide kappa with per-component defect maxima and witnesses.

    pair and triangle defects are the two coarse-Lipschitz /
    quasi-geodesic inequalities the constant must absorb; the bracket
    defect is the smallest kappa making the upper estimate cover the
    oracle on each training instance, so bracketing on the training
    corpus holds by construction.  Instances with no gaps but oracle
    distance above 3 cannot be fixed by any kappa and are listed as
    infeasible.
    """

    __slots__ = ("kappa_hat", "pair_max", "pair_witness", "triangle_max",
                 "triangle_witness", "bracket_max", "bracket_witness",
                 "infeasible")

    def __init__(self, pair_max, pair_witness, triangle_max, triangle_witness,
                 bracket_max, bracket_witness, infeasible):
        self.pair_max = pair_max
        self.pair_witness = pair_witness
        self.triangle_max = triangle_max
        self.triangle_witness = triangle_witness
        self.bracket_max = bracket_max
        self.bracket_witness = bracket_witness
        self.infeasible = infeasible
        # widen by one part in 1e12 so instances sitting exactly on a
        # defect boundary stay bracketed under float evaluation
        self.kappa_hat = max(0.0, pair_max, triangle_max, bracket_max) * (1 + 1e-12)

    @property
    def eq_defect_max(self) -> float:
        """Largest pair or triangle defect; the holdout comparison point."""
        return max(self.pair_max, self.triangle_max)


def calibrate_kappa(corpus, **config) -> KappaCalibration:
    """Smallest kappa absorbing all grid-pair and grid-triple defects.

    Pair defect d/(1 + |t-s|) makes d <= kappa*|t-s| + kappa hold;
    triangle defect d(s,t) + d(t,u) - d(s,u) over s <= t <= u bounds the
    concatenation overshoot; bracket defect (d - 3 - 3n)/(2n) makes the
    upper estimate cover the oracle.  Maxima are exact over all grid
    pairs and triples via run compression.
    """
    stats = _as_calibrations(corpus, config)
    pair_max, pair_wit = 0.0, None
    tri_max, tri_wit = 0.0, None
    fold_max, fold_wit = 0.0, None
    infeasible = []

    for st in stats:
        grid = st.trace.grid
        runs = st.runs
        d = st.distances
        for i in range(len(runs)):
            for j in range(i + 1, len(runs)):
                dij = d[i, j]
                if dij == 0:
                    continue
                s_time = grid[runs[i][1]]
                t_time = grid[runs[j][0]]
                defect = dij / (1.0 + float(t_time - s_time))
                if defect > pair_max:
                    pair_max = defect
                    pair_wit = {
                        "instance": st.label, "s": float(s_time),
                        "t": float(t_time), "d": dij,
                    }
        for i in range(len(runs)):
            for j in range(i + 1, len(runs)):
                for k in range(j + 1, len(runs)):
                    defect = float(d[i, j] + d[j, k] - d[i, k])
                    if defect > tri_max:
                        tri_max = defect
                        tri_wit = {
                            "instance": st.label,
                            "s": float(grid[runs[i][1]]),
                            "t": float(grid[runs[j][0]]),
                            "u": float(grid[runs[k][0]]),
                            "d_st": d[i, j], "d_tu": d[j, k], "d_su": d[i, k],
                        }
        n = st.gap_count
        if n == 0:
            if st.oracle > 3:
                infeasible.append(st.label)
            continue
        defect = (st.oracle - 3.0 - 3.0 * n) / (2.0 * n)
        if defect > fold_max:
            fold_max = defect
            fold_wit = {"instance": st.label, "n": n, "d": st.oracle}

    return KappaCalibration(
        pair_max, pair_wit, tri_max, tri_wit, fold_max, fold_wit,
        tuple(infeasible),
    )


class ThetaCalibration:
    """Corpus-wide theta: the largest per-instance minimal feasible value."""

    __slots__ = ("theta_hat", "witness")

    def __init__(self, theta_hat, witness):
        self.theta_hat = theta_hat
        self.witness = witness


def theta_floor(n: int, d: int) -> float:
    """Minimal theta with d >= n/theta - theta; zero when n = 0."""
    if n < 0 or d < 0:
        raise DomainError("gap count and distance must be nonnegative")
    return (-d + math.sqrt(d * d + 4.0 * n)) / 2.0


def calibrate_theta(corpus, **config) -> ThetaCalibration:
    """Largest minimal feasible theta over the corpus, with witness.

    Using the maximum makes the lower estimate n/theta - theta sit at
    or below the oracle for every training instance by construction.
    """
    stats = _as_calibrations(corpus, config)
    best = 0.0
    witness = None
    for st in stats:
        floor = theta_floor(st.gap_count, st.oracle)
        if floor >= best:
            best = floor
            witness = {"instance": st.label, "n": st.gap_count, "d": st.oracle}
    # widen by one part in 1e12: the witness instance sits exactly on
    # n/theta - theta = d, which float evaluation must not overshoot
    return ThetaCalibration(best * (1 + 1e-12), witness)


class Calibration:
    """Joint corpus calibration of both estimate constants."""

    __slots__ = ("kappa", "theta", "instances")

    def __init__(self, kappa: KappaCalibration, theta: ThetaCalibration,
                 instances):
        self.kappa = kappa
        self.theta = theta
        self.instances = instances

    @property
    def kappa_hat(self) -> float:
        return self.kappa.kappa_hat

    @property
    def theta_hat(self) -> float:
        return self.theta.theta_hat


def calibrate(corpus, **config) -> Calibration:
    """Trace the corpus once and calibrate kappa and theta together."""
    stats = _as_calibrations(corpus, config)
    return Calibration(
        calibrate_kappa(stats), calibrate_theta(stats), tuple(stats),
    )


class ProgressionDiagnostic:
    """Thick-time fraction versus endpoint distance over one trace."""

    __slots__ = ("epsilon", "threshold", "thick_fraction",
                 "endpoint_distance", "meets_threshold")

    def __init__(self, epsilon, threshold, thick_fraction, endpoint_distance):
        self.epsilon = epsilon
        self.threshold = threshold
        self.thick_fraction = thick_fraction
        self.endpoint_distance = endpoint_distance
        self.meets_threshold = thick_fraction >= threshold


def progression_diagnostic(trace: FlowTrace, epsilon, b) -> ProgressionDiagnostic:
    """Fraction of grid times with systole estimate >= epsilon.

    The systole estimate is an upper bound, so the reported fraction
    overstates thickness; it is a monitoring statistic, not a bound.
    The endpoint distance is attached when an exact oracle exists.
    """
    eps = float(epsilon)
    if not eps > 0:
        raise DomainError("epsilon must be positive")
    threshold = float(b)
    if not 0 < threshold < 1:
        raise DomainError("threshold b must lie in (0, 1)")
    if not trace.samples:
        raise DomainError("diagnostic needs a nonempty trace")
    thick = sum(1 for s in trace.samples if s.systole >= eps)
    fraction = thick / len(trace.samples)
    endpoint = trace.model.exact_distance(
        trace.samples[0].mark, trace.samples[-1].mark
    )
    return ProgressionDiagnostic(eps, threshold, fraction, endpoint)
