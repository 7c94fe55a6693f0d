# -*- coding: utf-8 -*-

"""Charts, atlases and the growth of the estimated domain of attraction.

A chart is an embryo with the root test on its top degree block: a point z
belongs to the chart when

    r(z) = (sum_{|j| = p} |B_j| |z - z0|^j)^(1/p) < level.

An atlas is the union of the chart at the origin and the charts added by
re-expanding that embryo at points close to the boundary of the estimate.
"""

import concurrent.futures
import dataclasses
from dataclasses import dataclass, field as dataclass_field
import functools
import json
import logging
import math
from pathlib import Path
import time

import numpy as np
import scipy.special
import scipy.stats.qmc

from .embryo import Embryo, compute_coefficients, taylor_shift
from .field_model import jacobian_at_origin, monomials, serialize_system
from .oracle import OracleParameters, Verdict, simulate_many
from .spectral import Spectrum, diagonalize, transform_field

logger = logging.getLogger(__name__)

CRITERIA = ("top", "tail")
CHUNK_SIZE = 4096
SAMPLE_FRACTIONS = (0.25, 0.5, 0.75, 1.0)


class RayNeverExits(RuntimeError):
    """The chart contains the whole ray up to the search radius."""

    def __init__(self, direction, radius):
        self.direction = np.asarray(direction)
        self.radius = radius
        super().__init__(
            "No boundary along direction {} within radius {}".format(
                np.array2string(self.direction, precision=4), radius
            )
        )


class NoCandidates(RuntimeError):
    """No boundary point is both uncovered and below the W limit."""


class CalibrationFailed(ValueError):
    """The chart at the origin disagrees with the oracle at every level tried."""


def map_chunks(function, items, workers=1):
    """Apply a function to each item, in order, with an optional thread pool."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(function, items))


def sphere_directions(n, count):
    """Deterministic, quasi-uniform unit vectors in R^n.

    Equally spaced angles in the plane, the two signs on the line, and an
    unscrambled Halton sequence mapped through the normal quantile function
    in higher dimensions.
    """
    if count < 1:
        raise ValueError("At least one direction is needed")
    if n == 1:
        return np.array([[1.0 if k % 2 == 0 else -1.0] for k in range(count)])
    if n == 2:
        angles = 2 * np.pi * np.arange(count) / count
        return np.column_stack((np.cos(angles), np.sin(angles)))
    sampler = scipy.stats.qmc.Halton(d=n, scramble=False)
    points = sampler.random(count + 1)[1:]
    vectors = scipy.special.ndtri(points)
    return vectors / np.linalg.norm(vectors, axis=1)[:, None]


@dataclass(frozen=True, eq=False)
class Chart:
    """An embryo together with its membership test.

    Attributes
    ----------
    embryo : Embryo
    spectrum : Spectrum
        Shared by all charts of an atlas.
    level : float
        Points with margin below the level are members; 1 is the plain root
        test.
    criterion : str
        "top" uses the degree-p block only; "tail" takes the largest root
        over the blocks of degree ceil(p/2) ... p.
    """

    embryo: Embryo
    spectrum: Spectrum
    level: float = 1.0
    criterion: str = "top"

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise ValueError("Unknown criterion '{}'".format(self.criterion))
        if not self.level > 0:
            raise ValueError("The level must be positive")

    @functools.cached_property
    def _blocks(self):
        series = self.embryo.series
        p = series.maxdeg
        if self.criterion == "top":
            degrees = [p]
        else:
            degrees = range(max(1, math.ceil(p / 2)), p + 1)
        return [
            (m, series.block_exponents(m), np.abs(series.block(m))) for m in degrees
        ]

    @property
    def generation(self):
        return self.embryo.generation

    @property
    def center(self):
        return self.embryo.center

    @functools.cached_property
    def center_real(self):
        """The chart center in state coordinates."""
        return self.spectrum.to_state(self.center).real

    def margins(self, Z):
        """r(z) for an (N, n) array of complex points."""
        Z = np.atleast_2d(np.asarray(Z, dtype=complex))
        W = np.abs(Z - self.center)
        result = np.zeros(W.shape[0])
        for m, exponents, moduli in self._blocks:
            total = np.zeros(W.shape[0])
            products = monomials(W, exponents) * moduli
            for column in range(products.shape[1]):
                total += products[:, column]
            result = np.maximum(result, total ** (1.0 / m))
        return result

    def margin(self, z):
        return float(self.margins(np.asarray(z).reshape(1, -1))[0])

    def to_dict(self):
        return {
            "level": self.level,
            "criterion": self.criterion,
            "embryo": self.embryo.to_dict(),
        }


def chart_membership(chart, z):
    """Whether z is in the chart, and its margin r(z).

    Returns
    -------
    (bool, float)
    """
    r = chart.margin(z)
    return r < chart.level, r


@dataclass
class CenterRecord:
    """One candidate center considered in a growth step."""

    x: list
    w_value: float
    parent: int
    direction: int
    margin: float
    accepted: bool = True
    reason: str = ""
    level: float = None


@dataclass
class StepRecord:
    """What happened in one growth step."""

    step: int
    seconds: float = 0.0
    w_max: float = None
    centers: list = dataclass_field(default_factory=list)
    message: str = ""


@dataclass
class Atlas:
    """The ordered charts whose union estimates the domain of attraction.

    Attributes
    ----------
    system_id : str
    spectrum : Spectrum
    charts : [Chart]
        The generation-0 chart first, generations non-decreasing.
    log : [StepRecord]
    w_max : float
        The limit on |W| at new centers, fixed in the first growth step.
    system : str
        The serialized system definition, so the atlas is self-contained.
    """

    system_id: str
    spectrum: Spectrum
    charts: list = dataclass_field(default_factory=list)
    log: list = dataclass_field(default_factory=list)
    w_max: float = None
    system: str = ""

    def __post_init__(self):
        charts = list(self.charts)
        self.charts = []
        for chart in charts:
            self.add_chart(chart)

    def add_chart(self, chart):
        if not self.charts and chart.generation != 0:
            raise ValueError("The first chart of an atlas must be generation 0")
        if self.charts:
            if chart.generation == 0:
                raise ValueError("An atlas has exactly one generation-0 chart")
            if chart.generation < self.charts[-1].generation:
                raise ValueError("Chart generations must be non-decreasing")
        self.charts.append(chart)

    @property
    def dim(self):
        return self.spectrum.dim

    @property
    def generation(self):
        return max((chart.generation for chart in self.charts), default=0)

    def _classify_chunk(self, X):
        Z = self.spectrum.to_eigen(X)
        member = np.zeros(X.shape[0], dtype=bool)
        index = np.full(X.shape[0], -1, dtype=np.int64)
        margin = np.full(X.shape[0], np.inf)
        for number, chart in enumerate(self.charts):
            ratio = chart.margins(Z) / chart.level
            claimed = ~member & (ratio < 1)
            index[claimed] = number
            member |= claimed
            best = np.where(member, margin, np.minimum(margin, ratio))
            margin = np.where(claimed, ratio, best)
        return member, index, margin

    def classify(self, X, workers=1):
        """Membership of many real points.

        Parameters
        ----------
        X : array_like
            Real points of shape (N, n).
        workers : int
            Threads to use; results do not depend on it.

        Returns
        -------
        member : numpy.ndarray of bool
        chart_index : numpy.ndarray of int
            The first chart claiming the point, or -1.
        margin : numpy.ndarray of float
            r / level in the claiming chart, or the smallest r / level over
            all charts for non-members.
        """
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[0] == 0:
            return np.zeros(0, bool), np.zeros(0, np.int64), np.zeros(0)
        chunks = [X[i : i + CHUNK_SIZE] for i in range(0, X.shape[0], CHUNK_SIZE)]
        results = map_chunks(self._classify_chunk, chunks, workers)
        return tuple(np.concatenate(parts) for parts in zip(*results))

    def to_dict(self):
        # Wall times are left out so that identical runs give identical files.
        log = []
        for record in self.log:
            item = dataclasses.asdict(record)
            del item["seconds"]
            log.append(item)
        return {
            "system id": self.system_id,
            "system": self.system,
            "spectrum": self.spectrum.to_dict(),
            "w_max": self.w_max,
            "charts": [chart.to_dict() for chart in self.charts],
            "log": log,
        }

    @classmethod
    def from_dict(cls, data):
        spectrum = Spectrum.from_dict(data["spectrum"])
        charts = [
            Chart(
                Embryo.from_dict(item["embryo"]),
                spectrum,
                float(item["level"]),
                item["criterion"],
            )
            for item in data["charts"]
        ]
        log = []
        for item in data.get("log", []):
            centers = [CenterRecord(**center) for center in item.get("centers", [])]
            log.append(StepRecord(**{**item, "centers": centers}))
        return cls(
            data["system id"],
            spectrum,
            charts,
            log,
            data.get("w_max"),
            data.get("system", ""),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path):
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def point_membership_real(atlas, x):
    """Whether the real state x is claimed by any chart of the atlas."""
    member, _, _ = atlas.classify(np.asarray(x, dtype=float).reshape(1, -1))
    return bool(member[0])


@dataclass(frozen=True)
class BoundarySample:
    """A real point just inside a chart boundary."""

    x: np.ndarray
    z: np.ndarray
    t: float
    margin: float


def boundary_sample(chart, direction, tol=0.02, search_radius=10.0, march=16):
    """The point on a ray from the chart center where the margin reaches the level.

    The ray is marched outward in equal steps to the first point at or beyond
    the level, and that bracket is bisected until r / level lies in
    [1 - tol, 1).

    Raises
    ------
    RayNeverExits
        If the margin stays below the level out to the search radius.
    """
    direction = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(direction)
    if norm == 0:
        raise ValueError("The direction must be nonzero")
    direction = direction / norm
    origin = chart.center_real
    spectrum = chart.spectrum

    def ratio(ts):
        X = origin + np.outer(ts, direction)
        return chart.margins(spectrum.to_eigen(X)) / chart.level

    steps = search_radius * np.arange(1, march + 1) / march
    values = ratio(steps)
    outside = np.nonzero(values >= 1)[0]
    if outside.size == 0:
        if values[-1] >= 1 - tol:
            lo, value = steps[-1], values[-1]
        else:
            raise RayNeverExits(direction, search_radius)
    else:
        k = outside[0]
        lo = steps[k - 1] if k > 0 else 0.0
        hi = steps[k]
        value = values[k - 1] if k > 0 else 0.0
        for _ in range(60):
            if value >= 1 - tol:
                break
            middle = 0.5 * (lo + hi)
            middle_value = ratio(np.array([middle]))[0]
            if middle_value < 1:
                lo, value = middle, middle_value
            else:
                hi = middle
        else:
            logger.warning(
                "Bisection stopped with r / level = {:.6f}, below {:.6f}".format(
                    value, 1 - tol
                )
            )
    x = origin + lo * direction
    return BoundarySample(x, spectrum.to_eigen(x), float(lo), float(value))


@dataclass(frozen=True)
class SelectionParameters:
    """How new expansion centers are chosen.

    Attributes
    ----------
    tol : float
        Relative distance below the boundary of boundary samples.
    w_max_factor : float
        W_max is this factor times the median |W| of the first step's samples.
    w_max : float, optional
        An absolute W_max, overriding the factor.
    directions_per_point : int
        Boundary samples per requested center; a step takes this times q
        samples in all, shared over the charts of the latest generation.
    cover_margin : float
        Samples inside another chart with r / level below this are dropped.
    search_radius : float
        How far along a ray to look for the boundary.
    """

    tol: float = 0.02
    w_max_factor: float = 1.0e3
    w_max: float = None
    directions_per_point: int = 64
    cover_margin: float = 0.9
    search_radius: float = 10.0


@dataclass(frozen=True)
class Candidate:
    """A chosen expansion center."""

    x: np.ndarray
    z: np.ndarray
    w_value: float
    parent: int
    direction: int
    direction_vector: np.ndarray
    margin: float


def _angle(u, v):
    return math.acos(max(-1.0, min(1.0, float(np.dot(u, v)))))


def select_expansion_points(atlas, q, params=None, workers=1):
    """New centers near the boundary of the latest charts where |W| is small.

    Parameters
    ----------
    atlas : Atlas
        Its w_max is set from the samples if it is not yet known.
    q : int
        The number of centers wanted.
    params : SelectionParameters

    Returns
    -------
    [Candidate]
        At most q centers, ordered by |W|.

    Raises
    ------
    NoCandidates
    """
    if q < 1:
        raise ValueError("At least one point per step is needed")
    if params is None:
        params = SelectionParameters()
    generation = atlas.generation
    frontier = [
        i for i, chart in enumerate(atlas.charts) if chart.generation == generation
    ]
    # The samples of a step are shared out over the charts of the frontier.
    per_chart = max(1, math.ceil(params.directions_per_point * q / len(frontier)))
    directions = sphere_directions(atlas.dim, per_chart)

    def sample(task):
        index, number = task
        try:
            return boundary_sample(
                atlas.charts[index],
                directions[number],
                tol=params.tol,
                search_radius=params.search_radius,
            )
        except RayNeverExits as e:
            logger.warning(str(e))
            return None

    tasks = [(index, k) for index in frontier for k in range(len(directions))]
    samples = [
        (task, result)
        for task, result in zip(tasks, map_chunks(sample, tasks, workers))
        if result is not None
    ]
    if not samples:
        raise NoCandidates("No boundary samples could be found")

    values = np.array(
        [abs(atlas.charts[index].embryo.evaluate(s.z)) for (index, _), s in samples]
    )
    if atlas.w_max is None:
        if params.w_max is not None:
            atlas.w_max = float(params.w_max)
        else:
            atlas.w_max = float(params.w_max_factor * np.median(values))
        logger.info("W_max set to {:.6g}".format(atlas.w_max))

    survivors = []
    for ((index, number), s), value in zip(samples, values):
        if not value <= atlas.w_max:
            continue
        covered = False
        for other, chart in enumerate(atlas.charts):
            if other == index:
                continue
            if chart.margin(s.z) / chart.level < params.cover_margin:
                covered = True
                break
        if not covered:
            survivors.append((float(value), index, number, s))
    if not survivors:
        raise NoCandidates(
            "All {} boundary samples exceed W_max = {:.6g} or are covered".format(
                len(samples), atlas.w_max
            )
        )

    survivors.sort(key=lambda item: item[:3])
    separation = math.pi / q
    chosen = []
    for value, index, number, s in survivors:
        u = directions[number]
        if all(_angle(u, c.direction_vector) >= separation for c in chosen):
            chosen.append(
                Candidate(
                    s.x, s.z, value, index, number, directions[number], s.margin
                )
            )
            if len(chosen) == q:
                break
    logger.debug(
        "Selected {} of {} boundary samples ({} below W_max)".format(
            len(chosen), len(samples), len(survivors)
        )
    )
    return chosen


@dataclass(frozen=True)
class GrowthParameters:
    """Settings of the growth procedure.

    Attributes
    ----------
    level : float
        The starting level of every chart.
    criterion : str
    selection : SelectionParameters
    verify : bool
        Calibrate the level of each chart against the oracle.
    verify_directions : int
        Rays sampled per chart during calibration in the plane; (n - 1)^2
        times as many in n dimensions.
    shrink : float
        Extra factor applied when a chart's level is reduced.
    safety : float
        Factor applied to the level at which all samples converged.
    min_level : float
        Charts needing a level below min_level times level are rejected.
    oracle : OracleParameters
    workers : int
    """

    level: float = 1.0
    criterion: str = "top"
    selection: SelectionParameters = SelectionParameters()
    verify: bool = True
    verify_directions: int = 64
    shrink: float = 0.9
    safety: float = 0.9
    min_level: float = 0.1
    oracle: OracleParameters = OracleParameters()
    workers: int = 1

    def __post_init__(self):
        for name in ("shrink", "safety", "min_level"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError("{} must be in (0, 1]".format(name))
        if self.verify_directions < 1:
            raise ValueError("At least one calibration direction is needed")


def ray_points(chart, directions, search_radius=10.0, tol=0.02):
    """Points from the chart center towards its boundary, with their fractions.

    Rays that never leave the chart are cut at the search radius.
    """
    center = chart.center_real
    result = []
    for direction in directions:
        try:
            end = boundary_sample(
                chart, direction, tol=tol, search_radius=search_radius
            ).x
        except RayNeverExits as e:
            end = center + search_radius * e.direction
        for fraction in SAMPLE_FRACTIONS:
            result.append((fraction, center + fraction * (end - center)))
    return result


def calibrate_charts(field, charts, params):
    """The levels at which the charts agree with the oracle.

    Each chart is sampled along rays from its center, at fractions of the way
    to its boundary, and the samples of all pending charts are integrated in
    one batch. A sample that does not converge, undecided ones included,
    lowers the chart's level to below the first failing fraction, and the
    chart is sampled again. When every sample converges the level is
    multiplied by the safety factor.

    Returns
    -------
    [(float, str)]
        For each chart its calibrated level and "", or None and the reason
        it was rejected.
    """
    # Keep the spacing of the rays similar in higher dimensions.
    count = params.verify_directions * max(1, field.dim - 1) ** 2
    directions = sphere_directions(field.dim, count)
    floor = params.min_level * params.level
    levels = [chart.level for chart in charts]
    results = [None] * len(charts)
    pending = list(range(len(charts)))
    oracle = params.oracle
    while pending:
        points = []
        owners = []
        for number in pending:
            chart = dataclasses.replace(charts[number], level=levels[number])
            for fraction, x in ray_points(
                chart,
                directions,
                params.selection.search_radius,
                params.selection.tol,
            ):
                points.append(x)
                owners.append((number, fraction))
        outcomes = simulate_many(
            field,
            np.array(points),
            oracle.t_final,
            oracle.dt,
            oracle.eps_conv,
            oracle.r_max,
        )
        failing = {}
        for (number, fraction), outcome in zip(owners, outcomes):
            if outcome.verdict is not Verdict.CONVERGED:
                failing[number] = min(fraction, failing.get(number, fraction))

        remaining = []
        for number in pending:
            if number not in failing:
                results[number] = (params.safety * levels[number], "")
                continue
            worst = failing[number]
            passed = [f for f in SAMPLE_FRACTIONS if f < worst]
            factor = passed[-1] if passed else worst / 2
            level = params.shrink * factor * levels[number]
            logger.debug(
                "Chart {}: samples fail at {} of level {:.4g}, trying {:.4g}".format(
                    number, worst, levels[number], level
                )
            )
            if level < floor:
                results[number] = (
                    None,
                    "no level above {:.3g} agrees with the oracle".format(floor),
                )
            else:
                levels[number] = level
                remaining.append(number)
        pending = remaining
    return results


def grow_atlas(field, p, steps, q=3, params=None, system_id=""):
    """Build the atlas: the chart at the origin, then `steps` growth steps.

    Each step selects up to q centers on the boundary of the previous step's
    charts and adds the generation-0 embryo re-expanded at each of them.
    With verification on, the level of every chart, the one at the origin
    included, is calibrated against the oracle first. Growth stops early when
    no candidates remain or none of a step's charts is accepted.

    Raises
    ------
    CalibrationFailed
        If the chart at the origin cannot be calibrated.

    Returns
    -------
    Atlas
    """
    if steps < 0:
        raise ValueError("The number of steps must be non-negative")
    if params is None:
        params = GrowthParameters()

    t0 = time.perf_counter()
    spectrum = diagonalize(jacobian_at_origin(field))
    tf = transform_field(field, spectrum)
    embryo = compute_coefficients(tf, spectrum, p)
    origin = Chart(embryo, spectrum, params.level, params.criterion)
    message = "embryo of degree {}".format(p)
    if params.verify:
        [(level, reason)] = calibrate_charts(field, [origin], params)
        if level is None:
            raise CalibrationFailed("The chart at the origin: {}".format(reason))
        origin = dataclasses.replace(origin, level=level)
        message += ", level {:.4g}".format(level)
    atlas = Atlas(system_id, spectrum, [origin], system=serialize_system(field))
    atlas.log.append(StepRecord(0, time.perf_counter() - t0, message=message))
    logger.info("Generation-0 chart of degree {} ready".format(p))

    for step in range(1, steps + 1):
        t0 = time.perf_counter()
        record = StepRecord(step)
        try:
            candidates = select_expansion_points(
                atlas, q, params.selection, params.workers
            )
        except NoCandidates as e:
            record.message = "stopped: {}".format(e)
            record.w_max = atlas.w_max
            record.seconds = time.perf_counter() - t0
            atlas.log.append(record)
            logger.info("Growth stopped at step {}: {}".format(step, e))
            break

        charts = [
            Chart(
                taylor_shift(embryo, candidate.z, generation=step),
                spectrum,
                params.level,
                params.criterion,
            )
            for candidate in candidates
        ]
        if params.verify:
            calibrated = calibrate_charts(field, charts, params)
        else:
            calibrated = [(chart.level, "") for chart in charts]

        accepted = 0
        for candidate, chart, (level, reason) in zip(candidates, charts, calibrated):
            record.centers.append(
                CenterRecord(
                    [float(v) for v in candidate.x],
                    candidate.w_value,
                    candidate.parent,
                    candidate.direction,
                    candidate.margin,
                    accepted=not reason,
                    reason=reason,
                    level=level,
                )
            )
            if reason:
                logger.warning("Rejected the chart at step {}: {}".format(step, reason))
            else:
                atlas.add_chart(dataclasses.replace(chart, level=level))
                accepted += 1
        record.w_max = atlas.w_max
        record.seconds = time.perf_counter() - t0
        record.message = "{} of {} charts accepted".format(accepted, len(charts))
        atlas.log.append(record)
        logger.info("Step {}: {}".format(step, record.message))
        if accepted == 0:
            break
    return atlas
