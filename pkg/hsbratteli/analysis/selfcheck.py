"""
Randomised property checks over small diagrams.

Each check draws ``trials`` instances from a seeded generator and returns
the first counterexample it meets, if any.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from hsbratteli.analysis.classc import classc_g_center, classc_path_band, is_unimodal
from hsbratteli.analysis.measures import (
    FiniteVec,
    extension_report,
    fourier_check,
    markov_tail_invariance_check,
    pull_back_family,
    uniform_family,
    verify_tail_invariant,
)
from hsbratteli.analysis.vershik import tower
from hsbratteli.models.band import Band, LaurentPoly, convolve, laurent_multiply, row_sum
from hsbratteli.models.diagram import (
    ExplicitLevels,
    height,
    path_count_band,
    path_count_bruteforce_profile,
)
from hsbratteli.models.kernel import MarkovKernel
from hsbratteli.models.order import OrderSpec
from hsbratteli.models.rules import Constant, Geometric, OffsetSchedule, SequenceRule
from hsbratteli.models.subdiagram import OdometerSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    passed: bool
    counterexample: str | None = None


def random_band(rng: np.random.Generator, max_width: int = 5, max_coefficient: int = 4) -> Band:
    width = int(rng.integers(1, max_width + 1))
    lo = int(rng.integers(-width, 1))
    values = [int(v) for v in rng.integers(0, max_coefficient + 1, size=width)]
    values[0] = max(values[0], 1)
    return Band.of(lo, values)


def random_levels(
    rng: np.random.Generator, count: int, max_width: int = 5, max_row_sum: int | None = None
) -> ExplicitLevels:
    bands = []
    while len(bands) < count:
        band = random_band(rng, max_width)
        if max_row_sum is None or row_sum(band) <= max_row_sum:
            bands.append(band)
    return ExplicitLevels(tuple(bands))


def random_class_c_rule(rng: np.random.Generator) -> SequenceRule:
    if rng.random() < 0.5:
        return Constant(int(rng.integers(1, 7)))
    return Geometric(int(rng.integers(1, 4)), int(rng.integers(2, 4)))


def _oracle(rng: np.random.Generator) -> str | None:
    m = int(rng.integers(1, 5))
    spec = random_levels(rng, m, max_row_sum=6)
    if path_count_band(spec, 0, m) != path_count_bruteforce_profile(spec, 0, m):
        return f"levels {[str(b) for b in spec.levels]}"
    return None


def _algebra(rng: np.random.Generator) -> str | None:
    a, b, c = random_band(rng), random_band(rng), random_band(rng)
    if convolve(a, b) != convolve(b, a):
        return f"convolution does not commute on {a} and {b}"
    if convolve(convolve(a, b), c) != convolve(a, convolve(b, c)):
        return f"convolution is not associative on {a}, {b}, {c}"
    if row_sum(convolve(a, b)) != row_sum(a) * row_sum(b):
        return f"row sums do not multiply on {a} and {b}"
    product = laurent_multiply(LaurentPoly.from_band(a), LaurentPoly.from_band(b))
    if product.to_band() != convolve(a, b):
        return f"Laurent product differs from convolution on {a} and {b}"
    span = int(rng.integers(2, 6))
    split = int(rng.integers(1, span))
    spec = random_levels(rng, span)
    whole = path_count_band(spec, 0, span)
    parts = convolve(path_count_band(spec, split, span - split), path_count_band(spec, 0, split))
    if whole != parts:
        return f"cocycle law fails at split {split} of {[str(b) for b in spec.levels]}"
    return None


def _telescoping(rng: np.random.Generator) -> str | None:
    horizon = int(rng.integers(1, 21))
    spec = random_levels(rng, horizon)
    offsets = []
    for band in spec.levels:
        support = [k for k, c in band.items() if c > 0]
        offsets.append(support[int(rng.integers(0, len(support)))])
    odo = OdometerSpec(OffsetSchedule(tuple(offsets), (0,)))
    report = extension_report(spec, odo, horizon)
    if report.direct_value != report.alphas[-1]:
        return f"direct {report.direct_value} != telescoped {report.alphas[-1]}"
    return None


def _unimodal(rng: np.random.Generator) -> str | None:
    rule = random_class_c_rule(rng)
    n, m = int(rng.integers(0, 4)), int(rng.integers(1, 9))
    band = classc_path_band(rule, n, m)
    return None if is_unimodal(band) else f"{rule} from level {n} over {m}: {band}"


def _gcenter(rng: np.random.Generator) -> str | None:
    rule = random_class_c_rule(rng)
    n, m = int(rng.integers(0, 4)), int(rng.integers(1, 13))
    formula = classc_g_center(rule, n, m)
    convolution = classc_path_band(rule, n, m).coefficient(0)
    return None if formula == convolution else f"{rule} n={n} m={m}: {formula} != {convolution}"


def _uniform_markov(rng: np.random.Generator) -> str | None:
    spec = random_levels(rng, 3, max_row_sum=5)
    check = markov_tail_invariance_check(spec, MarkovKernel.uniform(), 3)
    return None if check.passed else f"uniform kernel fails at depth {check.depth}"


def _uniform_family(rng: np.random.Generator) -> str | None:
    spec = random_levels(rng, 15)
    check = verify_tail_invariant(spec, uniform_family(spec, 15), 15)
    return None if check.passed else f"uniform family fails at level {check.failing_level}"


def _fourier(rng: np.random.Generator) -> str | None:
    spec = random_levels(rng, 1)
    top = FiniteVec(random_band(rng))
    prev, following = pull_back_family(spec, top, 1)
    assert isinstance(prev, FiniteVec) and isinstance(following, FiniteVec)
    if not fourier_check(spec, following, prev, 0):
        return f"pull-back of {top} rejected"
    k = int(rng.integers(prev.profile.lo, prev.profile.hi + 1))
    bumped = dict(prev.profile.items())
    bumped[k] = bumped.get(k, Fraction(0)) + 1
    if fourier_check(spec, following, FiniteVec(Band.from_mapping(bumped)), 0):
        return f"perturbation at offset {k} of {prev} accepted"
    return None


def _tower(rng: np.random.Generator) -> str | None:
    depth = int(rng.integers(1, 4))
    spec = random_levels(rng, depth, max_row_sum=5)
    result = tower(spec, OrderSpec.left_to_right(), 0, depth)
    if len(set(result.paths)) != height(spec, depth) or not result.reached_maximal:
        return f"tower of depth {depth} has {len(set(result.paths))} prefixes"
    return None


CHECKS: dict[str, Callable[[np.random.Generator], str | None]] = {
    "oracle": _oracle,
    "algebra": _algebra,
    "telescoping": _telescoping,
    "unimodal": _unimodal,
    "gcenter": _gcenter,
    "uniform-markov": _uniform_markov,
    "uniform-family": _uniform_family,
    "fourier": _fourier,
    "tower": _tower,
}


def run_checks(trials: int, seed: int | None = None, names: list[str] | None = None) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for name in names or list(CHECKS):
        check = CHECKS[name]
        failure = None
        for _ in range(trials):
            failure = check(rng)
            if failure is not None:
                logger.warning(f"selfcheck {name} failed: {failure}")
                break
        results.append(CheckResult(name, trials, failure is None, failure))
    return results
