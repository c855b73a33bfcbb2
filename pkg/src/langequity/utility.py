"""Conversion of raw task scores into utilities in [0, 1]."""

import warnings
from dataclasses import dataclass, field

from .errors import DegenerateRange, MissingContext


@dataclass(frozen=True)
class NormalizerContext:
    """Resolved constants a normalizer needs.

    Only the fields relevant to the task's normalizer are consulted:
    ``max_value`` (theoretical or empirical maximum), ``constant`` (fixed
    divisor) or ``x_min``/``x_max`` (best and worst observed value for the
    inverted range).
    """

    kind: str
    max_value: float | None = None
    constant: float | None = None
    x_min: float | None = None
    x_max: float | None = None

    def as_dict(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass(frozen=True)
class DefaultPolicy:
    """Utility assumed for subjects with no published result."""

    kind: str = "zero"
    classes: int | None = None

    @classmethod
    def for_spec(cls, spec):
        if spec.unseen_classes:
            return cls("random_baseline", spec.unseen_classes)
        return cls("zero")

    @property
    def value(self):
        if self.kind == "random_baseline":
            return 1.0 / self.classes
        return 0.0


@dataclass(frozen=True)
class UtilityTable:
    task_id: str
    entries: dict = field(default_factory=dict)
    default_policy: DefaultPolicy = DefaultPolicy()
    normalizer_used: NormalizerContext | None = None

    def __contains__(self, subject):
        return subject in self.entries

    def __len__(self):
        return len(self.entries)

    @property
    def is_pairwise(self):
        return any(isinstance(k, tuple) for k in self.entries)


def _clip(value):
    return min(1.0, max(0.0, value))


def resolve_context(spec, raw_scores):
    """Compute the normalizer constants for ``spec`` from observed scores."""
    raw_scores = list(raw_scores)
    kind = spec.normalizer
    if kind == "theoretical":
        return NormalizerContext(kind, max_value=spec.theoretical_max)
    if kind == "fixed_constant":
        return NormalizerContext(kind, constant=spec.constant)
    if not raw_scores:
        raise MissingContext(f"{spec.task_id}: no scores to derive {kind} constants from")
    if kind == "empirical":
        return NormalizerContext(kind, max_value=max(raw_scores))
    lo, hi = min(raw_scores), max(raw_scores)
    if spec.higher_is_better:
        return NormalizerContext(kind, x_min=hi, x_max=lo)
    return NormalizerContext(kind, x_min=lo, x_max=hi)


def normalize_score(spec, raw, context=None):
    """Map one raw score to a utility in [0, 1].

    Parameters
    ----------
    spec : TaskSpec
    raw : float
        Score on the metric's published scale.
    context : NormalizerContext, optional
        Constants for the normalizer.  Theoretical and fixed-constant
        normalizers fall back to the values stored on ``spec``.

    Notes
    -----
    For ``range_invert`` ``x_min`` is the best observed value and ``x_max``
    the worst, so the utility is ``(x_max - raw) / (x_max - x_min)``.  Fixed
    constant scores above the constant are clamped to 1 with a warning.
    """
    kind = spec.normalizer
    ctx = context or NormalizerContext(kind)
    if kind == "theoretical":
        top = ctx.max_value if ctx.max_value is not None else spec.theoretical_max
        if not top:
            raise MissingContext(f"{spec.task_id}: theoretical maximum not available")
        return _clip(raw / top)
    if kind == "empirical":
        if ctx.max_value is None:
            raise MissingContext(f"{spec.task_id}: empirical maximum not supplied")
        if ctx.max_value <= 0:
            raise DegenerateRange(f"{spec.task_id}: empirical maximum {ctx.max_value} is not positive")
        return _clip(raw / ctx.max_value)
    if kind == "fixed_constant":
        z = ctx.constant if ctx.constant is not None else spec.constant
        if not z:
            raise MissingContext(f"{spec.task_id}: normalizing constant not supplied")
        value = raw / z
        if value > 1.0:
            warnings.warn(
                f"{spec.task_id}: score {raw} exceeds normalizing constant {z}; clamped to 1",
                stacklevel=2,
            )
        return _clip(value)
    if ctx.x_min is None or ctx.x_max is None:
        raise MissingContext(f"{spec.task_id}: x_min/x_max not supplied")
    if ctx.x_max == ctx.x_min:
        raise DegenerateRange(f"{spec.task_id}: x_max equals x_min ({ctx.x_min})")
    return _clip((ctx.x_max - raw) / (ctx.x_max - ctx.x_min))


def build_utility_table(results, spec=None):
    """Normalize every retained result of a :class:`TaskResultSet`."""
    spec = spec or results.spec
    scores = results.scores()
    if not scores:
        raise MissingContext(f"{spec.task_id}: no results to build a utility table from")
    ctx = resolve_context(spec, scores.values())
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        entries = {subject: normalize_score(spec, raw, ctx) for subject, raw in scores.items()}
    if caught:
        warnings.warn(
            f"{spec.task_id}: {len(caught)} score(s) above the normalizing constant clamped to 1",
            stacklevel=2,
        )
    return UtilityTable(spec.task_id, entries, DefaultPolicy.for_spec(spec), ctx)


def utility_or_default(table, subject):
    """Stored utility of ``subject``, or the table's default for unseen subjects."""
    value = table.entries.get(subject)
    if value is None:
        return table.default_policy.value
    return value
