"""Group-wise evaluation of model predictions over generated pair files.

Everything here works on PairRecord lists (the gold side) joined with a
PredictionSet (one or more runs of model labels). Accuracies are computed
per run with exact correct/total counts; spreads default to the population
standard deviation.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Callable

from .core import Government, HypKind, Label, PairRecord
from .dataset_io import PredictionSet
from .errors import ConstraintError, DataFormatError, PredictionJoinError
from .patterns import NumberClass, classify_number, parse_pattern_name

# hypothesis kinds whose surface starts with the premise object
_SWAP_KINDS = (HypKind.H1_SO, HypKind.H1_SIO)


@dataclass(frozen=True)
class GroupSpec:
    name: str
    predicate: Callable[[PairRecord], bool]

    def matches(self, record: PairRecord) -> bool:
        return self.predicate(record)

    def select(self, records) -> list[PairRecord]:
        return [r for r in records if self.predicate(r)]


def _meta(record: PairRecord, key: str) -> str:
    try:
        return record.metadata[key]
    except KeyError:
        raise DataFormatError(
            f"record {record.id}: grouping needs metadata field {key!r} "
            "(use row-format gold files)"
        ) from None


def definiteness_groups() -> tuple[GroupSpec, GroupSpec]:
    """Split argument-swap records by premise article configuration.

    The dispreferred group holds records whose swap hypothesis starts with an
    indefinite NP followed by a definite one, i.e. premise object indefinite
    and premise subject definite.
    """

    def dispreferred(record: PairRecord) -> bool:
        return (
            record.hyp_kind in _SWAP_KINDS
            and _meta(record, "object_definiteness") == "indefinite"
            and _meta(record, "subject_definiteness") == "definite"
        )

    def preferred(record: PairRecord) -> bool:
        return record.hyp_kind in _SWAP_KINDS and not dispreferred(record)

    return (
        GroupSpec("definiteness:preferred", preferred),
        GroupSpec("definiteness:dispreferred", dispreferred),
    )


def number_groups() -> tuple[GroupSpec, GroupSpec]:
    """Split argument-swap records by the number class of their pattern
    (all-singular patterns keep the verb form unchanged under the swap)."""

    def all_singular(record: PairRecord) -> bool:
        pattern = parse_pattern_name(record.pattern_name, Government.ACCUSATIVE)
        return classify_number(pattern) is NumberClass.ALL_SINGULAR

    return (
        GroupSpec(
            "number:all-singular",
            lambda r: r.hyp_kind in _SWAP_KINDS and all_singular(r),
        ),
        GroupSpec(
            "number:singular-plural",
            lambda r: r.hyp_kind in _SWAP_KINDS and not all_singular(r),
        ),
    )


def gender_groups(role: str, kind: str) -> tuple[GroupSpec, GroupSpec]:
    """Masculine/feminine split of swap records by one argument slot,
    restricted to heads of the given kind ("proper" or "common")."""
    if role not in ("subject", "object"):
        raise ValueError(f"unknown role {role!r}")
    if kind not in ("proper", "common"):
        raise ValueError(f"unknown head kind {kind!r}")

    def match(record: PairRecord, gender: str) -> bool:
        return (
            record.hyp_kind in _SWAP_KINDS
            and _meta(record, f"{role}_kind") == kind
            and _meta(record, f"{role}_gender") == gender
        )

    return (
        GroupSpec(f"gender:{role}-{kind}-masc", lambda r: match(r, "masc")),
        GroupSpec(f"gender:{role}-{kind}-fem", lambda r: match(r, "fem")),
    )


@dataclass(frozen=True)
class AccuracyResult:
    group: str
    n: int
    runs: int
    k: tuple[int, ...]
    per_run: tuple[float, ...]
    mean: float
    sd: float


def _spread(values, sample: bool) -> float:
    if len(values) < 2:
        return 0.0
    return statistics.stdev(values) if sample else statistics.pstdev(values)


def _joined_labels(record: PairRecord, preds: PredictionSet):
    try:
        return preds.labels[record.id]
    except KeyError:
        raise PredictionJoinError(f"no prediction for record {record.id!r}") from None


def accuracy(
    gold, preds: PredictionSet, group: GroupSpec | None = None, sample_sd: bool = False
) -> AccuracyResult:
    """Per-run accuracy over the (optionally group-filtered) gold records."""
    records = list(gold) if group is None else group.select(gold)
    name = group.name if group is not None else "all"
    n = len(records)
    if n == 0:
        return AccuracyResult(name, 0, preds.runs, (), (), float("nan"), float("nan"))
    k = [0] * preds.runs
    for record in records:
        labels = _joined_labels(record, preds)
        for run, label in enumerate(labels):
            if label is record.label:
                k[run] += 1
    per_run = tuple(count / n for count in k)
    return AccuracyResult(
        group=name,
        n=n,
        runs=preds.runs,
        k=tuple(k),
        per_run=per_run,
        mean=statistics.fmean(per_run),
        sd=_spread(per_run, sample_sd),
    )


def majority_vote(preds: PredictionSet, tie_break_not_entailed: bool = False) -> PredictionSet:
    """Collapse runs into a single-run PredictionSet; a tie is an error
    unless the flag resolves ties toward the not-entailed label."""
    out = {}
    for rid, labels in preds.labels.items():
        entailed = sum(1 for label in labels if label is Label.ENTAILED)
        rest = len(labels) - entailed
        if entailed > rest:
            out[rid] = (Label.ENTAILED,)
        elif rest > entailed:
            out[rid] = (Label.NOT_ENTAILED,)
        elif tie_break_not_entailed:
            out[rid] = (Label.NOT_ENTAILED,)
        else:
            raise ConstraintError(
                f"majority vote tie for {rid!r} over {len(labels)} runs; "
                "use an odd run count or allow tie-breaking"
            )
    return PredictionSet(runs=1, labels=out)


@dataclass(frozen=True)
class ZTestResult:
    z: float
    p_value: float

    def significant(self, alpha: float = 0.01) -> bool:
        return self.p_value < alpha


def two_proportion_ztest(k1: int, n1: int, k2: int, n2: int) -> ZTestResult:
    """Two-sided pooled z-test for a difference between two proportions."""
    if n1 <= 0 or n2 <= 0:
        raise ValueError("both groups need at least one observation")
    if not (0 <= k1 <= n1 and 0 <= k2 <= n2):
        raise ValueError("successes must lie within their group sizes")
    pooled = (k1 + k2) / (n1 + n2)
    if pooled in (0.0, 1.0):
        return ZTestResult(0.0, 1.0)
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    z = (k1 / n1 - k2 / n2) / se
    return ZTestResult(z, math.erfc(abs(z) / math.sqrt(2.0)))


@dataclass(frozen=True)
class ScoreStat:
    group: str
    n: int
    mean: float
    sd: float


def pll_aggregate(scores: dict[str, float], gold, sample_sd: bool = False) -> list[ScoreStat]:
    """Aggregate per-sentence scores into premise and per-hypothesis-kind
    means. Premises are scored once under their premise id; hypotheses under
    their record id."""
    premise_values = []
    seen_premises = set()
    by_kind: dict[HypKind, list[float]] = {}
    for record in gold:
        pid = _meta(record, "premise_id")
        if pid not in seen_premises:
            seen_premises.add(pid)
            if pid not in scores:
                raise PredictionJoinError(f"no score for sentence {pid!r}")
            premise_values.append(scores[pid])
        if record.id not in scores:
            raise PredictionJoinError(f"no score for sentence {record.id!r}")
        by_kind.setdefault(record.hyp_kind, []).append(scores[record.id])
    stats = []
    if premise_values:
        stats.append(
            ScoreStat(
                "premise",
                len(premise_values),
                statistics.fmean(premise_values),
                _spread(premise_values, sample_sd),
            )
        )
    for kind in HypKind:
        values = by_kind.get(kind)
        if values:
            stats.append(
                ScoreStat(kind.value, len(values), statistics.fmean(values), _spread(values, sample_sd))
            )
    return stats


def _ensemble_counts(records, voted: PredictionSet) -> tuple[int, int]:
    k = sum(1 for r in records if voted.labels[r.id][0] is r.label)
    return k, len(records)


def _comparisons(groups: str):
    if groups in ("all", "definiteness"):
        yield "definiteness", definiteness_groups()
    if groups in ("all", "number"):
        yield "number", number_groups()
    if groups in ("all", "gender"):
        for role in ("subject", "object"):
            for kind in ("proper", "common"):
                yield f"gender:{role}-{kind}", gender_groups(role, kind)


def build_report(
    gold,
    preds: PredictionSet,
    groups: str = "all",
    tie_break_not_entailed: bool = False,
    sample_sd: bool = False,
) -> tuple[str, list[dict]]:
    """Produce a human-readable report and matching machine-readable rows.

    Accuracy rows cover the whole file, each hypothesis kind, and the
    requested group family; each group pair also gets a pooled z-test on the
    majority-voted ensemble labels.
    """
    gold = list(gold)
    if groups not in ("all", "gender", "definiteness", "number"):
        raise ValueError(f"unknown group family {groups!r}")
    results = [accuracy(gold, preds, None, sample_sd)]
    for kind in HypKind:
        spec = GroupSpec(kind.value, lambda r, k=kind: r.hyp_kind is k)
        if any(spec.matches(r) for r in gold):
            results.append(accuracy(gold, preds, spec, sample_sd))
    pairs = list(_comparisons(groups))
    for _, (group_a, group_b) in pairs:
        results.append(accuracy(gold, preds, group_a, sample_sd))
        results.append(accuracy(gold, preds, group_b, sample_sd))

    rows = []
    lines = [f"records: {len(gold)}  runs: {preds.runs}"]
    for result in results:
        if result.n == 0:
            rows.append(
                {"kind": "accuracy", "group": result.group, "n": 0, "runs": result.runs,
                 "k": [], "accuracy": None, "sd": None}
            )
            lines.append(f"{result.group:<36} n=0")
            continue
        rows.append(
            {"kind": "accuracy", "group": result.group, "n": result.n,
             "runs": result.runs, "k": list(result.k),
             "accuracy": result.mean, "sd": result.sd}
        )
        lines.append(
            f"{result.group:<36} n={result.n:<7} acc={result.mean:.4f} sd={result.sd:.4f}"
        )

    voted = None
    for label, (group_a, group_b) in pairs:
        records_a = group_a.select(gold)
        records_b = group_b.select(gold)
        if not records_a or not records_b:
            continue
        if voted is None:
            voted = majority_vote(preds, tie_break_not_entailed)
            for record in gold:
                if record.id not in voted.labels:
                    raise PredictionJoinError(f"no prediction for record {record.id!r}")
        k1, n1 = _ensemble_counts(records_a, voted)
        k2, n2 = _ensemble_counts(records_b, voted)
        test = two_proportion_ztest(k1, n1, k2, n2)
        rows.append(
            {"kind": "ztest", "comparison": label,
             "group_a": group_a.name, "group_b": group_b.name,
             "k_a": k1, "n_a": n1, "k_b": k2, "n_b": n2,
             "z": test.z, "p_value": test.p_value}
        )
        lines.append(
            f"{label}: {group_a.name} vs {group_b.name}  "
            f"z={test.z:.4f} p={test.p_value:.6g}"
        )
    return "\n".join(lines) + "\n", rows
