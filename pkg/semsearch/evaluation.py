"""
Precision / recall / F-measure over a gold relevance file.

Gold file format (UTF-8): one query per line, ``query text<TAB>iri1,iri2,...``;
lines starting with ``#`` are comments.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence

import pandas as pd

from semsearch.config import settings
from semsearch.core.exceptions import GoldSetError, InvalidQueryError
from semsearch.core.logger import get_logger
from semsearch.types import PathLike, SearchBackend

logger = get_logger("evaluation")


def precision(tp: int, fp: int) -> float:
    """tp / (tp + fp); 0.0 for an empty answer."""
    if tp + fp == 0:
        return 0.0
    return tp / (tp + fp)


def recall(tp: int, fn: int) -> float:
    if tp + fn == 0:
        raise GoldSetError("recall is undefined without relevant entities")
    return tp / (tp + fn)


def f_measure(p: float, r: float) -> float:
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


@dataclass(frozen=True)
class GoldSet:
    entries: Mapping[str, FrozenSet[str]]

    def __post_init__(self) -> None:
        if not self.entries:
            raise GoldSetError("gold set has no queries")
        for query, relevant in self.entries.items():
            if not relevant:
                raise GoldSetError(f"gold set for query {query!r} is empty")

    def __len__(self) -> int:
        return len(self.entries)

    def queries(self) -> List[str]:
        return list(self.entries)


def load_gold_set(path: PathLike) -> GoldSet:
    gold_path = Path(path)
    try:
        with open(gold_path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise GoldSetError(f"cannot read gold file {gold_path}: {e}") from e

    entries: Dict[str, set] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        query, sep, iris = line.partition("\t")
        if not sep or not query.strip():
            raise GoldSetError(f"{gold_path}:{lineno}: expected 'query<TAB>iri,...'")
        relevant = {iri.strip() for iri in iris.split(",") if iri.strip()}
        entries.setdefault(query.strip(), set()).update(relevant)
    return GoldSet({q: frozenset(r) for q, r in entries.items()})


@dataclass(frozen=True)
class QueryEvaluation:
    query: str
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_measure: float
    returned: int = 0


def evaluate_query(
    query: str, returned: Sequence[str], relevant: FrozenSet[str]
) -> QueryEvaluation:
    answer = set(returned)
    tp = len(answer & relevant)
    fp = len(answer) - tp
    fn = len(relevant) - tp
    p = precision(tp, fp)
    r = recall(tp, fn)
    return QueryEvaluation(query, tp, fp, fn, p, r, f_measure(p, r), len(answer))


@dataclass
class EvalReport:
    per_query: List[QueryEvaluation]
    k: int
    macro_precision: float = 0.0
    macro_recall: float = 0.0
    macro_f: float = 0.0
    f_of_macro: float = 0.0
    micro_precision: float = 0.0
    micro_recall: float = 0.0
    micro_f: float = 0.0
    warnings: List[str] = field(default_factory=list)

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[QueryEvaluation],
        k: int,
        warnings: Optional[List[str]] = None,
    ) -> "EvalReport":
        """Macro averages are unweighted means of the per-query scores."""
        n = len(rows)
        report = cls(list(rows), k, warnings=list(warnings or []))
        if n == 0:
            return report
        report.macro_precision = sum(r.precision for r in rows) / n
        report.macro_recall = sum(r.recall for r in rows) / n
        report.macro_f = sum(r.f_measure for r in rows) / n
        report.f_of_macro = f_measure(report.macro_precision, report.macro_recall)
        tp = sum(r.tp for r in rows)
        report.micro_precision = precision(tp, sum(r.fp for r in rows))
        report.micro_recall = recall(tp, sum(r.fn for r in rows))
        report.micro_f = f_measure(report.micro_precision, report.micro_recall)
        return report

    def to_frame(self) -> pd.DataFrame:
        columns = list(QueryEvaluation.__dataclass_fields__)
        return pd.DataFrame([asdict(r) for r in self.per_query], columns=columns)

    def summary(self) -> Dict[str, float]:
        return {
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f": self.macro_f,
            "f_of_macro": self.f_of_macro,
            "micro_precision": self.micro_precision,
            "micro_recall": self.micro_recall,
            "micro_f": self.micro_f,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "queries": [asdict(r) for r in self.per_query],
            **self.summary(),
            "warnings": list(self.warnings),
        }


def evaluate(
    engine: SearchBackend,
    gold: GoldSet,
    k: int,
    workers: Optional[int] = None,
) -> EvalReport:
    """Run every gold query at cutoff k and score it against its relevant set."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    workers = workers or settings.get("performance.eval_workers", 4)

    warnings: List[str] = []
    for query, relevant in gold.entries.items():
        for iri in sorted(relevant):
            if not engine.has_entity(iri):
                warnings.append(f"gold IRI not in graph for query {query!r}: {iri}")

    def run(query: str) -> List[str]:
        try:
            return [entry.iri for entry in engine.search(query, k)]
        except InvalidQueryError:
            warnings.append(f"query {query!r} has no searchable keywords")
            return []

    queries = gold.queries()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        answers = list(pool.map(run, queries))

    rows = [evaluate_query(q, a, gold.entries[q]) for q, a in zip(queries, answers)]
    for message in warnings:
        logger.warning(message)
    report = EvalReport.from_rows(rows, k, sorted(warnings))
    logger.info(
        f"Evaluated {len(rows)} queries at k={k}: macro P={report.macro_precision:.3f} "
        f"R={report.macro_recall:.3f} F={report.macro_f:.3f}"
    )
    return report
