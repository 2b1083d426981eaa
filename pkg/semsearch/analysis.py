"""Text analysis: tokenization, stemming, idf weighting and literal similarity."""

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Union

from nltk.stem import PorterStemmer

from semsearch.base import BaseArtifact
from semsearch.config.settings import ConfigValidationError
from semsearch.core.exceptions import ArtifactError, EmptyCorpusError
from semsearch.core.logger import get_logger
from semsearch.rdf.model import Literal
from semsearch.types import PathLike

logger = get_logger("analysis")

# Small English list in the style of common search-engine defaults.
DEFAULT_STOPWORDS: FrozenSet[str] = frozenset(
    {
        "a", "an", "and", "are", "as", "at", "be", "but", "by", "for", "if",
        "in", "into", "is", "it", "no", "not", "of", "on", "or", "such", "that",
        "the", "their", "then", "there", "these", "they", "this", "to", "was",
        "will", "with",
    }
)  # fmt: skip

_TOKEN_SPLIT = re.compile(r"[\W_]+", re.UNICODE)
_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z])(?=[A-Z])")


@dataclass(frozen=True)
class AnalysisConfig:
    stemming_enabled: bool = True
    stopwords: FrozenSet[str] = DEFAULT_STOPWORDS
    split_camel_case: bool = True


@dataclass(frozen=True)
class TokenSet:
    """Normalized tokens of one text field."""

    tokens: FrozenSet[str]
    source: str = ""

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: object) -> bool:
        return token in self.tokens


class Analyzer:
    """Turns text into normalized tokens: split, lowercase, drop stopwords, stem."""

    def __init__(self, config: AnalysisConfig) -> None:
        self.config = config
        self._stem: Callable[[str], str]
        if config.stemming_enabled:
            stemmer = PorterStemmer()
            self._stem = lru_cache(maxsize=65536)(stemmer.stem)
        else:
            self._stem = _identity

    def analyze(self, text: str) -> List[str]:
        """Normalized tokens in text order, repeats kept."""
        if not text:
            return []
        if self.config.split_camel_case:
            text = _CAMEL_BOUNDARY.sub(" ", text)
        tokens: List[str] = []
        for raw in _TOKEN_SPLIT.split(text):
            token = raw.lower()
            if not token or token in self.config.stopwords:
                continue
            token = self._stem(token)
            if token:
                tokens.append(token)
        return tokens

    def tokenize(self, text: str, source: str = "") -> TokenSet:
        return TokenSet(frozenset(self.analyze(text)), source)


def _identity(token: str) -> str:
    return token


@lru_cache(maxsize=16)
def get_analyzer(config: AnalysisConfig) -> Analyzer:
    return Analyzer(config)


def tokenize(text: str, config: AnalysisConfig = AnalysisConfig()) -> TokenSet:
    return get_analyzer(config).tokenize(text)


def load_stopwords(path: PathLike) -> FrozenSet[str]:
    """Read a stopword file: one token per line, '#' comments allowed."""
    words = set()
    try:
        with open(Path(path), "r", encoding="utf-8") as f:
            for line in f:
                word = line.strip().lower()
                if word and not word.startswith("#"):
                    words.add(word)
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigValidationError(f"cannot read stopword file {path}: {e}") from e
    return frozenset(words)


@dataclass(frozen=True, eq=True)
class IdfTable(BaseArtifact):
    """Document frequencies over the literal corpus.

    idf(t) = ln((1 + doc_count) / (1 + df(t))) + 1; unseen tokens use df = 0.
    """

    doc_count: int
    df: Mapping[str, int] = field(default_factory=dict)
    _idf: Dict[str, float] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    file_name = "idf.tsv"
    kind = "idf"

    def __post_init__(self) -> None:
        if self.doc_count < 1:
            raise EmptyCorpusError()
        object.__setattr__(
            self, "_idf", {t: self._formula(n) for t, n in self.df.items()}
        )

    def _formula(self, df: int) -> float:
        return math.log((1 + self.doc_count) / (1 + df)) + 1.0

    def idf(self, token: str) -> float:
        weight = self._idf.get(token)
        return weight if weight is not None else self._formula(0)

    def weight(self, tokens: Iterable[str]) -> float:
        return sum(self.idf(t) for t in tokens)

    def __len__(self) -> int:
        return len(self.df)

    def header_fields(self) -> Dict[str, str]:
        return {"doc_count": str(self.doc_count)}

    def to_lines(self) -> List[str]:
        return [f"{t}\t{self.df[t]}\t{self._idf[t]:.6f}" for t in sorted(self.df)]

    @classmethod
    def from_lines(
        cls, header: Dict[str, str], body: List[str], path: Path
    ) -> "IdfTable":
        if "doc_count" not in header:
            raise ArtifactError("idf table header lacks doc_count", str(path))
        df: Dict[str, int] = {}
        for line in body:
            token, count, _ = line.split("\t")
            df[token] = int(count)
        return cls(doc_count=int(header["doc_count"]), df=df)


def build_idf(corpus: Iterable[Union[TokenSet, Iterable[str]]]) -> IdfTable:
    """Build an idf table; each corpus entry is one literal document."""
    counts: Counter = Counter()
    doc_count = 0
    for document in corpus:
        doc_count += 1
        counts.update(set(document))
    if doc_count == 0:
        raise EmptyCorpusError()
    logger.debug(f"idf table: {doc_count} documents, {len(counts)} tokens")
    return IdfTable(doc_count=doc_count, df=dict(counts))


def weighted_jaccard(
    x: Union[TokenSet, FrozenSet[str]],
    y: Union[TokenSet, FrozenSet[str]],
    idf: IdfTable,
) -> float:
    """idf-weighted Jaccard overlap of two token sets; 0.0 when both are empty."""
    tx = x.tokens if isinstance(x, TokenSet) else x
    ty = y.tokens if isinstance(y, TokenSet) else y
    shared = tx & ty
    if not shared:
        return 0.0
    if tx == ty:
        return 1.0
    return idf.weight(shared) / idf.weight(tx | ty)


def literal_sim(
    x: Literal, y: Literal, idf: IdfTable, config: AnalysisConfig = AnalysisConfig()
) -> float:
    """LiteralSim over the lexical forms of two literals."""
    analyzer = get_analyzer(config)
    return weighted_jaccard(
        analyzer.tokenize(x.lexical_form), analyzer.tokenize(y.lexical_form), idf
    )
