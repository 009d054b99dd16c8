"""Text cleaning, tokenisation and n-gram helpers for the matching pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

# Characters that carry meaning inside technology names and therefore survive
# cleaning: "c#", "c++", "asp.net", "ci/cd", "spring-boot".
PROTECTED_CHARS = frozenset("#+./-")

# Of the protected set, these double as sentence punctuation, so they are
# stripped when they sit at a token edge ("asp.net." -> "asp.net").  "#" and
# "+" stay even at the edges, otherwise "c#" and "c++" would collapse.
_EDGE_STRIP = "./-"


@dataclass(frozen=True)
class TokenStream:
    """Ordered, lowercased tokens produced by :func:`normalize`."""

    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    def text(self) -> str:
        """The stream rendered back to a single space-joined string."""
        return " ".join(self.tokens)


def _clean_token(raw: str) -> str | None:
    kept = [ch for ch in raw if ch.isalnum() or ch in PROTECTED_CHARS]
    token = "".join(kept).strip(_EDGE_STRIP)
    if not token or not any(ch.isalnum() for ch in token):
        return None
    return token


def normalize(text: str) -> TokenStream:
    """Lowercase, split on whitespace and scrub punctuation.

    Interior protected characters survive so that compound technology terms
    stay intact; every other non-alphanumeric character is dropped.  Tokens
    that end up empty (or all punctuation) are discarded.  The function is
    idempotent over its own output.
    """
    tokens = []
    for raw in text.lower().split():
        token = _clean_token(raw)
        if token is not None:
            tokens.append(token)
    return TokenStream(tuple(tokens))


def remove_stopwords(stream: TokenStream, stopwords: frozenset[str]) -> TokenStream:
    """Drop stopword tokens, preserving the order of everything else."""
    return TokenStream(tuple(tok for tok in stream.tokens if tok not in stopwords))


def ngrams(stream: TokenStream, n: int) -> list[str]:
    """All space-joined n-grams of the stream, in order.

    A stream of length L yields max(0, L - n + 1) grams.  ``n`` below one is
    an argument error.
    """
    if n < 1:
        raise ValueError(f"n-gram size must be a positive integer, got {n}")
    toks = stream.tokens
    return [" ".join(toks[i : i + n]) for i in range(len(toks) - n + 1)]


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword file: one lowercase word per line, '#' lines are comments."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            words.add(word.lower())
    return frozenset(words)


def default_stopwords() -> frozenset[str]:
    """The stopword list shipped with the package."""
    path = Path(__file__).parent / "data" / "stopwords_en.txt"
    return load_stopwords(path)
