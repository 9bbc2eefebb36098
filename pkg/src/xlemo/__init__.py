"""xlemo: cross-lingual emotion transfer for low-resource languages.

Two transfer strategies over a shared corpus/lexicon/embedding toolbox:
annotation projection across parallel corpora, and direct transfer over
orthogonally aligned word-embedding spaces with lexicon-derived features.
"""

__version__ = "0.1.0"

from xlemo.labels import DEFAULT_LABELS, PLUTCHIK8

__all__ = ["DEFAULT_LABELS", "PLUTCHIK8", "__version__"]
