"""mufahris: pedagogical indexing engine for Arabic texts.

Analyzes Arabic text morphologically, stores LOM metadata with an embedded
grammatical profile, answers faceted searches driven by a pedagogical
context, and generates and grades grammar exercises.
"""

__version__ = "0.1.0"

from .profile import GrammaticalProfile, zero_profile

__all__ = ["GrammaticalProfile", "zero_profile", "__version__"]
