"""Cluster ensembles, tropical limits, and Nielsen-Thurston classification."""

from .seeds import (  # noqa: F401
    MappingClassWord,
    Perm,
    Quiver,
    Seed,
    apply_word_to_seed,
    compose_words,
    from_quiver,
    invert_word,
    is_mapping_class,
    is_seed_isomorphism,
    mutate,
    relabel,
    seed_isomorphisms,
    to_quiver,
    validate,
    word_power,
)

__version__ = "0.1.0"
