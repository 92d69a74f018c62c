"""Analysis and construction tools for substitutions on finite alphabets."""
from .algebraic import AlgebraicReal, algebraic_compare, golden_ratio, is_perron
from .core import (
    Alphabet,
    EventuallyPeriodicWord,
    InvalidSeed,
    Morphism,
    NotASubstitution,
    ParseError,
    Substitution,
    SubstitutionError,
    apply,
    as_word,
    as_word_over,
    compose,
    ep_equal,
    fixed_point_prefix,
    fixed_point_seeds,
    format_substitution,
    iterate,
    parse_substitution,
    word_str,
)
from .spectral import GrowthType, abelianization, growth_types, lambda_sigma, spectral_radius, word_lengths

__all__ = [
    "AlgebraicReal",
    "Alphabet",
    "EventuallyPeriodicWord",
    "GrowthType",
    "InvalidSeed",
    "Morphism",
    "NotASubstitution",
    "ParseError",
    "Substitution",
    "SubstitutionError",
    "abelianization",
    "algebraic_compare",
    "apply",
    "as_word",
    "as_word_over",
    "compose",
    "ep_equal",
    "fixed_point_prefix",
    "fixed_point_seeds",
    "format_substitution",
    "golden_ratio",
    "growth_types",
    "is_perron",
    "iterate",
    "lambda_sigma",
    "parse_substitution",
    "spectral_radius",
    "word_lengths",
    "word_str",
]
