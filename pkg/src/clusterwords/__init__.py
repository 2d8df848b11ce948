"""Exact enumeration of words avoiding forbidden factors.

Cluster generating functions, the reciprocal of the avoiding-word series and
its {-1, 0, 1} coefficients, and Möbius functions of lattices of unions of
intervals, each computed along independent routes that check one another.
"""

from .avoidance import (
    AvoidanceAutomaton,
    avoiding_series,
    count_avoiding,
    occurrence_gf,
    verify_cluster_theorem,
)
from .clusters import (
    MarkedWord,
    RecurrenceTrace,
    cluster_gf,
    cluster_polynomial,
    cluster_words,
    enumerate_clusters,
    factor_marked_word,
    is_cluster,
    recurrence_trace,
)
from .interval_lattice import (
    IntervalFamily,
    UnionLattice,
    build_lattice,
    greene_check,
    mobius_crosscut,
    mobius_recursive,
    mobius_via_cluster,
)
from .ncseries import IntPoly, NcPolySeries, NcSeries, add, eval_t, invert, mul, scale
from .reciprocal import (
    MTable,
    SalientRecord,
    check_sign_lemma,
    csv_check,
    m_by_clusters,
    m_by_inversion,
    m_by_salient,
    m_table,
    salient_words,
)
from .words import Alphabet, ForbiddenSet, Span, Word, avoids, occurrences, reduce

__version__ = "0.1.0"
