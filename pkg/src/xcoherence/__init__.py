"""Coherence quantifiers for two-qubit X states and ensemble experiments."""
from .measures import (
    Abscissa,
    MeasureSet,
    c_l1,
    c_rel,
    c_skew,
    concurrence,
    d2_first_order,
    d2_max,
    k_coherence_summand,
    measure_all,
    mnms_ceiling_l1,
)
from .xstates import (
    FamilyKind,
    FamilySpec,
    PositivityError,
    TraceError,
    XState,
    canonicalize,
    eigenvalues_closed_form,
    family,
    make_family,
    make_xstate,
    mix,
    reduced_state,
    sample_random,
    sqrt_xstate,
)

__version__ = "0.1.0"
