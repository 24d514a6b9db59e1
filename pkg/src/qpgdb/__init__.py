"""Exact tools for quotient-polynomial graph parameter arrays.

The package builds the standard integral table algebra attached to a
parameter array, runs the feasibility sieve (multiplicities, Frame
number, traces, spectra, Krein conditions, cyclotomicity of the
eigenvalue field), and drives an exhaustive, resumable, deterministic
search that writes a line-delimited database of surviving arrays.
"""

from .polynomials import (
    IntPoly,
    RootEnclosure,
    discriminant,
    isolate_real_roots,
    newton_power_sums,
)
from .factorint import FactoredPolynomial, factor_over_integers
from .matrices import IntMatrix, minimal_polynomial
from .arrays import (
    FullParameterSet,
    ParameterArray,
    build_B1,
    canonicalize,
    format_array,
    parse_array,
    reconstruct_all,
)
from .sita import SitaBasis, ValidationOutcome, derive_sita
from .sieve import (
    MultiplicityProfile,
    TraceOutcome,
    frame_check,
    handshake_check,
    multiplicity_candidates,
    trace_check,
)
from .spectra import (
    EigenSlot,
    SpectralData,
    copolynomial_in,
    krein_and_absolute_bound,
    krein_sign,
    noncyclotomic,
    polynomial_in,
    spectral_data,
)
from .records import (
    FeasibilityRecord,
    read_records,
    run_all,
    run_all_text,
    write_records,
)
from .search import (
    SearchConfig,
    SearchShard,
    SearchSummary,
    enumerate_arrays,
    enumerate_valencies,
    run_search,
    search,
)

__all__ = [
    "IntPoly",
    "RootEnclosure",
    "discriminant",
    "isolate_real_roots",
    "newton_power_sums",
    "IntMatrix",
    "minimal_polynomial",
    "FactoredPolynomial",
    "factor_over_integers",
    "ParameterArray",
    "FullParameterSet",
    "parse_array",
    "format_array",
    "canonicalize",
    "build_B1",
    "reconstruct_all",
    "SitaBasis",
    "ValidationOutcome",
    "derive_sita",
    "MultiplicityProfile",
    "TraceOutcome",
    "multiplicity_candidates",
    "frame_check",
    "trace_check",
    "handshake_check",
    "EigenSlot",
    "SpectralData",
    "spectral_data",
    "krein_sign",
    "krein_and_absolute_bound",
    "noncyclotomic",
    "polynomial_in",
    "copolynomial_in",
    "FeasibilityRecord",
    "run_all",
    "run_all_text",
    "write_records",
    "read_records",
    "SearchConfig",
    "SearchShard",
    "SearchSummary",
    "enumerate_valencies",
    "enumerate_arrays",
    "search",
    "run_search",
]
