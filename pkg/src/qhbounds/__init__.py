"""Quantum homology lower bounds for Lagrangian intersections over Z2."""

from __future__ import annotations

from .algebra import ClassVector, Kind, RingSpec, fold, parse_class, product, validate
from .bounds import (BoundReport, bound_chekanov, bound_fixed_points, bound_fqf, bound_lfqf,
                     cuplength)
from .catalog import CATALOG, build
from .factorization import (ActionMultiset, FqfCertificate, count_residue_classes,
                            counting_lower_bound, find_best_fqf, verify_fqf)
from .filtered import FilteredComplex, FilteredGenerator, morse_to_filtered, spectral_invariant
from .grid import GridFunction, ls_selector
from .novikov import GammaElement, Laurent, MonotoneContext

__version__ = "0.1.0"

__all__ = [
    "ActionMultiset", "BoundReport", "CATALOG", "ClassVector", "FilteredComplex",
    "FilteredGenerator", "FqfCertificate", "GammaElement", "GridFunction", "Kind", "Laurent",
    "MonotoneContext", "RingSpec", "bound_chekanov", "bound_fixed_points", "bound_fqf",
    "bound_lfqf", "build", "count_residue_classes", "counting_lower_bound", "cuplength",
    "find_best_fqf", "fold", "ls_selector", "morse_to_filtered", "parse_class", "product",
    "spectral_invariant", "validate", "verify_fqf",
]
