"""Tiling complements and spectra of cubes in finite abelian groups."""

from .cubes import (
    Cube,
    DilatedCube,
    DualUndefined,
    Reduction,
    corollary_check,
    cube_zero_set,
    divisibility_check,
    dual_cube,
    exhaustive_theorem_check,
    reduce_dilated,
    standard_spectrum,
    theorem_sweep,
    unguarded_zero_formula,
    verify_theorem_pair,
)
from .fourier import (
    ExpSum,
    IntFunction,
    autocorrelation,
    cyclotomic_poly,
    dft_indicator,
    is_zero,
    zero_set,
)
from .groups import (
    Element,
    Group,
    GroupMismatch,
    PointSet,
    add,
    difference_set,
    make_group,
    sub,
    subgroup_generated,
)
from .report import VerificationReport
from .spectra import enumerate_spectra, is_spectrum, orthogonal, speccond_check
from .tiling import check_packing, check_tiling, enumerate_tiling_complements

__version__ = "0.1.0"
