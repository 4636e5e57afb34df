"""Numerical toolbox for variable exponent Lebesgue spaces on dyadic grids.

Functions and exponents are piecewise constant on a lattice of cells of
side ``2**-M / 3``; exponents carry a constant tail value outside the box.
"""

from .exceptions import (AlignmentError, ClassViolationError, ConfigError,
                         DegenerateInputError, DimensionError, DomainError,
                         ExponentDomainError, GridMismatchError,
                         PreconditionError, VarLpError)
from .grid import (Cube, Grid, GridFunction, ReciprocalExponent,
                   constant_exponent, dual_exponent, essential_bounds,
                   indicator, make_cube, make_grid)
from .modulars import ModularKind, modular
from .luxemburg import NormResult, luxemburg_norm, norm
from .classes import (best_p_infinity, class_constants, muckenhoupt_constant,
                      nekvinda_constant)
from .maximal import (DyadicGridId, cz_decompose, dyadic_maximal,
                      maximal_function, maximal_ratio)
from .approximation import approximate_exponent, convergence_suite
from .config import ScenarioConfig, load_config, parse_config, serialize

__version__ = '0.1.0'
