"""digitfract: exact toolkit for sets defined by digit restrictions.

Materializes finite-depth approximations of digit-restriction subsets of
[0,1], evaluates their Hausdorff and Assouad dimensions from density
profiles of the free-position set, extracts arithmetic progressions
constructively (with an exact brute-force oracle), scans Fourier
coefficients of the natural product measure for non-decay, and builds
position sets realizing any prescribed dimension profile.

The package is exposed as a FastAPI service (`digitfract.service:app`)
with a thin CLI client (`digitfract run`, `digitfract serve`).
"""

__version__ = "0.1.0"

from .core import (BAdicPoint, DigitString, DigitSystem,  # noqa: F401
                   Approximation, canonical_point, canonical_string,
                   enumerate_approximation, expected_count, membership)
from .constructions import (build_case1, build_case2, build_case3,  # noqa: F401
                            build_for_dimension, fraser_yu_fixture)
from .dimension import (CoveringStats, DensityProfile,  # noqa: F401
                        DimensionReport, WindowDensityReport, assouad_dimension,
                        count_in_range, covering_count, dimension_report,
                        hausdorff_dimension, lower_density_profile,
                        window_density_profile)
from .errors import (BudgetExceeded, ComplementFinite, EmptySet,  # noqa: F401
                     HorizonExceeded, InvalidParams, RunNotFound, ToolkitError)
from .fourier import (FourierValue, NaturalMeasure, digit_factor,  # noqa: F401
                      depth_for_tolerance, fourier_coefficient, nondecay_scan)
from .positions import (BlockConstruction, CubeBlocks,  # noqa: F401
                        ExplicitTruncated, Periodic, PositionSet)
from .progressions import (ArithmeticProgression, LongestApResult,  # noqa: F401
                           RunReport, construct_ap, longest_ap, max_run,
                           search_ap)
