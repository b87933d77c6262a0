"""Inner functions on the unit disc: evaluation, one-component
classification, and companion Blaschke product construction."""

from .errors import (BlaschkeConditionError, CurveExhausted, DomainError,
                     HorizonExceeded, HypothesisViolated, OnecompError,
                     PrecisionExhausted, RadiusSearchExhausted,
                     TailBoundInsufficient)
from .geometry import (BoundaryArc, CarlesonSquare, PointSupport, ArcSupport,
                       SawtoothRegion, StolzAngle, WhitneyBox, carleson_square,
                       mobius_shift, pseudo_distance, pseudo_distance_depths,
                       whitney_arcs)
from .inner import (BlaschkeProduct, InnerFunction, Interval, MuMeasure,
                    SingularInner, ZeroSequence, ahern_clark_integral,
                    blaschke_factor, dump_zeros_csv, load_zeros_csv,
                    separation_constants, stolz_tail_ratio)
from .measures import (AtomicMeasure, CantorMeasure, CdfMeasure,
                       SingularMeasure, poisson_kernel)
from .classify import (ClassificationReport, LimitTestResult, ScanBudget,
                       classify, criterion_scan, density_test,
                       radial_limit_test, sawtooth_test,
                       ONE_COMPONENT, NOT_ONE_COMPONENT, INCONCLUSIVE)
from .levelset import LevelSetAnalysis, PolarCell, level_set_components
from .companion import (CompanionResult, GammaCurve, WhitneyChain,
                        build_gamma, choose_radii, construct_companion,
                        place_zeros)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
