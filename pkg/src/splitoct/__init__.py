"""Split-octonion algebra, its noncompact G2 automorphisms, and derived kinematics."""

from .algebra import (
    ONE,
    NormClass,
    PolarForm,
    PolarKind,
    SplitOctonion,
    VectorClass,
    associator,
    classify,
    commutator,
    conj,
    from_json,
    inverse,
    mul,
    norm2,
    polar,
    to_json,
    vector_norm2,
)
from .automorphisms import AutomorphismMap, AutomorphismParams, InfinitesimalParams, build
from .errors import (
    DomainViolation,
    LightLikeVector,
    NoMatch,
    NotNullTrajectory,
    SingularFrame,
    SplitOctError,
    VirtualRegime,
    ZeroMomentum,
    ZeroNorm,
)
from .kinematics import PhysicalConstants
from .rotor import Rotor, decompose, left_rotate, right_rotate

__version__ = "0.1.0"
