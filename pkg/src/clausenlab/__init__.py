"""High-precision Clausen function, Hurwitz zeta and Dirichlet L-series,
tanh-sinh quadrature, PSLQ, and numerical checks of the identities relating
the log-tangent integral I7 to Clausen values and L_{-7}(2)."""

__version__ = "0.1.0"

from .numeric import (  # noqa: E402
    ConfigurationError,
    DomainError,
    PaperConstants,
    PrecisionContext,
    bernoulli,
    constants,
    make_context,
)
from .clausen import EvalResult, cl2, cl2_series_partial, cl2_via_integral, multiplication_rhs  # noqa: E402
from .zeta import character_table, dirichlet_l, hurwitz_zeta, kronecker, l_minus7_clausen, l_minus7_direct  # noqa: E402
from .tanhsinh import QuadratureError, QuadratureResult, tanh_sinh  # noqa: E402
from .integrals import integral_i7  # noqa: E402
from .pslq import IntegerRelation, pslq  # noqa: E402
from .identities import IdentityId, IdentityReport, closed_form_coffey, closed_form_new, digits_agreed, verify  # noqa: E402
