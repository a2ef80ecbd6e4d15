"""Information geometry on finite atomic measure spaces.

Orlicz norms, exponential charts, the exponential/mixture/alpha
connections and their duality under the Fisher scalar product.
"""

from infogeo._backend import BACKEND
from infogeo.alpha import (
    AlphaParam,
    SpherePoint,
    alpha_duality_gap,
    alpha_embed,
    convex_combination_gap,
    nabla_alpha,
    pullback,
    pushforward,
    sphere_project,
    sphere_project_general,
)
from infogeo.charts import (
    ChartPoint,
    Transition,
    chart_forward,
    chart_inverse,
    chart_norm,
    in_chart_domain,
    mixture_point,
    partition_function,
    transition_map,
)
from infogeo.connections import (
    Curve,
    CurveKind,
    VectorField,
    chart_line,
    covariant_derivative,
    curve_tangent_field,
    custom_curve,
    directional_derivative,
    duality_gap,
    duality_product_gap,
    exp_geodesic,
    exp_parallel_field,
    exp_segment,
    fisher,
    geodesic_residual,
    mix_parallel_field,
    mix_segment,
    nabla_exp,
    nabla_mix,
    smooth_field,
    transport_exp,
    transport_mix,
)
from infogeo.errors import ChartDomainError, DomainError, InfogeoError, NumericalError
from infogeo.measure import Density, MeasureSpace, TangentVector, center, expectation, integrate
from infogeo.orlicz import (
    PHI1,
    PHI2,
    PHI3,
    YoungFunction,
    equivalent_norms_check,
    holder_pairing,
    luxemburg_norm,
    modular,
    orlicz_norm,
)

__version__ = "0.1.0"
