"""Two-dimensional symmetric and antisymmetric sine and cosine functions.

Evaluation and symmetry reduction live in :mod:`trig2d.functions`, product
linearization in :mod:`trig2d.products`, the discrete sine transforms in
:mod:`trig2d.transforms` and quadrature / error metrics in
:mod:`trig2d.analysis`.
"""
from .functions import (
    HalfInt,
    Kind,
    Label,
    Point,
    SignedLabel,
    canonicalize,
    evaluate,
    fold_point,
    gradient,
    laplacian_fd,
    mixed_derivative,
)
from .products import TermSum, congruence_class, decompose_product, verify_decomposition
from .transforms import (
    CoefficientTable,
    GridSpec,
    SampledField,
    Symmetry,
    Variant,
    forward,
    roundtrip_residual,
    sample_points,
    synthesize,
)
from .analysis import GaussianModel, DEMO_GAUSSIAN, inner_product_F, interpolation_error

__version__ = "0.1.0"
