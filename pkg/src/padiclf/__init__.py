"""padiclf: exact higher-order Bernoulli numbers, Dirichlet characters, and
multivariate p-adic L-functions.

Everything classical is computed in exact arithmetic (rationals and
cyclotomic fields), every analytic claim is checked by two independent
routes, and the p-adic layer tracks guaranteed precision through every
operation.
"""

from .rings import CycloNumber, Rational, TruncSeries, cyclotomic_polynomial, euler_phi, exp_linear
from .bernoulli import (
    BernoulliTable,
    bernoulli,
    bernoulli_recurrence,
    multi_bernoulli,
    multi_bernoulli_poly,
    multi_bernoulli_poly_series,
    multi_bernoulli_recurrence,
)
from .characters import (
    DirichletCharacter,
    char_enumerate,
    char_from_label,
    char_label,
    teichmuller_char,
    trivial_character,
    twist,
)
from .classical import (
    LValueReport,
    composition_counts,
    gen_multi_bernoulli,
    gen_multi_bernoulli_series,
    multi_L_numeric,
    multi_L_special,
    multi_hurwitz_special,
)
from .padics import (
    PAdicNumber,
    angle_bracket,
    padic_binomial,
    padic_exp,
    padic_log,
    padic_pow,
    q_of,
    teichmuller,
)
from .padic_l import (
    InterpolationCheck,
    PadicLParams,
    default_modulus,
    embed_cyclo,
    multivariate_Lp,
    restricted_gen_bernoulli,
    second_gen_bernoulli,
    verify_interpolation,
    washington_Lp,
)
from .errors import PoleError, RouteMismatchError, UnsupportedCharacterError

__version__ = "0.1.0"
