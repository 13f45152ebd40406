"""Crank partition statistic: exact moment generating functions, oracles,
circle-method asymptotics for the twisted moments, and a congruence scanner."""

from .arith import bernoulli, euler_numbers, inv_mod_bracket, kronecker12, sigma
from .asymptotics import (
    bessel_I_half,
    check_multiplier_identity,
    check_shift_lemma,
    check_transformations,
    dedekind_sum,
    eta_numeric,
    kloosterman_A,
    leading_order,
    main_term,
    multiplier,
    theta_numeric,
    untwisted_leading,
)
from .congruences import ScanReport, scan
from .crank import (
    CrankTable,
    crank,
    crank_table_combinatorial,
    crank_table_product,
    enumerate_partitions,
    moment,
    twisted_moment,
)
from .formulas import (
    exp_compose,
    moment_series,
    theorem1_series,
    theorem2_series,
    theta_taylor,
    verify_theorem,
    verify_theta_product,
)
from .qseries import (
    QSeries,
    eisenstein_series,
    eta_products,
    f_series,
    phi_series,
    scale_q,
    series_exp,
    series_inv,
    series_log,
    series_mul,
)

__version__ = "0.1.0"
