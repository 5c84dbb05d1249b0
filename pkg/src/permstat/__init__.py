"""Permutation statistics from vincular patterns, the bijections that transport
them between pattern classes, and exhaustive equidistribution checks."""

from .bijections import (
    ConsistentPair,
    build_asc_perm,
    build_atop_perm,
    conjugate_cr,
    extract_consistent_pair,
    phi,
    phi_inverse,
    psi,
    psi_inverse,
    theta,
    theta_inverse,
    theta_prime,
)
from .distributions import (
    AvoidanceClass,
    DistributionTable,
    distribution,
    enumerate_class,
    equidistributed,
    scan_quadruples,
)
from .patterns import (
    StatisticDef,
    VincularPattern,
    contains,
    count_occurrences,
    evaluate,
    parse_pattern,
    registry,
)
from .perm import Permutation, parse_perm

__version__ = "0.1.0"
