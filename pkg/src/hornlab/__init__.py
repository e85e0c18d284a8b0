"""Tropical, Hermitian and multiplicative Horn problems at desk scale.

Exact path-counting on small planar networks, hive-cone membership by
rational linear programming, dense eigensolvers for the classical sides,
and Monte Carlo machinery to compare the three product measures.
"""

from .semiring import (BOTTOM, COMPLEX, NONNEG, RATIONAL, TROPICAL, Bottom,
                       Semiring, as_rational, mat_equal, mat_identity, mat_mul)
from .network import (DIAGONAL, HORIZONTAL, SINK_HORIZONTAL, Edge,
                      PlanarNetwork, build_gamma0, compose_weightings,
                      concatenate, constant_weighting, network_from_json,
                      network_to_dot, network_to_json, subnetwork)
from .paths import (MultiPath, complex_lift, correspondence_matrix,
                    enumerate_kpaths, enumerate_paths, m_k, minor, minor_enum,
                    multipath_weight, path_weight, tropical_gz,
                    tropical_singular_values)
from .hive import (GZ, HIVE, TROPICAL_GZ, HornTriple, Tableau, boundary,
                   format_number, gz_check, gz_margin, hive_check, kt_member,
                   kt_witness, parse_number, scale_triple, tableau_from_json,
                   tableau_to_json, triple_csv_header, triple_from_csv,
                   triple_to_csv)
from .simplex import feasible_point
from .chamber import (ChamberMap, GenericityReport, WbarWeighting,
                      find_delta0_chamber, genericity_check,
                      horn_triple_tropical, kappa, kappa_weightings,
                      lt_inverse, random_interior_pattern, wbar_from_json,
                      wbar_to_json)
from .linalg import (eigh, gz_B, gz_H, haar_unitary, l_map, reconstruct_H,
                     sample_B_r, sample_H_r, sigma_values, singular_l,
                     spectrum_of, upper_cholesky)
from .polytope import PolytopeSampler, rejection_sample, sample_P_r
from .measure import (CHUNK, GENERATORS, EmpiricalSample, ForwardReport,
                      KSResult, SweepResult, exceptional_mass_estimate,
                      horn_forward_test, ks_distance, limit_sweep,
                      projection_set, sample_hermitian_sum,
                      sample_multiplicative, sample_tropical_kappa)

__version__ = "0.1.0"

__all__ = [
    "BOTTOM", "Bottom", "COMPLEX", "NONNEG", "RATIONAL", "TROPICAL",
    "Semiring", "as_rational", "mat_equal", "mat_identity", "mat_mul",
    "DIAGONAL", "HORIZONTAL", "SINK_HORIZONTAL", "Edge", "PlanarNetwork",
    "build_gamma0", "compose_weightings", "concatenate", "constant_weighting",
    "network_from_json", "network_to_dot", "network_to_json", "subnetwork",
    "MultiPath", "complex_lift", "correspondence_matrix", "enumerate_kpaths",
    "enumerate_paths", "m_k", "minor", "minor_enum", "multipath_weight",
    "path_weight", "tropical_gz", "tropical_singular_values",
    "GZ", "HIVE", "TROPICAL_GZ", "HornTriple", "Tableau", "boundary",
    "format_number", "gz_check", "gz_margin", "hive_check", "kt_member",
    "kt_witness", "parse_number", "scale_triple", "tableau_from_json",
    "tableau_to_json", "triple_csv_header", "triple_from_csv",
    "triple_to_csv", "feasible_point",
    "ChamberMap", "GenericityReport", "WbarWeighting", "find_delta0_chamber",
    "genericity_check", "horn_triple_tropical", "kappa", "kappa_weightings",
    "lt_inverse", "random_interior_pattern", "wbar_from_json", "wbar_to_json",
    "eigh", "gz_B", "gz_H", "haar_unitary", "l_map", "reconstruct_H",
    "sample_B_r", "sample_H_r", "sigma_values", "singular_l", "spectrum_of",
    "upper_cholesky",
    "PolytopeSampler", "rejection_sample", "sample_P_r",
    "CHUNK", "GENERATORS", "EmpiricalSample", "ForwardReport", "KSResult",
    "SweepResult", "exceptional_mass_estimate", "horn_forward_test",
    "ks_distance", "limit_sweep", "projection_set", "sample_hermitian_sum",
    "sample_multiplicative", "sample_tropical_kappa",
]
