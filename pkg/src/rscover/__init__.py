"""Covering with Reed-Solomon codes.

Puncture-and-decode covering for GRS codes in Hamming space and for
character-RS codes on the Grassmannian of lines, the unique and list decoders
it runs, closed-form bounds, and a seeded Monte Carlo harness.
"""
__version__ = "0.1.0"

from .gf import GF, Character, FieldSpec, character_eval, field_arith, trace
from .poly import Poly, interpolate, poly_eval
from .code import (CrsCode, CrsSizeReport, GrsCode, crs_code, crs_encode, crs_size, grs_code,
                   grs_encode, puncture_last, weight_distribution)
from .decoder import DecodeConfig, bw_unique_decode, gs_list_decode, gs_parameters, tau_gs
from .cover import (CoverResult, chordal_distance, crs_cover, grs_cover, hamming_distance,
                    psi_beta)
from .bounds import (BoundReport, avg_punctures_list_bounds, avg_punctures_unique,
                     coverage_fraction_lower_bound, crs_min_snr, crs_upper_bound,
                     hamming_ball_volume, intersection_distribution, random_chordal_bound,
                     random_hamming_bound, tau_max_search)
from .sim import (EstimateReport, TrialRecord, estimate_avg_covering, nearest_codeword_exhaustive,
                  sample_complex_gaussian, sample_uniform_hamming, trial_rng, write_trial_log)
from .kernels import BACKEND, available_backends
