"""Dyadically scaled modulation norms, their Fourier-side amalgam relatives,
STFT equivalents and Schrodinger propagator estimates on quadrature lattices.
"""
from modscale.amalgam import (famalgam_norm, frak_famalgam_norm, fx_norm, hausdorff_young_scale,
                              wiener_amalgam_norm)
from modscale.norms import NormReport, NormSpec, decay_profile, duality_pairing, frak_norm, mod_norm
from modscale.partition import FrequencyCell, PartitionOfUnity, build_pou, validate_pou
from modscale.spectral import GridSpec, SpectralFunction, delta_op, dilate_dyadic, lp_norm, synthesize
from modscale.weights import VectorWeight, is_good, parse_weight, power_weight, weight_w_p

__all__ = [
    "FrequencyCell", "GridSpec", "NormReport", "NormSpec", "PartitionOfUnity", "SpectralFunction",
    "VectorWeight", "build_pou", "decay_profile", "delta_op", "dilate_dyadic", "duality_pairing",
    "famalgam_norm", "frak_famalgam_norm", "frak_norm", "fx_norm", "hausdorff_young_scale",
    "is_good", "lp_norm", "mod_norm", "parse_weight", "power_weight", "synthesize",
    "validate_pou", "weight_w_p", "wiener_amalgam_norm",
]
