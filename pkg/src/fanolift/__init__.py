"""Fano-plane correspondences, L3(2) pencils and their exact verification."""
from .corr7 import SeptupleConfig, quartet, verify_correspondence
from .fano import FANO_PLANE, all_fano_structures, build_group
from .homography import Homography
from .pencil import certify, lift, noether_decompose

__version__ = "0.1.0"

__all__ = [
    "FANO_PLANE", "Homography", "SeptupleConfig", "all_fano_structures", "build_group", "certify",
    "lift", "noether_decompose", "quartet", "verify_correspondence",
]
