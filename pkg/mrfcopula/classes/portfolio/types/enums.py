"""
@fileoverview This module defines enumerations for risk-factor kinds, special
              cases, sample kinds, tail paths and CLI commands used across the
              portfolio models.
@filepath mrfcopula/classes/portfolio/types/enums.py
"""

from enum import Enum


class FactorKind(str, Enum):
    """
    How a risk factor acts on the components it hits.
    """
    COMONOTONE = "comonotone"
    INDEPENDENT = "independent"


class SpecialCase(str, Enum):
    """
    Named members of the MRF family recognised from the exposure pattern.
    """
    PRODUCT = "Product"
    FRECHET_UPPER = "FrechetUpper"
    CLAYTON_ARCHIMEDEAN = "ClaytonArchimedean"
    MARSHALL_OLKIN = "MarshallOlkin"
    GENERAL_MRF = "GeneralMRF"


class SampleKind(str, Enum):
    UNIFORMS = "uniforms"
    DEFAULT_TIMES = "times"


class PathKind(str, Enum):
    """
    Curves in the unit square along which lower-tail behaviour is measured.
    """
    DIAGONAL = "diagonal"
    MAXIMAL = "maximal"
    SINGULARITY = "singularity"


class Regime(str, Enum):
    """
    Where the maximiser of C(x, u^2/x) sits.
    """
    KINK = "Kink"
    INTERIOR_ROOT = "InteriorRoot"
    INDEPENDENT = "Independent"


class Command(str, Enum):
    VALIDATE = "validate"
    EVAL = "eval"
    SAMPLE = "sample"
    SPEARMAN = "spearman"
    SIMDEFAULT = "simdefault"
    TAILDEP = "taildep"
    MDP_PATH = "mdp-path"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
