"""cvdrec: questionnaire-driven cardiovascular prevention recommendations.

Pipeline: a 17-indicator questionnaire record is parsed (:mod:`cvdrec.intake`),
mapped to 13 risk-factor flags and 5 classes (:mod:`cvdrec.factors`), scored
for ten-year risk (:mod:`cvdrec.risk`) and assembled into a four-dimension
recommendation (:mod:`cvdrec.recommend`) from a content catalog
(:mod:`cvdrec.catalog`), with optional generated explanations
(:mod:`cvdrec.explain`). :mod:`cvdrec.verification` re-checks the pipeline's
postconditions over randomized inputs.
"""

__version__ = "0.1.0"

from .intake import HealthIndicators, parse_questionnaire, serialize, validate
from .factors import FactorVector, ClassVector, derive_factors, classify, compute_bmi
from .risk import RiskEstimate, load_calibration, score2, categorize, sco_flag
from .catalog import Catalog, load_catalog
from .recommend import Recommendation, UserProfile, build_profile, generate

__all__ = [
    "__version__",
    "HealthIndicators", "parse_questionnaire", "serialize", "validate",
    "FactorVector", "ClassVector", "derive_factors", "classify", "compute_bmi",
    "RiskEstimate", "load_calibration", "score2", "categorize", "sco_flag",
    "Catalog", "load_catalog",
    "Recommendation", "UserProfile", "build_profile", "generate",
]
