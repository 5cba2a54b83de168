"""Services package - dataset, condition, induction, metrics and experiment logic"""

from app.services.experiment_service import ExperimentService
from app.services.induction_service import induce_rrules, induce_rules, predict, verify_ruleset

__all__ = ["ExperimentService", "induce_rrules", "induce_rules", "predict", "verify_ruleset"]
