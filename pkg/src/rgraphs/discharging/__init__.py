"""Exact-rational discharging: charge ledgers, the rule DSL, lemma audits,
and mechanical verification of the face case analyses."""

from rgraphs.discharging.rules import Rule, RuleSet, parse_rules, print_rules, builtin_rules
from rgraphs.discharging.charges import ChargeLedger, initial_charges, apply_rules
from rgraphs.discharging.lemmas import lemma_audit
from rgraphs.discharging.profiles import verify_case_analysis, ablation

__all__ = [
    "Rule", "RuleSet", "parse_rules", "print_rules", "builtin_rules",
    "ChargeLedger", "initial_charges", "apply_rules",
    "lemma_audit", "verify_case_analysis", "ablation",
]
