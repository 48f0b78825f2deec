from .engine import AFTER, AS, WHEN, Rule, RulesEngine, TriggerSpec, VerbDefinition

__all__ = ["AFTER", "AS", "Rule", "RulesEngine", "TriggerSpec",
           "VerbDefinition", "WHEN"]
