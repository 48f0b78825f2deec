from .compiler import CompiledCommand, Compiler
from .modulation import modulation
from .script import (CANCELLED, DONE, FOREVER, RUNNING, Call, Delay, LoopEnd,
                     LoopStart, ScriptInstance, VerbInvocation, VM, Wait)
from .verbs import EVENT_VERBS, VerbArgs, VerbContext, VerbModule, build_registry

__all__ = [
    "CANCELLED", "Call", "CompiledCommand", "Compiler", "DONE", "Delay",
    "EVENT_VERBS", "FOREVER", "LoopEnd", "LoopStart", "RUNNING",
    "ScriptInstance", "VM", "VerbArgs", "VerbContext", "VerbInvocation",
    "VerbModule", "Wait", "build_registry", "modulation",
]
