from .diagram import DiagramBlock, DiagramModel, build_diagram
from .host import SimulationHost
from .protocol import apply_message, diagram_state, transcript_state, world_delta
from .scenario import (Scenario, add_entity_record, build_session,
                       load_scenario, run_scenario, save_world, write_trace)
from .session import CONFIRMED, DISCARDED, STAGED, Session, StagedCommand
from .transcript import Transcript, Word

__all__ = [
    "CONFIRMED", "DISCARDED", "DiagramBlock", "DiagramModel", "STAGED",
    "Scenario", "Session", "SimulationHost", "StagedCommand", "Transcript",
    "Word", "add_entity_record", "apply_message", "build_diagram",
    "build_session", "diagram_state", "load_scenario", "run_scenario",
    "save_world", "transcript_state", "world_delta", "write_trace",
]
