from .entity import NUMBER, SKETCH, TEXT, Entity, Prototype
from .world import BEGIN, CONTINUE, END, Camera, World, WorldClock

__all__ = [
    "BEGIN", "CONTINUE", "END", "Camera", "Entity", "NUMBER", "Prototype",
    "SKETCH", "TEXT", "World", "WorldClock",
]
