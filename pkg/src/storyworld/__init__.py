"""storyworld: a narrative-command engine.

Restricted third-person English is parsed into a semantic-role graph,
bound to entities in a simulated 2D world, and executed on a
tick-driven script virtual machine with trigger-response rules.
"""

__version__ = "0.1.0"
