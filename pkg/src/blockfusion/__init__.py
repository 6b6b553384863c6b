"""Block extensions, fusion groups, and Clifford extensions over GF(p)."""

__all__ = [
    "gfp",
    "polys",
    "permgroups",
    "algebra",
    "blocks",
    "graded",
    "fusion",
    "clifford",
    "workbench",
    "cli",
]

__version__ = "0.1.0"
