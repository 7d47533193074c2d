"""
Pydantic schemas for the JSON tree document and validation reports
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field


class TreeDocument(BaseModel):
    """On-disk tree: the three index arrays with null for absent links.

    ``parent`` is left out of the output entirely when the tree stores none.
    """
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=0)
    root: Optional[int]
    parent: Optional[List[Optional[int]]] = None
    left: List[Optional[int]]
    right: List[Optional[int]]


class ViolationKind(str, Enum):
    """Category of a structural problem"""
    ORDER = "order"
    LINK = "link"
    ROOT = "root"
    UNREACHABLE = "unreachable"
    CYCLE = "cycle"
    HEIGHT = "height"
    SHAPE = "shape"


class Violation(BaseModel):
    node: int
    kind: ViolationKind


class ValidationReport(BaseModel):
    """Outcome of the structural checks run by ``oracle.validate``.

    ``upper_levels_full`` describes the shape and is not a violation: a
    freshly built tree is valid without it.
    """
    n: int
    bst_order_ok: bool
    links_consistent: bool
    single_root: bool
    height_edges: int
    minimal_height_ok: bool
    upper_levels_full: bool
    level_profile: List[int] = Field(default_factory=list)
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bst_order_ok and self.links_consistent and self.single_root and self.minimal_height_ok

    def render(self) -> str:
        """Plain-text form printed by ``flatbst verify``."""
        lines = [
            f"n {self.n}",
            f"bst_order_ok {str(self.bst_order_ok).lower()}",
            f"links_consistent {str(self.links_consistent).lower()}",
            f"single_root {str(self.single_root).lower()}",
            f"height_edges {self.height_edges}",
            f"minimal_height_ok {str(self.minimal_height_ok).lower()}",
            f"upper_levels_full {str(self.upper_levels_full).lower()}",
            f"level_profile {' '.join(str(c) for c in self.level_profile)}".rstrip(),
        ]
        for violation in self.violations:
            lines.append(f"violation {violation.node} {violation.kind.value}")
        lines.append("ok" if self.ok else "FAILED")
        return "\n".join(lines)
