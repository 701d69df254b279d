"""
Shared output record of the hardness constructions
"""

from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from ..graph.digraph import Digraph
from ..graph.pattern import StarsPathsPattern


class ReductionOutput(BaseModel):
    """
    Host digraph and target produced by a generator.

    ``roles`` tags host vertices (original, type1, c(e), F, selector, ...);
    ``params`` carries construction numbers such as k' or the usable-vertex
    period; ``terminals`` is set by constructions with prescribed endpoints.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    host: Digraph
    target: Optional[Union[StarsPathsPattern, Digraph]] = None
    expected_dtw_bound: int = 0
    roles: Dict[int, str] = Field(default_factory=dict)
    params: Dict[str, int] = Field(default_factory=dict)
    terminals: Optional[Tuple[int, int]] = None

    def vertices_with_role(self, role: str) -> List[int]:
        return sorted(v for v, tag in self.roles.items() if tag == role)
