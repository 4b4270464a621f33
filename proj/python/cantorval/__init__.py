"""Analysis of binary inflation rules and their model-set windows.

The heavy lifting happens in the C++ extension ``cantorval._core``; this
package adds dict-returning convenience wrappers around its JSON entry
points.
"""

import json

from cantorval._core import (  # noqa: F401
    analyze_json,
    boundary_graph_dot,
    chaos_game,
    dimension_json,
    inverse,
    is_invertible,
    iterate,
    render_ppm,
    substitution_matrix,
)

__all__ = [
    "analyze",
    "analyze_json",
    "boundary_graph_dot",
    "chaos_game",
    "dimension",
    "dimension_json",
    "inverse",
    "is_invertible",
    "iterate",
    "render_ppm",
    "substitution_matrix",
]


def analyze(substitution, **kwargs):
    """Full analysis report as a dict; see ``analyze_json`` for arguments."""
    return json.loads(analyze_json(substitution, **kwargs))


def dimension(substitution, bound=0):
    """Boundary-dimension report as a dict."""
    return json.loads(dimension_json(substitution, bound))
