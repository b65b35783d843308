"""Symbolic engine for thick morphisms of supermanifolds."""

from ._mfc import (
    Chart,
    Error,
    Morphism,
    ParseError,
    Series,
    Workspace,
    antitangent_lift,
    check_antitangent_q,
    compose,
    parse_workspace,
    pullback,
    run_suite,
    suite_names,
    tangent_lift,
)

__all__ = [
    "Chart",
    "Error",
    "Morphism",
    "ParseError",
    "Series",
    "Workspace",
    "antitangent_lift",
    "check_antitangent_q",
    "compose",
    "parse_workspace",
    "pullback",
    "run_suite",
    "suite_names",
    "tangent_lift",
]
