"""Dialect dispatch: parse, execute and extract operators for any MR dialect.

This is the seam batch tooling goes through: programs arrive as text, and
failures of any kind (parse or runtime) come back as captured
:class:`~semkit.outcomes.Outcome` failures rather than exceptions.
"""

from __future__ import annotations

from . import calflow, funql, pymr, social
from .errors import SemkitError
from .outcomes import Outcome

DIALECT_ENVIRONMENTS = {
    "funql": "geo",
    "ldcs": "social",
    "ldcs-simple": "social",
    "dataflow-simple": "calendar",
    "pymr": None,  # runs against any environment
}


def run_program(dialect: str, text: str, environment: str, env_object) -> Outcome:
    """Parse and execute one program; never raises for program-level problems."""
    expected = DIALECT_ENVIRONMENTS.get(dialect, "missing")
    if expected == "missing" or (expected is not None and expected != environment):
        raise ValueError(f"dialect {dialect!r} does not run against {environment!r}")
    try:
        if dialect == "funql":
            return Outcome.success(funql.exec_funql(funql.parse_funql(text), env_object))
        if dialect == "ldcs":
            ast = social.simplify_ldcs(social.parse_ldcs(text, "full"))
            return Outcome.success(social.exec_ldcs_simple(ast, env_object))
        if dialect == "ldcs-simple":
            ast = social.parse_ldcs(text, "simple")
            return Outcome.success(social.exec_ldcs_simple(ast, env_object))
        if dialect == "dataflow-simple":
            _, delta = calflow.exec_dfs(calflow.parse_dfs(text), env_object)
            return Outcome.success(delta)
        return pymr.exec_pymr(pymr.parse_pymr(text), environment, env_object)
    except SemkitError as exc:
        return Outcome.from_exception(exc)
    except Exception as exc:  # noqa: BLE001 - captured by contract
        return Outcome.failure("execution-error", f"{type(exc).__name__}: {exc}")


def operators_of(dialect: str, text: str) -> frozenset[str]:
    """Unigram operator set of one program, per the dialect's extraction rule."""
    if dialect == "funql":
        return funql.extract_operators(funql.parse_funql(text))
    if dialect == "ldcs":
        return social.extract_operators(social.parse_ldcs(text, "full"))
    if dialect == "ldcs-simple":
        return social.extract_operators(social.parse_ldcs(text, "simple"))
    if dialect == "dataflow-simple":
        return calflow.extract_operators(calflow.parse_dfs(text))
    if dialect == "pymr":
        return pymr.extract_operators(pymr.parse_pymr(text))
    raise ValueError(f"unknown dialect {dialect!r}")


def load_environment(environment: str, path):
    """Load the environment object an execution needs (model, db or world)."""
    if environment == "geo":
        from .geo import load_geobase
        return load_geobase(path)
    if environment == "social":
        from .social import load_social_db
        return load_social_db(path)
    if environment == "calendar":
        from .calflow import load_world
        return load_world(path)
    raise ValueError(f"unknown environment {environment!r}")
