"""HTTP layer: wire schemas and the FastAPI application factory."""

from metasolve.api.app import create_app, main
from metasolve.api.schemas import problem_document, problem_summary

__all__ = ["create_app", "main", "problem_document", "problem_summary"]
