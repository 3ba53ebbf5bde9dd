"""Exact cohomology of finite Lie conformal algebras (scaffolding stage)."""
from ._backend import BACKEND
