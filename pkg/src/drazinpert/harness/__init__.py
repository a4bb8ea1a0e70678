"""Random instances, oracle trials, worked-pair reproduction, matrix files and the CLI."""

from .generate import FAMILIES, THEOREMS, GenSpec, generate_pair, generate_with_retries
from .worked import ExampleReport, diagonal_pair, reproduce_examples, shift_pair

__all__ = [
    "FAMILIES",
    "THEOREMS",
    "GenSpec",
    "generate_pair",
    "generate_with_retries",
    "ExampleReport",
    "diagonal_pair",
    "shift_pair",
    "reproduce_examples",
]
