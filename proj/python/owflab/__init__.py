"""Turing machines compiled into rewriting, Post and tiling systems."""

from ._owflab import (
    OwfError,
    block_decompose,
    compile,
    evaluate,
    experiment,
    invert,
    library_names,
    run_machine,
    sample,
    verify,
)

__all__ = [
    "OwfError",
    "block_decompose",
    "compile",
    "evaluate",
    "experiment",
    "invert",
    "library_names",
    "run_machine",
    "sample",
    "verify",
]
