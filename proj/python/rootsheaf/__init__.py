"""Root stacks, parabolic sheaves and finitely presented commutative monoids."""

from ._core import (
    Document,
    InputError,
    Monoid,
    MonoidHom,
    ResourceError,
    UnsupportedError,
    ValidationError,
    classify_stack,
    command_names,
    kernel_closure,
    run_command,
)

__all__ = [
    "Document",
    "InputError",
    "Monoid",
    "MonoidHom",
    "ResourceError",
    "UnsupportedError",
    "ValidationError",
    "classify_stack",
    "command_names",
    "kernel_closure",
    "run_command",
]
