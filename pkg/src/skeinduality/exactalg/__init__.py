from .intmatrix import (
    IntMatrix,
    SnfDecomposition,
    det,
    inverse_unimodular,
    invariant_factors,
    snf,
    solve_integer,
    solve_mod,
)
from .linalg import SingularSystemError, kernel_and_rank_over_ratfunc, rank, rref, solve
from .ratfunc import (
    A,
    DELTA,
    ONE,
    ZERO,
    A_pow,
    LaurentPoly,
    RatFunc,
    RatFuncZeroDivision,
    SpecializationError,
    as_ratfunc,
    format_laurent,
    loop_chebyshev,
    quantum_integer,
)

__all__ = [
    "A", "DELTA", "ONE", "ZERO", "A_pow", "IntMatrix", "LaurentPoly", "RatFunc", "RatFuncZeroDivision",
    "SingularSystemError", "SnfDecomposition", "SpecializationError", "as_ratfunc", "det", "format_laurent",
    "inverse_unimodular", "invariant_factors", "kernel_and_rank_over_ratfunc", "loop_chebyshev",
    "quantum_integer", "rank", "ratfunc_arith", "rref", "snf", "solve", "solve_integer", "solve_mod",
]


def ratfunc_arith(a, b, op: str) -> RatFunc:
    """Apply ``op`` in {add, sub, mul, div} to two field elements."""
    a, b = as_ratfunc(a), as_ratfunc(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
