"""Higher-order matching over System F and System T, and the reduction of
Diophantine equations to it."""

__version__ = "0.1.0"

from .terms import (
    CHURCH_NAT, NAT_T, PROP, App, Context, IllTyped, KernelError, Lam, NatT, Pi, RecT,
    Sort, SuccT, SystemTag, Term, Var, WrongCalculusError, ZeroT, alpha_equal, apply, instantiate,
    shift, substitute,
)
from .surface import ParseError, parse_context, parse_term, print_context, print_term
from .normalize import DEFAULT_FUEL, FuelExhausted, NormalForm, normalize, reduce_once
from .system_f import (
    PreconditionError, check_context_f, church, classify_shape, probe_f,
    recognize_numeral_f, typecheck_f,
)
from .system_t import (
    check_context_t, probe_t, recognize_numeral_t, step_recursor, t_numeral, typecheck_t,
)
from .prf import (
    Comp, PrimRec, Proj, Succ, Zero, encode_sequence, eval_prf, format_prf, parse_prf, stdlib,
)
from .compile import CompiledFn, compile_prf, compile_to_f, compile_to_t, numeral
from .reduction import (
    ExhaustedBound, Found, MatchingProblem, Polynomial, Solution, SolverVerdict,
    gen_matching, hilbert_to_prf, solve_bounded, to_one_variable, verify_solution,
)
