"""
Derived terms, surface syntax and identity checking.

Lattice operations on principal right ideals are realized by explicit terms:

    join(x, y)   = f + g(1 - f)          f = gamma(x), g = gamma((1 - f)y)
    meet(x, y)   = gamma(y(1 - c+ c))    c = (1 - gamma(x))y
    ominus(e, g) = e - ge

Each generates the expected ideal; the lattice tests compare them against
the subspace oracle.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Optional

import numpy as np
import pyparsing as pp

from ..config import current_config
from ..errors import TermMismatch, TermParseError, UnboundVariable
from ..models.report import Verdict
from ..models.ring import RingElement, RingSpec
from ..models.term import Add, Mul, Named, Neg, One, QuasiInv, Term, Var, Zero
from ..utils.logger import get_scan_logger, log_scan_summary
from . import ring_core

logger = get_scan_logger()

X = Var('x')
Y = Var('y')


# Term constructors

def plus_term(t: Term) -> Term:
    return Named('plus', (t,), t.q() * t * t.q())


def gamma_term(t: Term) -> Term:
    return Named('gamma', (t,), t * plus_term(t))


def join_term(s: Term, t: Term) -> Term:
    f = gamma_term(s)
    g = gamma_term((One() - f) * t)
    return Named('join', (s, t), f + g * (One() - f))


def meet_term(s: Term, t: Term) -> Term:
    c = (One() - gamma_term(s)) * t
    return Named('meet', (s, t), gamma_term(t * (One() - plus_term(c) * c)))


def ominus_term(s: Term, t: Term) -> Term:
    return Named('ominus', (s, t), s - t * s)


def power_term(t: Term, k: int) -> Term:
    if k < 0:
        raise ValueError(f"power_term: exponent must be non-negative, got {k}")
    body = None
    square = t
    rest = k
    while rest:
        if rest & 1:
            body = square if body is None else body * square
        rest >>= 1
        if rest:
            square = square * square
    return Named('pow', (t,), One() if body is None else body, index=k)


def t_term(n: int, x: Term, y: Term) -> Term:
    """t_0 = yx ∧ xy and t_{k+1} = y^(2^k) t_k ∧ x^(2^k) t_k."""
    if n < 0:
        raise ValueError(f"t_term: index must be non-negative, got {n}")
    current = meet_term(y * x, x * y)
    for k in range(n):
        current = meet_term(power_term(y, 2 ** k) * current, power_term(x, 2 ** k) * current)
    return Named('t', (x, y), current, index=n)


def s_term(n: int, x: Term) -> Term:
    """s_n(x) = t_n(x, x+)."""
    return Named('s', (x,), t_term(n, x, plus_term(x)), index=n)


# Builders in the standard variables x, y

def term_plus() -> Term:
    return plus_term(X)


def term_gamma() -> Term:
    return gamma_term(X)


def term_join() -> Term:
    return join_term(X, Y)


def term_meet() -> Term:
    return meet_term(X, Y)


def term_ominus() -> Term:
    return ominus_term(X, Y)


def term_t(n: int) -> Term:
    return t_term(n, X, Y)


def term_s(n: int) -> Term:
    return s_term(n, X)


def scheme_defining() -> tuple:
    """x x' x = x"""
    return X * X.q() * X, X


def scheme_thm23_7(n: int) -> tuple:
    """s_{n+1}(x) s_n(x) = s_n(x)"""
    return s_term(n + 1, X) * s_term(n, X), s_term(n, X)


def scheme_thm23_8_left(m: int) -> tuple:
    """x^(m+1) (x^(m+1))+ x^m = x^m"""
    top = power_term(X, m + 1)
    return top * plus_term(top) * power_term(X, m), power_term(X, m)


def scheme_thm23_8_right(m: int) -> tuple:
    """x^m (x^(m+1))+ x^(m+1) = x^m"""
    top = power_term(X, m + 1)
    return power_term(X, m) * plus_term(top) * top, power_term(X, m)


SCHEMES = {
    'defining': lambda d: scheme_defining(),
    'thm23-7': lambda d: scheme_thm23_7(d - 2),
    'thm23-8-left': lambda d: scheme_thm23_8_left(d),
    'thm23-8-right': lambda d: scheme_thm23_8_right(d),
}


# Evaluation

def evaluate(term: Term, env: Dict[str, RingElement], spec: Optional[RingSpec] = None,
             memo: Optional[dict] = None) -> RingElement:
    """Structural evaluation; shared subterms are evaluated once."""
    if spec is None:
        if not env:
            raise UnboundVariable("a closed term needs an explicit ring spec")
        spec = next(iter(env.values())).spec
    memo = {} if memo is None else memo
    return _eval(term, env, spec, memo)


def _eval(term, env, spec, memo):
    key = id(term)
    if key in memo:
        return memo[key][1]
    if isinstance(term, Var):
        if term.name not in env:
            raise UnboundVariable(f"variable '{term.name}' is not bound")
        value = env[term.name]
    elif isinstance(term, Zero):
        value = ring_core.ring_zero(spec)
    elif isinstance(term, One):
        value = ring_core.ring_one(spec)
    elif isinstance(term, Add):
        value = _eval(term.left, env, spec, memo) + _eval(term.right, env, spec, memo)
    elif isinstance(term, Neg):
        value = -_eval(term.operand, env, spec, memo)
    elif isinstance(term, Mul):
        value = _eval(term.left, env, spec, memo) * _eval(term.right, env, spec, memo)
    elif isinstance(term, QuasiInv):
        value = ring_core.quasi_inverse(_eval(term.operand, env, spec, memo))
    elif isinstance(term, Named):
        value = _eval(term.body, env, spec, memo)
    else:
        raise TypeError(f"not a term: {term!r}")
    # keep the node alive so its id is not reused during this evaluation
    memo[key] = (term, value)
    return value


def free_vars(term: Term) -> frozenset:
    seen = set()
    names = set()
    stack = [term]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Var):
            names.add(node.name)
        stack.extend(node.children)
    return frozenset(names)


# Direct helpers used by the lattice and reduction layers

_JOIN = term_join()
_MEET = term_meet()
_OMINUS = term_ominus()


def join_of(a: RingElement, b: RingElement) -> RingElement:
    return evaluate(_JOIN, {'x': a, 'y': b})


def meet_of(a: RingElement, b: RingElement) -> RingElement:
    return evaluate(_MEET, {'x': a, 'y': b})


def ominus_of(e: RingElement, g: RingElement) -> RingElement:
    return evaluate(_OMINUS, {'x': e, 'y': g})


def t_of(n: int, a: RingElement, b: RingElement) -> RingElement:
    return evaluate(term_t(n), {'x': a, 'y': b})


# Surface syntax

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POSTFIX, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(term):
    if isinstance(term, Add):
        return _PREC_ADD
    if isinstance(term, Mul):
        return _PREC_MUL
    if isinstance(term, Neg):
        return _PREC_NEG
    if isinstance(term, QuasiInv) or (isinstance(term, Named) and term.name == 'pow'):
        return _PREC_POSTFIX
    return _PREC_ATOM


def _wrap(term, minimum):
    text = render(term)
    return f"({text})" if _prec(term) < minimum else text


def render(term: Term) -> str:
    """Surface syntax accepted back by parse_term."""
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Zero):
        return '0'
    if isinstance(term, One):
        return '1'
    if isinstance(term, Add):
        if isinstance(term.right, Neg):
            return f"{_wrap(term.left, _PREC_ADD)} - {_wrap(term.right.operand, _PREC_MUL)}"
        return f"{_wrap(term.left, _PREC_ADD)} + {_wrap(term.right, _PREC_MUL)}"
    if isinstance(term, Mul):
        return f"{_wrap(term.left, _PREC_MUL)}*{_wrap(term.right, _PREC_NEG)}"
    if isinstance(term, Neg):
        return f"-{_wrap(term.operand, _PREC_NEG)}"
    if isinstance(term, QuasiInv):
        return f"{_wrap(term.operand, _PREC_POSTFIX)}'"
    if isinstance(term, Named):
        if term.name == 'pow':
            return f"{_wrap(term.args[0], _PREC_ATOM)}^{term.index}"
        args = ','.join(render(a) for a in term.args)
        if term.index is not None:
            return f"{term.name}[{term.index}]({args})"
        return f"{term.name}({args})"
    raise TypeError(f"not a term: {term!r}")


def _build_grammar():
    expr = pp.Forward()
    integer = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
    lpar, rpar, lbrack, rbrack, comma = map(pp.Suppress, '()[],')

    def unary(name, build):
        return (pp.Keyword(name).suppress() + lpar + expr + rpar).set_parse_action(lambda t: build(t[0]))

    def binary(name, build):
        return (pp.Keyword(name).suppress() + lpar + expr + comma + expr + rpar).set_parse_action(
            lambda t: build(t[0], t[1]))

    t_call = (pp.Suppress(pp.Literal('t') + pp.FollowedBy('[')) + lbrack + integer + rbrack
              + lpar + expr + comma + expr + rpar).set_parse_action(lambda t: t_term(t[0], t[1], t[2]))
    s_call = (pp.Suppress(pp.Literal('s') + pp.FollowedBy('[')) + lbrack + integer + rbrack
              + lpar + expr + rpar).set_parse_action(lambda t: s_term(t[0], t[1]))

    const = integer.copy().set_parse_action(lambda s, loc, t: _constant(s, loc, int(t[0])))
    ident = pp.Regex(r"[A-Za-z_][A-Za-z0-9_]*").set_parse_action(lambda t: Var(t[0]))

    atom = (
        unary('plus', plus_term) | unary('gamma', gamma_term)
        | binary('join', join_term) | binary('meet', meet_term) | binary('ominus', ominus_term)
        | t_call | s_call | const | ident | (lpar + expr + rpar)
    )
    postfix_op = pp.Literal("'") | pp.Group(pp.Suppress('^') + integer)
    postfix = (atom + pp.ZeroOrMore(postfix_op)).set_parse_action(_apply_postfix)

    factor = pp.Forward()
    factor <<= (pp.Suppress('-') + factor).set_parse_action(lambda t: Neg(t[0])) | postfix
    product = (factor + pp.ZeroOrMore(pp.Suppress('*') + factor)).set_parse_action(_fold_product)
    expr <<= (product + pp.ZeroOrMore(pp.one_of('+ -') + product)).set_parse_action(_fold_sum)
    return expr


def _constant(source, loc, value):
    if value not in (0, 1):
        raise pp.ParseFatalException(source, loc, f"only the constants 0 and 1 exist, got {value}")
    return Zero() if value == 0 else One()


def _apply_postfix(tokens):
    term = tokens[0]
    for op in tokens[1:]:
        if isinstance(op, str):
            term = QuasiInv(term)
        else:
            term = power_term(term, op[0])
    return term


def _fold_product(tokens):
    term = tokens[0]
    for right in tokens[1:]:
        term = Mul(term, right)
    return term


def _fold_sum(tokens):
    term = tokens[0]
    for i in range(1, len(tokens), 2):
        right = tokens[i + 1]
        term = Add(term, right) if tokens[i] == '+' else Add(term, Neg(right))
    return term


_GRAMMAR = _build_grammar()


def parse_term(src: str) -> Term:
    try:
        return _GRAMMAR.parse_string(src, parse_all=True)[0]
    except (pp.ParseException, pp.ParseFatalException) as e:
        raise TermParseError(e.msg, e.loc) from e


# Identity checking

def _assignment(elements, names, index):
    env = {}
    base = len(elements)
    for name in reversed(names):
        index, digit = divmod(index, base)
        env[name] = elements[digit]
    return env


def _first_failure(spec, lhs, rhs, names, start, stop):
    elements = list(ring_core.enumerate_elements(spec, budget=float('inf')))
    for index in range(start, stop):
        env = _assignment(elements, names, index)
        memo = {}
        if evaluate(lhs, env, spec, memo) != evaluate(rhs, env, spec, memo):
            return index
    return None


def _scan_chunk(args):
    spec, lhs, rhs, names, start, stop = args
    return _first_failure(spec, lhs, rhs, names, start, stop)


def check_identity(spec: RingSpec, lhs: Term, rhs: Term, mode: str = 'exhaustive',
                   budget: Optional[int] = None, seed: int = 0, workers: int = 1) -> Verdict:
    """
    Check lhs = rhs on every assignment, or on random ones when sampled

    Assignments are numbered in mixed radix over the element enumeration,
    first variable slowest; the counterexample is the lowest failing index
    however the index range is split across workers.

    Args:
        spec: Ring the variables range over
        lhs: Left-hand term
        rhs: Right-hand term with the same free variables
        mode: 'exhaustive' or 'sampled'
        budget: Case budget when exhaustive, sample count when sampled
        seed: Sampling seed
        workers: Processes for the exhaustive scan

    Returns:
        Verdict with the cases checked and the first counterexample, if any

    Raises:
        TermMismatch: If the two sides have different free variables
        BudgetExceeded: If the exhaustive scan is larger than the budget
    """
    names = sorted(free_vars(lhs))
    if set(names) != set(free_vars(rhs)):
        raise TermMismatch(f"free variables differ: {sorted(free_vars(lhs))} vs {sorted(free_vars(rhs))}")

    if mode == 'sampled':
        return _check_sampled(spec, lhs, rhs, names, budget or current_config().DEFAULT_TRIALS, seed)
    if mode != 'exhaustive':
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode}")

    total = spec.cardinality() ** len(names)
    ring_core.check_budget(total, budget)

    if workers > 1 and total > 1:
        chunks = ring_core.split_range(total, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = list(pool.map(_scan_chunk, [(spec, lhs, rhs, names, lo, hi) for lo, hi in chunks]))
        failures = [i for i in found if i is not None]
        failing = min(failures) if failures else None
    else:
        failing = _first_failure(spec, lhs, rhs, names, 0, total)

    if failing is None:
        log_scan_summary('identity', total, 0, 'exhaustive', ring=spec)
        return Verdict(True, total, 'exhaustive')

    elements = list(ring_core.enumerate_elements(spec, budget=float('inf')))
    env = _assignment(elements, names, failing)
    log_scan_summary('identity', failing + 1, 1, 'exhaustive', ring=spec)
    return _failed(spec, lhs, rhs, env, failing + 1, 'exhaustive')


def _check_sampled(spec, lhs, rhs, names, samples, seed):
    rng = np.random.default_rng(seed)
    for i in range(samples):
        env = {name: ring_core.sample_element(spec, rng) for name in names}
        memo = {}
        if evaluate(lhs, env, spec, memo) != evaluate(rhs, env, spec, memo):
            log_scan_summary('identity', i + 1, 1, 'sampled', ring=spec)
            return _failed(spec, lhs, rhs, env, i + 1, 'sampled')
    log_scan_summary('identity', samples, 0, 'sampled', ring=spec)
    return Verdict(True, samples, 'sampled')


def _failed(spec, lhs, rhs, env, cases, mode):
    memo = {}
    return Verdict(
        False, cases, mode,
        counterexample=dict(env),
        details={'lhs': evaluate(lhs, env, spec, memo), 'rhs': evaluate(rhs, env, spec, memo)}
    )


def scheme_terms(scheme: str, d: int) -> tuple:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme '{scheme}', expected one of {sorted(SCHEMES)}")
    if scheme == 'thm23-7' and d < 2:
        raise ValueError(f"thm23-7 needs d >= 2, got {d}")
    if d < 0:
        raise ValueError(f"d must be non-negative, got {d}")
    return SCHEMES[scheme](d)


def check_scheme(spec: RingSpec, scheme: str, d: int, mode: str = 'exhaustive',
                 budget: Optional[int] = None, seed: int = 0, workers: int = 1) -> Verdict:
    """Named identity scheme at depth d, checked like check_identity."""
    lhs, rhs = scheme_terms(scheme, d)
    return check_identity(spec, lhs, rhs, mode, budget, seed, workers)
