"""
Prefix expressions over registry forms, e.g.

    (sub (mul 2 (qpow E2 2)) E2)
    (add 1 (mul 24 (sigma 1 (0 1))))
    (div (pow (add (mul 64 (eta (2 24))) (eta (1 24))) 1/4) (eta (1 2) (2 2)))

Atoms are numbers (`3`, `-3/2`), the field generator `w` (w^2 = d) and
registry names. Lists whose head is a number are literal vectors.
"""
import re
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Callable, Iterator, List, Set, Tuple, Union

from loguru import logger

from qforms import settings
from qforms.core.arithmetic import character
from qforms.core.qseries import (
    PrecisionError,
    PuiseuxSeries,
    QuadExtScalar,
    compose,
    derive,
    scalar_power,
    substitute_power,
)
from qforms.hypergeometric.series import three_f_two_series, two_f_one_series

from .kernels import (
    divisor_series,
    eisenstein_character_series,
    eta_product,
    lambert_series,
)

Node = Union[str, Tuple["Node", ...]]
Value = Union[Fraction, QuadExtScalar, PuiseuxSeries, Tuple]
Resolver = Callable[[str, Fraction], PuiseuxSeries]

_NUMBER = re.compile(r"^-?\d+(/\d+)?$")
_TOKEN = re.compile(r"\(|\)|[^\s()]+")


class ExpressionSyntaxError(Exception):
    pass


def is_number(atom: str) -> bool:
    return bool(_NUMBER.match(atom))


@lru_cache(maxsize=None)
def parse(text: str) -> Node:
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise ExpressionSyntaxError("empty expression")
    node, pos = _read(tokens, 0, text)
    if pos != len(tokens):
        raise ExpressionSyntaxError(f"trailing input in {text!r}")
    return node


def _read(tokens: List[str], pos: int, text: str) -> Tuple[Node, int]:
    if pos >= len(tokens):
        raise ExpressionSyntaxError(f"unexpected end of {text!r}")
    token = tokens[pos]
    if token == ")":
        raise ExpressionSyntaxError(f"unbalanced ')' in {text!r}")
    if token != "(":
        return token, pos + 1
    items = []
    pos += 1
    while pos < len(tokens) and tokens[pos] != ")":
        item, pos = _read(tokens, pos, text)
        items.append(item)
    if pos >= len(tokens):
        raise ExpressionSyntaxError(f"missing ')' in {text!r}")
    if not items:
        raise ExpressionSyntaxError(f"empty list in {text!r}")
    return tuple(items), pos + 1


def names(node: Node) -> Iterator[str]:
    """Registry names an expression refers to."""
    if isinstance(node, str):
        if not is_number(node) and node != "w":
            yield node
        return
    head, *args = node
    if head == "E":
        return
    if isinstance(head, str) and head in OPERATORS:
        for arg in args:
            yield from names(arg)
    elif isinstance(head, str) and not is_number(head):
        raise ExpressionSyntaxError(f"unknown operator {head!r}")


def free_names(text: str) -> Set[str]:
    return set(names(parse(text)))


class Evaluator:
    def __init__(self, resolve: Resolver, d: int = 0):
        self.resolve = resolve
        self.d = d

    def __call__(self, text: str, precision: Union[int, Fraction]) -> PuiseuxSeries:
        """Evaluate to precision P, widening leaf precision until the result holds."""
        tree = parse(text)
        target = Fraction(precision)
        slack = Fraction(settings.QFORMS_PRECISION_SLACK)
        for _ in range(6):
            result = self.series(self.eval(tree, target + slack))
            if result.d != self.d:
                result = result.over(self.d)
            if result.precision is None or result.precision >= target:
                return result.truncate(target)
            slack = 2 * slack + 4
            logger.debug(
                f"{text}: precision {result.precision} < {target}, slack now {slack}"
            )
        raise PrecisionError(f"could not reach precision {target} for {text}")

    def series(self, value: Value) -> PuiseuxSeries:
        if isinstance(value, PuiseuxSeries):
            series = value
        elif isinstance(value, (Fraction, QuadExtScalar)):
            series = PuiseuxSeries.constant(value, None, self._field(value))
        else:
            raise ExpressionSyntaxError(f"{value!r} is not a series")
        return series

    def _field(self, value) -> int:
        if isinstance(value, QuadExtScalar) and value.b:
            return value.d
        return self.d

    def number(self, node: Node) -> Fraction:
        if not isinstance(node, str) or not is_number(node):
            raise ExpressionSyntaxError(f"expected a number, got {node!r}")
        return Fraction(node)

    def vector(self, node: Node) -> Tuple[Fraction, ...]:
        if isinstance(node, str):
            return (self.number(node),)
        return tuple(self.number(x) for x in node)

    def eval(self, node: Node, precision: Fraction) -> Value:
        if isinstance(node, str):
            if is_number(node):
                return Fraction(node)
            if node == "w":
                if not self.d:
                    raise ExpressionSyntaxError("w needs a nonzero discriminant")
                return QuadExtScalar(0, 1, self.d)
            return self.resolve(node, precision)
        head, *args = node
        if not isinstance(head, str) or is_number(head):
            return self.vector(node)
        try:
            op = OPERATORS[head]
        except KeyError:
            raise ExpressionSyntaxError(f"unknown operator {head!r}")
        return op(self, args, precision)

    def operand(self, node: Node, precision: Fraction) -> Value:
        value = self.eval(node, precision)
        if isinstance(value, tuple):
            raise ExpressionSyntaxError(f"vector {value} used as a value")
        return value

    def truncated(self, value: Value, precision: Fraction) -> Value:
        # exact multi-term series cannot be inverted or rooted as they stand
        if isinstance(value, PuiseuxSeries) and value.is_exact() and len(value) > 1:
            return value.truncate(precision)
        return value


def _add(ev: Evaluator, args, precision):
    values = [ev.operand(a, precision) for a in args]
    total = values[0]
    for v in values[1:]:
        total = total + v
    return total


def _sub(ev: Evaluator, args, precision):
    values = [ev.operand(a, precision) for a in args]
    if len(values) == 1:
        return -values[0]
    total = values[0]
    for v in values[1:]:
        total = total - v
    return total


def _mul(ev: Evaluator, args, precision):
    values = [ev.operand(a, precision) for a in args]
    total = values[0]
    for v in values[1:]:
        total = total * v
    return total


def _div(ev: Evaluator, args, precision):
    a, b = (ev.operand(x, precision) for x in _arity(args, 2, "div"))
    return a / ev.truncated(b, precision)


def _neg(ev: Evaluator, args, precision):
    (a,) = _arity(args, 1, "neg")
    return -ev.operand(a, precision)


def _pow(ev: Evaluator, args, precision):
    base, exponent = _arity(args, 2, "pow")
    e = ev.number(exponent)
    value = ev.truncated(ev.operand(base, precision), precision)
    if isinstance(value, PuiseuxSeries):
        return value**e
    return scalar_power(value, e, ev._field(value))


def _qpow(ev: Evaluator, args, precision):
    base, m = _arity(args, 2, "qpow")
    m = ev.number(m)
    return substitute_power(ev.series(ev.operand(base, precision / m)), m)


def _derive(ev: Evaluator, args, precision):
    (a,) = _arity(args, 1, "d")
    value = ev.operand(a, precision)
    if not isinstance(value, PuiseuxSeries):
        return Fraction(0)
    return derive(value)


def _eta(ev: Evaluator, args, precision):
    factors = []
    for pair in args:
        delta, r = ev.vector(pair)
        factors.append((int(delta), int(r)))
    return eta_product(factors, precision)


def _sigma(conjugate: bool):
    def op(ev: Evaluator, args, precision):
        if len(args) not in (2, 3):
            raise ExpressionSyntaxError("sigma takes k, a weight vector and a step")
        k = int(ev.number(args[0]))
        weights = ev.vector(args[1])
        step = ev.number(args[2]) if len(args) == 3 else Fraction(1)
        return divisor_series(k, weights, precision, 0, 1, conjugate, step)

    return op


def _lambert(ev: Evaluator, args, precision):
    if not 1 <= len(args) <= 3:
        raise ExpressionSyntaxError("lambert takes k, sign and power")
    k, sign, power = ([int(ev.number(a)) for a in args] + [1, 1])[:3]
    return lambert_series(k, precision, sign, power)


def _eisenstein(ev: Evaluator, args, precision):
    if len(args) != 3 or not all(isinstance(a, str) for a in args):
        raise ExpressionSyntaxError("E takes k, psi and phi")
    k = int(ev.number(args[0]))
    psi, phi = character(args[1]), character(args[2])
    return eisenstein_character_series(k, psi, phi, precision)


def _compose(ev: Evaluator, outer, inner_node, precision):
    x = ev.series(ev.operand(inner_node, precision))
    v = x.valuation()
    if v is None:
        v = x.precision
    if v is None or v <= 0:
        # compose raises the domain error with the order in the message
        return compose(outer(1), x)
    f = outer(ceil(precision / v) + 1)
    return compose(f, x)


def _hyp2f1(ev: Evaluator, args, precision):
    a, b, c, x = _arity(args, 4, "hyp2f1")
    lam, mu, nu = (ev.number(p) for p in (a, b, c))
    return _compose(ev, lambda n: two_f_one_series(lam, mu, nu, n), x, precision)


def _hyp3f2(ev: Evaluator, args, precision):
    *params, x = _arity(args, 6, "hyp3f2")
    a1, a2, a3, b1, b2 = (ev.number(p) for p in params)
    return _compose(
        ev, lambda n: three_f_two_series((a1, a2, a3), (b1, b2), n), x, precision
    )


def _arity(args, n: int, name: str):
    if len(args) != n:
        raise ExpressionSyntaxError(f"{name} takes {n} arguments, got {len(args)}")
    return args


OPERATORS = {
    "add": _add,
    "sub": _sub,
    "mul": _mul,
    "div": _div,
    "neg": _neg,
    "pow": _pow,
    "qpow": _qpow,
    "d": _derive,
    "eta": _eta,
    "sigma": _sigma(False),
    "sigmac": _sigma(True),
    "lambert": _lambert,
    "E": _eisenstein,
    "hyp2f1": _hyp2f1,
    "hyp3f2": _hyp3f2,
}
