"""Exact and order-of-magnitude evaluation of the explicit bound functions.

Values that fit the digit threshold are returned as Python integers.  Larger
ones are kept as an expression DAG over ``+``, ``*`` and ``^`` with integer
leaves, together with an estimate of ``log10`` computed with mpmath, whose
floats carry arbitrary-size exponents.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .surface import SurfaceSignature

DEFAULT_DIGIT_LIMIT = 10**6
# beyond this log10(log10(value)) we stop estimating and report infinity
LOGLOG_CAP = 10**5

_mp = mpmath.MPContext()
_mp.dps = 40


class Expr:
    """Hash-consed node of an arithmetic expression DAG."""

    __slots__ = ("op", "args", "__weakref__")
    _table: dict = {}

    def __new__(cls, op: str, *args):
        key = (op, tuple(a if op == "lit" else id(a) for a in args))
        hit = cls._table.get(key)
        if hit is not None:
            return hit
        node = super().__new__(cls)
        node.op = op
        node.args = args
        cls._table[key] = node
        return node

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, other):
        return power(self, other)

    def __repr__(self):
        return f"Expr({render(self, 80)})"


def lit(n: int) -> Expr:
    if n < 0:
        raise ValueError("bound expressions only hold non-negative integers")
    return Expr("lit", int(n))


def _wrap(x):
    return x if isinstance(x, Expr) else lit(x)


def add(a, b) -> Expr:
    a, b = _wrap(a), _wrap(b)
    if a.op == "lit" and a.args[0] == 0:
        return b
    if b.op == "lit" and b.args[0] == 0:
        return a
    if a.op == "lit" and b.op == "lit":
        return lit(a.args[0] + b.args[0])
    return Expr("+", a, b)


def mul(a, b) -> Expr:
    a, b = _wrap(a), _wrap(b)
    for x, y in ((a, b), (b, a)):
        if x.op == "lit" and x.args[0] == 0:
            return x
        if x.op == "lit" and x.args[0] == 1:
            return y
    if a.op == "lit" and b.op == "lit":
        return lit(a.args[0] * b.args[0])
    return Expr("*", a, b)


def power(a, b) -> Expr:
    a, b = _wrap(a), _wrap(b)
    if b.op == "lit":
        if b.args[0] == 0:
            return lit(1)
        if b.args[0] == 1:
            return a
    if a.op == "lit" and a.args[0] in (0, 1):
        return a
    if a.op == "lit" and b.op == "lit" and b.args[0] * max(1, a.args[0].bit_length()) < 256:
        return lit(a.args[0] ** b.args[0])
    return Expr("^", a, b)


def _log10_int(n: int):
    if n == 0:
        return -_mp.inf
    return _mp.log10(_mp.mpf(n))


def _log10_sum(x, y):
    if x == -_mp.inf:
        return y
    if y == -_mp.inf:
        return x
    hi, lo = (x, y) if x >= y else (y, x)
    if hi == _mp.inf:
        return hi
    gap = hi - lo
    if gap > 60:
        return hi
    return hi + _mp.log10(1 + _mp.power(10, -gap))


def evaluate(node: Expr, digit_limit: int = DEFAULT_DIGIT_LIMIT, memo=None):
    """Return ``(exact or None, log10 estimate)`` for ``node``.

    ``exact`` is produced only when the value has at most ``digit_limit``
    decimal digits.
    """
    if memo is None:
        memo = {}
    key = id(node)
    if key in memo:
        return memo[key]
    op = node.op
    if op == "lit":
        n = node.args[0]
        res = (n, _log10_int(n))
    else:
        (xa, la), (xb, lb) = (evaluate(a, digit_limit, memo) for a in node.args)
        if op == "+":
            est = _log10_sum(la, lb)
            exact = xa + xb if xa is not None and xb is not None and est < digit_limit else None
        elif op == "*":
            est = la + lb
            exact = xa * xb if xa is not None and xb is not None and est < digit_limit else None
        else:
            if xb is not None:
                exp = _mp.mpf(xb)
            elif lb > LOGLOG_CAP:
                exp = _mp.inf
            else:
                exp = _mp.power(10, lb)
            est = exp * la if exp != _mp.inf else _mp.inf
            exact = (
                xa**xb if xa is not None and xb is not None and est < digit_limit else None
            )
        if exact is not None:
            est = _log10_int(exact)
        res = (exact, est)
    memo[key] = res
    return res


def render(node: Expr, max_len: int = 2000) -> str:
    """Readable form; shared subterms are bound to names ``t1, t2, ...``."""
    uses: dict = {}

    def count(n):
        uses[id(n)] = uses.get(id(n), 0) + 1
        if uses[id(n)] == 1 and n.op != "lit":
            for a in n.args:
                count(a)

    count(node)
    names: dict = {}
    lines: list = []

    def show(n, top=False):
        if n.op == "lit":
            return str(n.args[0])
        if id(n) in names:
            return names[id(n)]
        a, b = (show(x) for x in n.args)
        sym = {"+": " + ", "*": "·", "^": "^"}[n.op]
        wrap = (lambda s: s) if n.op == "+" else (lambda s: s if s.isalnum() else f"({s})")
        text = f"{a}{sym}{b}" if n.op == "+" else f"{wrap(a)}{sym}{wrap(b)}"
        if uses[id(n)] > 1 and not top:
            name = f"t{len(names) + 1}"
            names[id(n)] = name
            lines.append(f"{name} = {text}")
            return name
        return text

    body = show(node, top=True)
    text = "; ".join(lines + [body])
    if len(text) > max_len:
        text = text[: max_len - 3] + "..."
    return text


@dataclass(frozen=True)
class BoundDescriptor:
    """A bound value: exact integer when small enough, else an expression."""

    expr: Expr = field(repr=False)
    exact: int | None
    log10_estimate: object  # mpmath mpf, may be +inf for iterated towers
    digit_limit: int = DEFAULT_DIGIT_LIMIT

    @property
    def form(self) -> str:
        return "exact" if self.exact is not None else "tower"

    @property
    def digits_bound(self):
        """Upper bound on the decimal digit count, or None when unknown."""
        if self.exact is not None:
            return len(str(self.exact)) if self.exact.bit_length() < 200_000 else int(self.log10_estimate) + 2
        if self.log10_estimate == _mp.inf:
            return None
        return int(_mp.floor(self.log10_estimate)) + 2

    def log10_text(self) -> str:
        est = self.log10_estimate
        if est == _mp.inf:
            return "inf (iterated tower)"
        if est == -_mp.inf:
            return "-inf"
        return _mp.nstr(est, 12)

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return f"TOWER({render(self.expr, 400)}) ~ 10^{self.log10_text()}"


def describe(expr: Expr, digit_limit: int = DEFAULT_DIGIT_LIMIT) -> BoundDescriptor:
    exact, est = evaluate(expr, digit_limit)
    return BoundDescriptor(expr, exact, est, digit_limit)


def _check(*vals):
    for v in vals:
        if int(v) != v or v < 0:
            raise ValueError(f"expected a non-negative integer, got {v!r}")


def m_bound(k: int, n: int) -> int:
    _check(k, n)
    return (4 * n + 1) * k * 3**n + 8 * k


def _m_expr(k: Expr, n: int) -> Expr:
    return add(mul(mul(lit(4 * n + 1), k), lit(3) ** lit(n)), mul(lit(8), k))


def theta_expr(k, n: int) -> Expr:
    """Expression for θ(k, n); ``k`` may itself be an expression."""
    _check(n)
    k = _wrap(k)
    # unroll the tail recursion, collecting the additive terms
    tail = lit(0)
    while n > 0:
        m = _m_expr(k, n)
        grow = mul(mul(lit(4), m), power(lit(2 * n + 1), mul(lit(4 * n), m)))
        tail = add(tail, add(mul(lit(2), k), mul(mul(lit(n), k), lit(3) ** lit(n))))
        k = add(k, grow)
        n -= 1
    return add(k, tail)


def theta(k: int, n: int, digit_limit: int = DEFAULT_DIGIT_LIMIT) -> BoundDescriptor:
    _check(k, n)
    return describe(theta_expr(k, n), digit_limit)


def t_bound(sig: SurfaceSignature, k: int, digit_limit: int = DEFAULT_DIGIT_LIMIT) -> BoundDescriptor:
    """θ(k, 4k + 3g) for a closed surface of Euler genus g."""
    if sig.c != 0:
        raise ValueError("t_bound is defined for surfaces without boundary (c = 0)")
    _check(k)
    return theta(k, 4 * k + 3 * sig.genus(), digit_limit)


def untangle_bound(k: int, n: int) -> int:
    _check(k, n)
    return k * 3**n


def omega_bound(k: int, n: int, c_param=None) -> int:
    _check(k, n)
    if c_param is None:
        raise ValueError("omega_bound needs the constant C (c_param)")
    if c_param <= 0:
        raise ValueError("c_param must be positive")
    return 256 * c_param * (k**4 + n**4)


__all__ = [
    "BoundDescriptor",
    "DEFAULT_DIGIT_LIMIT",
    "Expr",
    "describe",
    "evaluate",
    "lit",
    "m_bound",
    "omega_bound",
    "render",
    "t_bound",
    "theta",
    "theta_expr",
    "untangle_bound",
]
