"""Safe evaluation of small arithmetic expressions over an algebra.

Expressions such as ``"(M1 + 0.5*D2)^2 - 2*M2"`` are parsed with :mod:`ast`
and evaluated with the Python operators of the objects bound to the allowed
names. Nothing else (calls, attributes, subscripts) is accepted.
"""
from __future__ import annotations

import ast
import numbers
import operator

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


class ExpressionError(ValueError):
    pass


def evaluate(text: str, names: dict, max_power: int = 16):
    if not isinstance(text, str) or not text.strip():
        raise ExpressionError("empty expression")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None

    def visit(node):
        if isinstance(node, ast.Expression):
            return visit(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, numbers.Number) \
                and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ExpressionError(
                    f"unknown name {node.id!r}; allowed: {', '.join(sorted(names))}"
                )
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](visit(node.operand))
        if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
            left, right = visit(node.left), visit(node.right)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(right, numbers.Integral) and 0 <= right <= max_power):
                    raise ExpressionError("exponents must be small nonnegative integers")
            if isinstance(node.op, ast.Div) and not isinstance(right, numbers.Number):
                raise ExpressionError("division is only allowed by numbers")
            return _BINARY[type(node.op)](left, right)
        raise ExpressionError(f"unsupported syntax in {text!r}")

    return visit(tree)
