"""Small expression language over the engine.

Grammar (left-associative, ^ binds tightest):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-'? atom ('^' nat)?
    atom   := ident | rational | '(' expr ')' | func '(' expr (',' expr)* ')'

A leading '-' on a number folds into the literal, so canonical engine output
such as ``-1/12*c2*h^2`` parses back; otherwise it becomes multiplication by
-1 (the AST has no dedicated negation node).

Identifiers are resolved on the space given to ``evaluate``: every generator
of that space by name, with two conveniences on D -- bare X-generators mean
their p^*-pullbacks (they share names), and a ``p_`` prefix is accepted as an
explicit pullback spelling.  ``D`` on the blow-up denotes the exceptional
divisor class.  Bundle-valued identifiers: ``O`` (trivial line bundle),
``TX`` (the tangent model, on X or D), ``l`` (the tautological line on D).
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import bundles
from .errors import DslEvalError, DslParseError
from .ring import GradedClass
from .spaces import SCALAR_NAMES, FormalScalar, YClass, geometry

FUNCTIONS = ("pull_p", "push_p", "pull_f1", "pull_f2", "pull_delta",
             "pull_iota", "push_iota", "push_beta", "pull_beta",
             "integrate", "todd", "ch", "sym", "wedge", "dual", "twist",
             "grade")

# space-changing operators: name -> (source space, target space)
_MAPS = {
    "pull_p": ("X", "D"),
    "push_p": ("D", "X"),
    "pull_f1": ("X", "XX"),
    "pull_f2": ("X", "XX"),
    "pull_delta": ("XX", "X"),
    "pull_beta": ("XX", "Y"),
    "pull_iota": ("Y", "D"),
    "push_iota": ("D", "Y"),
    "push_beta": ("Y", "XX"),
}


# ---------------------------------------------------------------------------
# tokens and AST

@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


@dataclass
class Node:
    span: tuple = field(compare=False, default=(0, 0))


@dataclass
class Ident(Node):
    name: str = ""


@dataclass
class Rational(Node):
    value: Fraction = Fraction(0)


@dataclass
class Add(Node):
    left: Node = None
    right: Node = None


@dataclass
class Sub(Node):
    left: Node = None
    right: Node = None


@dataclass
class Mul(Node):
    left: Node = None
    right: Node = None


@dataclass
class Pow(Node):
    base: Node = None
    exponent: int = 0


@dataclass
class Call(Node):
    func: str = ""
    args: tuple = ()


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            if i + 1 < len(text) and text[i] == "/" and text[i + 1].isdigit():
                i += 1
                while i < len(text) and text[i].isdigit():
                    i += 1
            tok = text[start:i]
            tokens.append(Token("number", tok, line, col))
            col += len(tok)
            continue
        if c.isalpha() or c == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tok = text[start:i]
            tokens.append(Token("ident", tok, line, col))
            col += len(tok)
            continue
        if c in "+-*^(),":
            tokens.append(Token(c, c, line, col))
            col += 1
            i += 1
            continue
        raise DslParseError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok.kind != kind:
            raise DslParseError(f"found {tok.text or 'end of input'!r}",
                                tok.line, tok.col, expected=(kind,))
        return self.advance()

    def parse(self):
        expr = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise DslParseError(f"trailing input {tok.text!r}",
                                tok.line, tok.col, expected=("eof",))
        return expr

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            right = self.term()
            cls = Add if op.kind == "+" else Sub
            node = cls(span=(op.line, op.col), left=node, right=right)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "*":
            op = self.advance()
            right = self.factor()
            node = Mul(span=(op.line, op.col), left=node, right=right)
        return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            inner = self.factor()
            if isinstance(inner, Rational):
                return Rational(span=(tok.line, tok.col), value=-inner.value)
            minus_one = Rational(span=(tok.line, tok.col), value=Fraction(-1))
            return Mul(span=(tok.line, tok.col), left=minus_one, right=inner)
        node = self.atom()
        if self.peek().kind == "^":
            caret = self.advance()
            num = self.expect("number")
            if "/" in num.text:
                raise DslParseError("exponent must be a natural number",
                                    num.line, num.col, expected=("nat",))
            node = Pow(span=(caret.line, caret.col), base=node,
                       exponent=int(num.text))
        return node

    def atom(self):
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            if "/" in tok.text:
                p, q = tok.text.split("/")
                value = Fraction(int(p), int(q))
            else:
                value = Fraction(int(tok.text))
            return Rational(span=(tok.line, tok.col), value=value)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "(":
                if tok.text not in FUNCTIONS:
                    raise DslParseError(f"unknown function {tok.text!r}",
                                        tok.line, tok.col, expected=FUNCTIONS)
                self.advance()
                args = [self.expr()]
                while self.peek().kind == ",":
                    self.advance()
                    args.append(self.expr())
                self.expect(")")
                return Call(span=(tok.line, tok.col), func=tok.text,
                            args=tuple(args))
            return Ident(span=(tok.line, tok.col), name=tok.text)
        raise DslParseError(f"found {tok.text or 'end of input'!r}",
                            tok.line, tok.col,
                            expected=("ident", "number", "(", "-"))


def parse(text):
    """Parse an expression; raises DslParseError with position on bad input."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing (canonical; print . parse is the identity on its own output)

def _print(node, parent_level):
    if isinstance(node, Ident):
        return node.name
    if isinstance(node, Rational):
        return str(node.value)
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        txt = _print(node.left, 1) + op + _print(node.right, 2)
        level = 1
    elif isinstance(node, Mul):
        txt = _print(node.left, 2) + "*" + _print(node.right, 3)
        level = 2
    elif isinstance(node, Pow):
        txt = _print(node.base, 4) + "^" + str(node.exponent)
        level = 3
    elif isinstance(node, Call):
        txt = node.func + "(" + ", ".join(_print(a, 0) for a in node.args) + ")"
        level = 4
    else:
        raise TypeError(f"not an AST node: {node!r}")
    if level < parent_level:
        return "(" + txt + ")"
    return txt


def print_expr(node):
    return _print(node, 0)


# ---------------------------------------------------------------------------
# evaluation

class _Value:
    """Evaluated value with its space tag ('X','XX','D','Y','scalar')."""

    __slots__ = ("space", "payload")

    def __init__(self, space, payload):
        self.space = space
        self.payload = payload


class _Evaluator:
    def __init__(self, space, n):
        if space not in ("X", "XX", "D", "Y"):
            raise DslEvalError(f"unknown space {space!r}")
        self.geom = geometry(n)

    def ctx_of(self, space):
        return {"X": self.geom.X, "XX": self.geom.XX, "D": self.geom.D}[space]

    # -- identifier resolution on a given space
    def resolve(self, name, space, span):
        g = self.geom
        if space == "Y":
            if name == "D":
                return _Value("Y", g.d_class())
            if name in SCALAR_NAMES:
                return _Value("Y", YClass(g, g.XX.gen(name), g.D.zero()))
            raise DslEvalError(f"unknown identifier {name!r} on Y", span)
        ctx = self.ctx_of(space)
        if name == "O":
            return _Value(space, bundles.trivial(ctx))
        if name == "TX" and space in ("X", "D"):
            return _Value(space, g.tangent_bundle(ctx))
        if name == "l" and space == "D":
            return _Value(space, g.tautological_line())
        if space == "D" and name.startswith("p_") and name[2:] in g.X.table:
            return _Value("D", g.pull_p(g.X.gen(name[2:])))
        if name in ctx.table:
            return _Value(space, ctx.gen(name))
        raise DslEvalError(f"unknown identifier {name!r} on {space}", span)

    # -- coercion helpers
    def promote(self, value, space, span):
        if value.space == space:
            return value
        if value.space == "scalar":
            q = value.payload
            if space == "Y":
                return _Value("Y", self.geom.y_scalar(q))
            if space == "scalar-result":
                return _Value(space, FormalScalar.constant(q))
            return _Value(space, self.ctx_of(space).scalar(q))
        raise DslEvalError(
            f"value on {value.space} used where {space} was needed", span)

    def unify(self, a, b, span):
        if a.space == "scalar" and b.space == "scalar":
            return a, b
        if a.space == "scalar":
            return self.promote(a, b.space, span), b
        if b.space == "scalar":
            return a, self.promote(b, a.space, span)
        if a.space != b.space:
            raise DslEvalError(
                f"operands live on different spaces: {a.space} vs {b.space}",
                span)
        return a, b

    # -- operators
    def binop(self, kind, a, b, span):
        a, b = self.unify(a, b, span)
        x, y = a.payload, b.payload
        if isinstance(x, bundles.VirtualBundle) != isinstance(y, bundles.VirtualBundle):
            if isinstance(x, bundles.VirtualBundle) and isinstance(y, GradedClass):
                y = self._class_to_bundle(y, span)
            elif isinstance(y, bundles.VirtualBundle) and isinstance(x, GradedClass):
                x = self._class_to_bundle(x, span)
            else:
                raise DslEvalError("cannot mix bundles with this operand", span)
        if isinstance(x, bundles.VirtualBundle):
            if kind == "+":
                return _Value(a.space, x + y)
            if kind == "-":
                return _Value(a.space, x - y)
            if kind == "*":
                return _Value(a.space, bundles.tensor(x, y))
        try:
            if kind == "+":
                return _Value(a.space, x + y)
            if kind == "-":
                return _Value(a.space, x - y)
            if kind == "*":
                return _Value(a.space, x * y)
        except TypeError:
            raise DslEvalError(
                f"operands do not combine under {kind!r}", span) from None
        raise DslEvalError(f"unsupported operator {kind!r}", span)

    def _class_to_bundle(self, cls, span):
        # only a pure degree-0 class may stand in for a (virtual) trivial bundle
        if cls.is_zero() or cls.homogeneous_degree() == 0:
            return bundles.VirtualBundle(cls)
        raise DslEvalError("only degree-0 classes coerce to bundles", span)

    # -- main dispatch
    def eval(self, node, space):
        if isinstance(node, Rational):
            return _Value("scalar", node.value)
        if isinstance(node, Ident):
            return self.resolve(node.name, space, node.span)
        if isinstance(node, Add):
            return self.binop("+", self.eval(node.left, space),
                              self.eval(node.right, space), node.span)
        if isinstance(node, Sub):
            return self.binop("-", self.eval(node.left, space),
                              self.eval(node.right, space), node.span)
        if isinstance(node, Mul):
            return self.binop("*", self.eval(node.left, space),
                              self.eval(node.right, space), node.span)
        if isinstance(node, Pow):
            base = self.eval(node.base, space)
            k = node.exponent
            if base.space == "scalar":
                return _Value("scalar", base.payload ** k)
            x = base.payload
            if isinstance(x, bundles.VirtualBundle):
                out = bundles.trivial(x.ctx)
                for _ in range(k):
                    out = bundles.tensor(out, x)
                return _Value(base.space, out)
            return _Value(base.space, x ** k)
        if isinstance(node, Call):
            return self.call(node, space)
        raise DslEvalError(f"cannot evaluate {node!r}")

    def call(self, node, space):
        g = self.geom
        name = node.func
        if name in _MAPS:
            source, target = _MAPS[name]
            if len(node.args) != 1:
                raise DslEvalError(f"{name} takes one argument", node.span)
            arg = self.promote(self.eval(node.args[0], source), source,
                               node.span)
            payload = arg.payload
            if isinstance(payload, bundles.VirtualBundle):
                raise DslEvalError(f"{name} acts on classes, not bundles",
                                   node.span)
            op = {"pull_p": g.pull_p, "push_p": g.push_p,
                  "pull_f1": g.pull_f1, "pull_f2": g.pull_f2,
                  "pull_delta": g.pull_delta, "pull_beta": g.pull_beta,
                  "pull_iota": g.pull_iota, "push_iota": g.push_iota,
                  "push_beta": g.push_beta}[name]
            return _Value(target, op(payload))
        if name == "integrate":
            if len(node.args) != 1:
                raise DslEvalError("integrate takes one argument", node.span)
            arg = self.promote(self.eval(node.args[0], space), space,
                               node.span)
            if isinstance(arg.payload, bundles.VirtualBundle):
                raise DslEvalError("integrate acts on classes", node.span)
            return _Value("scalar-result", g.integrate(arg.payload))
        if name in ("todd", "ch", "dual"):
            arg = self._bundle_arg(node, space, 0, total=1)
            if name == "todd":
                return _Value(space, bundles.todd(arg))
            if name == "ch":
                return _Value(space, arg.ch)
            return _Value(space, bundles.dual(arg))
        if name in ("sym", "wedge"):
            arg = self._bundle_arg(node, space, 0, total=2)
            k = self._nat_arg(node, space, 1)
            op = bundles.sym_power if name == "sym" else bundles.ext_power
            return _Value(space, op(arg, k))
        if name == "twist":
            arg = self._bundle_arg(node, space, 0, total=2)
            c1 = self.promote(self.eval(node.args[1], space), space, node.span)
            if not isinstance(c1.payload, GradedClass):
                raise DslEvalError("twist needs a degree-1 class", node.span)
            return _Value(space, bundles.twist(arg, c1.payload))
        if name == "grade":
            if len(node.args) != 2:
                raise DslEvalError("grade takes (class, degree)", node.span)
            arg = self.eval(node.args[0], space)
            d = self._nat_arg(node, space, 1)
            payload = arg.payload
            if isinstance(payload, bundles.VirtualBundle):
                payload = payload.ch
            if not isinstance(payload, (GradedClass, YClass)):
                raise DslEvalError("grade acts on classes", node.span)
            return _Value(arg.space if arg.space != "scalar" else space,
                          payload.graded_component(d))
        raise DslEvalError(f"unknown function {name!r}", node.span)

    def _bundle_arg(self, node, space, index, total):
        if len(node.args) != total:
            raise DslEvalError(
                f"{node.func} takes {total} argument(s)", node.span)
        arg = self.eval(node.args[index], space)
        payload = arg.payload
        if isinstance(payload, bundles.VirtualBundle):
            return payload
        if isinstance(payload, Fraction):
            return bundles.trivial(self.ctx_of(space), payload)
        if isinstance(payload, GradedClass):
            return self._class_to_bundle(payload, node.span)
        raise DslEvalError(f"{node.func} needs a bundle", node.span)

    def _nat_arg(self, node, space, index):
        arg = self.eval(node.args[index], space)
        if arg.space != "scalar" or not isinstance(arg.payload, Fraction) \
                or arg.payload.denominator != 1 or arg.payload < 0:
            raise DslEvalError(
                f"argument {index + 1} of {node.func} must be a natural "
                "number", node.span)
        return int(arg.payload)


def evaluate(expr, space, n):
    """Evaluate an AST (or source string) on the given space; returns the
    engine value (GradedClass, YClass, VirtualBundle or FormalScalar)."""
    if isinstance(expr, str):
        expr = parse(expr)
    ev = _Evaluator(space, n)
    value = ev.eval(expr, space)
    if value.space == "scalar":
        value = ev.promote(value, space, None)
    return value.payload


def evaluate_to_string(expr, space, n):
    """Evaluate and serialize canonically (bundles print their character)."""
    out = evaluate(expr, space, n)
    if isinstance(out, bundles.VirtualBundle):
        return out.ch.canonical()
    return out.canonical()
