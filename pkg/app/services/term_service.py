# --------------------------
# File: app/services/term_service.py
# Description: Term parsing/printing, deterministic term enumeration and the ψ formula
# --------------------------

import re
from functools import lru_cache
from itertools import product
from typing import Collection, Iterator, List, Optional, Sequence, Tuple

from app.core.errors import ArityError, ParseError, UnknownSymbolError
from app.models.logic_models import (
    GROUP_SIGNATURE, AtomicFormula, Formula, Presentation, Signature, Term, TermKind,
)

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
VARIABLE = re.compile(r"x([1-9][0-9]*)$")


# --------------------------
# Tokenizer
# --------------------------
def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "(),":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        match = IDENT.match(text, pos)
        if not match:
            raise ParseError(f"Unexpected character {ch!r}", pos)
        tokens.append(("ident", match.group(0), pos))
        pos = match.end()
    return tokens


class _TermParser:
    def __init__(
        self,
        text: str,
        sig: Optional[Signature],
        variable_count: Optional[int] = None,
        bound: Collection[int] = (),
    ):
        self.text = text
        self.sig = sig
        self.variable_count = variable_count
        self.bound = frozenset(bound)
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def expect(self, kind: str):
        token = self.peek()
        if token is None:
            raise ParseError(f"Expected {kind!r} but input ended", len(self.text))
        if token[0] != kind:
            raise ParseError(f"Expected {kind!r} but found {token[1]!r}", token[2])
        self.index += 1
        return token

    def parse(self) -> Term:
        term = self.term()
        extra = self.peek()
        if extra is not None:
            raise ParseError(f"Unexpected trailing {extra[1]!r}", extra[2])
        return term

    def term(self) -> Term:
        _, name, pos = self.expect("ident")
        nxt = self.peek()
        if nxt is not None and nxt[0] == "(":
            self.index += 1
            children = [self.term()]
            while self.peek() is not None and self.peek()[0] == ",":
                self.index += 1
                children.append(self.term())
            self.expect(")")
            if self.sig is not None:
                arity = self.sig.function_arity(name)
                if arity is None:
                    raise UnknownSymbolError(f"Unknown function symbol '{name}'", pos)
                if arity != len(children):
                    raise ArityError(
                        f"Function '{name}' takes {arity} argument(s), got {len(children)} (at position {pos})"
                    )
            return Term.apply(name, *children)

        if self.sig is not None:
            if self.sig.has_constant(name):
                return Term.const(name)
            if self.sig.function_arity(name) is not None:
                raise ArityError(f"Function '{name}' used without arguments (at position {pos})")
        var = VARIABLE.match(name)
        if var:
            index = int(var.group(1))
            if self.variable_count is not None and index > self.variable_count and index not in self.bound:
                raise ParseError(f"Variable x{index} is neither in x1..x{self.variable_count} nor bound", pos)
            return Term.var(index)
        if self.sig is not None:
            raise UnknownSymbolError(f"Unknown symbol '{name}'", pos)
        return Term.const(name)


def parse_term(
    text: str,
    sig: Optional[Signature] = None,
    variable_count: Optional[int] = None,
    bound: Collection[int] = (),
) -> Term:
    """
    Parse `f(t1,...,tk)` syntax. With a signature, symbols and arities are checked;
    without one, identifiers followed by parentheses are functions, `x<i>` are
    variables and every other identifier is a constant. With `variable_count`, only
    x1..x<n> and the indices in `bound` are accepted.
    """
    return _TermParser(text, sig, variable_count, bound).parse()


def check_term(term: Term, sig: Signature, variable_count: Optional[int] = None) -> None:
    """Raise if `term` is not a well-formed term over `sig` (and x1..x<n>)."""
    if term.kind == TermKind.variable:
        if variable_count is not None and term.index > variable_count:
            raise ArityError(f"Variable x{term.index} outside x1..x{variable_count}")
        return
    if term.kind == TermKind.constant:
        if not sig.has_constant(term.name):
            raise UnknownSymbolError(f"Unknown constant '{term.name}'")
        return
    arity = sig.function_arity(term.name)
    if arity is None:
        raise UnknownSymbolError(f"Unknown function symbol '{term.name}'")
    if arity != len(term.children):
        raise ArityError(f"Function '{term.name}' takes {arity} argument(s), got {len(term.children)}")
    for child in term.children:
        check_term(child, sig, variable_count)


def format_term(term: Term) -> str:
    """Canonical text; `parse_term(format_term(t)) == t`."""
    return repr(term)


# --------------------------
# Group-word sugar
# --------------------------
def word_term(letters: Sequence[Tuple[int, int]]) -> Term:
    """
    Left-folded product of variable letters: [(1, 1), (2, -1)] is x1 x2^-1.
    The empty word is the constant e.
    """
    factors = [Term.var(i) if sign > 0 else Term.apply("inv", Term.var(i)) for i, sign in letters]
    if not factors:
        return Term.const("e")
    result = factors[0]
    for factor in factors[1:]:
        result = Term.apply("mul", result, factor)
    return result


def parse_word_term(text: str) -> Term:
    """Parse `x1 x2 x1^-1` into a group term."""
    letters = []
    for chunk in text.split():
        if chunk == "e":
            continue
        base, _, power = chunk.partition("^")
        var = VARIABLE.match(base)
        if not var:
            raise UnknownSymbolError(f"Expected a variable letter, found '{chunk}'")
        exponent = int(power) if power else 1
        sign = 1 if exponent > 0 else -1
        letters.extend([(int(var.group(1)), sign)] * abs(exponent))
    return word_term(letters)


def display_term(term: Term, sig: Signature = GROUP_SIGNATURE) -> str:
    """Human-facing form: group terms as words (`x1 x2 x1^-1`), others canonical."""
    if sig != GROUP_SIGNATURE:
        return format_term(term)

    def letters(t: Term) -> List[str]:
        if t.kind == TermKind.variable:
            return [f"x{t.index}"]
        if t.kind == TermKind.constant:
            return []
        if t.name == "mul":
            return letters(t.children[0]) + letters(t.children[1])
        inner = letters(t.children[0])
        return [w[:-3] if w.endswith("^-1") else f"{w}^-1" for w in reversed(inner)]

    word = letters(term)
    return " ".join(word) if word else "e"


# --------------------------
# Deterministic term enumeration
# --------------------------
@lru_cache(maxsize=256)
def terms_of_size(sig: Signature, variable_count: int, size: int) -> Tuple[Term, ...]:
    """
    All terms with exactly `size` nodes, in the fixed order: constants (signature
    order), variables x1..xn, then applications by function (signature order) and
    by child-size composition in increasing lexicographic order.
    """
    if size < 1:
        return ()
    found: List[Term] = []
    if size == 1:
        found.extend(Term.const(c) for c in sig.constants)
        found.extend(Term.var(i) for i in range(1, variable_count + 1))
    for name, arity in sig.functions:
        for sizes in _compositions(size - 1, arity):
            pools = [terms_of_size(sig, variable_count, s) for s in sizes]
            for children in product(*pools):
                found.append(Term.apply(name, *children))
    return tuple(found)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_terms(sig: Signature, variable_count: int, max_size: Optional[int] = None) -> Iterator[Term]:
    """Every term over `sig` and x1..xn by increasing size; unbounded when max_size is None."""
    size = 1
    while max_size is None or size <= max_size:
        yield from terms_of_size(sig, variable_count, size)
        size += 1


# --------------------------
# ψ
# --------------------------
def distinctness(variable_count: int, offset: int = 0) -> List[Formula]:
    return [
        Formula.negation(Formula.atomic(AtomicFormula.equality(Term.var(i + offset), Term.var(j + offset))))
        for i in range(1, variable_count + 1)
        for j in range(i + 1, variable_count + 1)
    ]


def relator_formulas(p: Presentation, offset: int = 0) -> List[Formula]:
    return [Formula.atomic(r.shift(offset)) for r in p.relators]


def build_psi(p: Presentation) -> Formula:
    """
    ψ(x̄) = ⋀ relators(x̄) ∧ ⋀_{i<j} xᵢ ≠ xⱼ. Quantifier-free, free variables x1..xn;
    the empty conjunction is the canonical true node.
    """
    for relator in p.relators:
        for term in relator.terms:
            check_term(term, p.signature, p.generator_count)
    return Formula.conjunction(*relator_formulas(p), *distinctness(p.generator_count))
