"""The stack-operation monoid.

Words over the alphabet ``0 1 * c`` modulo the relations ``c0 = c1 = c* = e``
(``e`` the empty word).  A letter in ``01*`` records a push, ``c`` records a
pop; multiplication is concatenation followed by reduction.  Because every
relation erases a ``c`` together with the push letter immediately after it,
the rewriting system is confluent and terminating, and the normal forms are
exactly the words with no ``c`` followed by a push letter: all pops trail at
the end, ``<pushes>c^k``.

A path that performs stack operation ``s1`` and then ``s2`` has weight
``theta_mul(encode_stack_op(s2), encode_stack_op(s1))``: later operations
multiply on the left, matching function composition.
"""

from __future__ import annotations

from .errors import ValidationError

ALPHABET = "01*c"
PUSH_LETTERS = "01*"

STACK_OPS = ("pop", "push_*", "push_0", "push_1", "id")

_ENCODE = {"pop": "c", "push_*": "*", "push_0": "0", "push_1": "1", "id": ""}


def encode_stack_op(op: str) -> str:
    """Generator word of a single stack operation."""
    try:
        return _ENCODE[op]
    except KeyError:
        raise ValidationError(f"unknown stack operation {op!r}") from None


def reduce(word: str) -> str:
    """Normal form of a word: repeatedly erase any ``c`` directly before a push."""
    out: list[str] = []
    for ch in word:
        if ch not in ALPHABET:
            raise ValidationError(f"letter {ch!r} not in {ALPHABET!r}")
        if ch in PUSH_LETTERS and out and out[-1] == "c":
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def is_normal(word: str) -> bool:
    return reduce(word) == word


def reduce_random(word: str, rng) -> str:
    """Normal form computed by firing rewrites in a random order.

    Confluence makes the result independent of the order; checks compare
    this against the deterministic left-to-right pass.
    """
    letters = list(word)
    while True:
        sites = [i for i in range(len(letters) - 1)
                 if letters[i] == "c" and letters[i + 1] in PUSH_LETTERS]
        if not sites:
            return "".join(letters)
        i = rng.choice(sites)
        del letters[i:i + 2]


def theta_mul(u: str, v: str) -> str:
    """Monoid product, ``u`` acting after ``v`` when read as operations."""
    return reduce(u + v)


def from_ops(ops) -> str:
    """Theta weight of an operation sequence performed left to right."""
    w = ""
    for op in ops:
        w = theta_mul(encode_stack_op(op), w)
    return w


def split_normal(word: str) -> tuple[str, int]:
    """Normal form as ``(pushes, pops)``: the word is ``pushes + 'c'*pops``."""
    word = reduce(word)
    pops = len(word) - len(word.rstrip("c"))
    pushes = word[: len(word) - pops]
    if "c" in pushes:
        raise ValidationError(f"{word!r} did not normalise to pushes-then-pops")
    return pushes, pops


def is_stack_accepting(word: str) -> bool:
    """Net effect is ``c^i`` for some ``i >= 0``: pops only, nothing left behind."""
    pushes, _ = split_normal(word)
    return pushes == ""


def format_theta(word: str) -> str:
    return word if word else "e"


def parse_theta(text: str) -> str:
    if text == "e":
        return ""
    if any(ch not in ALPHABET for ch in text):
        raise ValidationError(f"bad theta word {text!r}")
    return text
