"""
Natural-coefficient word rigs.

FreeIsometryRig is the free dagger rig on one isometry ``x`` (``x! x = 1``).
Its normal words are ``x^j x!^i``; a payload is a sorted tuple of
``((j, i), n)`` pairs with ``n > 0``.

WordRigXY is the free rig on ``x, y`` modulo ``x y = 0``. Its normal words
are ``y^a x^b``; a payload is a sorted tuple of ``((a, b), n)`` pairs.
It has no dagger.

Raw words handed to the rewrite engine are strings over ``x`` and ``X``
(``X`` stands for ``x!``).
"""

import itertools
import logging
from collections import deque
from typing import Dict, Iterable, List, Set, Tuple

from .base import Rig, RigDescriptor, RigElement
from .grammar import Scanner

logger = logging.getLogger(__name__)

Key = Tuple[int, int]


def _merge(terms: Iterable[Tuple[Key, int]]) -> Tuple[Tuple[Key, int], ...]:
    acc: Dict[Key, int] = {}
    for key, n in terms:
        if n < 0:
            raise ValueError(f"negative coefficient {n} in a natural-coefficient rig")
        acc[key] = acc.get(key, 0) + n
    return tuple(sorted((k, n) for k, n in acc.items() if n))


# -- rewrite engine ------------------------------------------------------

def one_step_reductions(word: str) -> List[str]:
    """Every word reachable by deleting one ``Xx`` factor."""
    return [word[:k] + word[k + 2:] for k in range(len(word) - 1) if word[k:k + 2] == 'Xx']


def rewrite_word(word: str) -> Key:
    """Normal form ``(j, i)`` of a raw word, i.e. ``x^j x!^i``."""
    stack: List[str] = []
    for letter in word:
        if letter not in 'xX':
            raise ValueError(f"unexpected letter {letter!r} in raw word {word!r}")
        if letter == 'x' and stack and stack[-1] == 'X':
            stack.pop()
        else:
            stack.append(letter)
    j = stack.count('x')
    return (j, len(stack) - j)


def reduction_normal_forms(word: str) -> Set[str]:
    """Irreducible words reachable from ``word`` along any reduction order."""
    seen = {word}
    queue = deque([word])
    irreducible = set()
    while queue:
        current = queue.popleft()
        successors = one_step_reductions(current)
        if not successors:
            irreducible.add(current)
        for nxt in successors:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return irreducible


def check_confluence(max_length: int = 8) -> List[str]:
    """Raw words of length <= max_length with more than one normal form.

    An empty list means every reduction order agrees with ``rewrite_word``.
    """
    bad = []
    for length in range(max_length + 1):
        for letters in itertools.product('xX', repeat=length):
            word = ''.join(letters)
            forms = reduction_normal_forms(word)
            j, i = rewrite_word(word)
            if forms != {'x' * j + 'X' * i}:
                bad.append(word)
    logger.debug(f"Confluence check up to length {max_length}: {len(bad)} offending words")
    return bad


# -- shared word-rig plumbing ---------------------------------------------

class _WordRig(Rig):
    """Sums of normal words with natural coefficients."""

    letters = ''

    def _normalize(self, payload):
        if isinstance(payload, dict):
            payload = payload.items()
        return _merge(payload)

    def _zero_payload(self):
        return ()

    def _one_payload(self):
        return (((0, 0), 1),)

    def _add(self, p, q):
        return tuple(p) + tuple(q)

    def _mul(self, p, q):
        terms = []
        for (k1, n1), (k2, n2) in itertools.product(p, q):
            key = self._word_product(k1, k2)
            if key is not None:
                terms.append((key, n1 * n2))
        return terms

    def _word_product(self, k1: Key, k2: Key):
        raise NotImplementedError

    def _word_from_letters(self, letters: List[str]):
        """Normal key of a letter sequence, or None when it vanishes."""
        raise NotImplementedError

    def _word_text(self, key: Key) -> str:
        raise NotImplementedError

    def monomial(self, key: Key, coeff: int = 1) -> RigElement:
        return self.element(((key, coeff),))

    def degree(self, a: RigElement) -> int:
        self.check(a)
        return max((sum(k) for k, _ in a.payload), default=0)

    def monomials(self, max_degree: int) -> List[RigElement]:
        return [self.monomial((u, d - u)) for d in range(max_degree + 1) for u in range(d + 1)]

    def small_elements(self, bound: int) -> List[RigElement]:
        return [self.zero] + self.monomials(bound)

    def parse(self, text: str) -> RigElement:
        sc = Scanner(text)
        terms = []
        first = True
        while first or not sc.at_end():
            if not first and not sc.take('+'):
                raise sc.error("expected '+'")
            coeff = sc.read_nat()
            letters: List[str] = []
            factors = 0
            while sc.peek() != "" and sc.peek() in self.letters:
                letter = sc.text[sc.pos]
                sc.pos += 1
                if letter == 'x' and self.descriptor.has_dagger and sc.take('!'):
                    letter = 'X'
                letters.extend([letter] * sc.read_exponent())
                factors += 1
            if coeff is None and not factors:
                raise sc.error("expected a coefficient or a word")
            key = self._word_from_letters(letters)
            if key is not None:
                terms.append((key, 1 if coeff is None else coeff))
            first = False
        return self.element(terms)

    def format(self, a: RigElement) -> str:
        if not a.payload:
            return "0"
        parts = []
        for key, n in sorted(a.payload, key=lambda t: (sum(t[0]), t[0])):
            word = self._word_text(key)
            if not word:
                parts.append(str(n))
            elif n == 1:
                parts.append(word)
            else:
                parts.append(f"{n}{word}")
        return " + ".join(parts)


def _power_text(letter: str, exp: int) -> str:
    if exp == 0:
        return ""
    return letter if exp == 1 else f"{letter}^{exp}"


class FreeIsometryRig(_WordRig):
    """The free dagger rig on an isometry ``x``."""

    descriptor = RigDescriptor(
        name='FreeIsometryRig', has_negatives=False, has_dagger=True, is_commutative=False,
        element_grammar='isometry-words', natural_coefficients=True,
    )
    letters = 'x'

    @property
    def x(self) -> RigElement:
        return self.monomial((1, 0))

    @property
    def x_dagger(self) -> RigElement:
        return self.monomial((0, 1))

    def _word_product(self, k1: Key, k2: Key) -> Key:
        (a, b), (c, d) = k1, k2
        if b >= c:
            return (a, b - c + d)
        return (a + c - b, d)

    def _dagger(self, p):
        return [((i, j), n) for (j, i), n in p]

    def _word_from_letters(self, letters: List[str]) -> Key:
        return rewrite_word(''.join(letters))

    def _word_text(self, key: Key) -> str:
        j, i = key
        return " ".join(t for t in (_power_text('x', j), _power_text('x!', i)) if t)


class WordRigXY(_WordRig):
    """Free rig on ``x, y`` with ``x y = 0``; no dagger."""

    descriptor = RigDescriptor(
        name='WordRigXY', has_negatives=False, has_dagger=False, is_commutative=False,
        element_grammar='xy-words', natural_coefficients=True,
    )
    letters = 'xy'

    @property
    def x(self) -> RigElement:
        return self.monomial((0, 1))

    @property
    def y(self) -> RigElement:
        return self.monomial((1, 0))

    def _word_product(self, k1: Key, k2: Key):
        (a, b), (c, d) = k1, k2
        if b > 0 and c > 0:
            return None
        return (a + c, b + d)

    def _word_from_letters(self, letters: List[str]):
        key = (0, 0)
        for letter in letters:
            step = (1, 0) if letter == 'y' else (0, 1)
            key = self._word_product(key, step)
            if key is None:
                return None
        return key

    def _word_text(self, key: Key) -> str:
        a, b = key
        return " ".join(t for t in (_power_text('y', a), _power_text('x', b)) if t)
