"""Finitely generated groups presented through word-problem oracles.

A group is handed to the rest of the package as a :class:`GroupOracle`:
a finite generating set plus a total decision procedure ``wp`` for the
word problem ("does this word spell the identity?").  On top of any such
oracle we build the canonical *shortlex numbering*: elements are named by
natural numbers, the n-th name belonging to the n-th canonical word in
the shortlex enumeration of least representatives.  All graph vertices in
this package are numbering indices.

Words are tuples of signed, 1-based generator letters: letter ``+(i+1)``
is generator ``i`` and ``-(i+1)`` its inverse.  The shortlex order uses
the alphabet order ``s1 < s1^-1 < s2 < s2^-1 < ...``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .errors import ConfigError

Word = tuple[int, ...]

EPSILON: Word = ()


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


def letter(generator_index: int, sign: int = 1) -> int:
    """The word letter for generator ``generator_index`` (0-based) or its inverse."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +-1, got {sign}")
    return sign * (generator_index + 1)


def letter_rank(lt: int) -> int:
    """Position of a letter in the alphabet order s1 < s1^-1 < s2 < s2^-1 < ..."""
    if lt == 0:
        raise ValueError("0 is not a letter")
    return 2 * (abs(lt) - 1) + (0 if lt > 0 else 1)


def word_key(word: Word) -> tuple:
    """Sort key realising shortlex order on words."""
    return (len(word), tuple(letter_rank(lt) for lt in word))


def inverse_word(word: Word) -> Word:
    return tuple(-lt for lt in reversed(word))


def concat_words(*words: Word) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return tuple(out)


def power_word(word: Word, n: int) -> Word:
    """The word ``word^n`` (with ``word^-1`` spelled by :func:`inverse_word`)."""
    if n >= 0:
        return word * n
    return inverse_word(word) * (-n)


def word_to_str(word: Word, generator_names: Iterable[str]) -> str:
    """Render a word as ``a*b^-1*a``; the empty word renders as ``e``."""
    names = tuple(generator_names)
    if not word:
        return "e"
    parts = []
    for lt in word:
        name = names[abs(lt) - 1]
        parts.append(name if lt > 0 else f"{name}^-1")
    return "*".join(parts)


def word_from_str(text: str, generator_names: Iterable[str]) -> Word:
    """Parse ``a*b^-1`` (or whitespace-separated) back into a word."""
    names = list(generator_names)
    text = text.strip()
    if text in ("", "e", "1"):
        return EPSILON
    tokens = [t for chunk in text.split("*") for t in chunk.split()]
    out = []
    for tok in tokens:
        sign = 1
        name = tok
        if tok.endswith("^-1"):
            sign = -1
            name = tok[: -len("^-1")]
        elif tok.endswith("'"):
            sign = -1
            name = tok[:-1]
        try:
            idx = names.index(name)
        except ValueError as exc:
            raise ConfigError(f"unknown generator {name!r} in word {text!r}") from exc
        out.append(letter(idx, sign))
    return tuple(out)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndsCertificate:
    """Finite witness for a declared two-ended Cayley graph.

    ``separator`` is a finite set of elements (as canonical words) whose
    removal leaves exactly two infinite components; ``side_a``/``side_b``
    name elements known to lie in the two distinct infinite components.
    """

    separator: tuple[Word, ...]
    side_a: tuple[Word, ...]
    side_b: tuple[Word, ...]


@dataclass(frozen=True)
class GroupOracle:
    """A finitely generated group given by generators and a word-problem oracle.

    ``wp(word)`` decides whether a word represents the identity; it is the
    semantic authority.  ``normal_key``, when present, maps a word to a
    hashable canonical form of the element it spells (used to make element
    deduplication fast; ``wp`` remains the contract).  ``reduced_length``,
    when present, returns the geodesic length of the element spelled by a
    word.  Instances are immutable and safe to share between threads.
    """

    name: str
    generator_names: tuple[str, ...]
    wp: Callable[[Word], bool]
    declared_ends: int | str  # 1, 2, or "many"
    ends_certificate: EndsCertificate | None = None
    normal_key: Callable[[Word], Hashable] | None = None
    reduced_length: Callable[[Word], int] | None = None
    # Optional closed-form evaluation of the canonical shortlex numbering:
    # fast_index(word) is the index of the element spelled by word, and
    # fast_word(n) the n-th canonical word.  Both must agree with the lazy
    # enumeration; they let the numbering answer far beyond the enumerated
    # frontier (exponential-growth groups would otherwise need enumeration
    # of the whole ball).
    fast_index: Callable[[Word], int] | None = None
    fast_word: Callable[[int], Word] | None = None

    @property
    def generator_count(self) -> int:
        return len(self.generator_names)

    @property
    def letters(self) -> tuple[int, ...]:
        """All 2g letters in alphabet order."""
        out = []
        for i in range(self.generator_count):
            out.append(letter(i, 1))
            out.append(letter(i, -1))
        return tuple(out)

    def equal(self, u: Word, v: Word) -> bool:
        """Whether two words spell the same element."""
        if self.normal_key is not None:
            return self.normal_key(u) == self.normal_key(v)
        return self.wp(concat_words(u, inverse_word(v)))


# ---------------------------------------------------------------------------
# built-in word-problem strategies
# ---------------------------------------------------------------------------


def _zd_key(d: int) -> Callable[[Word], Hashable]:
    def key(word: Word) -> tuple[int, ...]:
        coords = [0] * d
        for lt in word:
            coords[abs(lt) - 1] += 1 if lt > 0 else -1
        return tuple(coords)

    return key


def _free_key(word: Word) -> tuple[int, ...]:
    stack: list[int] = []
    for lt in word:
        if stack and stack[-1] == -lt:
            stack.pop()
        else:
            stack.append(lt)
    return tuple(stack)


def _z2_z3_key(word: Word) -> tuple:
    """Normal form in <a, b | a^2, b^3>: alternating a-letters and b^{1,2} blocks.

    Realised by the confluent length-reducing rewriting a^-1 -> a,
    a*a -> e, b-exponents summed mod 3 (an exponent of 2 is one letter,
    b^-1), together with free reduction.
    """
    stack: list[tuple[str, int]] = []

    def push(sym: str, exp: int) -> None:
        if stack and stack[-1][0] == sym:
            _, old = stack.pop()
            merged = old + exp
            merged = merged % 2 if sym == "a" else merged % 3
            if merged:
                push(sym, merged)
        else:
            exp = exp % 2 if sym == "a" else exp % 3
            if exp:
                stack.append((sym, exp))

    for lt in word:
        if abs(lt) == 1:
            push("a", 1)
        else:
            push("b", 1 if lt > 0 else 2)
    return tuple(stack)


def _z2_z3_len(word: Word) -> int:
    return len(_z2_z3_key(word))


def _z2_z_key(word: Word) -> tuple:
    """Normal form in <a, t | a^2>: alternating a-letters and t^k blocks."""
    stack: list[tuple[str, int]] = []
    for lt in word:
        if abs(lt) == 1:
            if stack and stack[-1][0] == "a":
                stack.pop()
            else:
                stack.append(("a", 1))
        else:
            exp = 1 if lt > 0 else -1
            if stack and stack[-1][0] == "t":
                _, old = stack.pop()
                if old + exp:
                    stack.append(("t", old + exp))
            else:
                stack.append(("t", exp))
    return tuple(stack)


def _z2_z_len(word: Word) -> int:
    return sum(1 if sym == "a" else abs(exp) for sym, exp in _z2_z_key(word))


def _bs12_key(word: Word) -> tuple:
    """Exponent tracking in BS(1,2) = <a, t | t a t^-1 = a^2>.

    Elements are pairs (x, n) with x a dyadic rational and n an integer:
    a = (1, 0), t = (0, 1) and (x, n)(y, m) = (x + 2^n y, n + m).
    """
    x = Fraction(0)
    n = 0
    for lt in word:
        if abs(lt) == 1:
            x += Fraction(2) ** n if lt > 0 else -(Fraction(2) ** n)
        else:
            n += 1 if lt > 0 else -1
    return (x, n)


def _free_len(word: Word) -> int:
    return len(_free_key(word))


class _PairLanguageIndex:
    """Closed-form shortlex numbering for a canonical-word language defined
    by allowed adjacent letter pairs.

    Many oracles' shortlex-least representatives form such a language (free
    groups: never follow a letter by its inverse; free products of cyclic
    groups: block constraints).  Given the letters in alphabet order, the
    allowed successors of each letter, and a canonicaliser mapping any word
    to the least representative of its element, the numbering index is a
    mixed-radix numeral computed by counting admissible completions, and
    the inverse decodes a numeral back into a word.  Both agree with the
    lazy level-by-level enumeration (which is how they are tested).
    """

    def __init__(
        self,
        letters: tuple[int, ...],
        allowed_after: dict[int, tuple[int, ...]],
        canonical_of: Callable[[Word], Word],
    ):
        self.letters = letters
        self.allowed_after = allowed_after
        self.canonical_of = canonical_of
        # _completions[j][l] = number of admissible j-letter continuations after l
        self._completions: list[dict[int, int]] = [{l: 1 for l in letters}]
        self._level_start = [0, 1]  # index of the first word of each length

    def _completion(self, j: int) -> dict[int, int]:
        while len(self._completions) <= j:
            prev = self._completions[-1]
            self._completions.append(
                {l: sum(prev[x] for x in self.allowed_after[l]) for l in self.letters}
            )
        return self._completions[j]

    def _start_of_length(self, k: int) -> int:
        while len(self._level_start) <= k:
            j = len(self._level_start) - 1  # adding the count of length-j words
            level = sum(self._completion(j - 1)[l] for l in self.letters)
            self._level_start.append(self._level_start[-1] + level)
        return self._level_start[k]

    def index_of(self, word: Word) -> int:
        w = self.canonical_of(word)
        k = len(w)
        if k == 0:
            return 0
        idx = self._start_of_length(k)
        choices = self.letters
        for i, lt in enumerate(w):
            remaining = self._completion(k - 1 - i)
            for x in choices:
                if x == lt:
                    break
                idx += remaining[x]
            else:
                raise ConfigError(f"letter {lt} impossible after {w[:i]!r}")
            choices = self.allowed_after[lt]
        return idx

    def word_of(self, n: int) -> Word:
        if n < 0:
            raise ValueError(f"index must be a natural number, got {n}")
        if n == 0:
            return EPSILON
        k = 1
        while self._start_of_length(k + 1) <= n:
            k += 1
        rest = n - self._start_of_length(k)
        out: list[int] = []
        choices = self.letters
        for i in range(k):
            remaining = self._completion(k - 1 - i)
            for x in choices:
                if rest < remaining[x]:
                    out.append(x)
                    choices = self.allowed_after[x]
                    break
                rest -= remaining[x]
            else:
                raise ValueError(f"index {n} exceeds the language")
        return tuple(out)


def _free_language(rank: int) -> _PairLanguageIndex:
    letters = tuple(letter(i, sign) for i in range(rank) for sign in (1, -1))
    allowed = {l: tuple(x for x in letters if x != -l) for l in letters}
    return _PairLanguageIndex(letters, allowed, _free_key)


def _z2_z3_canonical(word: Word) -> Word:
    # least representative: a-letters as 1, b as 2, b^2 = b^-1 as -2
    out: list[int] = []
    for sym, exp in _z2_z3_key(word):
        out.append(1 if sym == "a" else (2 if exp == 1 else -2))
    return tuple(out)


def _z2_z3_language() -> _PairLanguageIndex:
    # letters a, b, b^-1; blocks alternate, so after a b-letter only a fits
    allowed = {1: (2, -2), 2: (1,), -2: (1,)}
    return _PairLanguageIndex((1, 2, -2), allowed, _z2_z3_canonical)


def _z2_z_canonical(word: Word) -> Word:
    # least representative: a-letters as 1, t^k blocks as constant-sign runs
    out: list[int] = []
    for sym, exp in _z2_z_key(word):
        if sym == "a":
            out.append(1)
        else:
            out.extend((2 if exp > 0 else -2,) * abs(exp))
    return tuple(out)


def _z2_z_language() -> _PairLanguageIndex:
    # letters a, t, t^-1; no a a (a is an involution) and no t-cancellation
    allowed = {1: (2, -2), 2: (1, 2), -2: (1, -2)}
    return _PairLanguageIndex((1, 2, -2), allowed, _z2_z_canonical)


def _zd_len(d: int) -> Callable[[Word], int]:
    key = _zd_key(d)

    def length(word: Word) -> int:
        return sum(abs(c) for c in key(word))

    return length


def _wp_from_key(key: Callable[[Word], Hashable]) -> Callable[[Word], bool]:
    identity = key(EPSILON)

    def wp(word: Word) -> bool:
        return key(word) == identity

    return wp


_GENERIC_LETTERS = ("a", "b", "c", "d", "f", "g", "h")


def _zd_oracle(d: int, names: tuple[str, ...] | None = None) -> GroupOracle:
    if d < 1:
        raise ConfigError(f"Zd needs d >= 1, got {d}")
    if names is None:
        if d <= len(_GENERIC_LETTERS):
            names = _GENERIC_LETTERS[:d]
        else:
            names = tuple(f"x{i}" for i in range(d))
    elif len(names) != d:
        raise ConfigError(
            f"Zd({d}) needs {d} generator names, got {len(names)}"
        )
    key = _zd_key(d)
    cert = None
    ends: int | str = 1
    if d == 1:
        ends = 2
        cert = EndsCertificate(
            separator=(EPSILON,), side_a=((1,),), side_b=((-1,),)
        )
    lang = _free_language(1) if d == 1 else None
    return GroupOracle(
        name="Z" if d == 1 else f"Z{d}",
        generator_names=tuple(names),
        wp=_wp_from_key(key),
        declared_ends=ends,
        ends_certificate=cert,
        normal_key=key,
        reduced_length=_zd_len(d),
        fast_index=lang.index_of if lang else None,
        fast_word=lang.word_of if lang else None,
    )


def _free_f2_oracle() -> GroupOracle:
    lang = _free_language(2)
    return GroupOracle(
        name="FreeF2",
        generator_names=("a", "b"),
        wp=_wp_from_key(_free_key),
        declared_ends="many",
        normal_key=_free_key,
        reduced_length=_free_len,
        fast_index=lang.index_of,
        fast_word=lang.word_of,
    )


def _z2_star_z3_oracle() -> GroupOracle:
    lang = _z2_z3_language()
    return GroupOracle(
        name="Z2starZ3",
        generator_names=("a", "b"),
        wp=_wp_from_key(_z2_z3_key),
        declared_ends="many",
        normal_key=_z2_z3_key,
        reduced_length=_z2_z3_len,
        fast_index=lang.index_of,
        fast_word=lang.word_of,
    )


def _z2_hnn_oracle() -> GroupOracle:
    lang = _z2_z_language()
    return GroupOracle(
        name="Z2HNN",
        generator_names=("a", "t"),
        wp=_wp_from_key(_z2_z_key),
        declared_ends="many",
        normal_key=_z2_z_key,
        reduced_length=_z2_z_len,
        fast_index=lang.index_of,
        fast_word=lang.word_of,
    )


def _bs12_oracle() -> GroupOracle:
    return GroupOracle(
        name="BS12",
        generator_names=("a", "t"),
        wp=_wp_from_key(_bs12_key),
        declared_ends=1,
        normal_key=_bs12_key,
    )


def builtin_group(name: str) -> GroupOracle:
    """Construct one of the built-in groups by name.

    Recognised names: ``Z``, ``Z2``, ``Z3`` ... (or ``Zd(d)``), ``FreeF2``,
    ``Z2starZ3``, ``Z2HNN`` (the free product Z2 * Z), ``BS12``.
    """
    text = name.strip()
    if text == "Z":
        return _zd_oracle(1)
    if text.startswith("Zd(") and text.endswith(")"):
        try:
            d = int(text[3:-1])
        except ValueError as exc:
            raise ConfigError(f"bad dimension in {name!r}") from exc
        return _zd_oracle(d)
    if text.startswith("Z") and text[1:].isdigit():
        return _zd_oracle(int(text[1:]))
    if text == "FreeF2":
        return _free_f2_oracle()
    if text == "Z2starZ3":
        return _z2_star_z3_oracle()
    if text == "Z2HNN":
        return _z2_hnn_oracle()
    if text == "BS12":
        return _bs12_oracle()
    raise ConfigError(f"unknown group {name!r}")


_STRATEGIES: dict[str, Callable[..., GroupOracle]] = {
    "z": lambda **kw: _zd_oracle(1, kw.get("generators")),
    "zd": lambda **kw: _zd_oracle(kw.get("d", 2), kw.get("generators")),
    "free": lambda **kw: _free_f2_oracle(),
    "z2_star_z3": lambda **kw: _z2_star_z3_oracle(),
    "z2_star_z": lambda **kw: _z2_hnn_oracle(),
    "bs12": lambda **kw: _bs12_oracle(),
}


def group_from_config(config: dict | str) -> GroupOracle:
    """Load a group from a config mapping or a JSON file path.

    The config names a word-problem strategy (one of the fixed built-in
    strategies), generator names, a declared end count, and optionally a
    two-ended certificate whose entries are words over the generators::

        {"strategy": "zd", "d": 2, "generators": ["a", "b"],
         "declared_ends": 1}
    """
    if isinstance(config, str):
        with open(config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    if not isinstance(config, dict):
        raise ConfigError("group config must be a JSON object")
    strategy = config.get("strategy")
    if strategy not in _STRATEGIES:
        raise ConfigError(
            f"unknown wp strategy {strategy!r}; expected one of {sorted(_STRATEGIES)}"
        )
    kwargs = {}
    if "d" in config:
        kwargs["d"] = int(config["d"])
    if "generators" in config:
        gens = tuple(str(g) for g in config["generators"])
        kwargs["generators"] = gens
    base = _STRATEGIES[strategy](**kwargs)
    names = kwargs.get("generators", base.generator_names)
    if len(names) != base.generator_count:
        raise ConfigError(
            f"strategy {strategy!r} has {base.generator_count} generators, "
            f"config names {len(names)}"
        )
    ends = config.get("declared_ends", base.declared_ends)
    if ends not in (1, 2, "many"):
        raise ConfigError(f"declared_ends must be 1, 2 or 'many', got {ends!r}")
    cert = base.ends_certificate
    if "certificate" in config:
        raw = config["certificate"]
        cert = EndsCertificate(
            separator=tuple(word_from_str(w, names) for w in raw["separator"]),
            side_a=tuple(word_from_str(w, names) for w in raw["side_a"]),
            side_b=tuple(word_from_str(w, names) for w in raw["side_b"]),
        )
    if ends == 2 and cert is None:
        raise ConfigError("a group declared two-ended needs a certificate")
    return GroupOracle(
        name=str(config.get("name", base.name)),
        generator_names=tuple(names),
        wp=base.wp,
        declared_ends=ends,
        ends_certificate=cert,
        normal_key=base.normal_key,
        reduced_length=base.reduced_length,
        fast_index=base.fast_index,
        fast_word=base.fast_word,
    )


# ---------------------------------------------------------------------------
# the canonical shortlex numbering
# ---------------------------------------------------------------------------


class Numbering:
    """Bijective naming of group elements by natural numbers.

    Index ``n`` names the element whose shortlex-least representative is
    the n-th canonical word; ``to_word(0)`` is the empty word (identity).
    The enumeration is lazy: canonical words are produced level by level
    (level = word length), exploiting that shortlex-least representatives
    are closed under prefixes.

    With a ``normal_key`` on the oracle, deduplication is a hash lookup;
    otherwise each candidate runs a bounded search over the already
    enumerated canonical words of compatible length using ``wp`` alone.
    """

    def __init__(self, oracle: GroupOracle):
        self.oracle = oracle
        self._words: list[Word] = [EPSILON]
        self._level_start = [0, 1]  # _words[_level_start[L]: _level_start[L+1]] has length L
        if oracle.normal_key is not None:
            self._by_key: dict[Hashable, int] | None = {oracle.normal_key(EPSILON): 0}
        else:
            self._by_key = None

    # -- enumeration machinery

    def _advance_level(self) -> None:
        """Generate all canonical words of the next length."""
        oracle = self.oracle
        letters = oracle.letters
        lo, hi = self._level_start[-2], self._level_start[-1]
        parents = self._words[lo:hi]
        for parent in parents:
            for lt in letters:
                cand = parent + (lt,)
                if self._by_key is not None:
                    key = oracle.normal_key(cand)  # type: ignore[misc]
                    if key not in self._by_key:
                        self._by_key[key] = len(self._words)
                        self._words.append(cand)
                else:
                    if not self._wp_seen(cand):
                        self._words.append(cand)
        self._level_start.append(len(self._words))

    def _wp_seen(self, cand: Word) -> bool:
        """wp-only deduplication: is cand's element already enumerated?

        A candidate has length L = len(parent) + 1 and its element has
        geodesic length at least L - 2, so only canonical words of length
        L-2, L-1 and the current level can collide with it.
        """
        wp = self.oracle.wp
        inv = inverse_word(cand)
        L = len(cand)
        lo = self._level_start[max(0, L - 2)]
        for prev in self._words[lo:]:
            if wp(concat_words(prev, inv)):
                return True
        return False

    def _grown_to_index(self, n: int) -> None:
        while len(self._words) <= n:
            before = len(self._words)
            self._advance_level()
            if len(self._words) == before:
                raise ConfigError(
                    f"group has only {before} elements; index {n} does not exist"
                )

    def _grown_to_length(self, length: int) -> None:
        while len(self._level_start) - 2 < length:
            self._advance_level()

    # -- public interface

    def to_word(self, n: int) -> Word:
        """The n-th canonical word (shortlex enumeration of least reps)."""
        if n < 0:
            raise ValueError(f"index must be a natural number, got {n}")
        if self.oracle.fast_word is not None and n >= len(self._words):
            return self.oracle.fast_word(n)
        self._grown_to_index(n)
        return self._words[n]

    def to_index(self, word: Word) -> int:
        """Index of the element spelled by ``word``.

        Total for valid oracles: the element's canonical representative is
        no longer than ``word``, so the enumeration is grown to that level
        and then searched.
        """
        if self.oracle.fast_index is not None:
            return self.oracle.fast_index(word)
        self._grown_to_length(len(word))
        if self._by_key is not None:
            key = self.oracle.normal_key(word)  # type: ignore[misc]
            idx = self._by_key.get(key)
            if idx is None:
                raise ConfigError(
                    "word problem oracle is inconsistent: element missing "
                    "from its own shortlex ball"
                )
            return idx
        wp = self.oracle.wp
        inv = inverse_word(word)
        limit = self._level_start[len(word) + 1]
        for idx in range(limit):
            if wp(concat_words(self._words[idx], inv)):
                return idx
        raise ConfigError(
            "word problem oracle is inconsistent: element missing from its "
            "own shortlex ball"
        )

    def known_count(self) -> int:
        """How many canonical words have been enumerated so far."""
        return len(self._words)


def canonical_numbering(oracle: GroupOracle) -> Numbering:
    """The canonical shortlex numbering of ``oracle``'s elements.

    A word is canonical iff it is the shortlex-least word in its
    wp-equivalence class; ``to_word(n)`` is the n-th canonical word.
    """
    return Numbering(oracle)
