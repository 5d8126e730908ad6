"""
对合字母表上的单词
字母用带符号整数表示：基底 b >= 1，a_b 记为 b，其逆记为 -b
提供自由约化、循环单词、因子提取、无平方判定与 Thue 单词生成
"""

from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import WordFormatError

Letter = int
Word = tuple[int, ...]

# Thue 三字母无平方词的生成态射
THUE_MORPHISM: dict[int, Word] = {1: (1, 2, 3), 2: (1, 3), 3: (2,)}


# ==================== 字母与线性单词 ====================


def letter_key(letter: Letter) -> tuple[int, bool]:
    """字母序：先按基底升序，同基底正号在前"""
    return abs(letter), letter < 0


def word_key(word: Iterable[Letter]) -> tuple[tuple[int, bool], ...]:
    """单词的字典序键"""
    return tuple(letter_key(x) for x in word)


def inverse_word(word: Sequence[Letter]) -> Word:
    """逆单词：反转并取逆每个字母"""
    return tuple(-x for x in reversed(word))


def parse_word(text: str) -> Word:
    """解析以空格分隔的带符号整数单词

    Args:
        text: 如 "1 2 -1 -2"，空串表示空单词

    Returns:
        单词元组
    """
    letters = []
    for token in text.split():
        try:
            letter = int(token)
        except ValueError:
            raise WordFormatError(f"无法识别的字母: {token!r}") from None
        if letter == 0:
            raise WordFormatError("字母不能为 0")
        letters.append(letter)
    return tuple(letters)


def format_word(word: Iterable[Letter]) -> str:
    """格式化为带符号整数文本"""
    return " ".join(str(x) for x in word)


def free_reduce(word: Sequence[Letter]) -> Word:
    """自由约化，反复删去相邻的互逆字母对"""
    stack: list[int] = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def is_reduced(word: Sequence[Letter]) -> bool:
    return all(word[i] != -word[i + 1] for i in range(len(word) - 1))


def is_cyclically_reduced(word: Sequence[Letter]) -> bool:
    """约化且首尾不构成互逆对（空单词视为循环约化）"""
    if not word:
        return True
    return is_reduced(word) and (len(word) == 1 or word[-1] != -word[0])


def exponent_sums(word: Iterable[Letter]) -> dict[int, int]:
    """各基底的指数和"""
    sums: Counter[int] = Counter()
    for letter in word:
        sums[abs(letter)] += 1 if letter > 0 else -1
    return dict(sums)


# ==================== 循环单词 ====================


def least_rotation(word: Sequence[Letter]) -> Word:
    """字典序最小的旋转"""
    word = tuple(word)
    if not word:
        return word
    best = min(range(len(word)), key=lambda i: word_key(word[i:] + word[:i]))
    return word[best:] + word[:best]


@dataclass(frozen=True)
class CyclicWord:
    """循环单词，存储的代表元总是最小旋转"""

    letters: Word = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", least_rotation(tuple(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    @property
    def sort_key(self) -> tuple[tuple[int, bool], ...]:
        return word_key(self.letters)


def letters_of(word: "CyclicWord | Sequence[Letter]") -> Word:
    """取出字母元组，CyclicWord 取其代表元"""
    if isinstance(word, CyclicWord):
        return word.letters
    return tuple(word)


def cyclic_factors(word: "CyclicWord | Sequence[Letter]", k: int) -> list[Word]:
    """循环读取的全部长度 k 因子，每个起点一个（可重复）

    Args:
        word: 循环单词
        k: 因子长度，必须 >= 1

    Returns:
        长度为 |w| 的因子列表，空单词返回空列表
    """
    if k < 1:
        raise ValueError(f"因子长度必须为正: {k}")
    letters = letters_of(word)
    n = len(letters)
    return [tuple(letters[(i + j) % n] for j in range(k)) for i in range(n)]


# ==================== 无平方判定 ====================


def _has_square(arr: np.ndarray, starts: int, max_half: int) -> bool:
    """在 arr 中查找起点 < starts、半长 <= max_half 的平方 uu"""
    for half in range(1, max_half + 1):
        # eq[i] 表示 arr[i] == arr[i + half]
        eq = arr[:-half] == arr[half:]
        run = np.concatenate(([0], np.cumsum(eq, dtype=np.int64)))
        count = min(starts, len(eq) - half + 1)
        if count <= 0:
            continue
        window = run[half : half + count] - run[:count]
        if np.any(window == half):
            return True
    return False


def square_free_status(word: "CyclicWord | Sequence[Letter]", cyclic: bool = False) -> bool:
    """判断单词是否无平方

    Args:
        word: 单词
        cyclic: 为 True 时要求每个旋转都是线性无平方的

    Returns:
        无平方返回 True
    """
    letters = letters_of(word)
    n = len(letters)
    if n == 0:
        return True
    if cyclic:
        doubled = np.asarray(letters + letters, dtype=np.int64)
        return not _has_square(doubled, n, n // 2)
    return not _has_square(np.asarray(letters, dtype=np.int64), n, n // 2)


def thue_word(n: int) -> Word:
    """长度 n 的三字母无平方词（态射 1->123, 2->13, 3->2 的不动点前缀）"""
    if n < 0:
        raise ValueError(f"长度不能为负: {n}")
    word: Word = (1,)
    while len(word) < n:
        word = tuple(y for x in word for y in THUE_MORPHISM[x])
    return word[:n]
