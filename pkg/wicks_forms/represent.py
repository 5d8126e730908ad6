"""
非消去 Wicks 表示
在单词的各个旋转上，把形式的每个字母对应到一段连续子词，
同一基底的两次出现必须互逆；据此计数 M(g, w) 并求单词的亏格
"""

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from multiprocessing import Pool

from .config import get_settings
from .enumeration import Catalog, CatalogStore, default_store
from .errors import EnumerationRefused, NotCyclicallyReduced, WicksError
from .log import logger
from .surface import WicksForm
from .words import (
    CyclicWord,
    Letter,
    Word,
    exponent_sums,
    format_word,
    inverse_word,
    is_cyclically_reduced,
    is_reduced,
    letters_of,
)

# 不加 allow_long 时 genus_of_word 的最大搜索亏格
MAX_DEFAULT_GENUS = 2

GENUS_FINITE = "finite"
GENUS_EXCEEDS = "exceeds"
GENUS_INFINITE = "infinite"


@dataclass(frozen=True)
class Substitution:
    """形式基底 -> 非空约化单词，逆字母映到逆单词"""

    images: Mapping[int, Word]

    def __getitem__(self, base: int) -> Word:
        return self.images[base]

    def image(self, letter: Letter) -> Word:
        word = self.images[abs(letter)]
        return word if letter > 0 else inverse_word(word)

    def apply(self, form_word: "CyclicWord | Sequence[Letter]") -> Word:
        out: list[int] = []
        for letter in letters_of(form_word):
            out.extend(self.image(letter))
        return tuple(out)

    def lines(self) -> list[str]:
        return [f"a{b} -> {format_word(self.images[b])}" for b in sorted(self.images)]


@dataclass(frozen=True)
class Representation:
    """在旋转 offset 下的一个非消去表示"""

    offset: int
    substitution: Substitution


@dataclass(frozen=True)
class RepresentationCount:
    count: int
    exact: bool  # 目录不完整时 count 只是下界


@dataclass(frozen=True)
class GenusResult:
    """单词亏格的计算结果"""

    kind: str  # finite / exceeds / infinite
    genus: int | None = None
    g_max: int | None = None
    form: CyclicWord | None = None  # 见证形式
    witness: Representation | None = None

    def to_line(self) -> str:
        if self.kind == GENUS_FINITE:
            return f"genus={self.genus}"
        if self.kind == GENUS_EXCEEDS:
            return f"genus>{self.g_max}"
        return "genus=infinite"


# ==================== 表示搜索 ====================


def is_non_cancelling(
    form_word: "CyclicWord | Sequence[Letter]", phi: Substitution, target: "CyclicWord | Sequence[Letter]"
) -> bool:
    """重新代入验证：像都约化且拼接后循环约化地等于目标"""
    if any(not word or not is_reduced(word) for word in phi.images.values()):
        return False
    image = phi.apply(form_word)
    target = letters_of(target)
    if len(image) != len(target) or not is_cyclically_reduced(image):
        return False
    return CyclicWord(image) == CyclicWord(target)


def _search_offset(target: Word, form: Word) -> Iterator[dict[int, Word]]:
    """在固定旋转上逐块匹配形式字母"""
    n, m = len(target), len(form)
    images: dict[int, Word] = {}

    def tail_need(j: int) -> tuple[int, int]:
        """位置 j 之后：已定像的总长、未定基底的出现次数"""
        assigned, unassigned = 0, 0
        for letter in form[j + 1 :]:
            base = abs(letter)
            if base in images:
                assigned += len(images[base])
            else:
                unassigned += 1
        return assigned, unassigned

    def walk(j: int, t: int):
        if j == m:
            if t == n:
                yield dict(images)
            return
        letter = form[j]
        base = abs(letter)
        if base in images:
            block = images[base] if letter > 0 else inverse_word(images[base])
            if target[t : t + len(block)] == block:
                yield from walk(j + 1, t + len(block))
            return
        for length in range(1, n - t + 1):
            block = target[t : t + length]
            images[base] = block if letter > 0 else inverse_word(block)
            assigned, unassigned = tail_need(j)
            # 剩余长度减去已定部分，须能分给未定基底的两次出现
            slack = n - t - length - assigned
            if slack < unassigned:
                del images[base]
                break
            if slack % 2 == 0 and (unassigned or slack == 0):
                yield from walk(j + 1, t + length)
            del images[base]

    yield from walk(0, 0)


def find_representations(
    w: "CyclicWord | Sequence[Letter]",
    u: "WicksForm | CyclicWord | Sequence[Letter]",
    limit: int | None = None,
) -> list[Representation]:
    """枚举 w 关于形式 u 的非消去表示

    Args:
        w: 非空循环约化单词
        u: Wicks 形式
        limit: 最多返回的表示数

    Returns:
        (旋转偏移, 替换) 列表
    """
    target = letters_of(w)
    form = u.graph.word if isinstance(u, WicksForm) else letters_of(u)
    if not target:
        raise WicksError("空单词没有 Wicks 表示")
    if not is_cyclically_reduced(target):
        raise NotCyclicallyReduced(f"单词不是循环约化的: {format_word(target)}")
    n = len(target)
    if n % 2 or n < len(form):
        return []

    found: list[Representation] = []
    for offset in range(n):
        rotated = target[offset:] + target[:offset]
        for images in _search_offset(rotated, form):
            phi = Substitution(images)
            if not is_non_cancelling(form, phi, target) or phi.apply(form) != rotated:
                logger.error(f"表示未通过重新代入检查: offset={offset}")
                continue
            found.append(Representation(offset, phi))
            if limit is not None and len(found) >= limit:
                return found
    return found


def represents(w: "CyclicWord | Sequence[Letter]", u: "WicksForm | CyclicWord | Sequence[Letter]") -> bool:
    return bool(find_representations(w, u, limit=1))


def _represents_task(args: tuple[Word, Word]) -> bool:
    """工作进程：判断单个形式是否表示 w"""
    w, u = args
    return represents(w, u)


def count_representations(
    w: "CyclicWord | Sequence[Letter]", catalog: Catalog, workers: int | None = None
) -> RepresentationCount:
    """M(g, w)：目录中表示 w 的同构类个数

    Args:
        w: 循环约化单词
        catalog: 目录，完整时结果精确
        workers: 进程数，默认取设置

    Returns:
        RepresentationCount
    """
    target = letters_of(w)
    if not is_cyclically_reduced(target):
        raise NotCyclicallyReduced(f"单词不是循环约化的: {format_word(target)}")
    if not catalog.complete:
        logger.warning(f"目录不完整，M 只是下界（亏格 {catalog.genus}）")
    if not target or len(target) % 2:
        return RepresentationCount(0, catalog.complete)

    tasks = [(target, form.letters) for form in catalog.forms if len(form) <= len(target)]
    workers = get_settings().workers if workers is None else max(1, workers)
    if workers > 1 and len(tasks) > 1:
        with Pool(min(workers, len(tasks))) as pool:
            hits = pool.map(_represents_task, tasks)
    else:
        hits = [_represents_task(task) for task in tasks]
    count = sum(hits)
    logger.info(f"表示计数完成: 亏格={catalog.genus} M={count} / {len(catalog)} 类")
    return RepresentationCount(count, catalog.complete)


# ==================== 单词亏格 ====================


def genus_of_word(
    w: "CyclicWord | Sequence[Letter]",
    g_max: int = MAX_DEFAULT_GENUS,
    store: CatalogStore | None = None,
    allow_long: bool = False,
) -> GenusResult:
    """单词的亏格

    指数和非零时亏格为无穷；否则在亏格 1..g_max 的完整目录中
    找最小的能表示 w 的 g。

    Args:
        w: 非空循环约化单词
        g_max: 最大搜索亏格
        store: 目录缓存，默认按全局设置构造
        allow_long: 允许 g_max > 2

    Returns:
        GenusResult
    """
    target = letters_of(w)
    if not target:
        raise WicksError("空单词没有 Wicks 表示")
    if not is_cyclically_reduced(target):
        raise NotCyclicallyReduced(f"单词不是循环约化的: {format_word(target)}")
    if any(exponent_sums(target).values()):
        return GenusResult(GENUS_INFINITE, g_max=g_max)
    if g_max < 1:
        raise EnumerationRefused(f"g_max 必须为正: {g_max}")
    if g_max > MAX_DEFAULT_GENUS and not allow_long:
        raise EnumerationRefused(f"g_max={g_max} 需要显式允许长时间枚举")
    if store is None:
        store = default_store(allow_long=allow_long)

    for genus in range(1, g_max + 1):
        catalog = store.get(genus, maximal_only=False)
        for form in catalog.forms:
            if len(form) > len(target):
                continue
            reps = find_representations(target, form, limit=1)
            if reps:
                logger.debug(f"亏格 {genus} 的见证形式: {form}")
                return GenusResult(GENUS_FINITE, genus, g_max, form, reps[0])
        logger.debug(f"亏格 {genus} 的目录中没有表示")
    return GenusResult(GENUS_EXCEEDS, g_max=g_max)
