"""
Wicks 形式枚举
按首次出现顺序从左到右构造单词，用角轨道约束剪枝，
叶子处按亏格过滤并取规范形去重，结果保存为目录文件
"""

import time
from collections.abc import Iterable
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path

import pandas as pd

from .config import get_settings
from .errors import CatalogFormatError, EnumerationRefused, WordFormatError
from .log import logger
from .surface import (
    canonical_form,
    glue,
    max_length,
    min_length,
    relabelled_rotations,
    topological_genus,
    validate_wicks,
)
from .words import CyclicWord, Word, format_word, parse_word, word_key

# 不加 allow_long 时允许的最大亏格
MAX_DEFAULT_GENUS = 2
# 即使加 allow_long 也拒绝的亏格
MAX_GENUS = 3
# 每隔多少个节点检查一次时间预算
DEADLINE_CHECK_INTERVAL = 4096

CATALOG_MAGIC = "wicks-catalog"


@dataclass(frozen=True)
class Catalog:
    """某一亏格 Wicks 形式同构类的规范代表集合"""

    genus: int
    maximal_only: bool
    forms: tuple[CyclicWord, ...] = ()  # 按字典序排列的规范形
    complete: bool = False  # 是否穷尽枚举

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)


# ==================== 深度优先搜索 ====================


class OrbitSearch:
    """单一长度上的 Wicks 形式搜索

    位置 i 上打开的基底在位置 k 关闭时，角置换获得两条边
    σ(i) = (k+1) mod n 与 σ(k) = i+1。搜索维护这些部分链，
    保证每个闭合轨道大小在 [3, 上限] 内，且剩余飞镖足以组成缺少的顶点。
    """

    def __init__(self, length: int, genus: int, deadline: float | None = None):
        self.n = length
        self.edges = length // 2
        self.genus = genus
        # 目标顶点数 v = e + 1 - 2g
        self.target = self.edges + 1 - 2 * genus
        self.deadline = deadline
        self.word = [0] * length
        self.k = 0
        self.opened: dict[int, int] = {}
        self.next_base = 1
        self.succ = [-1] * length
        self.pred = [-1] * length
        self.cycles = 0
        self.cycle_darts = 0
        self._history: list[tuple] = []
        self.nodes = 0
        self.timed_out = False
        self.found: set[Word] = set()

    # ---------- 角置换的链 ----------

    def _link(self, a: int, b: int) -> bool:
        """加入 σ(a) = b，返回状态是否仍可行"""
        self.succ[a] = b
        self.pred[b] = a
        size = 1
        x = b
        while x != a and x != -1:
            x = self.succ[x]
            size += 1
        closed = x == a
        if not closed:
            # 越过链尾多计了一次
            size -= 1
            x = a
            while x != -1:
                size += 1
                x = self.pred[x]
        left = self.target - self.cycles
        remaining = self.n - self.cycle_darts
        cap = remaining - 3 * (left - 1)
        if closed:
            self.cycles += 1
            self.cycle_darts += size
        self._history.append(("link", a, b, closed, size))
        if size > cap:
            return False
        if not closed:
            return True
        if size < 3 or self.cycles > self.target:
            return False
        left -= 1
        remaining -= size
        if left == 0:
            return remaining == 0
        return 3 * left <= remaining

    def _unlink(self) -> None:
        _, a, b, closed, size = self._history.pop()
        self.succ[a] = -1
        self.pred[b] = -1
        if closed:
            self.cycles -= 1
            self.cycle_darts -= size

    # ---------- 放置字母 ----------

    def push(self, letter: int) -> bool:
        """在当前位置放置字母，返回是否可行（不可行时仍需 pop）"""
        k = self.k
        self.word[k] = letter
        self.k += 1
        if letter > 0:
            self.opened[letter] = k
            self.next_base += 1
            self._history.append(("open", letter))
            return True
        i = self.opened.pop(-letter)
        self._history.append(("close", -letter, i))
        ok = self._link(i, (k + 1) % self.n)
        # 第二条边无论可行与否都加入，保证 pop 对称
        return self._link(k, i + 1) and ok

    def pop(self) -> None:
        while self._history[-1][0] == "link":
            self._unlink()
        entry = self._history.pop()
        self.k -= 1
        self.word[self.k] = 0
        if entry[0] == "open":
            del self.opened[entry[1]]
            self.next_base -= 1
        else:
            self.opened[entry[1]] = entry[2]

    def choices(self) -> list[int]:
        remaining = self.n - self.k
        options = [-b for b in sorted(self.opened)]
        if self.next_base <= self.edges and len(self.opened) + 1 <= remaining - 1:
            options.append(self.next_base)
        return options

    # ---------- 搜索 ----------

    def _out_of_time(self) -> bool:
        self.nodes += 1
        # 第 1 个节点起每隔固定节点数检查一次
        if self.deadline is None or self.nodes % DEADLINE_CHECK_INTERVAL != 1:
            return False
        if time.monotonic() > self.deadline:
            self.timed_out = True
        return self.timed_out

    def _leaf(self) -> None:
        word = tuple(self.word)
        if topological_genus(word) != self.genus:
            return
        self.found.add(canonical_form(word).letters)

    def run(self) -> None:
        if self.timed_out or self._out_of_time():
            return
        if self.k == self.n:
            self._leaf()
            return
        for letter in self.choices():
            if self.push(letter):
                self.run()
            self.pop()
            if self.timed_out:
                return

    def prefixes(self, depth: int) -> list[Word]:
        """收集长度为 depth 的所有可行前缀"""
        result: list[Word] = []

        def walk():
            if self.k == depth or self.k == self.n:
                result.append(tuple(self.word[: self.k]))
                return
            for letter in self.choices():
                if self.push(letter):
                    walk()
                self.pop()

        walk()
        return result


def _search_prefix(task: tuple[int, int, Word, float | None]) -> tuple[list[Word], bool]:
    """工作进程：从给定前缀继续搜索"""
    length, genus, prefix, deadline = task
    search = OrbitSearch(length, genus, deadline)
    for letter in prefix:
        if not search.push(letter):
            return [], True
    search.run()
    return sorted(search.found, key=word_key), not search.timed_out


# ==================== 枚举入口 ====================


def _check_request(genus: int, maximal_only: bool, length_range, allow_long: bool) -> list[int]:
    """检查参数并返回要搜索的长度列表"""
    if genus < 1:
        raise EnumerationRefused(f"亏格必须为正: {genus}")
    if genus > MAX_GENUS:
        raise EnumerationRefused(f"不支持亏格 {genus} 的枚举（上限 {MAX_GENUS}）")
    if genus > MAX_DEFAULT_GENUS and not allow_long:
        raise EnumerationRefused(f"亏格 {genus} 的枚举耗时很长，需要显式允许 (allow_long)")
    lo, hi = min_length(genus), max_length(genus)
    if length_range is not None:
        a, b = length_range
        if a % 2 or b % 2:
            raise EnumerationRefused(f"长度必须为偶数: [{a}, {b}]")
        if a > b or a < lo or b > hi:
            raise EnumerationRefused(f"长度范围 [{a}, {b}] 超出 [{lo}, {hi}]")
        lo, hi = a, b
    if maximal_only:
        top = max_length(genus)
        return [top] if lo <= top <= hi else []
    return list(range(lo, hi + 1, 2))


def enumerate_wicks(
    genus: int,
    maximal_only: bool = False,
    length_range: tuple[int, int] | None = None,
    *,
    workers: int | None = None,
    allow_long: bool = False,
    time_budget: float | None = None,
) -> Catalog:
    """枚举给定亏格的全部 Wicks 形式同构类

    Args:
        genus: 亏格 g >= 1
        maximal_only: 只枚举长度 12g-6 的极大形式
        length_range: 可选的 [最小, 最大] 偶数长度范围
        workers: 进程数，默认取设置中的 workers，1 表示单进程
        allow_long: 允许亏格 3 的长时间枚举；亏格 >= 4 无论如何都拒绝 (EnumerationRefused)
        time_budget: 时间预算（秒），超时则返回不完整目录

    Returns:
        Catalog
    """
    lengths = _check_request(genus, maximal_only, length_range, allow_long)
    settings = get_settings()
    workers = settings.workers if workers is None else max(1, workers)
    deadline = time.monotonic() + time_budget if time_budget is not None else None

    started = time.monotonic()
    logger.info(f"开始枚举: 亏格={genus} 极大={maximal_only} 长度={lengths} 进程数={workers}")
    found: set[Word] = set()
    complete = True
    for length in lengths:
        if workers == 1:
            search = OrbitSearch(length, genus, deadline)
            search.run()
            found |= search.found
            complete &= not search.timed_out
        else:
            forms, done = _parallel_search(length, genus, deadline, workers, settings.partition_depth)
            found |= forms
            complete &= done
        logger.debug(f"长度 {length} 完成，累计 {len(found)} 类")

    # 指定了更窄的长度范围时不视为完整目录
    full = _check_request(genus, maximal_only, None, True)
    complete = complete and lengths == full
    if not complete:
        logger.warning(f"亏格 {genus} 的目录不完整（超时或长度范围受限）")
    catalog = catalog_from_words(genus, maximal_only, found, complete)
    logger.info(f"枚举结束: 亏格={genus} 共 {len(catalog)} 类，用时 {time.monotonic() - started:.2f}s")
    return catalog


def _parallel_search(
    length: int, genus: int, deadline: float | None, workers: int, depth: int
) -> tuple[set[Word], bool]:
    """按固定深度前缀划分搜索树并合并结果"""
    prefixes = OrbitSearch(length, genus).prefixes(min(depth, length))
    tasks = [(length, genus, p, deadline) for p in prefixes]
    logger.debug(f"长度 {length}: {len(tasks)} 个前缀任务")
    found: set[Word] = set()
    complete = True
    with Pool(min(workers, max(1, len(tasks)))) as pool:
        for forms, done in pool.map(_search_prefix, tasks):
            found.update(forms)
            complete &= done
    return found, complete


def brute_force_classes(genus: int, length: int) -> set[CyclicWord]:
    """独立的暴力枚举：遍历全部带符号配对，仅用于小规模核对"""
    edges = length // 2
    classes: set[CyclicWord] = set()

    def pairings(free: list[int]):
        if not free:
            yield []
            return
        first = free[0]
        for j in free[1:]:
            rest = [x for x in free if x != first and x != j]
            for tail in pairings(rest):
                yield [(first, j)] + tail

    for pairs in pairings(list(range(length))):
        for signs in range(2**edges):
            word = [0] * length
            for b, (i, j) in enumerate(pairs, start=1):
                s = -1 if signs >> (b - 1) & 1 else 1
                word[i], word[j] = s * b, -s * b
            report = validate_wicks(word)
            if report.passed and report.genus == genus:
                classes.add(canonical_form(word))
    return classes


# ==================== 目录统计 ====================


def rooted_count(catalog: Catalog) -> int:
    """有根单面图个数：各类不同重新编号旋转数之和"""
    return sum(len(relabelled_rotations(form)) for form in catalog.forms)


def catalog_summary(catalog: Catalog) -> pd.DataFrame:
    """按长度汇总目录: length, vertices, classes, rooted"""
    rows = []
    for form in catalog.forms:
        rows.append(
            {
                "length": len(form),
                "vertices": glue(form).vertex_count,
                "rooted": len(relabelled_rotations(form)),
            }
        )
    if not rows:
        return pd.DataFrame(columns=["length", "vertices", "classes", "rooted"])
    df = pd.DataFrame(rows)
    summary = (
        df.groupby(["length", "vertices"], as_index=False)
        .agg(classes=("rooted", "size"), rooted=("rooted", "sum"))
        .sort_values("length")
        .reset_index(drop=True)
    )
    return summary[["length", "vertices", "classes", "rooted"]]


# ==================== 目录文件 ====================


def format_header(catalog: Catalog) -> str:
    return (
        f"{CATALOG_MAGIC} genus={catalog.genus} maximal={int(catalog.maximal_only)} "
        f"complete={int(catalog.complete)} count={len(catalog.forms)}"
    )


def write_catalog(path: str | Path, catalog: Catalog) -> None:
    """写出目录文件"""
    lines = [format_header(catalog)] + [format_word(form) for form in catalog.forms]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"目录已保存: {path}（{len(catalog.forms)} 类）")


def _parse_header(line: str) -> dict[str, int]:
    parts = line.split()
    if not parts or parts[0] != CATALOG_MAGIC:
        raise CatalogFormatError(f"缺少 {CATALOG_MAGIC} 文件头", line=1)
    fields: dict[str, int] = {}
    for part in parts[1:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise CatalogFormatError(f"无法解析的文件头字段: {part!r}", line=1)
        try:
            fields[key] = int(value)
        except ValueError:
            raise CatalogFormatError(f"文件头字段 {key} 不是整数: {value!r}", line=1) from None
    for key in ("genus", "maximal", "complete", "count"):
        if key not in fields:
            raise CatalogFormatError(f"文件头缺少 {key}", line=1)
    if fields["genus"] < 1 or fields["maximal"] not in (0, 1) or fields["complete"] not in (0, 1):
        raise CatalogFormatError("文件头取值非法", line=1)
    return fields


def parse_catalog(text: str) -> Catalog:
    """解析并校验目录文本"""
    lines = text.splitlines()
    if not lines:
        raise CatalogFormatError("空文件", line=1)
    header = _parse_header(lines[0])
    genus, maximal = header["genus"], bool(header["maximal"])

    forms: list[CyclicWord] = []
    previous = None
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            word = parse_word(line)
        except WordFormatError as e:
            raise CatalogFormatError(str(e), line=lineno) from None
        report = validate_wicks(word)
        if not report.passed:
            raise CatalogFormatError(f"不是 Wicks 形式 ({report.to_line()})", line=lineno)
        if report.genus != genus:
            raise CatalogFormatError(f"亏格为 {report.genus}，与文件头 {genus} 不符", line=lineno)
        if maximal and not report.maximal:
            raise CatalogFormatError(f"长度 {len(word)} 不是极大长度", line=lineno)
        if canonical_form(word).letters != word:
            raise CatalogFormatError("不是规范形", line=lineno)
        key = word_key(word)
        if previous is not None and key <= previous:
            raise CatalogFormatError("条目未按字典序排列或有重复", line=lineno)
        previous = key
        forms.append(CyclicWord(word))

    if len(forms) != header["count"]:
        raise CatalogFormatError(f"文件头 count={header['count']}，实际 {len(forms)} 条", line=1)
    return Catalog(genus, maximal, tuple(forms), bool(header["complete"]))


def read_catalog(path: str | Path) -> Catalog:
    """读取目录文件"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CatalogFormatError(f"无法读取目录文件 {path}: {e}") from None
    return parse_catalog(text)


def catalog_io(path: str | Path, mode: str, catalog: Catalog | None = None) -> Catalog | None:
    """目录读写

    Args:
        path: 文件路径
        mode: "read" 或 "write"
        catalog: 写模式下要保存的目录
    """
    if mode == "read":
        return read_catalog(path)
    if mode == "write":
        if catalog is None:
            raise ValueError("写模式需要提供目录")
        write_catalog(path, catalog)
        return None
    raise ValueError(f"未知模式: {mode}")


# ==================== 目录缓存 ====================


@dataclass
class CatalogStore:
    """按 (亏格, 是否极大) 缓存目录，可选落盘"""

    directory: Path | None = None
    workers: int | None = None
    allow_long: bool = False
    _cache: dict[tuple[int, bool], Catalog] = field(default_factory=dict)

    def _path(self, genus: int, maximal_only: bool) -> Path | None:
        if self.directory is None:
            return None
        kind = "max" if maximal_only else "full"
        return self.directory / f"genus{genus}_{kind}.cat"

    def put(self, catalog: Catalog) -> None:
        self._cache[(catalog.genus, catalog.maximal_only)] = catalog

    def get(self, genus: int, maximal_only: bool = False) -> Catalog:
        """取目录：内存缓存 > 磁盘缓存 > 现场枚举"""
        key = (genus, maximal_only)
        if key in self._cache:
            logger.debug(f"目录缓存命中: 亏格={genus} 极大={maximal_only}")
            return self._cache[key]
        path = self._path(genus, maximal_only)
        if path is not None and path.exists():
            try:
                catalog = read_catalog(path)
                if catalog.complete:
                    logger.debug(f"从磁盘加载目录: {path}")
                    self._cache[key] = catalog
                    return catalog
                logger.warning(f"磁盘目录不完整，重新枚举: {path}")
            except CatalogFormatError as e:
                logger.warning(f"磁盘目录无效，重新枚举: {e}")
        catalog = enumerate_wicks(
            genus, maximal_only, workers=self.workers, allow_long=self.allow_long
        )
        self._cache[key] = catalog
        if path is not None and catalog.complete:
            path.parent.mkdir(parents=True, exist_ok=True)
            write_catalog(path, catalog)
        return catalog


def default_store(**kwargs) -> CatalogStore:
    """以全局设置中的 catalog_dir 构造缓存"""
    settings = get_settings()
    kwargs.setdefault("directory", settings.catalog_dir)
    return CatalogStore(**kwargs)


def catalog_from_words(genus: int, maximal_only: bool, words: Iterable[Word], complete: bool) -> Catalog:
    """由任意单词构造目录（取规范形、排序、去重）"""
    forms = {canonical_form(w).letters for w in words}
    return Catalog(
        genus, maximal_only, tuple(CyclicWord(w) for w in sorted(forms, key=word_key)), complete
    )
