"""
曲面粘合
把循环单词看作多边形的边界，粘合同名边得到带单一面的嵌入图，
并据此校验 Wicks 条件、计算亏格、判定极大性与求规范形
"""

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import GluingError, InconsistentGenus, InvalidWicksForm
from .log import logger
from .words import CyclicWord, Letter, Word, format_word, letters_of, word_key

# 条件编号
CONDITION_OCCURRENCE = "i"  # 每个基底恰好正负各出现一次
CONDITION_REDUCED = "ii"  # 循环约化
CONDITION_MIRROR = "iii"  # 长度 2 因子的逆不是因子


# ==================== 数据类型 ====================


@dataclass(frozen=True)
class ValidationReport:
    """Wicks 条件校验报告"""

    passed: bool
    condition: str | None = None  # 首个失败条件: i / ii / iii
    position: int | None = None  # 见证位置
    genus: int | None = None  # 通过时的亏格
    maximal: bool | None = None  # 通过时是否极大

    def to_line(self) -> str:
        """序列化为 PASS / FAIL <条件> <位置>"""
        if self.passed:
            return "PASS"
        return f"FAIL {self.condition} {self.position}"


@dataclass(frozen=True)
class GluingStructure:
    """位置配对与角轨道"""

    n: int  # 单词长度
    pairing: tuple[int, ...]  # 位置 i 与其逆字母所在位置
    corner_orbits: tuple[tuple[int, ...], ...]  # i -> (pairing(i)+1) mod n 的轮换


@dataclass(frozen=True)
class Edge:
    """嵌入图的一条边，沿正字母方向从 tail 指向 head"""

    base: int
    tail: tuple[int, int]  # (顶点, 槽位)
    head: tuple[int, int]


@dataclass(frozen=True)
class EmbeddedGraph:
    """带旋转系统的嵌入图

    飞镖 i 是单词第 i 个字母在其起点处的出边，
    每个顶点的旋转就是其角轨道的循环顺序。
    """

    word: Word  # 粘合所用的代表元
    gluing: GluingStructure
    vertices: tuple[tuple[int, ...], ...]  # 每个顶点按旋转顺序排列的飞镖
    vertex_of: tuple[int, ...]  # 飞镖所在顶点
    slot_of: tuple[int, ...]  # 飞镖在顶点旋转中的槽位
    edges: tuple[Edge, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(rotation) for rotation in self.vertices)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def dart_letter(self, dart: int) -> Letter:
        return self.word[dart]

    def rotation_next(self, dart: int) -> int:
        """同一顶点上旋转顺序的下一个飞镖"""
        rotation = self.vertices[self.vertex_of[dart]]
        return rotation[(self.slot_of[dart] + 1) % len(rotation)]

    def face_step(self, dart: int) -> int:
        """沿面边界走到下一个飞镖"""
        return self.rotation_next(self.gluing.pairing[dart])

    def loops(self) -> list[Edge]:
        return [e for e in self.edges if e.tail[0] == e.head[0]]


@dataclass(frozen=True)
class WicksForm:
    """已校验的 Wicks 形式及其粘合图"""

    word: CyclicWord
    graph: EmbeddedGraph
    genus: int
    maximal: bool

    def __len__(self) -> int:
        return len(self.word)


# ==================== 粘合 ====================


def occurrence_violation(word: Sequence[Letter]) -> int | None:
    """条件 (i) 的首个违例位置，满足时返回 None"""
    counts = Counter(word)
    for i, letter in enumerate(word):
        if counts[letter] != 1 or counts[-letter] != 1:
            return i
    return None


def pairing_of(word: Sequence[Letter]) -> tuple[int, ...]:
    """每个位置与其逆字母位置的配对"""
    bad = occurrence_violation(word)
    if bad is not None:
        raise GluingError(
            f"位置 {bad} 的字母 {word[bad]} 不满足正负各出现一次，无法粘合", position=bad
        )
    where = {letter: i for i, letter in enumerate(word)}
    return tuple(where[-letter] for letter in word)


def corner_orbits(pairing: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """i -> (pairing(i)+1) mod n 的轮换，按最小元排序，每个轮换从最小元开始"""
    n = len(pairing)
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        i = start
        while not seen[i]:
            seen[i] = True
            orbit.append(i)
            i = (pairing[i] + 1) % n
        orbits.append(tuple(orbit))
    return tuple(orbits)


def glue(word: "CyclicWord | Sequence[Letter]") -> EmbeddedGraph:
    """粘合同名边，得到单面嵌入图

    Args:
        word: 满足条件 (i) 的非空单词

    Returns:
        EmbeddedGraph，其 gluing 字段为配对与角轨道
    """
    letters = letters_of(word)
    if not letters:
        raise GluingError("空单词无法粘合")
    pairing = pairing_of(letters)
    orbits = corner_orbits(pairing)
    n = len(letters)
    vertex_of = [0] * n
    slot_of = [0] * n
    for v, orbit in enumerate(orbits):
        for s, dart in enumerate(orbit):
            vertex_of[dart] = v
            slot_of[dart] = s

    edges = []
    for i, letter in enumerate(letters):
        if letter < 0:
            continue
        # 正字母 i 的终点角与 pairing(i) 同轨道
        j = pairing[i]
        edges.append(Edge(letter, (vertex_of[i], slot_of[i]), (vertex_of[j], slot_of[j])))
    edges.sort(key=lambda e: e.base)

    return EmbeddedGraph(
        word=letters,
        gluing=GluingStructure(n, pairing, orbits),
        vertices=orbits,
        vertex_of=tuple(vertex_of),
        slot_of=tuple(slot_of),
        edges=tuple(edges),
    )


def face_trace(graph: EmbeddedGraph, start: int = 0) -> Word:
    """从飞镖 start 出发读出所在面的边界单词"""
    letters = []
    dart = start
    while True:
        letters.append(graph.dart_letter(dart))
        dart = graph.face_step(dart)
        if dart == start:
            break
    return tuple(letters)


def face_count(graph: EmbeddedGraph) -> int:
    """旋转系统的面数"""
    n = graph.gluing.n
    seen = [False] * n
    faces = 0
    for start in range(n):
        if seen[start]:
            continue
        faces += 1
        dart = start
        while not seen[dart]:
            seen[dart] = True
            dart = graph.face_step(dart)
    return faces


def genus_of_graph(graph: EmbeddedGraph) -> int:
    numerator = 1 + graph.edge_count - graph.vertex_count
    if numerator % 2:
        raise InconsistentGenus(
            f"欧拉公式分子为奇数: e={graph.edge_count} v={graph.vertex_count}"
        )
    return numerator // 2


def topological_genus(word: "CyclicWord | Sequence[Letter]") -> int:
    """粘合曲面的亏格 g = (1 + e - v) / 2"""
    return genus_of_graph(glue(word))


def is_maximal(word: "CyclicWord | Sequence[Letter]") -> bool:
    """长度是否等于 12g - 6"""
    letters = letters_of(word)
    return len(letters) == max_length(topological_genus(letters))


def min_length(genus: int) -> int:
    return 4 * genus


def max_length(genus: int) -> int:
    return 12 * genus - 6


# ==================== Wicks 条件 ====================


def validate_wicks(word: "CyclicWord | Sequence[Letter]") -> ValidationReport:
    """校验 Wicks 条件 (i)-(iii)

    先检查 (i)；再按位置 k 依次检查 (ii) 与 (iii)，报告首个违例。

    Args:
        word: 待校验单词，位置按给定代表元计

    Returns:
        ValidationReport
    """
    letters = letters_of(word)
    n = len(letters)
    if n == 0:
        return ValidationReport(True, genus=0, maximal=False)

    bad = occurrence_violation(letters)
    if bad is not None:
        return ValidationReport(False, CONDITION_OCCURRENCE, bad)

    factors = {(letters[k], letters[(k + 1) % n]) for k in range(n)}
    for k in range(n):
        x, y = letters[k], letters[(k + 1) % n]
        if x == -y:
            return ValidationReport(False, CONDITION_REDUCED, k)
        if (-y, -x) in factors:
            return ValidationReport(False, CONDITION_MIRROR, k)

    graph = glue(letters)
    genus = genus_of_graph(graph)
    if min(graph.degrees) < 3:
        # 条件 (ii)(iii) 成立时不可能出现度数 1 或 2 的顶点
        logger.error(f"校验通过但存在低度顶点: {format_word(letters)}")
    return ValidationReport(True, genus=genus, maximal=n == max_length(genus))


def wicks_form(word: "CyclicWord | Sequence[Letter]") -> WicksForm:
    """校验并粘合，失败时抛出 InvalidWicksForm"""
    cyclic = word if isinstance(word, CyclicWord) else CyclicWord(tuple(word))
    report = validate_wicks(cyclic)
    if not report.passed or not len(cyclic):
        raise InvalidWicksForm(report)
    graph = glue(cyclic)
    return WicksForm(cyclic, graph, report.genus, bool(report.maximal))


# ==================== 规范形 ====================


def relabel(word: Sequence[Letter]) -> Word:
    """按首次出现顺序重新编号基底，首次出现取正号"""
    ids: dict[int, int] = {}
    out = []
    for letter in word:
        base = abs(letter)
        if base not in ids:
            ids[base] = (len(ids) + 1) * (1 if letter > 0 else -1)
        new = ids[base]
        out.append(new if letter > 0 else -new)
    return tuple(out)


def relabelled_rotations(word: "CyclicWord | Sequence[Letter]") -> set[Word]:
    """所有旋转重新编号后的不同结果（即有根单面图的个数）"""
    letters = letters_of(word)
    return {relabel(letters[i:] + letters[:i]) for i in range(len(letters))}


def canonical_form(word: "CyclicWord | Sequence[Letter]") -> CyclicWord:
    """同构类的规范代表：所有旋转重新编号后取字典序最小者"""
    letters = letters_of(word)
    bad = occurrence_violation(letters)
    if bad is not None:
        raise GluingError(f"位置 {bad} 不满足条件 (i)，规范形无定义", position=bad)
    if not letters:
        return CyclicWord(())
    return CyclicWord(min(relabelled_rotations(letters), key=word_key))


def automorphism_order(word: "CyclicWord | Sequence[Letter]") -> int:
    """单面图的旋转对称阶"""
    letters = letters_of(word)
    if not letters:
        return 1
    return len(letters) // len(relabelled_rotations(letters))


def is_isomorphic(a: "CyclicWord | Sequence[Letter]", b: "CyclicWord | Sequence[Letter]") -> bool:
    return canonical_form(a) == canonical_form(b)


def format_graph(graph: EmbeddedGraph) -> list[str]:
    """图的文本形式：概要行加每个顶点的旋转行"""
    degrees = ",".join(str(d) for d in graph.degrees)
    lines = [f"v={graph.vertex_count} e={graph.edge_count} degrees={degrees}"]
    for v, rotation in enumerate(graph.vertices):
        lines.append(f"vertex {v}: {format_word(graph.dart_letter(d) for d in rotation)}")
    return lines
