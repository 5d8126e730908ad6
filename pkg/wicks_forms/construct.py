"""
极大 Wicks 形式上的构造
对三正则图着色、给重心细分的有向边贴标签、沿面回路读出单词 v，
再用 Thue 无平方词把 v 变成循环无平方的 z
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import networkx as nx

from .errors import (
    AlphabetError,
    ConstructionError,
    DegreeTooHigh,
    LoopDetected,
    NonMaximalForm,
    PairingError,
)
from .log import logger
from .surface import EmbeddedGraph, WicksForm, wicks_form
from .words import (
    CyclicWord,
    Letter,
    Word,
    cyclic_factors,
    format_word,
    inverse_word,
    letters_of,
    square_free_status,
    thue_word,
)

# 最多使用的颜色数
MAX_COLORS = 4
# 每种颜色的标签 α_j, β_j, γ_j
LABELS_PER_COLOR = 3
# 字母表 B 的正字母个数
B_SIZE = MAX_COLORS * LABELS_PER_COLOR
# 每个 B 字母的变体数：1 个特殊变体 + 3 个 Thue 变体
VARIANTS = 4
LABEL_NAMES = ("α", "β", "γ")


# ==================== 字母表 B ====================


def color_of(letter: Letter) -> int:
    """B 字母的颜色 j"""
    return (abs(letter) - 1) // LABELS_PER_COLOR + 1


def kind_of(letter: Letter) -> int:
    """B 字母的种类：0=α, 1=β, 2=γ"""
    return (abs(letter) - 1) % LABELS_PER_COLOR


def b_letter(color: int, kind: int) -> int:
    return LABELS_PER_COLOR * (color - 1) + kind + 1


def legend_name(letter: Letter) -> str:
    """B 字母的符号名，如 β2 或 γ1^-1"""
    name = f"{LABEL_NAMES[kind_of(letter)]}{color_of(letter)}"
    return name if letter > 0 else f"{name}^-1"


def square_free_legend_name(letter: Letter) -> str:
    """Ê 字母的符号名，如 α1[0]"""
    base, variant = split_variant(abs(letter))
    name = f"{legend_name(base)}[{variant}]"
    return name if letter > 0 else f"{name}^-1"


def split_variant(letter_id: int) -> tuple[int, int]:
    """Ê 编号 -> (B 基底, 变体)"""
    return (letter_id - 1) // VARIANTS + 1, (letter_id - 1) % VARIANTS


def variant_id(base: int, variant: int) -> int:
    return VARIANTS * (base - 1) + variant + 1


def successor_options(letter: Letter) -> tuple[int, ...]:
    """v 中紧跟 letter 之后允许出现的字母

    正字母后面是其他颜色的负字母（9 种）；
    负字母后面只能是同色的下一个标签 α->β->γ->α。
    """
    if not 1 <= abs(letter) <= B_SIZE:
        raise AlphabetError(f"字母 {letter} 不在字母表 B 中")
    if letter > 0:
        c = color_of(letter)
        return tuple(-y for y in range(1, B_SIZE + 1) if color_of(y) != c)
    return (b_letter(color_of(letter), (kind_of(letter) + 1) % LABELS_PER_COLOR),)


# ==================== 着色 ====================


@dataclass(frozen=True)
class Coloring:
    """顶点颜色，取值 1..4"""

    colors: tuple[int, ...]

    def __getitem__(self, vertex: int) -> int:
        return self.colors[vertex]

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def used(self) -> int:
        return len(set(self.colors))

    def as_dict(self) -> dict[int, int]:
        return dict(enumerate(self.colors))


def _check_colorable(graph: EmbeddedGraph) -> None:
    loops = graph.loops()
    if loops:
        raise LoopDetected(loops[0].base, loops[0].tail[0])
    for v, degree in enumerate(graph.degrees):
        if degree > 3:
            raise DegreeTooHigh(v, degree)


def to_networkx(graph: EmbeddedGraph) -> nx.Graph:
    """底层简单图（重边合并）"""
    g = nx.Graph()
    g.add_nodes_from(range(graph.vertex_count))
    g.add_edges_from((e.tail[0], e.head[0]) for e in graph.edges)
    return g


def color_vertices(graph: EmbeddedGraph) -> Coloring:
    """贪心着色：按顶点编号依次取最小可用颜色

    Args:
        graph: 无自环、最大度数 <= 3 的嵌入图

    Returns:
        Coloring
    """
    _check_colorable(graph)
    g = to_networkx(graph)
    colors = nx.greedy_color(g, strategy=lambda G, _colors: sorted(G))
    coloring = Coloring(tuple(colors[v] + 1 for v in range(graph.vertex_count)))
    logger.debug(f"着色完成: {coloring.used} 种颜色 {coloring.colors}")
    return coloring


def is_proper(graph: EmbeddedGraph, coloring: Coloring) -> bool:
    if len(coloring) != graph.vertex_count:
        return False
    if any(not 1 <= c <= MAX_COLORS for c in coloring.colors):
        return False
    return all(coloring[e.tail[0]] != coloring[e.head[0]] for e in graph.edges)


# ==================== 构造 v ====================


@dataclass(frozen=True)
class ConstructionResult:
    """构造结果

    v 按构造顺序给出，位置 2i, 2i+1 是形式第 i 个字母的像；
    pairing 把细分边的两次经过配对。
    """

    form: WicksForm
    coloring: Coloring
    offsets: tuple[int, ...]  # 每个顶点的标签偏移
    labels: tuple[int, ...]  # 每个飞镖的 B 标签
    v: Word
    phi: dict[int, Word]  # 形式正字母 -> 长度 2 的 B 单词
    pairing: tuple[int, ...]

    @property
    def cyclic(self) -> CyclicWord:
        return CyclicWord(self.v)

    @property
    def genus(self) -> int:
        return self.form.genus


def _check_offsets(graph: EmbeddedGraph, offsets: Sequence[int]) -> tuple[int, ...]:
    offsets = tuple(offsets)
    if len(offsets) != graph.vertex_count:
        raise ConstructionError(f"偏移个数 {len(offsets)} 与顶点数 {graph.vertex_count} 不符")
    for v, o in enumerate(offsets):
        if o not in range(LABELS_PER_COLOR):
            raise ConstructionError(f"顶点 {v} 的偏移 {o} 不在 0..2 中")
    return offsets


def dart_labels(
    graph: EmbeddedGraph, coloring: Coloring, offsets: Sequence[int] | None = None
) -> tuple[int, ...]:
    """按旋转顺序给每个顶点的三个飞镖贴 α_j, β_j, γ_j

    槽位 s 上的飞镖得到第 (s + offsets[v]) mod 3 个标签，偏移缺省为 0。
    """
    if offsets is None:
        offsets = (0,) * graph.vertex_count
    return tuple(
        b_letter(
            coloring[graph.vertex_of[d]],
            (graph.slot_of[d] + offsets[graph.vertex_of[d]]) % LABELS_PER_COLOR,
        )
        for d in range(graph.gluing.n)
    )


def apply_substitution(form_word: "CyclicWord | Sequence[Letter]", phi: Mapping[int, Sequence[Letter]]) -> Word:
    """把替换作用到形式单词上（不做约化）"""
    out: list[int] = []
    for letter in letters_of(form_word):
        image = phi[abs(letter)]
        out.extend(image if letter > 0 else inverse_word(image))
    return tuple(out)


def build_v(
    form: "WicksForm | CyclicWord | Sequence[Letter]",
    coloring: Coloring | None = None,
    offsets: Sequence[int] | None = None,
) -> ConstructionResult:
    """由极大 Wicks 形式构造 v

    Args:
        form: 极大 Wicks 形式
        coloring: 可选的指定着色，须为 1..4 的正常着色
        offsets: 可选的每顶点标签偏移，取值 0..2

    Returns:
        ConstructionResult
    """
    if not isinstance(form, WicksForm):
        form = wicks_form(form)
    if not form.maximal:
        raise NonMaximalForm(f"长度 {len(form)} 不是亏格 {form.genus} 的极大长度")
    graph = form.graph
    if coloring is None:
        coloring = color_vertices(graph)
    else:
        _check_colorable(graph)
        if not is_proper(graph, coloring):
            raise ConstructionError(f"指定的着色不是正常着色: {coloring.colors}")

    offsets = _check_offsets(graph, (0,) * graph.vertex_count if offsets is None else offsets)
    labels = dart_labels(graph, coloring, offsets)
    word = graph.word
    pairing = graph.gluing.pairing
    n = len(word)

    v: list[int] = []
    phi: dict[int, Word] = {}
    for i, letter in enumerate(word):
        block = (labels[i], -labels[pairing[i]])
        v.extend(block)
        if letter > 0:
            phi[letter] = block
    v_pairing = [0] * (2 * n)
    for i in range(n):
        v_pairing[2 * i] = 2 * pairing[i] + 1
        v_pairing[2 * pairing[i] + 1] = 2 * i

    result = ConstructionResult(form, coloring, offsets, labels, tuple(v), phi, tuple(v_pairing))
    _certify(result)
    logger.info(f"构造 v 完成: 亏格={form.genus} 长度={len(v)} 颜色数={coloring.used}")
    return result


def _certify(result: ConstructionResult) -> None:
    """构造结果自检"""
    if apply_substitution(result.form.graph.word, result.phi) != result.v:
        raise ConstructionError("替换结果与 v 不一致")
    report = check_v_properties(result.v)
    if not report.passed:
        raise ConstructionError(f"v 未通过性质检查: {report.to_line()}")
    if report.genus != result.form.genus:
        raise ConstructionError(f"v 的长度对应亏格 {report.genus}，期望 {result.form.genus}")
    if not mirror_triple_free(result.v):
        raise ConstructionError("v 含有互逆的长度 3 因子")


# ==================== 性质检查 ====================


@dataclass(frozen=True)
class PropertyReport:
    """v 的性质 (i)-(iv) 检查报告"""

    passed: bool
    condition: str | None = None
    position: int | None = None
    genus: int | None = None

    def to_line(self) -> str:
        if self.passed:
            return f"PASS genus={self.genus}"
        if self.position is None:
            return f"FAIL {self.condition}"
        return f"FAIL {self.condition} {self.position}"


def check_v_properties(v: "CyclicWord | Sequence[Letter]") -> PropertyReport:
    """检查 v 的性质

    (iv) 长度为 24g-12；循环地逐位置检查：
    (i) 正字母后接异色负字母；(ii) 负字母后接同色正字母且是强制的下一个标签；
    (iii) 不出现 β^-1 α, α^-1 γ, γ^-1 β。
    """
    letters = letters_of(v)
    for letter in letters:
        if not 1 <= abs(letter) <= B_SIZE:
            raise AlphabetError(f"字母 {letter} 不在字母表 B 中")
    n = len(letters)
    if n == 0 or n % 24 != 12:
        return PropertyReport(False, "iv")

    for k in range(n):
        x, y = letters[k], letters[(k + 1) % n]
        if x > 0:
            if y > 0 or color_of(y) == color_of(x):
                return PropertyReport(False, "i", k)
            continue
        if y < 0 or color_of(y) != color_of(x):
            return PropertyReport(False, "ii", k)
        if kind_of(y) == (kind_of(x) - 1) % LABELS_PER_COLOR:
            return PropertyReport(False, "iii", k)
        if kind_of(y) != (kind_of(x) + 1) % LABELS_PER_COLOR:
            return PropertyReport(False, "ii", k)
    return PropertyReport(True, genus=(n + 12) // 24)


def mirror_triple_free(v: "CyclicWord | Sequence[Letter]") -> bool:
    """没有一个长度 3 循环因子的逆也是因子"""
    letters = letters_of(v)
    if len(letters) <= 2:
        return True
    factors = set(cyclic_factors(letters, 3))
    return not any(inverse_word(f) in factors for f in factors)


def successor_violations(v: "CyclicWord | Sequence[Letter]") -> list[int]:
    """后继不在 successor_options 中的位置"""
    letters = letters_of(v)
    n = len(letters)
    return [k for k in range(n) if letters[(k + 1) % n] not in successor_options(letters[k])]


# ==================== 无平方变体 z ====================


@dataclass(frozen=True)
class SquareFreeResult:
    """z 及其字母说明"""

    source: ConstructionResult
    z: Word
    legend: dict[int, tuple[int, int]]  # Ê 编号 -> (B 基底, 变体)

    @property
    def cyclic(self) -> CyclicWord:
        return CyclicWord(self.z)

    def project(self) -> Word:
        """投影回字母表 B"""
        return tuple((1 if x > 0 else -1) * split_variant(abs(x))[0] for x in self.z)


def build_z(result: ConstructionResult) -> SquareFreeResult:
    """把 v 的各次出现替换为变体得到循环无平方的 z

    正字母 x 的第 1 次出现取特殊变体 0，第 j 次 (j>=2) 取
    thue_word(s-1) 的第 j-1 个字母对应的变体；配对的负字母取其逆。
    """
    v, pairing = result.v, result.pairing
    n = len(v)
    if len(pairing) != n:
        raise PairingError(f"配对长度 {len(pairing)} 与 v 长度 {n} 不符")
    for i in range(n):
        if v[pairing[i]] != -v[i] or pairing[pairing[i]] != i:
            raise PairingError(f"位置 {i} 与 {pairing[i]} 的配对不一致")

    occurrences: dict[int, list[int]] = {}
    for i, letter in enumerate(v):
        if letter > 0:
            occurrences.setdefault(letter, []).append(i)

    z = [0] * n
    legend: dict[int, tuple[int, int]] = {}
    for base, positions in occurrences.items():
        thue = thue_word(len(positions) - 1)
        for j, pos in enumerate(positions):
            variant = 0 if j == 0 else thue[j - 1]
            letter_id = variant_id(base, variant)
            legend[letter_id] = (base, variant)
            z[pos] = letter_id
            z[pairing[pos]] = -letter_id

    out = SquareFreeResult(result, tuple(z), dict(sorted(legend.items())))
    if not square_free_status(out.z, cyclic=True):
        raise ConstructionError(f"z 不是循环无平方的: {format_word(out.z)}")
    logger.info(f"构造 z 完成: 长度={n} 使用 {len(legend)} 个字母")
    return out
