"""
Wicks 形式工具包异常定义
所有库函数抛出的异常都继承自 WicksError，命令行层据此映射退出码
"""


class WicksError(Exception):
    """Wicks 工具包异常基类"""

    pass


class WordFormatError(WicksError):
    """单词文本格式错误（非整数或 0）"""

    pass


class NotCyclicallyReduced(WicksError):
    """输入单词不是循环约化的"""

    pass


class GluingError(WicksError):
    """不满足条件 (i)，无法粘合成曲面"""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class InvalidWicksForm(WicksError):
    """单词不是 Wicks 形式，携带校验报告"""

    def __init__(self, report):
        super().__init__(f"不是 Wicks 形式: {report.to_line()}")
        self.report = report


class InconsistentGenus(WicksError):
    """欧拉公式分子为奇数（可定向粘合中不可能出现）"""

    pass


class LoopDetected(WicksError):
    """图中存在自环，无法正常着色"""

    def __init__(self, base: int, vertex: int):
        super().__init__(f"边 a{base} 是顶点 {vertex} 上的自环")
        self.base = base
        self.vertex = vertex


class DegreeTooHigh(WicksError):
    """顶点度数超过 3"""

    def __init__(self, vertex: int, degree: int):
        super().__init__(f"顶点 {vertex} 的度数为 {degree}，超过 3")
        self.vertex = vertex
        self.degree = degree


class NonMaximalForm(WicksError):
    """构造要求极大 Wicks 形式"""

    pass


class AlphabetError(WicksError):
    """字母不属于要求的字母表"""

    pass


class PairingError(WicksError):
    """位置配对与字母不一致"""

    pass


class ConstructionError(WicksError):
    """构造结果未通过自检（内部错误）"""

    pass


class EnumerationRefused(WicksError):
    """枚举参数超出允许范围"""

    pass


class CatalogFormatError(WicksError):
    """目录文件解析或校验失败"""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"第 {line} 行: {message}"
        super().__init__(message)
        self.line = line


class BudgetExceeded(WicksError):
    """精确阶乘超出预算，应改用对数模式"""

    pass


class PrecisionExhausted(WicksError):
    """提高到最大精度仍无法判定"""

    pass
