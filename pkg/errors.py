"""
异常定义
库代码只负责抛出，命令行入口负责捕获并映射为退出码
"""


class AspKitError(Exception):
    """所有 asp-kit 异常的基类"""


class SizeLimitExceeded(AspKitError):
    """输入超过暴力算法的规模上限"""

    def __init__(self, size, limit, what="顶点数"):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} {size} 超过上限 {limit}")


class PreconditionViolated(AspKitError):
    """调用前置条件不满足"""


class NotV3C(PreconditionViolated):
    """图不是虚拟 3-连通的"""


class NotTriconnected(PreconditionViolated):
    """图不是 3-连通的"""


class NotTwoConnected(PreconditionViolated):
    """图不是 2-连通的"""


class NotCubic(PreconditionViolated):
    """图不是 3-正则的"""


class TagMismatch(PreconditionViolated):
    """图与给定的族标签不匹配"""


class ParallelThreads(PreconditionViolated):
    """同一窗口上存在两条平行线程"""

    def __init__(self, window):
        self.window = window
        super().__init__(f"窗口 {sorted(map(str, window))} 上存在平行线程")


class NotASPInput(PreconditionViolated):
    """输入本身已包含禁止的 K4 细分"""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"输入不是 ASP 图（形状 {witness.shape.value}）")


class ParameterError(AspKitError):
    """生成器参数越界"""


class GraphFormatError(AspKitError):
    """图文件格式错误"""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        prefix = f"第 {line_number} 行: " if line_number is not None else ""
        super().__init__(prefix + message)


class InvalidWitness(AspKitError):
    """禁止子图见证未通过独立校验"""


class InconsistentVerdict(AspKitError):
    """分类器判定为 ASP，但构造性着色走到了 NotASP 分支"""


class ColoringOutcome(AspKitError):
    """着色算法的非正常结果"""

    def __init__(self, message, coloring=None, witness=None):
        self.coloring = coloring
        self.witness = witness
        super().__init__(message)


class NotASP(ColoringOutcome):
    """输入不是 ASP 图"""


class NotASPP(ColoringOutcome):
    """输入不是 ASP-P 图"""


class K6Exception(ColoringOutcome):
    """输入包含 K6，不可 5-着色"""


class K5Exception(ColoringOutcome):
    """输入包含 K5，不可 4-着色"""
