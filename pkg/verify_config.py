"""
批量验证配置文件
包含穷举规模、并行度、随机语料参数等
"""

# ==================== 穷举验证 ====================
DEFAULT_MAX_N = 8  # 穷举所有连通图的最大顶点数
DEFAULT_JOBS = 1  # 并行 worker 数量

# ==================== 随机语料 ====================
RANDOM_GRAPH_COUNT = 500  # 线程规范化不变性检查的随机图数量
RANDOM_GRAPH_MAX_N = 14  # 随机图最大顶点数
RANDOM_EDGE_PROBABILITY = 0.3
RANDOM_SEED = 0

# ==================== 着色检查 ====================
CHECK_COLORING = True  # 是否对 ASP / ASP-P 图检查构造性着色的调色板上界

# ==================== 日志 ====================
LOG_RECORDS = True  # 是否记录验证日志
VERIFY_LOG_FILE = "verify_log.csv"  # 验证日志文件
