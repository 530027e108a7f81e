"""
asp-kit 配置
图识别、分解与着色算法的边界参数
"""
import os
import sys

from dotenv import load_dotenv

# 加载 .env（可覆盖 Oracle 规模上限）
load_dotenv()

# ==================== 暴力 Oracle ====================
ORACLE_VERTEX_LIMIT = 40  # 顶点数上限（线程规范化之后）
ORACLE_PRUNE = False  # True=按骨架形状剪枝搜索，False=完整枚举（基准真值）

_env_limit = os.getenv('ASP_KIT_ORACLE_LIMIT')
if _env_limit:
    try:
        ORACLE_VERTEX_LIMIT = int(_env_limit)
    except ValueError:
        print(f"警告：ASP_KIT_ORACLE_LIMIT={_env_limit!r} 不是整数，使用默认值 {ORACLE_VERTEX_LIMIT}",
              file=sys.stderr)

# ==================== 同构与枚举 ====================
ISOMORPHISM_LIMIT = 12  # is_isomorphic_small 的顶点数上限
SMALL_GRAPH_LIMIT = 8  # enumerate_small_graphs 的 n 上限

# ==================== 分类器 ====================
SMALL_SKELETON_LIMIT = 6  # |V*| 不超过此值时交给 Oracle 判定
MIN_KE3R_R = 4  # K_{3,r} ⊆ G ⊆ D̃_r 族的最小 r
MIN_WHEEL_R = 6  # S_r ⊆ G ⊆ W̃_r 族与轮图族的最小 r

# ==================== 着色 ====================
ASP_PALETTE = 5
ASPP_PALETTE = 4
EXACT_COLORING_LIMIT = 60  # 精确色数求解的顶点数上限
BOUNDARY_ENUMERATION_LIMIT = 30  # 边界模式枚举的顶点数上限

# ==================== 输出 ====================
REPORT_STREAM_FILE = "reports.ndjson"
CORPUS_MANIFEST_FILE = "manifest.csv"
