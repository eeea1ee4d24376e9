"""
Core Constants for the Plate Decay Lab

This module contains all the numeric knobs used throughout the lab.
"""

# ==================== Application Info ====================
APP_TITLE = "Plate decay lab"
APP_DATA_FOLDER = "Plate decay lab"
SETTINGS_FILE_NAME = "lab_settings.json"

# ==================== Branch Point ====================
# نصف عرض الحزمة الحرجة حول ζ (بقيمة المميز) حيث تُستخدم سلسلة تايلور
CRITICAL_BAND_TOL = 1e-6
# أكبر قيمة للمتغير s = t²·disc/(4α²) يُسمح فيها بالسلسلة (بعدها الصيغ المباشرة أدق)
SERIES_MAX_ARGUMENT = 1.0
SERIES_TERMS = 14  # 1/(2k)! < 1e-20 عند k = 14
ROOT_XTOL = 1e-15
ROOT_RESIDUAL_TOL = 1e-12

# ==================== Profiles ====================
# e^{-x} تساوي صفراً عددياً عندما x > 745
UNDERFLOW_EXPONENT = 745.0
HEAT_UNDERFLOW_EXPONENT = 700.0

# ==================== Quadrature ====================
GAUSS_LEGENDRE_ORDER = 10
DEFAULT_PANEL_WIDTH = 0.125
# عرض اللوح الأقصى في الكتل الهندسية = نسبة من بداية الكتلة
PANEL_GROWTH = 0.125
DEFAULT_MAX_EVALS = 1_000_000
DEFAULT_TOL = 1e-10
# عدد العقد في الدفعة الواحدة (للتحكم في الذاكرة)
EVAL_CHUNK_NODES = 200_000
# تمديد القطع بدون شهادة ذيل
EXTENSION_MIN_RADIUS = 32.0
EXTENSION_MAX_DOUBLINGS = 48
EXTENSION_GROWTH_STREAK = 4
MAX_REFINEMENT_ROUNDS = 60

# ==================== Initial Data ====================
L11_GRID_START = 1e-6
L11_GRID_STOP = 1e3
L11_GRID_POINTS = 10_000
EDGE_EPSILON = 0.25

# ==================== Time Grids ====================
TIME_GRID_START = 10.0
TIME_GRID_RATIO = 1.25
T_MAX_REGULARITY_LOSS = 1e3
T_MAX_HEAT = 1e4
MID_RATE_T_START = 20.0
MID_RATE_T_STOP = 200.0
MID_RATE_POINTS = 37

# ==================== Slope Checks ====================
SLOPE_TOLERANCE = 0.15
HEAT_SLOPE_TOLERANCE = 0.1
FIT_MIN_POINTS = 10
FIT_R2_FLOOR = 0.98
MID_RATE_FLOOR = 0.05
MID_RATE_MAX_REL_STDERR = 0.05
# سماحية السلاسل الزمنية: نسبية على المعيار، والمطلقة صغيرة جداً لأن المعايير تصل 1e−13
SERIES_RTOL = 1e-3
SERIES_ABS_TOL = 1e-30
SCENARIO_MAX_EVALS = 50_000_000

# ==================== Oracles ====================
ODE_T_END = 50.0
ODE_BASE_STEP = 1e-3
ODE_STEP_SCALE = 2.5e-3  # step = min(ODE_BASE_STEP, ODE_STEP_SCALE / max(1, r))
ODE_REL_TOL = 1e-6
ODE_HALVING_TOL = 1e-9
LEMMA_T_GRID_STOP = 1e4
LEMMA47_GRID = (1e-6, 10.0)
SINC_REL_TOL = 1e-3

# ==================== Exit Codes ====================
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
