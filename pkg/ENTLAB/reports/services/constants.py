# reports/services/constants.py
"""
회귀 비교용 기준값 표

출처: 예제 상태 λ0=√5/3, λ2=1/√3, λ3=1/3, λ1=λ4=0, φ=0 에 대해 발표된 값을
소수 5자리로 옮긴 것. 값을 바꿀 때는 VERSION 을 올린다.
"""
from measures.services.params import ALPHA_MIN

VERSION = 1
TOLERANCE = 1e-5

# which → (measure, index, (A|BC, AB, AC))
EXAMPLES: dict[int, tuple[str, float, tuple[float, float, float]]] = {
    1: ("tsallis", 2.0, (0.49383, 0.37037, 0.12346)),
    2: ("renyi", 2.0, (0.98230, 0.66742, 0.19010)),
    3: ("renyi", ALPHA_MIN, (0.99265, 0.83477, 0.41466)),
}

LABELS = ("A|BC", "AB", "AC")

# which → (measure, index, regime, 지수 축 시작, 끝)
FIGURES: dict[int, tuple[str, float, str, float, float]] = {
    1: ("tsallis", 2.0, "TsallisQ2to3", 1.0, 3.0),
    2: ("renyi", 2.0, "RenyiGE2", 1.0, 4.0),
    3: ("renyi", ALPHA_MIN, "RenyiWindow", 2.0, 6.0),
}
FIGURE_STEP = 0.02
CSV_HEADER = ("exponent", "lhs", "new_bound", "prior_bound")
