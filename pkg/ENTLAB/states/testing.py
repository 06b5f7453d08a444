# states/testing.py
"""
테스트 공용 헬퍼: 시드 고정 생성기로 반례를 모으고, 처음 몇 개만 보여 주며 실패.
"""
import traceback
from typing import Callable, Iterable

SHOWN = 5


def check(predicate: Callable[[object], bool], cases: Iterable) -> list[str]:
    counter_examples = []
    for case in cases:
        try:
            if not predicate(case):
                counter_examples.append(repr(case))
        except Exception:
            counter_examples.append("%r : %s" % (case, traceback.format_exc()))
    return counter_examples


def check_unittest(test, predicate: Callable[[object], bool], cases: Iterable):
    counter_examples = check(predicate, cases)
    if counter_examples:
        failures = len(counter_examples)
        message = "\n".join("    -> %s" % f for f in counter_examples[:SHOWN])
        test.fail("found %d counter examples, displaying first %d:\n%s"
                  % (failures, min(failures, SHOWN), message))
