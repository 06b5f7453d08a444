# reports/management/commands/_errors.py
import json
from contextlib import contextmanager

from django.core.management.base import CommandError
from pydantic import ValidationError

from states.services.errors import EntlabError

USAGE = 2
REGRESSION = 1


@contextmanager
def usage_errors():
    """계산 계층 오류 → exit 2"""
    try:
        yield
    except (EntlabError, ValidationError, json.JSONDecodeError, OSError) as e:
        raise CommandError(str(e), returncode=USAGE) from e
