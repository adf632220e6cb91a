from typing import Any, Dict

from django.conf import settings
from django.core.signals import setting_changed
from rest_framework.settings import APISettings

DEFAULTS = {
    "MAX_ORACLE_N": 20,
    "MAX_GROUND_SIZE": 64,
    "NORMALIZE_VERIFY_LIMIT": 20,
    "FUZZ_SEED": 0,
    "FUZZ_MIN_VERTICES": 4,
    "FUZZ_MAX_VERTICES": 9,
    "FUZZ_MAX_ELEMENTS": 8,
    "REPORT_INDENT": 2,
}


class MatroidSettings(APISettings):
    """
    Package settings read from ``DF_MATROID``.

    Falls back to ``DEFAULTS`` when Django settings are not configured so the
    library can be used outside of a project.
    """

    @property
    def user_settings(self) -> Dict[str, Any]:
        if not hasattr(self, "_user_settings"):
            self._user_settings = (
                getattr(settings, "DF_MATROID", {}) if settings.configured else {}
            )
        return self._user_settings


api_settings = MatroidSettings(None, DEFAULTS)


def reload_api_settings(*args: Any, **kwargs: Any) -> None:
    if kwargs["setting"] == "DF_MATROID":
        api_settings.reload()


setting_changed.connect(reload_api_settings)
