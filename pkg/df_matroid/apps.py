from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class DFMatroidConfig(AppConfig):
    name = "df_matroid"
    verbose_name = _("DjangoFlow Matroid")
