import logging

from django.apps import AppConfig

logger = logging.getLogger(__name__)


class GvmConfig(AppConfig):
    name = 'gvm'
    verbose_name = 'Generalized Verma module engine'

    def ready(self):
        from gvm.services.rootsys import root_system_registry  # noqa
        logger.debug("gvm engine ready")
