# decorators.py
import functools
import logging

from django.core.management.base import CommandError

from gvm.exceptions import GvmError, InputError, PreconditionError

logger = logging.getLogger(__name__)

INPUT_ERROR_EXIT = 2
PRECONDITION_EXIT = 3
INTERNAL_ERROR_EXIT = 1


def engine_command(handle):
    """
    Map engine errors raised inside a command's handle() to exit codes.

        InputError        -> 2
        PreconditionError -> 3
        other GvmError    -> 1
    """
    @functools.wraps(handle)
    def wrapper(self, *args, **options):
        try:
            return handle(self, *args, **options)
        except InputError as e:
            raise CommandError(str(e), returncode=INPUT_ERROR_EXIT)
        except PreconditionError as e:
            raise CommandError(str(e), returncode=PRECONDITION_EXIT)
        except GvmError as e:
            logger.error("internal consistency check failed: %s", e)
            raise CommandError(str(e), returncode=INTERNAL_ERROR_EXIT)
    return wrapper
