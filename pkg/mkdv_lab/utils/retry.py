"""
Utilitaires pour les nouvelles tentatives (tirage aléatoire refait, pas de temps resserré).
"""

import logging
from functools import wraps
from typing import Callable, Type, Union, Tuple

from ..exceptions import RetryExhaustedError

logger = logging.getLogger(__name__)


def retry_on_exception(
    max_attempts: int = 2,
    exceptions: Union[Type[Exception], Tuple[Type[Exception], ...]] = Exception,
):
    """
    Décorateur pour retry automatique sur exceptions.

    La fonction décorée reçoit l'indice de tentative en argument nommé ``attempt``
    (0, 1, ...), ce qui lui permet de changer de graine ou de raffiner un pas.

    Args:
        max_attempts: Nombre maximum de tentatives
        exceptions: Exception(s) sur lesquelles faire un retry
    """
    def decorator(func: Callable):
        @wraps(func)
        def wrapper(*args, **kwargs):
            for attempt in range(max_attempts):
                try:
                    return func(*args, attempt=attempt, **kwargs)
                except exceptions as e:
                    if attempt == max_attempts - 1:
                        logger.error(f"Retry exhausted after {max_attempts} attempts for {func.__name__}: {e}")
                        raise RetryExhaustedError(f"Failed after {max_attempts} attempts: {e}") from e

                    logger.warning(f"Attempt {attempt + 1}/{max_attempts} failed for {func.__name__}: {e}. Retrying")

        return wrapper
    return decorator
