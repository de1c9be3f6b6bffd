"""
Configuration globale du logging pour le laboratoire.

Chaque exécution (``run``, ``sweep``) écrit son journal dans son propre répertoire
de sortie; à l'import, le logger du package n'écrit que sur la console.
"""

import os
import logging
import logging.handlers
from typing import Optional, Dict, Any, Union

DEFAULT_LOG_LEVEL = logging.INFO
DEFAULT_LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DEFAULT_LOG_DIR = 'logs'
DEFAULT_LOG_FILE = 'mkdv_lab.log'
PACKAGE_LOGGER = 'mkdv_lab'

_CONFIG_KEYS = ('log_dir', 'log_file', 'rotate_logs', 'max_bytes', 'backup_count',
                'console_output', 'file_output')


def _file_handler(log_dir: str, log_file: str, rotate: bool, max_bytes: int,
                  backup_count: int) -> logging.Handler:
    os.makedirs(log_dir, exist_ok=True)
    path = os.path.join(log_dir, log_file)
    if rotate:
        return logging.handlers.RotatingFileHandler(path, maxBytes=max_bytes,
                                                    backupCount=backup_count)
    return logging.FileHandler(path)


def setup_logger(
    name: Optional[str] = None,
    level: Optional[int] = None,
    log_format: Optional[str] = None,
    log_dir: Optional[str] = None,
    log_file: Optional[str] = None,
    rotate_logs: bool = True,
    max_bytes: int = 10485760,  # 10 MB
    backup_count: int = 5,
    console_output: bool = True,
    file_output: bool = True,
    config: Optional[Dict[str, Any]] = None
) -> logging.Logger:
    """
    Configure un logger du laboratoire.

    Les handlers existants sont fermés puis remplacés, de sorte qu'un second appel
    (par exemple la CLI après l'import du package) redirige le journal.

    Args:
        name: Nom du logger (par défaut: 'mkdv_lab')
        level: Niveau de logging (par défaut: INFO)
        log_format: Format des lignes
        log_dir: Répertoire du fichier de journal (par défaut: 'logs')
        log_file: Nom du fichier (par défaut: 'mkdv_lab.log')
        rotate_logs: Rotation par taille
        max_bytes: Taille avant rotation
        backup_count: Nombre de fichiers conservés
        console_output: Sortie sur stderr
        file_output: Sortie fichier
        config: Dictionnaire prioritaire sur les arguments (clés ``log_level``,
            ``log_dir``, ``log_file``, ``rotate_logs``, ``max_bytes``,
            ``backup_count``, ``console_output``, ``file_output``)

    Returns:
        Logger configuré
    """
    options: Dict[str, Any] = {
        'log_dir': log_dir, 'log_file': log_file, 'rotate_logs': rotate_logs,
        'max_bytes': max_bytes, 'backup_count': backup_count,
        'console_output': console_output, 'file_output': file_output,
    }
    if config:
        options.update({k: config[k] for k in _CONFIG_KEYS if k in config})
        if config.get('log_level'):
            level = get_level_from_config(config['log_level'])

    logger = logging.getLogger(name or PACKAGE_LOGGER)
    logger.setLevel(level or DEFAULT_LOG_LEVEL)
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()

    handlers = []
    if options['file_output']:
        handlers.append(_file_handler(options['log_dir'] or DEFAULT_LOG_DIR,
                                      options['log_file'] or DEFAULT_LOG_FILE,
                                      options['rotate_logs'], options['max_bytes'],
                                      options['backup_count']))
    if options['console_output']:
        handlers.append(logging.StreamHandler())

    formatter = logging.Formatter(log_format or DEFAULT_LOG_FORMAT)
    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


def run_logger(output_dir: Optional[str], level: Union[str, int, None] = None) -> logging.Logger:
    """
    Logger du package pour une exécution de la CLI.

    Avec ``output_dir``, le journal tourne dans ``<output_dir>/mkdv_lab.log``. Les
    avertissements Python (queues hors de la boîte, enveloppe de stabilité) sont
    redirigés vers ce journal.
    """
    logger = setup_logger(name=PACKAGE_LOGGER, level=get_level_from_config(level),
                          log_dir=output_dir, file_output=output_dir is not None)
    logging.captureWarnings(True)
    warnings_logger = logging.getLogger('py.warnings')
    for handler in warnings_logger.handlers[:]:
        warnings_logger.removeHandler(handler)
    for handler in logger.handlers:
        warnings_logger.addHandler(handler)
    return logger


def get_level_from_config(level_str: Union[str, int, None]) -> int:
    """
    Convertit un niveau (nom, membre de ``LogLevel`` ou entier) en constante logging.

    Un nom inconnu donne INFO.
    """
    if isinstance(level_str, int):
        return level_str
    name = str(getattr(level_str, 'value', level_str)).upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else DEFAULT_LOG_LEVEL


# Logger global du package: console seulement à l'import, la CLI ajoute le fichier.
global_logger = setup_logger(level=logging.WARNING, file_output=False)
