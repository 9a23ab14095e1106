import logging
from config import settings


def setup_logger(name: str = "chromalg"):
    logger = logging.getLogger(name)
    logger.setLevel(settings.LOG_LEVEL)

    # handlers are attached once per logger name
    if logger.handlers:
        return logger

    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")

    ch = logging.StreamHandler()
    ch.setFormatter(formatter)
    logger.addHandler(ch)

    if settings.LOG_FILE:
        fh = logging.FileHandler(settings.LOG_FILE)
        fh.setFormatter(formatter)
        logger.addHandler(fh)

    logger.propagate = False
    return logger
