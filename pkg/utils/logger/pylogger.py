import logging.config

from config import *


def get_logger(logger_name, log_level):
    logger_config = {
        'version': 1,
        'formatters': {
            logger_name: {'format': '%(asctime)s.%(msecs)03d %(levelname)s %(module)s - %(funcName)s: %(message)s',
                          'datefmt': '%Y-%m-%d %H:%M:%S'}
        },
        'handlers': {
            'console': {
                'level': log_level,
                'class': 'logging.StreamHandler',
                'formatter': logger_name,
                'stream': 'ext://sys.stderr'
            },
            'file': {
                'level': log_level,
                'class': 'logging.handlers.RotatingFileHandler',
                'formatter': logger_name,
                'filename': os.path.join(LOGGING_FOLDER, logger_name + ".log"),
                'mode': 'a',
                'maxBytes': LOGGING_MAX_FILE_SIZE_BYTES,
                'backupCount': LOGGING_LOCAL_BACK_UP_COUNT,
                'delay': True
            }
        },
        'loggers': {
            logger_name: {
                'level': log_level,
                'handlers': ['console', 'file'],
                'propagate': False
            }
        },
        'disable_existing_loggers': False
    }
    if LOGGING_FOLDER == "":
        logger_config["handlers"].pop("file", None)
        handler_list = logger_config["loggers"][logger_name]["handlers"]
        handler_list.remove("file")
        logger_config["loggers"][logger_name]["handlers"] = handler_list
    else:
        os.makedirs(LOGGING_FOLDER, exist_ok=True)

    logging.config.dictConfig(config=logger_config)
    return logging.getLogger(logger_name)
