DF_MATROID_INSTALLED_APPS = [
    "rest_framework",
    "df_matroid",
]

# Host projects may merge this into their own LOGGING setting
DF_MATROID_LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "%(levelname)s %(name)s %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "df_matroid": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
    },
}
