"""
Settings selection. ``CS_ENV`` picks the dev or prod overrides.
"""
import os

_env = os.getenv("CS_ENV", "").lower()

if _env == "dev":
    from . import dev_settings as settings
elif _env == "prod":
    from . import prod_settings as settings
else:
    from . import settings

__all__ = ["settings"]
