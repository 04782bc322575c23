"""InFocus module"""

import logging

__version__ = "0.1.0"

# suppress warnings when the user code does not include a handler
logging.getLogger("infocus").addHandler(logging.NullHandler())
