"""Hot loops, compiled when the extension is available.

``BACKEND`` is ``"cython"`` when the compiled module imported, else ``"python"``.
Both implementations share one contract; see ``_tablecheck_py``.
"""

from ._tablecheck_py import LAWS
from ._tablecheck_py import check_table as check_table_py

try:
    from ._tablecheck import check_table
    BACKEND = "cython"
except ImportError:
    check_table = check_table_py
    BACKEND = "python"

__all__ = ["BACKEND", "LAWS", "check_table", "check_table_py"]
