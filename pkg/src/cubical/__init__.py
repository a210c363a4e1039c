"""An executable kernel for a cubical programming language.

Modules: :mod:`syntax`, :mod:`substitution`, :mod:`opsem`, :mod:`restriction`,
:mod:`checker`, :mod:`harness`, :mod:`cli` (with :mod:`surface` for concrete syntax).
"""

__version__ = "0.1.0"
