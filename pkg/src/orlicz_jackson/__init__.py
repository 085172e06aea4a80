"""Sharp Jackson-type inequalities and widths in Musielak-Orlicz spaces of periodic functions.

Functions are finite Fourier spectra; norms, moduli of smoothness, sharp
constants and width bounds are computed directly from the coefficients.
"""

from .orlicz import *  # noqa: F401,F403
from .orlicz import __all__ as _orlicz_all
from .presets import *  # noqa: F401,F403
from .presets import __all__ as _presets_all
from .smoothness import *  # noqa: F401,F403
from .smoothness import __all__ as _smoothness_all
from .spectral import *  # noqa: F401,F403
from .spectral import __all__ as _spectral_all
from .theorems import *  # noqa: F401,F403
from .theorems import __all__ as _theorems_all

__version__ = "0.1.0"
__all__ = [*_orlicz_all, *_spectral_all, *_smoothness_all, *_theorems_all, *_presets_all]
