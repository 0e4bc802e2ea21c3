"""Half-line Fourier transforms, Hilbert transforms and re-expansion checks."""
from .errors import (CancellationPreconditionFailed, InvalidQ, NonFiniteValue, NotIntegrable,
                     ParityMismatch, PreconditionFailed, RefourierError, UnknownFunction)
from .funcmodel import (DEFAULT_GRID, CatalogEntry, Domain, FunctionSpec, Grid, Parity,
                        as_full_line, catalog, extend, get_entry, with_parity)
from .quad import DEFAULT_CONFIG, EvalResult, QuadConfig, TailVerdict, VerdictKind
from .transforms import (HilbertForm, cesaro_hilbert_mean, cesaro_kernel, cosine_transform,
                         hilbert, hilbert_l1, sine_transform)
from .conditions import ConditionReport, Divergent, condition_report
from .reexpand import (ReexpansionReport, hardy_space_verdict, reexpand_cos_to_sin,
                       reexpand_sin_to_cos)

__version__ = "0.1.0"
