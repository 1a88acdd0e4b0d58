from .fh_classes import (
    Singularity, FhSymbol, WienerHopfData, LogGammaValue, LogBarnesGValue, MomentTable,
    DeterminantSeries, AsymptoticBreakdown, ChiAsymptotic, OrthoPolyPair, IdentityReport,
    RunConfig, SUBCOMMANDS, FORMATS, TWO_PI,
)
from . import fh_errors
