"""Range statistics for equally likely outcomes: coin tosses and prime last digits."""

__version__ = "0.1.0"

from .errors import EquirangeError
from .experiment import (
    EnsembleSummary,
    ExperimentConfig,
    ReproductionReport,
    run_ensemble,
    run_single,
    theoretical_coin_range,
)
from .fit import PowerLawFit, beta_from_alpha, fit_power_law
from .sources import (
    PrimeDigitStream,
    RngSpec,
    benford_expected,
    digit_to_outcome,
    prime_last_digits,
    sieve_primes,
    simulate_uniform,
)
from .tally import CheckpointRecord, OutcomeTally, Trajectory, checkpoint_schedule
