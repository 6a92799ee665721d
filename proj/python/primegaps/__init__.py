# Copyright 2026 The primegaps Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#      http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Prime-gap statistics: segmented sieve, gap collector, models and tables."""

from ._core import (
    ArgumentError,
    BoundsError,
    Checkpoint,
    ConfigError,
    DomainError,
    FitResult,
    InsufficientDataError,
    MaxGapRecord,
    OrderingError,
    SequencingError,
    StoreError,
    UnrecoverableStateError,
    UpgradeRequiredError,
    andrica_table,
    base_primes,
    collect,
    collect_to_directory,
    constants,
    evaluate,
    export_csv,
    fit_exponential,
    li2,
    load_checkpoints,
    odd_prime_divisors,
    pair_counts,
    prime_count,
    primes_between,
    read_checkpoint,
    resume_directory,
    scaling_slope,
    singular_series,
    table1,
    twin_constant_product,
    verify,
    write_checkpoint,
)

__all__ = [name for name in dir() if not name.startswith("_")]
