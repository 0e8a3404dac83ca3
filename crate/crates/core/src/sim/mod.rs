//! Seeded Monte-Carlo experiments on the binary symmetric channel.
//!
//! The all-zeros codeword is sent; a trial draws an error vector `y` and
//! decodes the LLRs `(-1)^y`. Verdicts are computed once per distinct error
//! vector and shared between trials.

mod channel;
mod help;
mod shift;
mod manifest;
mod scan;

pub use channel::{bsc_sample, lp_successes, sign_llr, wer_estimate, ChannelConfig, TrialReport, WER_CSV_HEADER};
pub use help::{decode_with_help, help_experiment, HelpReport};
pub use shift::{deficiency_experiment, excess_experiment, ShiftReport};
pub use manifest::ExperimentManifest;
pub use scan::{build_variants, interpolate_crossing, threshold_scan, ScanResult, ThresholdEstimate};
