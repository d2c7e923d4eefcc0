//! Sources, entropy, typical sets and prefix-free coding.

mod aep;
mod code;
mod source;

pub use aep::{aep_projection, aep_sweep, aep_typical_set, AepSweep, TypicalSetReport};
pub use code::{
    code_metrics, huffman_code, kraft_check, kraft_construct, kraft_sums, Code, CodeMetrics,
    MAX_CODE_ALPHABET,
};
pub use source::{entropy, entropy_base, source_output, Source};
