//! Resource caps for the exponential constructions.

/// Limits for subset/vector determinization, profile systems and closure
/// carriers. All constructions here are exponential in the worst case, so
/// every entry point that can blow up takes a cap and returns a resource
/// error when it is exceeded.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Maximum number of states produced by subset or vector determinization.
    pub determinize_states: usize,
    /// Maximum number of profiles (atoms) of a language.
    pub profiles: usize,
    /// Maximum number of elements in a materialized closure carrier.
    pub carrier: usize,
    /// Maximum profile count for which the Boolean (CABA) carrier is
    /// materialized; beyond it the carrier stays implicit.
    pub caba_materialize: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            determinize_states: 1 << 20,
            profiles: 1 << 16,
            carrier: 1 << 16,
            caba_materialize: 16,
        }
    }
}

impl Caps {
    /// Sets the three count caps to `n`, leaving the CABA materialization
    /// threshold untouched.
    pub fn with_uniform(n: usize) -> Self {
        Caps {
            determinize_states: n,
            profiles: n,
            carrier: n,
            ..Caps::default()
        }
    }
}
