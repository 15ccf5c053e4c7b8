//! Resource guards shared by every operation that allocates or enumerates.

/// Default cap on dense tensor size (number of entries).
pub const DEFAULT_MAX_ENTRIES: u64 = 10_000_000;
/// Default cap on the number of objects an enumeration may yield.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;
/// Default cap on the length of enumerated words (multiset permutations, facets).
pub const DEFAULT_MAX_WORD_LEN: usize = 12;

/// Environment variable overriding [`Limits::max_entries`].
pub const ENV_MAX_ENTRIES: &str = "WIDTHONE_MAX_ENTRIES";
/// Environment variable overriding [`Limits::max_enum`].
pub const ENV_MAX_ENUM: &str = "WIDTHONE_MAX_ENUM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_entries: u64,
    pub max_enum: u64,
    pub max_word_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_entries: DEFAULT_MAX_ENTRIES,
            max_enum: DEFAULT_MAX_ENUM,
            max_word_len: DEFAULT_MAX_WORD_LEN,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `WIDTHONE_MAX_ENTRIES` / `WIDTHONE_MAX_ENUM`
    /// when those parse as unsigned integers.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = read_env(ENV_MAX_ENTRIES) {
            limits.max_entries = v;
        }
        if let Some(v) = read_env(ENV_MAX_ENUM) {
            limits.max_enum = v;
        }
        limits
    }

    /// Limits large enough that no guard ever fires in practice.
    pub fn unbounded() -> Self {
        Limits {
            max_entries: u64::MAX,
            max_enum: u64::MAX,
            max_word_len: usize::MAX,
        }
    }
}

fn read_env(key: &str) -> Option<u64> {
    std::env::var(key).ok()?.trim().parse().ok()
}
