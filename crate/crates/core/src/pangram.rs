//! The first medium: a user-defined sentence of at most 512 characters that
//! serves as a circular index space for secret characters.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest pangram the 9-bit index fields can address.
pub const MAX_PANGRAM_LEN: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PangramError {
    #[error("pangram is empty")]
    Empty,
    #[error("pangram has {len} characters, the maximum is {MAX_PANGRAM_LEN}")]
    TooLong { len: usize },
    #[error("character {0:?} does not occur in the pangram")]
    CharacterNotInPangram(char),
    #[error("seed index {seed} is out of range for a pangram of length {len}")]
    SeedOutOfRange { seed: usize, len: usize },
    #[error("offset {offset} is out of range for a pangram of length {len}")]
    OffsetOutOfRange { offset: usize, len: usize },
}

/// How a secret character is compared against pangram characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchMode {
    /// Scalar values must be equal. Decoding is lossless.
    #[default]
    Exact,
    /// ASCII letters A-Z/a-z compare without regard to case; everything else
    /// compares exactly. Decoding yields the pangram's casing.
    CaseInsensitive,
}

impl MatchMode {
    #[inline]
    pub fn matches(self, pangram_char: char, secret: char) -> bool {
        match self {
            MatchMode::Exact => pangram_char == secret,
            MatchMode::CaseInsensitive => pangram_char.eq_ignore_ascii_case(&secret),
        }
    }
}

/// An immutable, circularly indexed character sequence of length 1..=512.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pangram {
    chars: Vec<char>,
}

impl Pangram {
    pub fn new(text: &str) -> Result<Self, PangramError> {
        let chars: Vec<char> = text.chars().collect();
        if chars.is_empty() {
            return Err(PangramError::Empty);
        }
        if chars.len() > MAX_PANGRAM_LEN {
            return Err(PangramError::TooLong { len: chars.len() });
        }
        Ok(Pangram { chars })
    }

    /// Builds a pangram from the contents of a pangram file. A single trailing
    /// `\n` or `\r\n` is dropped; everything else is kept verbatim.
    pub fn from_file_contents(contents: &str) -> Result<Self, PangramError> {
        Self::new(strip_line_terminator(contents))
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    /// Characters of `message` that have no match anywhere in the pangram.
    /// An empty set means the message is encodable.
    pub fn coverage_gaps(&self, message: &str, mode: MatchMode) -> BTreeSet<char> {
        message
            .chars()
            .filter(|&m| !self.chars.iter().any(|&c| mode.matches(c, m)))
            .collect()
    }

    /// Circular distance from `seed` to the first character matching `m`,
    /// counting the seed position itself as distance 0.
    pub fn find_offset(
        &self,
        seed: usize,
        m: char,
        mode: MatchMode,
    ) -> Result<usize, PangramError> {
        let len = self.len();
        if seed >= len {
            return Err(PangramError::SeedOutOfRange { seed, len });
        }
        self.chars[seed..]
            .iter()
            .chain(&self.chars[..seed])
            .position(|&c| mode.matches(c, m))
            .ok_or(PangramError::CharacterNotInPangram(m))
    }

    /// The character at `(seed + offset) mod len`.
    pub fn char_at(&self, seed: usize, offset: usize) -> Result<char, PangramError> {
        let len = self.len();
        if seed >= len {
            return Err(PangramError::SeedOutOfRange { seed, len });
        }
        if offset >= len {
            return Err(PangramError::OffsetOutOfRange { offset, len });
        }
        Ok(self.chars[(seed + offset) % len])
    }
}

impl fmt::Display for Pangram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chars.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Drops one trailing line terminator (LF or CRLF), if present.
pub fn strip_line_terminator(s: &str) -> &str {
    s.strip_suffix("\r\n")
        .or_else(|| s.strip_suffix('\n'))
        .unwrap_or(s)
}
