//! Encoding and decoding across both mediums.
//!
//! `encode` takes a message, a pangram and a cover image and returns the stego
//! image; `decode` needs the stego image and the same pangram. Neither medium
//! alone is enough to recover the message.
//!
//! Pixel layout in raster order: pixels 0..4 carry the payload header, then
//! character `i` uses pixel `4 + 2i` for its seed and `5 + 2i` for its offset.
//! Every other pixel, and the five high bits of every channel, is left as it
//! was in the cover.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::bmp_io::Rgb24Image;
use crate::index_codec::{
    build_payload, parse_payload, CodecError, IndexPair, NineBits, StegoHeader, GROUP_BITS,
    HEADER_GROUPS,
};
use crate::lsb_embed::{embed_nine, extract_nine};
use crate::pangram::{MatchMode, Pangram, PangramError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("message has {len} characters but the cover holds at most {capacity}")]
    MessageTooLong { len: usize, capacity: usize },
    #[error("message contains characters not found in the pangram: {}", format_gaps(.0))]
    UncoveredCharacters(BTreeSet<char>),
    #[error("seed {seed} is out of range for a pangram of length {len}")]
    SeedOutOfRange { seed: usize, len: usize },
    #[error("explicit seed list ran out after {0} seeds")]
    ExplicitSeedsExhausted(usize),
    #[error("images differ in size: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
    #[error("pangram: {0}")]
    Pangram(#[from] PangramError),
    #[error("payload: {0}")]
    Codec(#[from] CodecError),
}

impl EngineError {
    /// True when the image does not look like it carries a payload at all.
    pub fn is_no_payload(&self) -> bool {
        matches!(self, EngineError::Codec(CodecError::BadVersion(_)))
    }
}

fn format_gaps(gaps: &BTreeSet<char>) -> String {
    gaps.iter()
        .map(|c| format!("{c:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// SplitMix64. The update and output mix are fixed so that two
/// implementations seeded alike produce identical stego images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Where seed indexes come from.
#[derive(Debug, Clone, Default)]
pub enum SeedSource {
    /// SplitMix64 output reduced modulo the pangram length.
    Deterministic(SplitMix64),
    /// A caller-supplied list, consumed in order.
    Explicit { seeds: Vec<usize>, next: usize },
    /// Operating-system entropy.
    #[default]
    System,
}

impl SeedSource {
    pub fn deterministic(seed: u64) -> Self {
        SeedSource::Deterministic(SplitMix64::new(seed))
    }

    pub fn explicit(seeds: impl Into<Vec<usize>>) -> Self {
        SeedSource::Explicit {
            seeds: seeds.into(),
            next: 0,
        }
    }

    /// Draws the next seed for a pangram of `len` characters.
    pub fn next_seed(&mut self, len: usize) -> Result<usize, EngineError> {
        debug_assert!(len > 0);
        match self {
            SeedSource::Deterministic(rng) => Ok((rng.next_u64() % len as u64) as usize),
            SeedSource::Explicit { seeds, next } => {
                let seed = *seeds
                    .get(*next)
                    .ok_or(EngineError::ExplicitSeedsExhausted(seeds.len()))?;
                *next += 1;
                if seed >= len {
                    return Err(EngineError::SeedOutOfRange { seed, len });
                }
                Ok(seed)
            }
            SeedSource::System => Ok(rand::rng().random_range(0..len)),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct EncodeOptions {
    pub mode: MatchMode,
    pub seeds: SeedSource,
}

impl EncodeOptions {
    pub fn new(mode: MatchMode, seeds: SeedSource) -> Self {
        EncodeOptions { mode, seeds }
    }
}

/// Result of `encode`: the carrier to send plus the pairs it carries.
#[derive(Debug, Clone)]
pub struct Encoded {
    pub stego: Rgb24Image,
    pub pairs: Vec<IndexPair>,
}

/// Characters `img` can carry: two pixels each, after four header pixels.
pub fn capacity(img: &Rgb24Image) -> usize {
    img.pixel_count().saturating_sub(HEADER_GROUPS) / 2
}

pub fn encode(
    message: &str,
    pangram: &Pangram,
    cover: &Rgb24Image,
    opts: &mut EncodeOptions,
) -> Result<Encoded, EngineError> {
    let len = message.chars().count();
    let cap = capacity(cover);
    if len > cap {
        return Err(EngineError::MessageTooLong { len, capacity: cap });
    }
    let message_len = u32::try_from(len).map_err(|_| EngineError::MessageTooLong {
        len,
        capacity: u32::MAX as usize,
    })?;

    let gaps = pangram.coverage_gaps(message, opts.mode);
    if !gaps.is_empty() {
        return Err(EngineError::UncoveredCharacters(gaps));
    }

    let pairs = message
        .chars()
        .map(|m| {
            let seed = opts.seeds.next_seed(pangram.len())?;
            let offset = pangram.find_offset(seed, m, opts.mode)?;
            Ok(IndexPair::new(seed, offset)?)
        })
        .collect::<Result<Vec<_>, EngineError>>()?;

    let payload = build_payload(StegoHeader::new(message_len), &pairs)?;
    let mut stego = cover.clone();
    for (pixel, group) in stego
        .pixels_mut()
        .iter_mut()
        .zip(payload.chunks_exact(GROUP_BITS))
    {
        *pixel = embed_nine(*pixel, NineBits::from_bits(group)?);
    }
    Ok(Encoded { stego, pairs })
}

pub fn decode(stego: &Rgb24Image, pangram: &Pangram) -> Result<String, EngineError> {
    let bits = stego
        .pixels()
        .iter()
        .flat_map(|&px| extract_nine(px).bits());
    let (_, pairs) = parse_payload(bits, capacity(stego))?;
    pairs
        .iter()
        .map(|pair| {
            pangram
                .char_at(pair.seed.into(), pair.offset.into())
                .map_err(EngineError::from)
        })
        .collect()
}

/// How far a stego image drifted from its cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionReport {
    /// Channel bytes that differ.
    pub bytes_changed: usize,
    pub max_channel_delta: u8,
    /// Mean over all channel bytes of the squared difference.
    pub mean_squared_error: f64,
    /// `10 log10(255^2 / MSE)`; infinite for identical images.
    pub psnr_db: f64,
}

pub fn compare(cover: &Rgb24Image, stego: &Rgb24Image) -> Result<DistortionReport, EngineError> {
    if cover.width() != stego.width() || cover.height() != stego.height() {
        return Err(EngineError::DimensionMismatch(
            cover.width(),
            cover.height(),
            stego.width(),
            stego.height(),
        ));
    }
    let mut bytes_changed = 0usize;
    let mut max_channel_delta = 0u8;
    let mut squared_sum = 0u64;
    for (a, b) in cover
        .pixels()
        .iter()
        .flatten()
        .zip(stego.pixels().iter().flatten())
    {
        let d = a.abs_diff(*b);
        if d != 0 {
            bytes_changed += 1;
            max_channel_delta = max_channel_delta.max(d);
            squared_sum += u64::from(d) * u64::from(d);
        }
    }
    let mean_squared_error = squared_sum as f64 / (3 * cover.pixel_count()) as f64;
    let psnr_db = if mean_squared_error == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (255.0f64 * 255.0 / mean_squared_error).log10()
    };
    Ok(DistortionReport {
        bytes_changed,
        max_channel_delta,
        mean_squared_error,
        psnr_db,
    })
}
