//! Nine-bit index encoding and the payload bit stream carried by the image.
//!
//! Payload layout, MSB first throughout:
//!
//! ```text
//! | version: 4 | message_len: 32 (big-endian) | seed_0: 9 | offset_0: 9 | seed_1: 9 | ...
//! ```
//!
//! The 36-bit header fills exactly four 9-bit groups, so every seed and offset
//! starts on a pixel boundary.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const GROUP_BITS: usize = 9;
pub const HEADER_BITS: usize = 36;
pub const HEADER_GROUPS: usize = HEADER_BITS / GROUP_BITS;
pub const PAYLOAD_VERSION: u8 = 1;

const NINE_BIT_MAX: u16 = (1 << GROUP_BITS) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("value {0} does not fit in 9 bits")]
    ValueOutOfRange(u64),
    #[error("expected 9 bits, got {0}")]
    WrongWidth(usize),
    #[error("invalid bit digit {0:?}")]
    InvalidDigit(char),
    #[error("header declares {header} characters but {pairs} index pairs were supplied")]
    LengthMismatch { header: u32, pairs: usize },
    #[error("payload version {0} is not supported (no payload detected)")]
    BadVersion(u8),
    #[error("payload ends before all declared data was read")]
    Truncated,
    #[error("header declares {len} characters but the carrier holds at most {capacity}")]
    LengthExceedsCapacity { len: u32, capacity: usize },
}

/// A 9-bit group, e.g. one seed or one offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NineBits(u16);

impl NineBits {
    pub const ZERO: NineBits = NineBits(0);

    pub fn new(value: u16) -> Result<Self, CodecError> {
        if value > NINE_BIT_MAX {
            return Err(CodecError::ValueOutOfRange(value as u64));
        }
        Ok(NineBits(value))
    }

    pub fn value(self) -> u16 {
        self.0
    }

    /// Bits MSB first: `bits()[0]` has weight 256.
    pub fn bits(self) -> [bool; GROUP_BITS] {
        std::array::from_fn(|j| self.0 >> (GROUP_BITS - 1 - j) & 1 == 1)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, CodecError> {
        if bits.len() != GROUP_BITS {
            return Err(CodecError::WrongWidth(bits.len()));
        }
        Ok(NineBits(
            bits.iter().fold(0u16, |acc, &b| acc << 1 | u16::from(b)),
        ))
    }
}

pub fn to_nine_bits(value: usize) -> Result<NineBits, CodecError> {
    u16::try_from(value)
        .map_err(|_| CodecError::ValueOutOfRange(value as u64))
        .and_then(NineBits::new)
}

pub fn from_nine_bits(bits: &[bool]) -> Result<usize, CodecError> {
    NineBits::from_bits(bits).map(|n| n.value() as usize)
}

impl fmt::Display for NineBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:09b}", self.0)
    }
}

impl FromStr for NineBits {
    type Err = CodecError;

    /// Parses a string of nine `0`/`1` digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodecError::InvalidDigit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        NineBits::from_bits(&bits)
    }
}

/// One encoded character: where the search started and how far it went.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexPair {
    pub seed: u16,
    pub offset: u16,
}

impl IndexPair {
    pub fn new(seed: usize, offset: usize) -> Result<Self, CodecError> {
        Ok(IndexPair {
            seed: to_nine_bits(seed)?.value(),
            offset: to_nine_bits(offset)?.value(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StegoHeader {
    pub version: u8,
    pub message_len: u32,
}

impl StegoHeader {
    pub fn new(message_len: u32) -> Self {
        StegoHeader {
            version: PAYLOAD_VERSION,
            message_len,
        }
    }

    fn push_bits(self, out: &mut Vec<bool>) {
        push_msb_first(out, u64::from(self.version & 0x0F), 4);
        push_msb_first(out, u64::from(self.message_len), 32);
    }
}

fn push_msb_first(out: &mut Vec<bool>, value: u64, width: usize) {
    out.extend((0..width).rev().map(|shift| value >> shift & 1 == 1));
}

fn take_msb_first<I: Iterator<Item = bool>>(bits: &mut I, width: usize) -> Result<u64, CodecError> {
    let mut value = 0u64;
    for _ in 0..width {
        let bit = bits.next().ok_or(CodecError::Truncated)?;
        value = value << 1 | u64::from(bit);
    }
    Ok(value)
}

/// Serializes the header followed by each pair's seed and offset groups.
/// The result always holds `36 + 18 * pairs.len()` bits.
pub fn build_payload(header: StegoHeader, pairs: &[IndexPair]) -> Result<Vec<bool>, CodecError> {
    if header.message_len as usize != pairs.len() {
        return Err(CodecError::LengthMismatch {
            header: header.message_len,
            pairs: pairs.len(),
        });
    }
    let mut out = Vec::with_capacity(HEADER_BITS + 2 * GROUP_BITS * pairs.len());
    header.push_bits(&mut out);
    for pair in pairs {
        out.extend(NineBits::new(pair.seed)?.bits());
        out.extend(NineBits::new(pair.offset)?.bits());
    }
    Ok(out)
}

/// Reads a header and exactly `message_len` pairs from `bits`. Bits past the
/// last pair are never consumed. `limit` is the most characters the carrier
/// could hold; a header claiming more is rejected before any pair is read.
pub fn parse_payload<I>(bits: I, limit: usize) -> Result<(StegoHeader, Vec<IndexPair>), CodecError>
where
    I: IntoIterator<Item = bool>,
{
    let mut bits = bits.into_iter();
    let version = take_msb_first(&mut bits, 4)? as u8;
    let message_len = take_msb_first(&mut bits, 32)? as u32;
    if version != PAYLOAD_VERSION {
        return Err(CodecError::BadVersion(version));
    }
    if message_len as usize > limit {
        return Err(CodecError::LengthExceedsCapacity {
            len: message_len,
            capacity: limit,
        });
    }
    let pairs = (0..message_len)
        .map(|_| {
            let seed = take_msb_first(&mut bits, GROUP_BITS)? as u16;
            let offset = take_msb_first(&mut bits, GROUP_BITS)? as u16;
            Ok(IndexPair { seed, offset })
        })
        .collect::<Result<Vec<_>, CodecError>>()?;
    Ok((
        StegoHeader {
            version,
            message_len,
        },
        pairs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits_of(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn known_groups() {
        assert_eq!(to_nine_bits(12).unwrap().to_string(), "000001100");
        assert_eq!(to_nine_bits(0).unwrap().to_string(), "000000000");
        assert_eq!(to_nine_bits(500).unwrap().to_string(), "111110100");
        assert_eq!(from_nine_bits(&bits_of("001001111")), Ok(79));
        assert_eq!(from_nine_bits(&bits_of("111111111")), Ok(511));
        assert_eq!(from_nine_bits(&bits_of("011010100")), Ok(212));
        assert_eq!("111101000".parse::<NineBits>().unwrap().value(), 488);
    }

    #[test]
    fn range_and_width_errors() {
        assert_eq!(to_nine_bits(512), Err(CodecError::ValueOutOfRange(512)));
        assert_eq!(
            from_nine_bits(&bits_of("0000")),
            Err(CodecError::WrongWidth(4))
        );
        assert_eq!(
            from_nine_bits(&bits_of("0000000000")),
            Err(CodecError::WrongWidth(10))
        );
        assert_eq!(
            "00000000x".parse::<NineBits>(),
            Err(CodecError::InvalidDigit('x'))
        );
    }

    #[test]
    fn nine_bits_exhaustive_bijection() {
        for v in 0..512usize {
            let n = to_nine_bits(v).unwrap();
            assert_eq!(from_nine_bits(&n.bits()), Ok(v));
            assert_eq!(n.to_string().parse::<NineBits>(), Ok(n));
            assert_eq!(usize::from_str_radix(&n.to_string(), 2).unwrap(), v);
        }
    }

    #[test]
    fn empty_payload_is_header_only() {
        let bits = build_payload(StegoHeader::new(0), &[]).unwrap();
        assert_eq!(bits.len(), 36);
        let mut expected = bits_of("0001");
        expected.extend([false; 32]);
        assert_eq!(bits, expected);
    }

    #[test]
    fn single_zero_pair() {
        let bits = build_payload(StegoHeader::new(1), &[IndexPair::new(0, 0).unwrap()]).unwrap();
        assert_eq!(bits.len(), 54);
        assert!(bits[36..].iter().all(|&b| !b));
        // length field holds 1 in its last bit
        assert!(bits[35]);
    }

    #[test]
    fn header_is_big_endian() {
        let bits = build_payload(StegoHeader::new(0x0102_0304), &[]);
        // count mismatch is caught before any bits are built
        assert!(matches!(bits, Err(CodecError::LengthMismatch { .. })));

        let mut raw = Vec::new();
        StegoHeader::new(0x0102_0304).push_bits(&mut raw);
        let text: String = raw.iter().map(|&b| if b { '1' } else { '0' }).collect();
        assert_eq!(text, "0001".to_owned() + "00000001000000100000001100000100");
    }

    #[test]
    fn kill_joe_payload_length() {
        let pairs: Vec<IndexPair> = crate::reference::KILL_JOE_SEEDS
            .iter()
            .zip(crate::reference::KILL_JOE_OFFSETS)
            .map(|(&s, o)| IndexPair::new(s, o).unwrap())
            .collect();
        let bits = build_payload(StegoHeader::new(8), &pairs).unwrap();
        assert_eq!(bits.len(), 180);
        assert_eq!(bits.len() / GROUP_BITS, 20);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_payload(vec![false; 36], 100),
            Err(CodecError::BadVersion(0))
        );
        assert_eq!(
            parse_payload(vec![false; 20], 100),
            Err(CodecError::Truncated)
        );

        // 640x480 carrier: (307200 - 4) / 2 characters
        let capacity = (640 * 480 - 4) / 2;
        let mut raw = Vec::new();
        StegoHeader::new(1_000_000_000).push_bits(&mut raw);
        assert_eq!(
            parse_payload(raw, capacity),
            Err(CodecError::LengthExceedsCapacity {
                len: 1_000_000_000,
                capacity
            })
        );

        let mut short =
            build_payload(StegoHeader::new(1), &[IndexPair::new(3, 4).unwrap()]).unwrap();
        short.truncate(50);
        assert_eq!(parse_payload(short, 10), Err(CodecError::Truncated));
    }

    #[test]
    fn trailing_bits_are_ignored() {
        let mut bits =
            build_payload(StegoHeader::new(1), &[IndexPair::new(7, 9).unwrap()]).unwrap();
        bits.extend([true; 27]);
        let (h, pairs) = parse_payload(bits, 10).unwrap();
        assert_eq!(h.message_len, 1);
        assert_eq!(pairs, vec![IndexPair { seed: 7, offset: 9 }]);
    }

    proptest! {
        #[test]
        fn payload_round_trip(raw in prop::collection::vec((0u16..512, 0u16..512), 0..200)) {
            let pairs: Vec<IndexPair> = raw
                .iter()
                .map(|&(seed, offset)| IndexPair { seed, offset })
                .collect();
            let header = StegoHeader::new(pairs.len() as u32);
            let bits = build_payload(header, &pairs).unwrap();
            prop_assert_eq!(bits.len(), 36 + 18 * pairs.len());
            prop_assert_eq!(bits.len() % GROUP_BITS, 0);
            let (h, back) = parse_payload(bits, pairs.len()).unwrap();
            prop_assert_eq!(h, header);
            prop_assert_eq!(back, pairs);
        }
    }
}
