//! Text steganography over two mediums.
//!
//! A secret message is turned into pairs of indexes into a user-chosen
//! sentence (the *pangram*), and those indexes are written into the three
//! least significant bits of each channel of a 24-bit BMP. The receiver needs
//! both the image and the pangram to read the message back.
//!
//! ```
//! use panstego::{decode, encode, EncodeOptions, MatchMode, Pangram, Rgb24Image, SeedSource};
//!
//! let pangram = Pangram::new("The quick brown fox jumps over the lazy dog").unwrap();
//! let cover = Rgb24Image::filled(8, 8, [120, 200, 33]).unwrap();
//! let mut opts = EncodeOptions::new(MatchMode::Exact, SeedSource::deterministic(7));
//! let out = encode("lazy fox", &pangram, &cover, &mut opts).unwrap();
//! assert_eq!(decode(&out.stego, &pangram).unwrap(), "lazy fox");
//! ```

pub mod bmp_io;
pub mod engine;
pub mod index_codec;
pub mod lsb_embed;
pub mod pangram;
pub mod reference;

pub use bmp_io::{parse_bmp, read_bmp, serialize_bmp, write_bmp, BmpError, Rgb, Rgb24Image};
pub use engine::{
    capacity, compare, decode, encode, DistortionReport, EncodeOptions, Encoded, EngineError,
    SeedSource, SplitMix64,
};
pub use index_codec::{
    build_payload, from_nine_bits, parse_payload, to_nine_bits, CodecError, IndexPair, NineBits,
    StegoHeader,
};
pub use lsb_embed::{embed_nine, extract_nine};
pub use pangram::{MatchMode, Pangram, PangramError, MAX_PANGRAM_LEN};
