//! Reference vectors from the published worked example: a 504-character
//! pangram, the message "KILL JOE", and the seed/offset pairs it produces.

/// The 504-character sentence used as the index space in the worked example.
pub const APPLE_PANGRAM: &str = "The apple is the pomaceous fruit which requires special care and \
there are more than 7,500 known cultivars of apples. Alexander the Great is credited with finding \
dwarfed apples in Kazakhstan. The United States is just the second producer, with more than 6% of \
world production; around $6 billion. The apple forms a tree, reaching 3 to 12 meters (9.8 to 39 ft) \
tall, with a broad, often densely twiggy crown. The leaves are arranged 1.2 to 2.4 in broad on a \
0.79 to 2.0 in petiole with just an acute tip.";

pub const KILL_JOE: &str = "KILL JOE";

pub const KILL_JOE_SEEDS: [usize; 8] = [12, 1, 130, 340, 50, 2, 62, 500];

pub const KILL_JOE_OFFSETS: [usize; 8] = [79, 9, 44, 23, 5, 212, 14, 6];

/// Pangram positions the example reports for each message character.
pub const KILL_JOE_INDEXES: [usize; 8] = [91, 10, 174, 363, 55, 214, 76, 2];

/// Low-3-bit patterns of the 16 data pixels, one `R G B` triple per pixel,
/// seed pixel then offset pixel for each character.
pub const KILL_JOE_PIXEL_BITS: [[u8; 3]; 16] = [
    [0b000, 0b001, 0b100],
    [0b001, 0b001, 0b111],
    [0b000, 0b000, 0b001],
    [0b000, 0b001, 0b001],
    [0b010, 0b000, 0b010],
    [0b000, 0b101, 0b100],
    [0b101, 0b010, 0b100],
    [0b000, 0b010, 0b111],
    [0b000, 0b110, 0b010],
    [0b000, 0b000, 0b101],
    [0b000, 0b000, 0b010],
    [0b011, 0b010, 0b100],
    [0b000, 0b111, 0b110],
    [0b000, 0b001, 0b110],
    [0b111, 0b110, 0b100],
    [0b000, 0b000, 0b110],
];

/// Character capacity of a carrier of `file_bytes` bytes when every byte
/// is pixel data and no header is reserved: 48 carrier bits per character.
pub fn headerless_capacity(file_bytes: u64) -> u64 {
    file_bytes * 8 / 48
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pangram_length() {
        assert_eq!(APPLE_PANGRAM.chars().count(), 504);
    }

    #[test]
    fn one_megabyte_capacity() {
        assert_eq!(headerless_capacity(1024 * 1024), 174_762);
    }
}
