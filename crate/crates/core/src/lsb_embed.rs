//! One 9-bit group per pixel, three bits in the low end of each channel.
//! Group bits 0..3 go to red, 3..6 to green, 6..9 to blue; within a channel
//! the first bit lands at weight 4.

use crate::bmp_io::Rgb;
use crate::index_codec::NineBits;

const LOW3: u8 = 0b111;

pub fn embed_nine(pixel: Rgb, group: NineBits) -> Rgb {
    let v = group.value();
    let field = |shift: u16| ((v >> shift) as u8) & LOW3;
    let [r, g, b] = pixel;
    [
        r & !LOW3 | field(6),
        g & !LOW3 | field(3),
        b & !LOW3 | field(0),
    ]
}

pub fn extract_nine(pixel: Rgb) -> NineBits {
    let [r, g, b] = pixel.map(|c| u16::from(c & LOW3));
    NineBits::new(r << 6 | g << 3 | b).expect("three 3-bit fields fit in 9 bits")
}
