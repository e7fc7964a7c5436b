//! Uncompressed 24-bit BMP reading and writing.
//!
//! Only the classic layout is accepted: a 14-byte `BM` file header, a 40-byte
//! `BITMAPINFOHEADER`, 24 bits per pixel and `BI_RGB` (no compression).
//! Pixels are exposed in raster order, top-left first, whatever the row order
//! of the file.

use std::fs;
use std::path::Path;

use thiserror::Error;

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: u32 = 40;
const PIXEL_DATA_OFFSET: u32 = FILE_HEADER_LEN as u32 + INFO_HEADER_LEN;
const BI_RGB: u32 = 0;

/// Logical `[R, G, B]` pixel.
pub type Rgb = [u8; 3];

#[derive(Debug, Error)]
pub enum BmpError {
    #[error("missing 'BM' signature")]
    BadSignature,
    #[error("file too short for BMP headers")]
    TruncatedHeader,
    #[error("unsupported info header size {0} (only the 40-byte header is accepted)")]
    UnsupportedHeader(u32),
    #[error("unsupported bit depth {0} (only 24-bit is accepted)")]
    UnsupportedBitDepth(u16),
    #[error("unsupported compression method {0} (only uncompressed is accepted)")]
    UnsupportedCompression(u32),
    #[error(
        "pixel array is truncated: need {needed} bytes from offset {offset}, file has {available}"
    )]
    TruncatedPixelArray {
        offset: usize,
        needed: usize,
        available: usize,
    },
    #[error("image has a zero or negative dimension ({width}x{height})")]
    ZeroDimension { width: i64, height: i64 },
    #[error("pixel count {actual} does not match {width}x{height}")]
    PixelCountMismatch {
        width: u32,
        height: u32,
        actual: usize,
    },
    #[error("image of {width}x{height} is too large")]
    TooLarge { width: u32, height: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A decoded 24-bit image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rgb24Image {
    width: u32,
    height: u32,
    pixels: Vec<Rgb>,
}

impl Rgb24Image {
    pub fn new(width: u32, height: u32, pixels: Vec<Rgb>) -> Result<Self, BmpError> {
        if width == 0 || height == 0 {
            return Err(BmpError::ZeroDimension {
                width: width.into(),
                height: height.into(),
            });
        }
        let expected = (width as usize)
            .checked_mul(height as usize)
            .ok_or(BmpError::TooLarge { width, height })?;
        if pixels.len() != expected {
            return Err(BmpError::PixelCountMismatch {
                width,
                height,
                actual: pixels.len(),
            });
        }
        Ok(Rgb24Image {
            width,
            height,
            pixels,
        })
    }

    /// An image with every pixel set to `fill`.
    pub fn filled(width: u32, height: u32, fill: Rgb) -> Result<Self, BmpError> {
        let count = (width as usize)
            .checked_mul(height as usize)
            .ok_or(BmpError::TooLarge { width, height })?;
        Self::new(width, height, vec![fill; count])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Pixels in raster order.
    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [Rgb] {
        &mut self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> Option<Rgb> {
        if x >= self.width || y >= self.height {
            return None;
        }
        Some(self.pixels[y as usize * self.width as usize + x as usize])
    }

    /// Size in bytes of one stored row, padded to a multiple of 4.
    pub fn row_stride(&self) -> usize {
        row_stride(self.width as usize)
    }
}

fn row_stride(width: usize) -> usize {
    (3 * width).div_ceil(4) * 4
}

fn le_u16(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn le_u32(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn le_i32(b: &[u8], at: usize) -> i32 {
    le_u32(b, at) as i32
}

pub fn parse_bmp(bytes: &[u8]) -> Result<Rgb24Image, BmpError> {
    if bytes.len() < 2 || &bytes[..2] != b"BM" {
        return Err(BmpError::BadSignature);
    }
    if bytes.len() < FILE_HEADER_LEN + 4 {
        return Err(BmpError::TruncatedHeader);
    }
    let data_offset = le_u32(bytes, 10) as usize;
    let info_len = le_u32(bytes, 14);
    if info_len != INFO_HEADER_LEN {
        return Err(BmpError::UnsupportedHeader(info_len));
    }
    if bytes.len() < PIXEL_DATA_OFFSET as usize {
        return Err(BmpError::TruncatedHeader);
    }

    let raw_width = le_i32(bytes, 18);
    let raw_height = le_i32(bytes, 22);
    let bit_count = le_u16(bytes, 28);
    let compression = le_u32(bytes, 30);

    if bit_count != 24 {
        return Err(BmpError::UnsupportedBitDepth(bit_count));
    }
    if compression != BI_RGB {
        return Err(BmpError::UnsupportedCompression(compression));
    }
    if raw_width <= 0 || raw_height == 0 {
        return Err(BmpError::ZeroDimension {
            width: raw_width.into(),
            height: raw_height.into(),
        });
    }

    let width = raw_width as u32;
    let height = raw_height.unsigned_abs();
    let bottom_up = raw_height > 0;
    let stride = row_stride(width as usize);
    let needed = stride
        .checked_mul(height as usize)
        .ok_or(BmpError::TooLarge { width, height })?;
    let available = bytes.len().saturating_sub(data_offset);
    if data_offset > bytes.len() || available < needed {
        return Err(BmpError::TruncatedPixelArray {
            offset: data_offset,
            needed,
            available,
        });
    }
    let data = &bytes[data_offset..data_offset + needed];

    let mut pixels = Vec::with_capacity(width as usize * height as usize);
    for y in 0..height as usize {
        let file_row = if bottom_up {
            height as usize - 1 - y
        } else {
            y
        };
        let row = &data[file_row * stride..file_row * stride + 3 * width as usize];
        pixels.extend(row.chunks_exact(3).map(|bgr| [bgr[2], bgr[1], bgr[0]]));
    }
    Rgb24Image::new(width, height, pixels)
}

/// Canonical bottom-up, zero-padded 24-bit encoding.
pub fn serialize_bmp(img: &Rgb24Image) -> Vec<u8> {
    let stride = img.row_stride();
    let image_size = stride * img.height as usize;
    let file_size = PIXEL_DATA_OFFSET as usize + image_size;

    let mut out = Vec::with_capacity(file_size);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&(file_size as u32).to_le_bytes());
    out.extend_from_slice(&[0; 4]);
    out.extend_from_slice(&PIXEL_DATA_OFFSET.to_le_bytes());

    out.extend_from_slice(&INFO_HEADER_LEN.to_le_bytes());
    out.extend_from_slice(&(img.width as i32).to_le_bytes());
    out.extend_from_slice(&(img.height as i32).to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&24u16.to_le_bytes());
    out.extend_from_slice(&BI_RGB.to_le_bytes());
    out.extend_from_slice(&(image_size as u32).to_le_bytes());
    // 2835 px/m = 72 dpi
    out.extend_from_slice(&2835i32.to_le_bytes());
    out.extend_from_slice(&2835i32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());

    let pad = stride - 3 * img.width as usize;
    for row in img.pixels.chunks_exact(img.width as usize).rev() {
        for &[r, g, b] in row {
            out.extend_from_slice(&[b, g, r]);
        }
        out.extend(std::iter::repeat_n(0u8, pad));
    }
    out
}

pub fn read_bmp(path: impl AsRef<Path>) -> Result<Rgb24Image, BmpError> {
    parse_bmp(&fs::read(path)?)
}

pub fn write_bmp(path: impl AsRef<Path>, img: &Rgb24Image) -> Result<(), BmpError> {
    fs::write(path, serialize_bmp(img))?;
    Ok(())
}
