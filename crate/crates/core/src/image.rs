//! 8-bit grayscale images in binary PGM (`P5`) form.

use crate::error::{Error, Result};

/// Row-major grayscale image, top row first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn from_bytes(pixels: Vec<u8>, width: usize, height: usize) -> Result<Self> {
        let expected = width
            .checked_mul(height)
            .ok_or_else(|| Error::MalformedHeader(format!("{width}x{height} overflows")))?;
        if pixels.len() != expected {
            return Err(Error::SizeMismatch { expected, actual: pixels.len() });
        }
        Ok(Self { width, height, pixels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Raster-order pixel bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.pixels
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.pixels.clone()
    }

    /// Same dimensions, new pixel data.
    pub fn with_pixels(&self, pixels: Vec<u8>) -> Result<Self> {
        Self::from_bytes(pixels, self.width, self.height)
    }
}

struct HeaderReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&c) = self.data.get(self.pos) {
            if c == b'#' {
                while self.data.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("missing {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn read_pgm(data: &[u8]) -> Result<GrayImage> {
    if !data.starts_with(b"P5") {
        return Err(Error::MalformedHeader("missing P5 magic".into()));
    }
    let mut rd = HeaderReader { data, pos: 2 };
    let width = rd.number("width")? as usize;
    let height = rd.number("height")? as usize;
    let maxval = rd.number("maxval")?;
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval must be positive".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the raster
    match data.get(rd.pos) {
        Some(c) if c.is_ascii_whitespace() => rd.pos += 1,
        _ => return Err(Error::MalformedHeader("no whitespace after maxval".into())),
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader(format!("{width}x{height} overflows")))?;
    let raster = &data[rd.pos..];
    if raster.len() < expected {
        return Err(Error::TruncatedData { expected, actual: raster.len() });
    }
    GrayImage::from_bytes(raster[..expected].to_vec(), width, height)
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal() {
        let img = read_pgm(b"P5\n2 1\n255\n\x00\xff").unwrap();
        assert_eq!((img.width(), img.height()), (2, 1));
        assert_eq!(img.as_bytes(), &[0, 255]);
    }

    #[test]
    fn comments_between_fields() {
        let img = read_pgm(b"P5\n# c\n2 # width\n1\n# c\n255\n\x07\x08").unwrap();
        assert_eq!(img.as_bytes(), &[7, 8]);
    }

    #[test]
    fn errors() {
        assert_eq!(read_pgm(b"P5\n1 1\n65535\n\x00\x00"), Err(Error::UnsupportedMaxval(65535)));
        assert!(matches!(read_pgm(b"P2\n1 1\n255\n0"), Err(Error::MalformedHeader(_))));
        assert!(matches!(read_pgm(b"P5\n1\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(read_pgm(b"P5\n1 1\n0\n\x00"), Err(Error::MalformedHeader(_))));
        assert_eq!(
            read_pgm(b"P5\n2 2\n255\n\x00"),
            Err(Error::TruncatedData { expected: 4, actual: 1 })
        );
    }

    #[test]
    fn from_bytes_size_check() {
        assert!(GrayImage::from_bytes(vec![0; 5], 2, 3).is_err());
        let img = GrayImage::from_bytes(vec![1, 2, 3, 4, 5, 6], 3, 2).unwrap();
        assert_eq!(img.to_bytes(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn canonical_header() {
        let img = GrayImage::from_bytes(vec![9], 1, 1).unwrap();
        assert_eq!(write_pgm(&img), b"P5\n1 1\n255\n\x09".to_vec());
    }
}
