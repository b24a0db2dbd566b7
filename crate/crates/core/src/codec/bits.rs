//! MSB-first bit writer and reader over byte vectors.

use num_bigint::BigUint;

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts after a whole-byte prefix.
    pub fn with_prefix(prefix: &[u8]) -> Self {
        BitWriter { bytes: prefix.to_vec(), len: prefix.len() * 8 }
    }

    pub fn bit_len(&self) -> usize {
        self.len
    }

    pub fn push_bit(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.last_mut().expect("byte allocated");
            *last |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn push_repeated(&mut self, bit: bool, count: usize) {
        for _ in 0..count {
            self.push_bit(bit);
        }
    }

    /// The low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        for i in (0..width).rev() {
            self.push_bit((value >> i) & 1 == 1);
        }
    }

    /// All significant bits of `value`, most significant first.
    pub fn push_big(&mut self, value: &BigUint) {
        for i in (0..value.bits()).rev() {
            self.push_bit(value.bit(i));
        }
    }

    /// Pads with zero bits to a byte boundary.
    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        BitReader { bytes, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bytes.len() * 8 - self.pos
    }

    pub fn read_bit(&mut self) -> Option<bool> {
        let byte = *self.bytes.get(self.pos / 8)?;
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Some(bit)
    }

    pub fn read_bits(&mut self, width: u32) -> Option<u64> {
        debug_assert!(width <= 64);
        if self.remaining() < width as usize {
            return None;
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Some(v)
    }

    pub fn read_big(&mut self, width: usize) -> Option<BigUint> {
        if self.remaining() < width {
            return None;
        }
        let mut v = BigUint::default();
        let mut left = width;
        while left > 0 {
            let chunk = left.min(64);
            v = (v << chunk) | BigUint::from(self.read_bits(chunk as u32)?);
            left -= chunk;
        }
        Some(v)
    }

    /// True when everything left is zero padding inside the final byte.
    pub fn only_padding_left(&self) -> bool {
        if self.remaining() >= 8 {
            return false;
        }
        let mut probe = self.clone();
        while let Some(bit) = probe.read_bit() {
            if bit {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read() {
        let mut w = BitWriter::new();
        w.push_bits(0b101, 3);
        w.push_big(&BigUint::from(0xABCDu32));
        w.push_bit(true);
        assert_eq!(w.bit_len(), 20);
        let bytes = w.finish();
        assert_eq!(bytes.len(), 3);
        let mut r = BitReader::new(&bytes);
        assert_eq!(r.read_bits(3), Some(0b101));
        assert_eq!(r.read_big(16), Some(BigUint::from(0xABCDu32)));
        assert_eq!(r.read_bit(), Some(true));
        assert!(r.only_padding_left());
        assert_eq!(r.read_bits(5), None);
    }
}
