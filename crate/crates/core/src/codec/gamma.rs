//! Gap-coded Elias gamma stream: magic, version, gamma(count),
//! gamma(first label), then gamma of each successive difference.

use num_bigint::BigUint;

use super::{BitReader, BitWriter, CodecError, SumEncoding};

pub const GAMMA_MAGIC: u8 = 0x53;
pub const GAMMA_VERSION: u8 = 0x01;

/// Elias gamma of `x >= 1`: `floor(log2 x)` zeros, then `x` in binary.
fn write_gamma(w: &mut BitWriter, x: &BigUint) {
    debug_assert!(x.bits() > 0);
    w.push_repeated(false, x.bits() as usize - 1);
    w.push_big(x);
}

fn gamma_len(x: &BigUint) -> usize {
    2 * x.bits() as usize - 1
}

fn read_gamma(r: &mut BitReader<'_>) -> Result<BigUint, CodecError> {
    let mut zeros = 0usize;
    loop {
        match r.read_bit() {
            Some(false) => zeros += 1,
            Some(true) => break,
            None => return Err(CodecError::Truncated),
        }
    }
    let rest = r.read_big(zeros).ok_or(CodecError::Truncated)?;
    Ok((BigUint::from(1u8) << zeros) | rest)
}

fn gaps(enc: &SumEncoding) -> impl Iterator<Item = BigUint> + '_ {
    let labels = enc.labels();
    labels.first().cloned().into_iter().chain(labels.windows(2).map(|w| &w[1] - &w[0]))
}

pub fn serialize_gamma(enc: &SumEncoding) -> Result<Vec<u8>, CodecError> {
    if enc.is_empty() {
        return Err(CodecError::Empty);
    }
    let mut w = BitWriter::with_prefix(&[GAMMA_MAGIC, GAMMA_VERSION]);
    write_gamma(&mut w, &BigUint::from(enc.len()));
    for gap in gaps(enc) {
        write_gamma(&mut w, &gap);
    }
    Ok(w.finish())
}

/// Payload bits before byte padding, header bytes included.
pub fn gamma_bit_length(enc: &SumEncoding) -> usize {
    16 + gamma_len(&BigUint::from(enc.len().max(1))) + gaps(enc).map(|g| gamma_len(&g)).sum::<usize>()
}

pub fn parse_gamma(bytes: &[u8]) -> Result<SumEncoding, CodecError> {
    match bytes {
        [] | [_] => return Err(CodecError::Truncated),
        [m, ..] if *m != GAMMA_MAGIC => return Err(CodecError::BadMagic(*m)),
        [_, v, ..] if *v != GAMMA_VERSION => return Err(CodecError::BadVersion(*v)),
        _ => {}
    }
    let mut r = BitReader::new(&bytes[2..]);
    let count = read_gamma(&mut r)?;
    let count = usize::try_from(&count).map_err(|_| CodecError::Malformed("count too large".into()))?;
    // Every label needs at least one bit.
    if count > r.remaining() {
        return Err(CodecError::Truncated);
    }
    let mut labels = Vec::with_capacity(count);
    let mut current = BigUint::default();
    for _ in 0..count {
        current += read_gamma(&mut r)?;
        labels.push(current.clone());
    }
    if !r.only_padding_left() {
        return Err(CodecError::TrailingData);
    }
    SumEncoding::new(labels)
}
