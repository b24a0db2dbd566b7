//! One-byte tagged wrapper around the two binary formats.

use super::{parse_gamma, parse_incidence, serialize_gamma, serialize_incidence, CodecError, SumEncoding};
use crate::graph::Graph;

pub const TAG_GAMMA: u8 = 0x01;
pub const TAG_INCIDENCE: u8 = 0x02;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Container {
    Gamma(SumEncoding),
    Incidence(Graph),
}

impl Container {
    pub fn to_bytes(&self) -> Result<Vec<u8>, CodecError> {
        let (tag, payload) = match self {
            Container::Gamma(enc) => (TAG_GAMMA, serialize_gamma(enc)?),
            Container::Incidence(g) => (TAG_INCIDENCE, serialize_incidence(g)?),
        };
        let mut out = Vec::with_capacity(payload.len() + 1);
        out.push(tag);
        out.extend_from_slice(&payload);
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        match bytes.split_first() {
            None => Err(CodecError::Truncated),
            Some((&TAG_GAMMA, rest)) => Ok(Container::Gamma(parse_gamma(rest)?)),
            Some((&TAG_INCIDENCE, rest)) => Ok(Container::Incidence(parse_incidence(rest)?)),
            Some((&tag, _)) => Err(CodecError::BadTag(tag)),
        }
    }
}
