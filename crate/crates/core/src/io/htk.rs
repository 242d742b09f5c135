use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::feature::FeatureMatrix;

/// `USER` parameter kind: user-defined features with no qualifiers.
pub const HTK_USER: u16 = 9;
const HTK_COMPRESSED: u16 = 0o2000;
const HEADER_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HtkHeader {
    pub n_samples: u32,
    /// Frame period in 100 ns units.
    pub samp_period: u32,
    /// Bytes per frame.
    pub samp_size: u16,
    pub parm_kind: u16,
}

impl HtkHeader {
    fn encode(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.n_samples.to_be_bytes());
        out.extend_from_slice(&self.samp_period.to_be_bytes());
        out.extend_from_slice(&self.samp_size.to_be_bytes());
        out.extend_from_slice(&self.parm_kind.to_be_bytes());
    }

    fn decode(b: &[u8]) -> Result<Self> {
        if b.len() < HEADER_LEN {
            return Err(Error::Htk(format!(
                "{} bytes is shorter than the header",
                b.len()
            )));
        }
        Ok(Self {
            n_samples: u32::from_be_bytes([b[0], b[1], b[2], b[3]]),
            samp_period: u32::from_be_bytes([b[4], b[5], b[6], b[7]]),
            samp_size: u16::from_be_bytes([b[8], b[9]]),
            parm_kind: u16::from_be_bytes([b[10], b[11]]),
        })
    }
}

/// Largest dimension whose frame size fits the signed 16-bit `sampSize` field.
pub const HTK_MAX_DIM: usize = (i16::MAX as usize) / 4;

pub fn encode_htk(m: &FeatureMatrix) -> Result<Vec<u8>> {
    let dim = m.dim();
    if dim > HTK_MAX_DIM {
        return Err(Error::Htk(format!(
            "{dim} dimensions exceed the HTK frame-size limit of {HTK_MAX_DIM}"
        )));
    }
    let frames = u32::try_from(m.frames())
        .map_err(|_| Error::Htk(format!("{} frames do not fit the header", m.frames())))?;
    let header = HtkHeader {
        n_samples: frames,
        samp_period: (m.frame_shift_s() * 1e7).round() as u32,
        samp_size: (4 * dim) as u16,
        parm_kind: HTK_USER,
    };
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * dim * m.frames());
    header.encode(&mut out);
    for &v in m.values().iter() {
        out.extend_from_slice(&(v as f32).to_be_bytes());
    }
    Ok(out)
}

pub fn decode_htk(bytes: &[u8]) -> Result<FeatureMatrix> {
    let header = HtkHeader::decode(bytes)?;
    if header.parm_kind & HTK_COMPRESSED != 0 {
        return Err(Error::Htk(
            "compressed parameter files are not supported".into(),
        ));
    }
    if header.samp_size % 4 != 0 {
        return Err(Error::Htk(format!(
            "sample size {} is not a whole number of 32-bit floats",
            header.samp_size
        )));
    }
    if header.samp_period == 0 {
        return Err(Error::Htk("sample period 0".into()));
    }
    let frames = header.n_samples as usize;
    let dim = header.samp_size as usize / 4;
    let expected = HEADER_LEN + frames * dim * 4;
    if bytes.len() != expected {
        return Err(Error::Htk(format!(
            "header announces {frames}x{dim} values ({expected} bytes), file has {}",
            bytes.len()
        )));
    }
    let values: Vec<f64> = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|c| f32::from_be_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect();
    let values =
        Array2::from_shape_vec((frames, dim), values).map_err(|e| Error::Htk(e.to_string()))?;
    FeatureMatrix::from_values(values, header.samp_period as f64 / 1e7)
}

pub fn write_htk(m: &FeatureMatrix, path: impl AsRef<Path>) -> Result<()> {
    super::write_bytes(path.as_ref(), &encode_htk(m)?)
}

pub fn read_htk(path: impl AsRef<Path>) -> Result<FeatureMatrix> {
    decode_htk(&super::read_bytes(path.as_ref())?)
}
