use std::path::Path;

use crate::error::{Error, Result};

/// Mono audio with samples normalized to [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct AudioSignal {
    samples: Vec<f64>,
    sample_rate_hz: u32,
}

impl AudioSignal {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32) -> Result<Self> {
        if sample_rate_hz == 0 {
            return Err(Error::InvalidInput("sample rate must be positive".into()));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite sample at index {i}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> u32 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz as f64
    }
}

const WAVE_FORMAT_PCM: u16 = 1;
const WAVE_FORMAT_EXTENSIBLE: u16 = 0xFFFE;

pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioSignal> {
    let bytes = super::read_bytes(path.as_ref())?;
    decode_wav(&bytes)
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

pub(crate) fn decode_wav(bytes: &[u8]) -> Result<AudioSignal> {
    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::MalformedWav("missing RIFF/WAVE signature".into()));
    }

    let mut pos = 12;
    let mut format: Option<(u16, u16, u32, u16)> = None;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32_at(bytes, pos + 4) as usize;
        let body = pos + 8;
        match id {
            b"fmt " => {
                if size < 16 || body + size > bytes.len() {
                    return Err(Error::MalformedWav(format!("fmt chunk of {size} bytes")));
                }
                let mut tag = u16_at(bytes, body);
                let channels = u16_at(bytes, body + 2);
                let rate = u32_at(bytes, body + 4);
                let bits = u16_at(bytes, body + 14);
                if tag == WAVE_FORMAT_EXTENSIBLE && size >= 40 {
                    // first two bytes of the sub-format GUID carry the real tag
                    tag = u16_at(bytes, body + 24);
                }
                format = Some((tag, channels, rate, bits));
            }
            b"data" => {
                let (tag, channels, rate, bits) = format
                    .ok_or_else(|| Error::MalformedWav("data chunk before fmt chunk".into()))?;
                if tag != WAVE_FORMAT_PCM {
                    return Err(Error::UnsupportedWav(format!(
                        "format tag {tag:#06x}; only uncompressed PCM is supported"
                    )));
                }
                if channels != 1 {
                    return Err(Error::UnsupportedWav(format!(
                        "{channels} channels; only mono is supported"
                    )));
                }
                if bits != 16 {
                    return Err(Error::UnsupportedWav(format!(
                        "{bits}-bit samples; only 16-bit is supported"
                    )));
                }
                if rate == 0 {
                    return Err(Error::MalformedWav("sample rate 0".into()));
                }
                let available = bytes.len() - body;
                if size > available || !size.is_multiple_of(2) {
                    return Err(Error::TruncatedWav {
                        expected: size,
                        found: available.min(size),
                    });
                }
                let samples = bytes[body..body + size]
                    .chunks_exact(2)
                    .map(|c| i16::from_le_bytes([c[0], c[1]]) as f64 / 32768.0)
                    .collect();
                return AudioSignal::new(samples, rate);
            }
            _ => {}
        }
        // chunks are word aligned
        pos = body + size + (size & 1);
    }
    Err(Error::MalformedWav(if format.is_some() {
        "no data chunk".into()
    } else {
        "no fmt chunk".into()
    }))
}

/// Encodes samples as a mono PCM-16 WAV image. Samples are clipped to
/// [-1, 1) and rounded to the nearest 1/32768 step.
pub fn encode_wav_pcm16(samples: &[f64], sample_rate_hz: u32) -> Vec<u8> {
    let data_len = samples.len() * 2;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((36 + data_len) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&WAVE_FORMAT_PCM.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&sample_rate_hz.to_le_bytes());
    out.extend_from_slice(&(sample_rate_hz * 2).to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes());
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in samples {
        let q = (s * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    out
}

pub fn write_wav_pcm16(path: impl AsRef<Path>, signal: &AudioSignal) -> Result<()> {
    super::write_bytes(
        path.as_ref(),
        &encode_wav_pcm16(signal.samples(), signal.sample_rate_hz()),
    )
}
