//! File formats: PCM-16 WAV input, frame-indexed phoneme labels, HTK
//! parameter files and plain CSV matrices.

mod csv;
mod htk;
mod labels;
mod wav;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use self::csv::{
    format_csv_matrix, parse_csv_matrix, read_csv_matrix, write_csv_matrix, CsvMatrix,
};
pub use self::htk::{
    decode_htk, encode_htk, read_htk, write_htk, HtkHeader, HTK_MAX_DIM, HTK_USER,
};
pub use self::labels::{parse_labels, read_labels, read_phone_list, LabelSegment, LabelTrack};
pub use self::wav::{encode_wav_pcm16, read_wav, write_wav_pcm16, AudioSignal};

use crate::error::{Error, Result};

pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))?;
    f.flush().map_err(|e| Error::io(path, e))
}
