use std::path::Path;

use crate::error::{Error, Result};

/// A run of frames `[start, end)` carrying one phoneme label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSegment {
    pub start: usize,
    pub end: usize,
    pub phoneme: String,
}

impl LabelSegment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Frame-level phoneme labels: sorted, non-empty, non-overlapping segments.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelTrack {
    segments: Vec<LabelSegment>,
}

impl LabelTrack {
    /// Sorts the segments by start frame and rejects empty or overlapping ones.
    pub fn new(mut segments: Vec<LabelSegment>) -> Result<Self> {
        if let Some((i, s)) = segments.iter().enumerate().find(|(_, s)| s.end <= s.start) {
            return Err(Error::Label {
                line: i + 1,
                msg: format!("segment {}..{} is empty", s.start, s.end),
            });
        }
        segments.sort_by_key(|s| (s.start, s.end));
        for pair in segments.windows(2) {
            if pair[1].start < pair[0].end {
                return Err(Error::Label {
                    line: 0,
                    msg: format!(
                        "segments {}..{} ({}) and {}..{} ({}) overlap",
                        pair[0].start,
                        pair[0].end,
                        pair[0].phoneme,
                        pair[1].start,
                        pair[1].end,
                        pair[1].phoneme
                    ),
                });
            }
        }
        Ok(Self { segments })
    }

    pub fn segments(&self) -> &[LabelSegment] {
        &self.segments
    }

    /// One past the last labeled frame (0 for an empty track).
    pub fn end_frame(&self) -> usize {
        self.segments.last().map_or(0, |s| s.end)
    }
}

/// Parses `<start_frame> <end_frame_exclusive> <phoneme>` lines. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_labels(text: &str) -> Result<LabelTrack> {
    let mut segments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Label { line: idx + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [start, end, phoneme] = fields[..] else {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        };
        let start: usize = start.parse().map_err(|_| {
            err(format!(
                "start frame {start:?} is not a non-negative integer"
            ))
        })?;
        let end: usize = end
            .parse()
            .map_err(|_| err(format!("end frame {end:?} is not a non-negative integer")))?;
        if end <= start {
            return Err(err(format!("segment {start}..{end} is empty")));
        }
        segments.push(LabelSegment {
            start,
            end,
            phoneme: phoneme.to_string(),
        });
    }
    LabelTrack::new(segments)
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<LabelTrack> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_labels(&text)
}

/// Reads a phoneme list: one symbol per line, `#` comments and blank lines ignored.
pub fn read_phone_list(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut phones: Vec<String> = Vec::new();
    for line in text.lines() {
        let sym = line.split('#').next().unwrap_or("").trim();
        if !sym.is_empty() && !phones.iter().any(|p| p == sym) {
            phones.push(sym.to_string());
        }
    }
    Ok(phones)
}
