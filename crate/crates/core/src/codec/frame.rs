use thiserror::Error;

/// Leading bytes of a framed payload.
pub const MAGIC: [u8; 3] = *b"BJ1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    SchemaLess,
    SchemaDriven,
}

impl Mode {
    fn byte(self) -> u8 {
        match self {
            Mode::SchemaLess => 0,
            Mode::SchemaDriven => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("payload does not start with the BJ1 magic")]
    BadMagic,
    #[error("unknown mode byte {0:#04x}")]
    UnknownMode(u8),
}

/// Prefixes a payload with the magic and a mode byte.
pub fn frame(mode: Mode, payload: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(payload.len() + 4);
    out.extend_from_slice(&MAGIC);
    out.push(mode.byte());
    out.extend_from_slice(payload);
    out
}

pub fn unframe(bytes: &[u8]) -> Result<(Mode, &[u8]), FrameError> {
    if bytes.len() < 4 || bytes[..3] != MAGIC {
        return Err(FrameError::BadMagic);
    }
    let mode = match bytes[3] {
        0 => Mode::SchemaLess,
        1 => Mode::SchemaDriven,
        other => return Err(FrameError::UnknownMode(other)),
    };
    Ok((mode, &bytes[4..]))
}
