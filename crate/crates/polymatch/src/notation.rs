//! Textual notation for polygon chains and rings.
//!
//! A face token is `t(s,k)`: an `s`-cycle whose exiting shared edge lies `k`
//! edges past its entering shared edge. Terminal faces of a chain have no
//! exiting shared edge and take the wildcard offset `*`. The one-argument
//! token `t(j)` with `j` in 1..=3 is hexagonal shorthand for `t(6,j)`, and a
//! string made entirely of shorthand tokens denotes the interior faces of a
//! hexagonal chain, implicitly padded with `t(6,*)` terminals.
//!
//! Sizes and offsets are validated on construction: `s >= 4` and
//! `1 <= k <= s - 3`, which guarantees the two shared edges of a face are
//! never incident to each other.

use alloc::vec::Vec;
use core::fmt;

/// One face of a chain or ring: cycle size plus connection offset.
/// `offset == None` is the terminal wildcard `*`, only legal at the ends of a
/// chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    pub size: u32,
    pub offset: Option<u32>,
}

impl FaceSpec {
    pub fn interior(size: u32, offset: u32) -> Self {
        FaceSpec { size, offset: Some(offset) }
    }

    pub fn terminal(size: u32) -> Self {
        FaceSpec { size, offset: None }
    }
}

impl fmt::Display for FaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.offset {
            Some(k) => write!(f, "t({},{})", self.size, k),
            None => write!(f, "t({},*)", self.size),
        }
    }
}

/// An open chain of `n >= 2` faces. The first and last face carry the
/// wildcard offset, interior faces an integer offset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    faces: Vec<FaceSpec>,
}

/// A closed ring of `n >= 3` faces, all with integer offsets. Face `n`
/// connects back to face 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    faces: Vec<FaceSpec>,
}

impl ChainSpec {
    pub fn new(faces: Vec<FaceSpec>) -> Result<Self, ParseError> {
        let n = faces.len();
        if n < 2 {
            return Err(ParseError::structure(StructureKind::TooFewFaces {
                got: n,
                need: 2,
                ring: false,
            }));
        }
        for (i, face) in faces.iter().enumerate() {
            check_face(face, i)?;
            let is_end = i == 0 || i == n - 1;
            match (is_end, face.offset) {
                (true, Some(_)) => {
                    return Err(ParseError::structure(StructureKind::TerminalNotWildcard {
                        face: i + 1,
                    }))
                }
                (false, None) => {
                    return Err(ParseError::structure(StructureKind::WildcardInterior {
                        face: i + 1,
                    }))
                }
                _ => {}
            }
        }
        Ok(ChainSpec { faces })
    }

    pub fn faces(&self) -> &[FaceSpec] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl RingSpec {
    pub fn new(faces: Vec<FaceSpec>) -> Result<Self, ParseError> {
        let n = faces.len();
        if n < 3 {
            return Err(ParseError::structure(StructureKind::TooFewFaces {
                got: n,
                need: 3,
                ring: true,
            }));
        }
        for (i, face) in faces.iter().enumerate() {
            check_face(face, i)?;
            if face.offset.is_none() {
                return Err(ParseError::structure(StructureKind::WildcardInRing { face: i + 1 }));
            }
        }
        Ok(RingSpec { faces })
    }

    pub fn faces(&self) -> &[FaceSpec] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cyclic rotation: the face at index `by` becomes face 1. Rotating a
    /// ring spec does not change the graph it denotes up to isomorphism.
    pub fn rotate(&self, by: usize) -> RingSpec {
        let n = self.faces.len();
        let by = by % n;
        let mut faces = Vec::with_capacity(n);
        faces.extend_from_slice(&self.faces[by..]);
        faces.extend_from_slice(&self.faces[..by]);
        RingSpec { faces }
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for face in &self.faces {
            write!(f, "{}", face)?;
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for face in &self.faces {
            write!(f, "{}", face)?;
        }
        Ok(())
    }
}

fn check_face(face: &FaceSpec, index: usize) -> Result<(), ParseError> {
    if face.size < 4 {
        return Err(ParseError::range(RangeKind::SizeTooSmall {
            size: face.size,
            face: index + 1,
        }));
    }
    if let Some(k) = face.offset {
        if k < 1 || k > face.size - 3 {
            return Err(ParseError::range(RangeKind::OffsetOutOfRange {
                size: face.size,
                offset: k,
                face: index + 1,
            }));
        }
    }
    Ok(())
}

/// Parse error, carrying the byte position for syntax errors. Errors come in
/// three classes: syntax (malformed text), range (size/offset outside the
/// legal window), structure (wildcards or face counts in the wrong place).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { position: usize, expected: &'static str },
    Range(RangeKind),
    Structure(StructureKind),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeKind {
    SizeTooSmall { size: u32, face: usize },
    OffsetOutOfRange { size: u32, offset: u32, face: usize },
    ShorthandOffset { offset: u32, position: usize },
    NumberTooLarge { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureKind {
    TooFewFaces { got: usize, need: usize, ring: bool },
    TerminalNotWildcard { face: usize },
    WildcardInterior { face: usize },
    WildcardInRing { face: usize },
}

impl ParseError {
    fn syntax(position: usize, expected: &'static str) -> Self {
        ParseError { kind: ParseErrorKind::Syntax { position, expected } }
    }

    fn range(kind: RangeKind) -> Self {
        ParseError { kind: ParseErrorKind::Range(kind) }
    }

    fn structure(kind: StructureKind) -> Self {
        ParseError { kind: ParseErrorKind::Structure(kind) }
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Syntax { .. })
    }

    pub fn is_range(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Range(_))
    }

    pub fn is_structure(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Structure(_))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax { position, expected } => {
                write!(f, "syntax error at position {}: expected {}", position, expected)
            }
            ParseErrorKind::Range(r) => match r {
                RangeKind::SizeTooSmall { size, face } => {
                    write!(f, "range error: face {} has size {}, minimum is 4", face, size)
                }
                RangeKind::OffsetOutOfRange { size, offset, face } => write!(
                    f,
                    "range error: face {} has offset {}, legal range for size {} is 1..={}",
                    face,
                    offset,
                    size,
                    size - 3
                ),
                RangeKind::ShorthandOffset { offset, position } => write!(
                    f,
                    "range error at position {}: shorthand t({}) is only defined for offsets 1, 2, 3",
                    position, offset
                ),
                RangeKind::NumberTooLarge { position } => {
                    write!(f, "range error at position {}: number too large", position)
                }
            },
            ParseErrorKind::Structure(s) => match s {
                StructureKind::TooFewFaces { got, need, ring } => write!(
                    f,
                    "structure error: a {} needs at least {} faces, got {}",
                    if *ring { "ring" } else { "chain" },
                    need,
                    got
                ),
                StructureKind::TerminalNotWildcard { face } => write!(
                    f,
                    "structure error: terminal face {} must use the wildcard offset '*'",
                    face
                ),
                StructureKind::WildcardInterior { face } => write!(
                    f,
                    "structure error: interior face {} may not use the wildcard offset",
                    face
                ),
                StructureKind::WildcardInRing { face } => {
                    write!(f, "structure error: ring face {} may not use the wildcard offset", face)
                }
            },
        }
    }
}

/// Raw token straight off the text, before shorthand expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RawToken {
    Full { size: u32, offset: Option<u32> },
    Short { offset: u32, position: usize },
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8, what: &'static str) -> Result<(), ParseError> {
        if self.pos < self.bytes.len() && self.bytes[self.pos] == byte {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::syntax(self.pos, what))
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            value = value * 10 + u64::from(self.bytes[self.pos] - b'0');
            if value > u64::from(u32::MAX) {
                return Err(ParseError::range(RangeKind::NumberTooLarge { position: start }));
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::syntax(self.pos, "a digit"));
        }
        Ok(value as u32)
    }

    fn token(&mut self) -> Result<RawToken, ParseError> {
        let token_start = self.pos;
        self.expect(b't', "'t'")?;
        self.expect(b'(', "'('")?;
        let first = self.number()?;
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b')' {
            self.pos += 1;
            return Ok(RawToken::Short { offset: first, position: token_start });
        }
        self.expect(b',', "',' or ')'")?;
        let offset = if self.pos < self.bytes.len() && self.bytes[self.pos] == b'*' {
            self.pos += 1;
            None
        } else {
            Some(self.number()?)
        };
        self.expect(b')', "')'")?;
        Ok(RawToken::Full { size: first, offset })
    }

    fn tokens(&mut self) -> Result<Vec<RawToken>, ParseError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return Err(ParseError::syntax(self.pos, "a face token"));
        }
        while self.pos < self.bytes.len() {
            out.push(self.token()?);
            self.skip_ws();
        }
        Ok(out)
    }
}

fn expand(tokens: &[RawToken]) -> Result<(Vec<FaceSpec>, bool), ParseError> {
    let all_short = tokens.iter().all(|t| matches!(t, RawToken::Short { .. }));
    let mut faces = Vec::with_capacity(tokens.len());
    for token in tokens {
        match *token {
            RawToken::Full { size, offset } => faces.push(FaceSpec { size, offset }),
            RawToken::Short { offset, position } => {
                if !(1..=3).contains(&offset) {
                    return Err(ParseError::range(RangeKind::ShorthandOffset { offset, position }));
                }
                faces.push(FaceSpec::interior(6, offset));
            }
        }
    }
    Ok((faces, all_short))
}

/// Parse a chain spec. An all-shorthand string lists interior hexagons only
/// and is padded with `t(6,*)` terminals.
pub fn parse_chain(text: &str) -> Result<ChainSpec, ParseError> {
    let tokens = Scanner::new(text).tokens()?;
    let (mut faces, all_short) = expand(&tokens)?;
    if all_short {
        faces.insert(0, FaceSpec::terminal(6));
        faces.push(FaceSpec::terminal(6));
    }
    ChainSpec::new(faces)
}

/// Parse a ring spec. Shorthand tokens expand in place; rings have no
/// terminals, so no padding happens.
pub fn parse_ring(text: &str) -> Result<RingSpec, ParseError> {
    let tokens = Scanner::new(text).tokens()?;
    let (faces, _) = expand(&tokens)?;
    RingSpec::new(faces)
}
