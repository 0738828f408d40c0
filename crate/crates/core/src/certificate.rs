//! Plain-text interchange format for edge set-colourings.
//!
//! A certificate is a complete, self-checking dump of one colouring: a
//! version line, a parameter line, an optional seed-graph line, one line
//! per vertex pair in lexicographic order, and a trailing SHA-256 of the
//! edge block. Files are byte-reproducible: writing the same certificate
//! twice yields identical bytes, so goldens can be compared verbatim.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::colouring::{self, SetColouring};
use crate::ratio;
use crate::Rational;

/// Largest palette size a certificate may declare.
pub const MAX_PALETTE: u32 = 4096;

/// Cap on `edges * words_per_edge` when reading, so a hostile header
/// cannot demand an enormous allocation before any edge line is seen.
const MAX_MASK_WORDS: usize = 1 << 26;

const MAGIC: &str = "RAMSEYCERT 1";

/// Which recipe produced the colouring stored in a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionTag {
    /// Random blow-up colouring with local repair.
    Main,
    /// Complete multipartite colour classes.
    Simple,
    /// Anything else (hand-built, exhaustive search output, ...).
    External,
}

impl ConstructionTag {
    /// The token this tag uses in certificate headers.
    pub fn label(self) -> &'static str {
        match self {
            ConstructionTag::Main => "main",
            ConstructionTag::Simple => "simple",
            ConstructionTag::External => "external",
        }
    }

    fn parse(text: &str) -> Option<Self> {
        match text {
            "main" => Some(ConstructionTag::Main),
            "simple" => Some(ConstructionTag::Simple),
            "external" => Some(ConstructionTag::External),
            _ => None,
        }
    }
}

/// One colouring plus the header data needed to regenerate or audit it.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Minimum colours required per edge when this colouring was built.
    pub s: u32,
    /// Clique order the colouring is meant to avoid monochromatically.
    pub k: u32,
    pub construction: ConstructionTag,
    /// Master seed the builder was keyed with (0 for external inputs).
    pub seed: u64,
    /// Seed-graph vertex count; present exactly when `construction` is `Main`.
    pub m: Option<u64>,
    /// Seed-graph edge probability; present exactly when `construction` is `Main`.
    pub p: Option<Rational>,
    pub colouring: SetColouring,
}

#[derive(Debug)]
pub enum CertificateError {
    Io(io::Error),
    /// First line was not the expected magic string.
    VersionMismatch(String),
    Parse {
        line: usize,
        message: String,
    },
    /// Edge block bytes do not hash to the stored digest.
    ChecksumMismatch {
        stored: String,
        computed: String,
    },
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::Io(e) => write!(f, "certificate i/o error: {e}"),
            CertificateError::VersionMismatch(found) => {
                write!(f, "bad certificate header {found:?}, expected {MAGIC:?}")
            }
            CertificateError::Parse { line, message } => {
                write!(f, "certificate line {line}: {message}")
            }
            CertificateError::ChecksumMismatch { stored, computed } => {
                write!(f, "checksum mismatch: file says {stored}, edges hash to {computed}")
            }
        }
    }
}

impl std::error::Error for CertificateError {}

impl From<io::Error> for CertificateError {
    fn from(e: io::Error) -> Self {
        CertificateError::Io(e)
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

impl Certificate {
    pub fn r(&self) -> u32 {
        self.colouring.r()
    }

    pub fn n(&self) -> u32 {
        self.colouring.n()
    }

    /// The edge block: one line per pair, lexicographic, each
    /// `u v <mask hex>` with a trailing newline.
    fn edge_block(&self) -> String {
        let mut block = String::new();
        for (u, v) in self.colouring.edges() {
            let hex = colouring::mask_to_hex(self.colouring.mask(u, v));
            let _ = writeln!(block, "{u} {v} {hex}");
        }
        block
    }

    /// Full file contents, byte-exact.
    pub fn render(&self) -> String {
        debug_assert_eq!(
            self.construction == ConstructionTag::Main,
            self.m.is_some() && self.p.is_some(),
            "seed-graph data must be present exactly for blow-up colourings",
        );
        let mut text = String::new();
        let _ = writeln!(text, "{MAGIC}");
        let _ = writeln!(
            text,
            "r={} s={} k={} n={} construction={} seed={}",
            self.r(),
            self.s,
            self.k,
            self.n(),
            self.construction.label(),
            self.seed,
        );
        if let (Some(m), Some(p)) = (&self.m, &self.p) {
            let _ = writeln!(text, "m={} p={}/{}", m, p.numer(), p.denom());
        }
        let block = self.edge_block();
        let digest = sha256_hex(block.as_bytes());
        text.push_str(&block);
        let _ = writeln!(text, "sha256={digest}");
        text
    }

    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(self.render().as_bytes())
    }

    pub fn save(&self, path: &Path) -> Result<(), CertificateError> {
        fs::write(path, self.render())?;
        Ok(())
    }

    pub fn parse_str(text: &str) -> Result<Self, CertificateError> {
        Parser::new(text).run()
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self, CertificateError> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        Self::parse_str(&text)
    }

    pub fn load(path: &Path) -> Result<Self, CertificateError> {
        let text = fs::read_to_string(path)?;
        Self::parse_str(&text)
    }
}

/// Sequential parser over the raw file text. Lines keep their exact bytes
/// so the digest check covers the file as written, not a normalised form.
struct Parser<'a> {
    rest: &'a str,
    lineno: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { rest: text, lineno: 0 }
    }

    fn fail(&self, message: impl Into<String>) -> CertificateError {
        CertificateError::Parse { line: self.lineno, message: message.into() }
    }

    /// Next line with its terminator, or None at end of input.
    fn next_raw(&mut self) -> Option<&'a str> {
        if self.rest.is_empty() {
            return None;
        }
        self.lineno += 1;
        let (raw, rest) = match self.rest.find('\n') {
            Some(pos) => self.rest.split_at(pos + 1),
            None => (self.rest, &self.rest[self.rest.len()..]),
        };
        self.rest = rest;
        Some(raw)
    }

    fn next_line(&mut self, what: &str) -> Result<(&'a str, &'a str), CertificateError> {
        match self.next_raw() {
            Some(raw) => Ok((raw.strip_suffix('\n').unwrap_or(raw), raw)),
            None => {
                self.lineno += 1;
                Err(self.fail(format!("unexpected end of file, expected {what}")))
            }
        }
    }

    fn field(&self, token: Option<&'a str>, key: &str) -> Result<&'a str, CertificateError> {
        let token = token.ok_or_else(|| self.fail(format!("missing field {key}=")))?;
        token
            .strip_prefix(key)
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| self.fail(format!("expected field {key}=..., found {token:?}")))
    }

    fn run(mut self) -> Result<Certificate, CertificateError> {
        let (magic, _) = self.next_line("version line")?;
        if magic != MAGIC {
            return Err(CertificateError::VersionMismatch(magic.to_string()));
        }

        let (header, _) = self.next_line("parameter line")?;
        let mut tokens = header.split_whitespace();
        let r: u32 = self.parse_num_field(tokens.next(), "r")?;
        let s: u32 = self.parse_num_field(tokens.next(), "s")?;
        let k: u32 = self.parse_num_field(tokens.next(), "k")?;
        let n: u32 = self.parse_num_field(tokens.next(), "n")?;
        let construction = self.field(tokens.next(), "construction")?;
        let construction = ConstructionTag::parse(construction)
            .ok_or_else(|| self.fail(format!("unknown construction {construction:?}")))?;
        let seed: u64 = self.parse_num_field(tokens.next(), "seed")?;
        if let Some(extra) = tokens.next() {
            return Err(self.fail(format!("unexpected token {extra:?} on parameter line")));
        }

        if r < 1 || r > MAX_PALETTE {
            return Err(self.fail(format!("palette size r={r} out of range 1..={MAX_PALETTE}")));
        }
        if s < 1 || s > r {
            return Err(self.fail(format!("per-edge minimum s={s} out of range 1..={r}")));
        }
        if k < 2 {
            return Err(self.fail(format!("clique order k={k} must be at least 2")));
        }
        if n < 1 {
            return Err(self.fail("vertex count n must be at least 1".to_string()));
        }

        let (mut m, mut p) = (None, None);
        if construction == ConstructionTag::Main {
            let (line, _) = self.next_line("seed-graph line")?;
            let mut tokens = line.split_whitespace();
            let m_val: u64 = self.parse_num_field(tokens.next(), "m")?;
            if m_val < 1 {
                return Err(self.fail("seed-graph size m must be at least 1".to_string()));
            }
            let p_text = self.field(tokens.next(), "p")?;
            let p_val = ratio::parse(p_text)
                .map_err(|e| self.fail(format!("field p={p_text:?}: {e}")))?;
            if p_val < Rational::from_integer(0.into())
                || p_val > Rational::from_integer(1.into())
            {
                return Err(self.fail(format!("probability p={p_text} outside [0, 1]")));
            }
            if let Some(extra) = tokens.next() {
                return Err(self.fail(format!("unexpected token {extra:?} on seed-graph line")));
            }
            m = Some(m_val);
            p = Some(p_val);
        }

        let words = colouring::words_for(r);
        let edges = n as usize * (n as usize - 1) / 2;
        if edges.saturating_mul(words) > MAX_MASK_WORDS {
            return Err(self.fail(format!(
                "colouring on n={n} vertices with r={r} colours is too large to load",
            )));
        }

        let mut col = SetColouring::new(n, r);
        let mut hasher = Sha256::new();
        for u in 0..n {
            for v in u + 1..n {
                let (line, raw) = self.next_line("edge line")?;
                hasher.update(raw.as_bytes());
                let mut tokens = line.split_whitespace();
                let fu: u32 = match tokens.next() {
                    Some(t) => self.parse_num(t, "edge endpoint")?,
                    None => return Err(self.fail("empty edge line".to_string())),
                };
                let fv: u32 = match tokens.next() {
                    Some(t) => self.parse_num(t, "edge endpoint")?,
                    None => return Err(self.fail("edge line missing second endpoint".to_string())),
                };
                if (fu, fv) != (u, v) {
                    return Err(self.fail(format!("expected edge {u} {v}, found {fu} {fv}")));
                }
                let hex = tokens
                    .next()
                    .ok_or_else(|| self.fail("edge line missing colour mask".to_string()))?;
                if let Some(extra) = tokens.next() {
                    return Err(self.fail(format!("unexpected token {extra:?} on edge line")));
                }
                let mask = colouring::mask_from_hex(hex, r, words)
                    .map_err(|e| self.fail(format!("edge {u} {v}: {e}")))?;
                col.mask_mut(u, v).copy_from_slice(&mask);
            }
        }

        let (digest_line, _) = self.next_line("checksum line")?;
        let stored = digest_line
            .strip_prefix("sha256=")
            .ok_or_else(|| self.fail(format!("expected sha256=..., found {digest_line:?}")))?;
        if stored.len() != 64 || !stored.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(self.fail(format!("malformed sha256 value {stored:?}")));
        }
        let mut computed = String::with_capacity(64);
        for b in hasher.finalize() {
            let _ = write!(computed, "{b:02x}");
        }
        if stored.to_ascii_lowercase() != computed {
            return Err(CertificateError::ChecksumMismatch {
                stored: stored.to_string(),
                computed,
            });
        }

        if let Some(raw) = self.next_raw() {
            return Err(self.fail(format!("trailing content {raw:?} after checksum line")));
        }

        Ok(Certificate { s, k, construction, seed, m, p, colouring: col })
    }

    fn parse_num_field<T: std::str::FromStr>(
        &self,
        token: Option<&'a str>,
        key: &str,
    ) -> Result<T, CertificateError> {
        let text = self.field(token, key)?;
        self.parse_num(text, key)
    }

    fn parse_num<T: std::str::FromStr>(&self, text: &str, what: &str) -> Result<T, CertificateError> {
        text.parse()
            .map_err(|_| self.fail(format!("{what} value {text:?} is not a valid number")))
    }
}
