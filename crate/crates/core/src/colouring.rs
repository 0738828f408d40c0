//! Set colourings of complete graphs, stored as per-edge colour masks.
//!
//! Edges of K_n are indexed lexicographically: (0,1), (0,2), ..., (0,n-1),
//! (1,2), ... Each edge carries a bitmask over the palette {0, ..., r-1},
//! packed into ceil(r/64) words. All mutation goes through checked setters,
//! so a mask never holds a bit at or above r.

use std::fmt;

/// Words needed for an r-bit mask.
pub(crate) fn words_for(r: u32) -> usize {
    (r as usize).div_ceil(64)
}

// --- slice-level mask helpers, shared with the certificate codec ---

pub(crate) fn mask_test(words: &[u64], bit: u32) -> bool {
    words[(bit / 64) as usize] >> (bit % 64) & 1 == 1
}

pub(crate) fn mask_set(words: &mut [u64], bit: u32) {
    words[(bit / 64) as usize] |= 1u64 << (bit % 64);
}

pub(crate) fn mask_popcount(words: &[u64]) -> u32 {
    words.iter().map(|w| w.count_ones()).sum()
}

/// a is a subset of b.
pub(crate) fn mask_is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Clears all but the `keep` lowest set bits.
pub(crate) fn mask_keep_lowest(words: &mut [u64], keep: u32) {
    let mut remaining = keep;
    for w in words.iter_mut() {
        let here = w.count_ones();
        if here <= remaining {
            remaining -= here;
            continue;
        }
        // keep the lowest `remaining` set bits of this word, drop the rest
        let mut kept = 0u64;
        let mut word = *w;
        for _ in 0..remaining {
            let low = word & word.wrapping_neg();
            kept |= low;
            word ^= low;
        }
        *w = kept;
        remaining = 0;
    }
}

/// Minimal lowercase hex of the mask value; "0" for the empty mask.
pub(crate) fn mask_to_hex(words: &[u64]) -> String {
    let mut started = false;
    let mut out = String::new();
    for w in words.iter().rev() {
        if started {
            out.push_str(&format!("{w:016x}"));
        } else if *w != 0 {
            out.push_str(&format!("{w:x}"));
            started = true;
        }
    }
    if !started {
        out.push('0');
    }
    out
}

/// Parses lowercase/uppercase hex into a mask of `words` words with all bits
/// below `r`; reports the offence otherwise.
pub(crate) fn mask_from_hex(s: &str, r: u32, words: usize) -> Result<Vec<u64>, String> {
    if s.is_empty() {
        return Err("empty mask".to_string());
    }
    let mut out = vec![0u64; words];
    let mut bit = 0usize;
    for ch in s.bytes().rev() {
        let nib = match ch {
            b'0'..=b'9' => ch - b'0',
            b'a'..=b'f' => ch - b'a' + 10,
            b'A'..=b'F' => ch - b'A' + 10,
            _ => return Err(format!("invalid hex digit '{}'", ch as char)),
        } as u64;
        if nib != 0 {
            if bit / 64 >= words {
                return Err("mask wider than the palette".to_string());
            }
            out[bit / 64] |= nib << (bit % 64);
        }
        bit += 4;
    }
    // reject any bit at or above r
    for b in r..(words as u32 * 64) {
        if mask_test(&out, b) {
            return Err(format!("mask has colour bit {b} but the palette has {r} colours"));
        }
    }
    Ok(out)
}

/// A set colouring of K_n over the palette {0, ..., r-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct SetColouring {
    n: u32,
    r: u32,
    words_per_edge: usize,
    masks: Vec<u64>,
}

impl SetColouring {
    /// Empty colouring (no edge carries any colour yet).
    pub fn new(n: u32, r: u32) -> Self {
        assert!(r >= 1, "palette must have at least one colour");
        let words_per_edge = words_for(r);
        let edges = n as usize * (n as usize).saturating_sub(1) / 2;
        SetColouring {
            n,
            r,
            words_per_edge,
            masks: vec![0u64; edges * words_per_edge],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn words_per_edge(&self) -> usize {
        self.words_per_edge
    }

    pub fn edge_count(&self) -> usize {
        self.n as usize * (self.n as usize - 1) / 2
    }

    /// Lexicographic index of the edge {u, v}, u < v required.
    pub fn edge_index(&self, u: u32, v: u32) -> usize {
        debug_assert!(u < v && v < self.n, "edge ({u}, {v}) out of range");
        let n = self.n as usize;
        let u = u as usize;
        let v = v as usize;
        u * n - u * (u + 1) / 2 + (v - u - 1)
    }

    pub fn mask(&self, u: u32, v: u32) -> &[u64] {
        let i = self.edge_index(u, v) * self.words_per_edge;
        &self.masks[i..i + self.words_per_edge]
    }

    pub fn mask_mut(&mut self, u: u32, v: u32) -> &mut [u64] {
        let i = self.edge_index(u, v) * self.words_per_edge;
        &mut self.masks[i..i + self.words_per_edge]
    }

    pub fn set_colour(&mut self, u: u32, v: u32, colour: u32) {
        assert!(colour < self.r, "colour {colour} outside palette");
        mask_set(self.mask_mut(u, v), colour);
    }

    pub fn has_colour(&self, u: u32, v: u32, colour: u32) -> bool {
        colour < self.r && mask_test(self.mask(u, v), colour)
    }

    /// Number of colours on the edge {u, v}.
    pub fn colour_count(&self, u: u32, v: u32) -> u32 {
        mask_popcount(self.mask(u, v))
    }

    /// Colours of the edge {u, v}, ascending.
    pub fn colours(&self, u: u32, v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.colour_count(u, v) as usize);
        for (w, word) in self.mask(u, v).iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                out.push(w as u32 * 64 + bits.trailing_zeros());
                bits &= bits - 1;
            }
        }
        out
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }
}

impl fmt::Debug for SetColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetColouring(n={}, r={})", self.n, self.r)
    }
}
