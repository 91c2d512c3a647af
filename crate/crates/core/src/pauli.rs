//! Bit-packed Pauli strings with exact phase tracking.
//!
//! A string is stored as X/Z bit masks over up to 64 sites together with a
//! power of `i`. The stored value is `i^phase * prod_j X^x_j Z^z_j`; a
//! letter `Y` contributes `x=z=1` and one unit of phase, so the tensor word
//! built from `{I, X, Y, Z}` letters is recovered by multiplying the
//! coefficient with `(-i)^{#Y}`. Two strings are equal as basis elements iff
//! their masks are equal; all phases live in the coefficient ring.

use std::fmt;

use crate::errors::{Result, SpinError};
use crate::poly::{grat_i_pow, GRat};

pub const MAX_SITES: u32 = 64;

/// A single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn bits(self) -> (u64, u64) {
        match self {
            Letter::I => (0, 0),
            Letter::X => (1, 0),
            Letter::Y => (1, 1),
            Letter::Z => (0, 1),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'I' => Ok(Letter::I),
            'X' => Ok(Letter::X),
            'Y' => Ok(Letter::Y),
            'Z' => Ok(Letter::Z),
            _ => Err(SpinError::Parse(format!("unknown Pauli letter `{c}`"))),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// A Pauli string in canonical form: masks plus a separate `i`-power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
    /// Power of `i` multiplying the bare `X^x Z^z` product, mod 4.
    pub phase_exp: u8,
    pub n_sites: u32,
}

impl PauliString {
    pub fn identity(n_sites: u32) -> PauliString {
        PauliString {
            x: 0,
            z: 0,
            phase_exp: 0,
            n_sites,
        }
    }

    /// Build the Hermitian tensor word from letters starting at site 0.
    pub fn from_letters(letters: &[Letter], n_sites: u32) -> PauliString {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut phase = 0u8;
        for (j, l) in letters.iter().enumerate() {
            let (xb, zb) = l.bits();
            x |= xb << j;
            z |= zb << j;
            if *l == Letter::Y {
                phase = (phase + 1) % 4;
            }
        }
        PauliString {
            x,
            z,
            phase_exp: phase,
            n_sites,
        }
    }

    pub fn letter_at(&self, site: u32) -> Letter {
        Letter::from_bits((self.x >> site) & 1 == 1, (self.z >> site) & 1 == 1)
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Product in the Pauli group, canonical with accumulated phase.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.n_sites, other.n_sites, "strings address different lattices");
        let extra = 2 * ((self.z & other.x).count_ones() as u8 % 2);
        PauliString {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase_exp: (self.phase_exp + other.phase_exp + extra) % 4,
            n_sites: self.n_sites,
        }
    }

    /// True iff the symplectic form of the masks is odd.
    pub fn anticommutes(&self, other: &PauliString) -> bool {
        assert_eq!(self.n_sites, other.n_sites, "strings address different lattices");
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 1
    }

    /// The coefficient carried in front of the Hermitian tensor word:
    /// `i^{phase_exp} X^x Z^z = i^{phase_exp} (-i)^{#Y} * word`.
    pub fn word_phase(&self) -> GRat {
        let k = (self.phase_exp as u32 + 3 * self.y_count()) % 4;
        grat_i_pow(k as u8)
    }

    /// Occupied-site range `(min, max)` or `None` for the identity.
    pub fn site_range(&self) -> Option<(u32, u32)> {
        let occ = self.x | self.z;
        if occ == 0 {
            return None;
        }
        Some((occ.trailing_zeros(), 63 - occ.leading_zeros()))
    }

    /// Minimal window of effective sites (of `unit_cell` physical sites
    /// each) containing all non-identity letters; identity has length 0.
    pub fn support_len(&self, unit_cell: u32) -> u32 {
        match self.site_range() {
            None => 0,
            Some((lo, hi)) => hi / unit_cell - lo / unit_cell + 1,
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.site_range() {
            None => write!(f, "1"),
            Some((lo, hi)) => {
                let mut first = true;
                for site in lo..=hi {
                    let l = self.letter_at(site);
                    if l == Letter::I {
                        continue;
                    }
                    if !first {
                        write!(f, " ")?;
                    }
                    first = false;
                    write!(f, "{}{}", l.to_char(), site + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// Mask-only key identifying a string as a basis element. Ordered
/// lexicographically on `(x, z)` for deterministic serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliKey {
    pub x: u64,
    pub z: u64,
}

impl PauliKey {
    pub fn identity() -> PauliKey {
        PauliKey { x: 0, z: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn letter_at(&self, site: u32) -> Letter {
        Letter::from_bits((self.x >> site) & 1 == 1, (self.z >> site) & 1 == 1)
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn anticommutes(&self, other: &PauliKey) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 1
    }

    pub fn site_range(&self) -> Option<(u32, u32)> {
        let occ = self.x | self.z;
        if occ == 0 {
            return None;
        }
        Some((occ.trailing_zeros(), 63 - occ.leading_zeros()))
    }

    pub fn support_len(&self, unit_cell: u32) -> u32 {
        match self.site_range() {
            None => 0,
            Some((lo, hi)) => hi / unit_cell - lo / unit_cell + 1,
        }
    }

    /// Shift all site indices by `delta` (may be negative). Panics when the
    /// result leaves the 64-site window.
    pub fn shifted(&self, delta: i32) -> PauliKey {
        if delta >= 0 {
            let d = delta as u32;
            if let Some((_, hi)) = self.site_range() {
                assert!(hi + d < MAX_SITES, "shift leaves the 64-site window");
            }
            PauliKey {
                x: self.x << d,
                z: self.z << d,
            }
        } else {
            let d = (-delta) as u32;
            if let Some((lo, _)) = self.site_range() {
                assert!(lo >= d, "shift below site 0");
            }
            PauliKey {
                x: self.x >> d,
                z: self.z >> d,
            }
        }
    }

    /// The word written with explicit 1-based site indices, `1` for identity.
    pub fn word_spin_half(&self) -> String {
        match self.site_range() {
            None => "1".to_string(),
            Some((lo, hi)) => {
                let mut out = String::new();
                for site in lo..=hi {
                    let l = self.letter_at(site);
                    if l == Letter::I {
                        continue;
                    }
                    if !out.is_empty() {
                        out.push(' ');
                    }
                    out.push(l.to_char());
                    out.push_str(&(site + 1).to_string());
                }
                out
            }
        }
    }

    /// The word written as composite-site groups of two letters, e.g.
    /// `(IX)(XZ)`; blocks before the first occupied one are elided with an
    /// `@b` prefix giving the 1-based starting block.
    pub fn word_composite(&self) -> String {
        match self.site_range() {
            None => "1".to_string(),
            Some((lo, hi)) => {
                let b0 = lo / 2;
                let b1 = hi / 2;
                let mut out = String::new();
                if b0 > 0 {
                    out.push_str(&format!("@{}", b0 + 1));
                }
                for b in b0..=b1 {
                    out.push('(');
                    out.push(self.letter_at(2 * b).to_char());
                    out.push(self.letter_at(2 * b + 1).to_char());
                    out.push(')');
                }
                out
            }
        }
    }

    pub fn word(&self, unit_cell: u32) -> String {
        if unit_cell == 2 {
            self.word_composite()
        } else {
            self.word_spin_half()
        }
    }
}

/// Parse a word in any of the accepted forms:
/// `X1 X2 Z3` (letters with 1-based sites), `XXZ` (consecutive from site 1),
/// or `(IX)(XZ)` composite groups (optionally prefixed `@b`).
pub fn parse_word(input: &str) -> Result<PauliKey> {
    let s = input.trim();
    if s.is_empty() || s == "1" {
        return Ok(PauliKey::identity());
    }
    if s.contains('(') {
        return parse_word_composite(s);
    }
    let mut x = 0u64;
    let mut z = 0u64;
    let mut chars = s.chars().peekable();
    let mut implicit_site = 0u32;
    let mut saw_index = false;
    let mut saw_plain = false;
    while let Some(c) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        let letter = Letter::from_char(c)?;
        let mut digits = String::new();
        while matches!(chars.peek(), Some(d) if d.is_ascii_digit()) {
            digits.push(chars.next().unwrap());
        }
        let site = if digits.is_empty() {
            saw_plain = true;
            let s = implicit_site;
            implicit_site += 1;
            s
        } else {
            saw_index = true;
            let n: u32 = digits
                .parse()
                .map_err(|e| SpinError::Parse(format!("bad site index: {e}")))?;
            if n == 0 || n > MAX_SITES {
                return Err(SpinError::Parse(format!("site index {n} out of range")));
            }
            implicit_site = n;
            n - 1
        };
        if saw_index && saw_plain {
            return Err(SpinError::Parse(
                "cannot mix indexed and plain letters in one word".into(),
            ));
        }
        let (xb, zb) = letter.bits();
        if (xb == 1 && (x >> site) & 1 == 1) || (zb == 1 && (z >> site) & 1 == 1) {
            return Err(SpinError::Parse(format!("site {} given twice", site + 1)));
        }
        x |= xb << site;
        z |= zb << site;
    }
    Ok(PauliKey { x, z })
}

fn parse_word_composite(s: &str) -> Result<PauliKey> {
    let mut x = 0u64;
    let mut z = 0u64;
    let mut chars = s.chars().peekable();
    let mut block = 0u32;
    loop {
        match chars.peek() {
            None => break,
            Some(c) if c.is_whitespace() => {
                chars.next();
            }
            Some('@') => {
                chars.next();
                let mut digits = String::new();
                while matches!(chars.peek(), Some(d) if d.is_ascii_digit()) {
                    digits.push(chars.next().unwrap());
                }
                let b: u32 = digits
                    .parse()
                    .map_err(|e| SpinError::Parse(format!("bad block index: {e}")))?;
                if b == 0 {
                    return Err(SpinError::Parse("block indices are 1-based".into()));
                }
                block = b - 1;
            }
            Some('(') => {
                chars.next();
                let a = chars
                    .next()
                    .ok_or_else(|| SpinError::Parse("unterminated group".into()))?;
                let b = chars
                    .next()
                    .ok_or_else(|| SpinError::Parse("unterminated group".into()))?;
                if chars.next() != Some(')') {
                    return Err(SpinError::Parse("composite groups hold two letters".into()));
                }
                let la = Letter::from_char(a)?;
                let lb = Letter::from_char(b)?;
                let s0 = 2 * block;
                if s0 + 1 >= MAX_SITES {
                    return Err(SpinError::Parse("word exceeds the 64-site window".into()));
                }
                let (xa, za) = la.bits();
                let (xb, zb) = lb.bits();
                x |= xa << s0 | xb << (s0 + 1);
                z |= za << s0 | zb << (s0 + 1);
                block += 1;
            }
            Some(c) => {
                return Err(SpinError::Parse(format!("unexpected `{c}` in word")));
            }
        }
    }
    Ok(PauliKey { x, z })
}

/// Coefficient conversion between the stored `X^x Z^z` basis and the
/// Hermitian word basis: `X^x Z^z = (-i)^{#Y} * word`.
pub fn word_factor(key: &PauliKey) -> GRat {
    grat_i_pow((3 * key.y_count() % 4) as u8)
}

/// Inverse of [`word_factor`]: `word = i^{#Y} * X^x Z^z`.
pub fn word_factor_inv(key: &PauliKey) -> GRat {
    grat_i_pow((key.y_count() % 4) as u8)
}
