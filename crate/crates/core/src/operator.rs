//! Finite sums of Pauli strings with exact symbolic coefficients.
//!
//! A [`LocalOperator`] maps mask keys to coefficients in the fraction field
//! of the declared parameter ring. Internally coefficients multiply the bare
//! `X^x Z^z` products; at the text boundary they are converted to the
//! Hermitian word basis (`Y = i X Z`), so a printed term like
//! `-2*t * X1 X2 Z3` means exactly that multiple of the tensor word.

use std::collections::BTreeMap;
use std::fmt;

use crate::errors::{Result, SpinError};
use crate::pauli::{parse_word, word_factor, word_factor_inv, PauliKey};
use crate::poly::{grat_i, grat_int, parse_coeff, Coefficient, GRat, Ring};

/// Normalization of the commutator bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `[A, B] = AB - BA`.
    Exact,
    /// `[A, B] / (2i)`; maps pairs of Hermitian words to real combinations
    /// of Hermitian words.
    Halved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOperator {
    ring: Ring,
    terms: BTreeMap<PauliKey, Coefficient>,
}

impl LocalOperator {
    pub fn zero(ring: &Ring) -> LocalOperator {
        LocalOperator {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_ring(&self, other: &LocalOperator) -> Result<()> {
        if self.ring.names() != other.ring.names() {
            return Err(SpinError::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names(),
                other.ring.names()
            )));
        }
        Ok(())
    }

    /// Add `coeff * X^x Z^z` (internal basis).
    pub fn add_xz_term(&mut self, key: PauliKey, coeff: Coefficient) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    /// Add `coeff * word`, where `word` is the Hermitian tensor word of the key.
    pub fn add_word_term(&mut self, key: PauliKey, coeff: Coefficient) {
        let c = coeff.scale(&word_factor_inv(&key));
        self.add_xz_term(key, c);
    }

    /// Build from word-basis terms.
    pub fn from_words(ring: &Ring, terms: &[(PauliKey, Coefficient)]) -> LocalOperator {
        let mut op = LocalOperator::zero(ring);
        for (k, c) in terms {
            op.add_word_term(*k, c.clone());
        }
        op
    }

    /// A single word term parsed from `coeff` and `word` strings.
    pub fn from_word_str(ring: &Ring, coeff: &str, word: &str) -> Result<LocalOperator> {
        let mut op = LocalOperator::zero(ring);
        op.add_word_term(parse_word(word)?, parse_coeff(ring, coeff)?);
        Ok(op)
    }

    /// Internal-basis view, sorted by key.
    pub fn xz_terms(&self) -> impl Iterator<Item = (&PauliKey, &Coefficient)> {
        self.terms.iter()
    }

    /// Word-basis view, sorted by key.
    pub fn word_terms(&self) -> Vec<(PauliKey, Coefficient)> {
        self.terms
            .iter()
            .map(|(k, c)| (*k, c.scale(&word_factor(k))))
            .collect()
    }

    /// Internal-basis coefficient of one key; zero if absent.
    pub fn xz_coeff(&self, key: &PauliKey) -> Coefficient {
        match self.terms.get(key) {
            None => Coefficient::zero(&self.ring),
            Some(c) => c.clone(),
        }
    }

    /// Word-basis coefficient of one key; zero if absent.
    pub fn word_coeff(&self, key: &PauliKey) -> Coefficient {
        match self.terms.get(key) {
            None => Coefficient::zero(&self.ring),
            Some(c) => c.scale(&word_factor(key)),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &PauliKey> {
        self.terms.keys()
    }

    pub fn add(&self, other: &LocalOperator) -> Result<LocalOperator> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_xz_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LocalOperator) -> Result<LocalOperator> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LocalOperator {
        LocalOperator {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> LocalOperator {
        if c.is_zero() {
            return LocalOperator::zero(&self.ring);
        }
        LocalOperator {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.mul(c))).collect(),
        }
    }

    pub fn scale_grat(&self, c: &GRat) -> LocalOperator {
        self.scale(&Coefficient::constant(&self.ring, c.clone()))
    }

    /// Operator product.
    pub fn mul(&self, other: &LocalOperator) -> Result<LocalOperator> {
        self.check_ring(other)?;
        let mut out = LocalOperator::zero(&self.ring);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = PauliKey {
                    x: ka.x ^ kb.x,
                    z: ka.z ^ kb.z,
                };
                // X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}
                let sign = if (ka.z & kb.x).count_ones() % 2 == 1 {
                    grat_int(-1)
                } else {
                    grat_int(1)
                };
                out.add_xz_term(key, ca.mul(cb).scale(&sign));
            }
        }
        Ok(out)
    }

    /// Commutator in the chosen normalization. Only anticommuting string
    /// pairs contribute, each with twice their product.
    pub fn commutator(
        &self,
        other: &LocalOperator,
        convention: Convention,
    ) -> Result<LocalOperator> {
        self.check_ring(other)?;
        let factor = match convention {
            Convention::Exact => grat_int(2),
            // 2 / (2i) = -i
            Convention::Halved => -grat_i(),
        };
        let mut out = LocalOperator::zero(&self.ring);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if !ka.anticommutes(kb) {
                    continue;
                }
                let key = PauliKey {
                    x: ka.x ^ kb.x,
                    z: ka.z ^ kb.z,
                };
                let mut c = ca.mul(cb).scale(&factor);
                if (ka.z & kb.x).count_ones() % 2 == 1 {
                    c = c.neg();
                }
                out.add_xz_term(key, c);
            }
        }
        Ok(out)
    }

    /// Largest support length over all terms, in effective sites.
    pub fn support_len(&self, unit_cell: u32) -> u32 {
        self.terms
            .keys()
            .map(|k| k.support_len(unit_cell))
            .max()
            .unwrap_or(0)
    }

    /// Smallest occupied physical site over all terms.
    pub fn min_site(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|k| k.site_range().map(|(lo, _)| lo))
            .min()
    }

    /// Largest occupied physical site over all terms.
    pub fn max_site(&self) -> Option<u32> {
        self.terms
            .keys()
            .filter_map(|k| k.site_range().map(|(_, hi)| hi))
            .max()
    }

    /// Shift every term by `delta` physical sites.
    pub fn translated(&self, delta: i32) -> LocalOperator {
        LocalOperator {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.shifted(delta), c.clone()))
                .collect(),
        }
    }

    /// Shift so the smallest occupied site of any term is a multiple of
    /// `unit_cell` and minimal; returns the shift applied. Zero for the
    /// zero operator.
    pub fn canonicalized(&self, unit_cell: u32) -> (LocalOperator, i32) {
        match self.min_site() {
            None => (self.clone(), 0),
            Some(lo) => {
                let block = lo / unit_cell;
                let delta = -((block * unit_cell) as i32);
                (self.translated(delta), delta)
            }
        }
    }

    /// Canonical text form: one `<coeff> * <word>` line per term, sorted by
    /// mask key. `unit_cell` selects the word notation.
    pub fn to_text(&self, unit_cell: u32) -> String {
        let mut out = String::new();
        for (k, c) in self.word_terms() {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("{} * {}", c, k.word(unit_cell)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse the text form produced by [`to_text`](Self::to_text). Accepts
    /// one term per line (or separated by `;`), each `<coeff> * <word>`;
    /// a bare word means coefficient one, and `0` is the zero operator.
    pub fn from_text(ring: &Ring, input: &str) -> Result<LocalOperator> {
        let mut op = LocalOperator::zero(ring);
        for raw in input.split(|c| c == '\n' || c == ';') {
            let line = raw.trim();
            if line.is_empty() || line == "0" {
                continue;
            }
            let (coeff, word) = match line.find(" * ") {
                Some(idx) => (&line[..idx], &line[idx + 3..]),
                None => ("1", line),
            };
            op.add_word_term(parse_word(word)?, parse_coeff(ring, coeff)?);
        }
        Ok(op)
    }

    /// Evaluate all coefficients at a parameter point, producing an operator
    /// over the empty ring. Fails when a denominator vanishes at the point.
    pub fn eval(&self, point: &[GRat], target: &Ring) -> Result<LocalOperator> {
        let mut out = LocalOperator::zero(target);
        for (k, c) in &self.terms {
            let v = c.eval(point).ok_or_else(|| {
                SpinError::Precondition(format!(
                    "coefficient {} has a pole at the given point",
                    c
                ))
            })?;
            out.add_xz_term(*k, Coefficient::constant(target, v));
        }
        Ok(out)
    }
}

impl fmt::Display for LocalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ParamSet;

    fn ring() -> Ring {
        ParamSet::new(vec!["c1", "c2", "t"])
    }

    fn op(r: &Ring, text: &str) -> LocalOperator {
        LocalOperator::from_text(r, text).unwrap()
    }

    #[test]
    fn text_roundtrip() {
        let r = ring();
        let a = op(&r, "-8*t^3 * X1 X2 Z3\nc1 * Z2 Y4");
        let b = LocalOperator::from_text(&r, &a.to_text(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(op(&r, "0"), LocalOperator::zero(&r));
    }

    #[test]
    fn bracket_of_overlapping_words() {
        let r = ring();
        // [X1 Y2 Z3, Y3 Z4] = -2i * X1 Y2 X3 Z4, halved form gives -1
        let a = op(&r, "X1 Y2 Z3");
        let b = op(&r, "Y3 Z4");
        let exact = a.commutator(&b, Convention::Exact).unwrap();
        assert_eq!(exact, op(&r, "-2*i * X1 Y2 X3 Z4"));
        let halved = a.commutator(&b, Convention::Halved).unwrap();
        assert_eq!(halved, op(&r, "-1 * X1 Y2 X3 Z4"));
    }

    #[test]
    fn bracket_vanishes_on_commuting_pair() {
        let r = ring();
        let a = op(&r, "X1 X2 Z3");
        let b = op(&r, "X4 X5 Z6");
        assert!(a.commutator(&b, Convention::Exact).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear() {
        let r = ring();
        let a = op(&r, "c1 * X1 X2\nc2 * Z1 Z2");
        let b = op(&r, "t * Y2 X3\nX1");
        let ab = a.commutator(&b, Convention::Exact).unwrap();
        let ba = b.commutator(&a, Convention::Exact).unwrap();
        assert_eq!(ab, ba.neg());
    }

    #[test]
    fn jacobi_identity_small() {
        let r = ring();
        let a = op(&r, "c1 * X1 Y2");
        let b = op(&r, "t * Z2 X3\nY1");
        let c = op(&r, "Z1 Z2 Z3");
        let j1 = a
            .commutator(&b.commutator(&c, Convention::Exact).unwrap(), Convention::Exact)
            .unwrap();
        let j2 = b
            .commutator(&c.commutator(&a, Convention::Exact).unwrap(), Convention::Exact)
            .unwrap();
        let j3 = c
            .commutator(&a.commutator(&b, Convention::Exact).unwrap(), Convention::Exact)
            .unwrap();
        assert!(j1.add(&j2).unwrap().add(&j3).unwrap().is_zero());
    }

    #[test]
    fn product_matches_bracket() {
        let r = ring();
        let a = op(&r, "X1");
        let b = op(&r, "Z1");
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        let diff = ab.sub(&ba).unwrap();
        assert_eq!(diff, a.commutator(&b, Convention::Exact).unwrap());
        // XZ = -iY
        assert_eq!(ab, op(&r, "-i * Y1"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = ring();
        let r2 = ParamSet::new(vec!["a"]);
        let a = op(&r1, "X1");
        let b = op(&r2, "Z1");
        assert!(matches!(
            a.commutator(&b, Convention::Exact),
            Err(SpinError::RingMismatch(_))
        ));
    }

    #[test]
    fn translation_and_canonicalization() {
        let r = ring();
        let a = op(&r, "t * X3 X4 Z5");
        let (canon, delta) = a.canonicalized(1);
        assert_eq!(delta, -2);
        assert_eq!(canon, op(&r, "t * X1 X2 Z3"));
        assert_eq!(canon.translated(2), a);

        let b = op(&r, "@2(IX)(XZ)");
        let (canon2, d2) = b.canonicalized(2);
        assert_eq!(d2, -2);
        assert_eq!(canon2, op(&r, "(IX)(XZ)"));
    }

    #[test]
    fn ffd_density_bracket_column() {
        // adjacent three-site densities of the folded XXZ form:
        // [X1 X2 Z3, X2 X3 Z4] halved = Z1 Y2 Y3 Z4 ... check exact value
        let r = ring();
        let h0 = op(&r, "X1 X2 Z3");
        let h1 = op(&r, "X2 X3 Z4");
        let c = h0.commutator(&h1, Convention::Halved).unwrap();
        assert_eq!(c.num_terms(), 1);
        assert_eq!(c.support_len(1), 4);
    }
}
