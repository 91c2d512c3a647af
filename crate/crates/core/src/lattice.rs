//! Translationally invariant Hamiltonians on finite chains.
//!
//! A nearest-neighbor spec holds a two-cell interaction density and an
//! on-site density over effective sites of `unit_cell` physical spins; a
//! three-site spec holds a density supported on at most three spin-1/2
//! sites. Composite (unit_cell 2) strings still live on the physical
//! spin-1/2 lattice; the unit cell only changes how lengths are measured
//! and where densities are anchored. Blocks are the site pairs (1,2),
//! (3,4), and so on.

use serde::{Deserialize, Serialize};

use crate::errors::{Result, SpinError};
use crate::operator::LocalOperator;
use crate::pauli::{parse_word, PauliKey, MAX_SITES};
use crate::poly::{parse_coeff, ParamSet, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

/// Nearest-neighbor Hamiltonian over effective sites:
/// `H = sum_n (density2_n + density1_n)`.
#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    pub name: String,
    pub unit_cell: u32,
    pub boundary: Boundary,
    pub ring: Ring,
    pub density2: LocalOperator,
    pub density1: LocalOperator,
}

impl HamiltonianSpec {
    pub fn new(
        name: impl Into<String>,
        unit_cell: u32,
        boundary: Boundary,
        ring: Ring,
        density2: LocalOperator,
        density1: LocalOperator,
    ) -> Result<HamiltonianSpec> {
        let s2 = density2.support_len(unit_cell);
        if s2 != 2 {
            return Err(SpinError::Precondition(format!(
                "two-cell density must span exactly 2 effective sites, got {s2}"
            )));
        }
        let s1 = density1.support_len(unit_cell);
        if s1 > 1 {
            return Err(SpinError::Precondition(format!(
                "on-site density must span at most 1 effective site, got {s1}"
            )));
        }
        if density2.min_site().map_or(false, |m| m >= unit_cell)
            || density1.min_site().map_or(false, |m| m >= unit_cell)
        {
            return Err(SpinError::Precondition(
                "densities must be anchored at the first effective site".into(),
            ));
        }
        Ok(HamiltonianSpec {
            name: name.into(),
            unit_cell,
            boundary,
            ring,
            density2,
            density1,
        })
    }

    /// The full cell density `density2 + density1`.
    pub fn density(&self) -> LocalOperator {
        self.density2.add(&self.density1).expect("same ring")
    }

    /// Sum of all density translates on an `n_sites` chain.
    pub fn instantiate(&self, n_sites: u32) -> Result<LocalOperator> {
        check_chain(n_sites, self.unit_cell)?;
        instantiate_density(&self.density(), self.unit_cell, n_sites, self.boundary)
    }
}

/// Three-site interaction Hamiltonian on the spin-1/2 lattice:
/// `H = sum_j density3_j`.
#[derive(Debug, Clone)]
pub struct ThreeSiteSpec {
    pub name: String,
    pub boundary: Boundary,
    pub ring: Ring,
    pub density3: LocalOperator,
}

impl ThreeSiteSpec {
    pub fn new(
        name: impl Into<String>,
        boundary: Boundary,
        ring: Ring,
        density3: LocalOperator,
    ) -> Result<ThreeSiteSpec> {
        let s = density3.support_len(1);
        if s > 3 {
            return Err(SpinError::SupportTooLarge { support: s });
        }
        if density3.min_site().map_or(false, |m| m > 0) {
            return Err(SpinError::Precondition(
                "three-site density must be anchored at site 1".into(),
            ));
        }
        Ok(ThreeSiteSpec {
            name: name.into(),
            boundary,
            ring,
            density3,
        })
    }

    pub fn instantiate(&self, n_sites: u32) -> Result<LocalOperator> {
        check_chain(n_sites, 1)?;
        instantiate_density(&self.density3, 1, n_sites, self.boundary)
    }

    /// Regroup pairs of spin-1/2 sites into composite cells. The merged
    /// cell density is `density3 + translate(density3, 1)`; pieces
    /// straddling the two blocks become the two-cell density, pieces
    /// inside either block collapse into the on-site density anchored at
    /// the first block. Instantiating both specs on the same even chain
    /// yields identical operators under periodic boundary.
    pub fn composite_map(&self) -> Result<HamiltonianSpec> {
        let merged = self.density3.add(&self.density3.translated(1))?;
        let mut density2 = LocalOperator::zero(&self.ring);
        let mut density1 = LocalOperator::zero(&self.ring);
        for (key, coeff) in merged.xz_terms() {
            let (lo, hi) = match key.site_range() {
                None => continue,
                Some(r) => r,
            };
            match (lo / 2, hi / 2) {
                (0, 0) => density1.add_xz_term(*key, coeff.clone()),
                (1, 1) => density1.add_xz_term(key.shifted(-2), coeff.clone()),
                _ => density2.add_xz_term(*key, coeff.clone()),
            }
        }
        HamiltonianSpec::new(
            self.name.clone(),
            2,
            self.boundary,
            self.ring.clone(),
            density2,
            density1,
        )
    }
}

fn check_chain(n_sites: u32, unit_cell: u32) -> Result<()> {
    if n_sites == 0 || n_sites > MAX_SITES || n_sites % unit_cell != 0 {
        return Err(SpinError::BadChainLength { n_sites, unit_cell });
    }
    Ok(())
}

/// Shift a key cyclically on an `n_sites` ring.
pub fn wrap_key(key: &PauliKey, shift: u32, n_sites: u32) -> PauliKey {
    let mask: u64 = if n_sites == 64 {
        u64::MAX
    } else {
        (1u64 << n_sites) - 1
    };
    let s = shift % n_sites;
    let rot = |v: u64| {
        if s == 0 {
            v
        } else {
            ((v << s) | (v >> (n_sites - s))) & mask
        }
    };
    PauliKey {
        x: rot(key.x),
        z: rot(key.z),
    }
}

/// Shift every term of `op` by `shift` sites on an `n_sites` chain.
/// Periodic boundary wraps; open boundary errors when support leaves the
/// chain.
pub fn translate(
    op: &LocalOperator,
    shift: i32,
    n_sites: u32,
    boundary: Boundary,
) -> Result<LocalOperator> {
    check_chain(n_sites, 1)?;
    let mut out = LocalOperator::zero(op.ring());
    match boundary {
        Boundary::Periodic => {
            let s = shift.rem_euclid(n_sites as i32) as u32;
            for (key, coeff) in op.xz_terms() {
                if let Some((_, hi)) = key.site_range() {
                    if hi >= n_sites {
                        return Err(SpinError::BadChainLength { n_sites, unit_cell: 1 });
                    }
                }
                out.add_xz_term(wrap_key(key, s, n_sites), coeff.clone());
            }
        }
        Boundary::Open => {
            for (key, coeff) in op.xz_terms() {
                if let Some((lo, hi)) = key.site_range() {
                    let nlo = lo as i64 + shift as i64;
                    let nhi = hi as i64 + shift as i64;
                    if nlo < 0 || nhi >= n_sites as i64 {
                        return Err(SpinError::TranslationOverflow { n_sites });
                    }
                }
                out.add_xz_term(key.shifted(shift), coeff.clone());
            }
        }
    }
    Ok(out)
}

fn instantiate_density(
    density: &LocalOperator,
    unit_cell: u32,
    n_sites: u32,
    boundary: Boundary,
) -> Result<LocalOperator> {
    let support = match (density.min_site(), density.max_site()) {
        (Some(_), Some(hi)) => hi + 1,
        _ => 0,
    };
    if support > n_sites {
        return Err(SpinError::BadChainLength { n_sites, unit_cell });
    }
    let mut acc = LocalOperator::zero(density.ring());
    match boundary {
        Boundary::Periodic => {
            let cells = n_sites / unit_cell;
            for n in 0..cells {
                let t = translate(density, (n * unit_cell) as i32, n_sites, boundary)?;
                acc = acc.add(&t)?;
            }
        }
        Boundary::Open => {
            let windows = (n_sites - support) / unit_cell + 1;
            for n in 0..windows {
                acc = acc.add(&density.translated((n * unit_cell) as i32))?;
            }
        }
    }
    Ok(acc)
}

/// Either kind of model, as read from a model file.
#[derive(Debug, Clone)]
pub enum ModelSpec {
    NearestNeighbor(HamiltonianSpec),
    ThreeSite(ThreeSiteSpec),
}

impl ModelSpec {
    pub fn name(&self) -> &str {
        match self {
            ModelSpec::NearestNeighbor(s) => &s.name,
            ModelSpec::ThreeSite(s) => &s.name,
        }
    }

    pub fn ring(&self) -> &Ring {
        match self {
            ModelSpec::NearestNeighbor(s) => &s.ring,
            ModelSpec::ThreeSite(s) => &s.ring,
        }
    }

    pub fn boundary(&self) -> Boundary {
        match self {
            ModelSpec::NearestNeighbor(s) => s.boundary,
            ModelSpec::ThreeSite(s) => s.boundary,
        }
    }

    pub fn unit_cell(&self) -> u32 {
        match self {
            ModelSpec::NearestNeighbor(s) => s.unit_cell,
            ModelSpec::ThreeSite(_) => 1,
        }
    }

    pub fn instantiate(&self, n_sites: u32) -> Result<LocalOperator> {
        match self {
            ModelSpec::NearestNeighbor(s) => s.instantiate(n_sites),
            ModelSpec::ThreeSite(s) => s.instantiate(n_sites),
        }
    }
}

/// The JSON model-file form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelFile {
    pub name: String,
    pub unit_cell: u32,
    pub boundary: Boundary,
    pub params: Vec<String>,
    pub terms: Vec<TermEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermEntry {
    pub coeff: String,
    pub word: String,
}

impl ModelFile {
    /// Parse and classify. Terms spanning at most two effective sites form
    /// a nearest-neighbor spec (two-cell and on-site parts split by
    /// support); spin-1/2 terms spanning three sites form a three-site
    /// spec.
    pub fn to_spec(&self) -> Result<ModelSpec> {
        let ring = ParamSet::new(self.params.clone());
        let mut op = LocalOperator::zero(&ring);
        for t in &self.terms {
            op.add_word_term(parse_word(&t.word)?, parse_coeff(&ring, &t.coeff)?);
        }
        let support = op.support_len(self.unit_cell);
        if support <= 2 {
            let mut density2 = LocalOperator::zero(&ring);
            let mut density1 = LocalOperator::zero(&ring);
            for (key, coeff) in op.xz_terms() {
                if key.support_len(self.unit_cell) == 2 {
                    density2.add_xz_term(*key, coeff.clone());
                } else {
                    density1.add_xz_term(*key, coeff.clone());
                }
            }
            Ok(ModelSpec::NearestNeighbor(HamiltonianSpec::new(
                self.name.clone(),
                self.unit_cell,
                self.boundary,
                ring,
                density2,
                density1,
            )?))
        } else if support <= 3 && self.unit_cell == 1 {
            Ok(ModelSpec::ThreeSite(ThreeSiteSpec::new(
                self.name.clone(),
                self.boundary,
                ring,
                op,
            )?))
        } else {
            Err(SpinError::SupportTooLarge { support })
        }
    }

    /// Canonical file form of a spec: terms sorted by mask key, word
    /// notation chosen by the unit cell.
    pub fn from_spec(spec: &ModelSpec) -> ModelFile {
        let (density, unit_cell) = match spec {
            ModelSpec::NearestNeighbor(s) => (s.density(), s.unit_cell),
            ModelSpec::ThreeSite(s) => (s.density3.clone(), 1),
        };
        let terms = density
            .word_terms()
            .into_iter()
            .map(|(k, c)| TermEntry {
                coeff: c.to_string(),
                word: k.word(unit_cell),
            })
            .collect();
        ModelFile {
            name: spec.name().to_string(),
            unit_cell,
            boundary: spec.boundary(),
            params: spec.ring().names().to_vec(),
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::Convention;

    fn ffd() -> ThreeSiteSpec {
        let ring = ParamSet::empty();
        let d = LocalOperator::from_text(&ring, "X1 X2 Z3").unwrap();
        ThreeSiteSpec::new("ffd", Boundary::Periodic, ring, d).unwrap()
    }

    #[test]
    fn instantiate_periodic_and_open() {
        let spec = ffd();
        let h = spec.instantiate(4).unwrap();
        let expect = LocalOperator::from_text(
            &spec.ring,
            "X1 X2 Z3\nX2 X3 Z4\nZ1 X3 X4\nX1 Z2 X4",
        )
        .unwrap();
        assert_eq!(h, expect);

        let open = ThreeSiteSpec::new(
            "ffd",
            Boundary::Open,
            spec.ring.clone(),
            spec.density3.clone(),
        )
        .unwrap();
        assert_eq!(open.instantiate(4).unwrap().num_terms(), 2);
    }

    #[test]
    fn translate_is_group_action_periodic() {
        let spec = ffd();
        let op = spec.density3.clone();
        let a = translate(&op, 3, 6, Boundary::Periodic).unwrap();
        let b = translate(&translate(&op, 1, 6, Boundary::Periodic).unwrap(), 2, 6, Boundary::Periodic).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            translate(&op, 6, 6, Boundary::Periodic).unwrap(),
            op.clone()
        );
    }

    #[test]
    fn translate_open_overflow() {
        let spec = ffd();
        let shifted = spec.density3.translated(4);
        assert!(matches!(
            translate(&shifted, 2, 6, Boundary::Open),
            Err(SpinError::TranslationOverflow { .. })
        ));
    }

    #[test]
    fn composite_map_of_ffd() {
        let comp = ffd().composite_map().unwrap();
        let expect2 = LocalOperator::from_text(&comp.ring, "(IX)(XZ)\n(XX)(ZI)").unwrap();
        assert_eq!(comp.density2, expect2);
        assert!(comp.density1.is_zero());
    }

    #[test]
    fn composite_map_of_two_site_ising() {
        // sum Z_j Z_{j+1} regroups into (IZ)(ZI) between blocks plus a
        // collapsed (ZZ) on-site part of full weight
        let ring = ParamSet::new(vec!["c1"]);
        let d = LocalOperator::from_text(&ring, "c1 * Z1 Z2").unwrap();
        let spec = ThreeSiteSpec::new("zz", Boundary::Periodic, ring.clone(), d).unwrap();
        let comp = spec.composite_map().unwrap();
        assert_eq!(
            comp.density2,
            LocalOperator::from_text(&ring, "c1 * (IZ)(ZI)").unwrap()
        );
        assert_eq!(
            comp.density1,
            LocalOperator::from_text(&ring, "c1 * (ZZ)").unwrap()
        );
    }

    #[test]
    fn composite_map_preserves_the_chain_operator() {
        let spec = ffd();
        let comp = spec.composite_map().unwrap();
        for n in [4, 6, 8] {
            assert_eq!(
                spec.instantiate(n).unwrap(),
                comp.instantiate(n).unwrap(),
                "mismatch at N={n}"
            );
        }
    }

    #[test]
    fn odd_chain_rejected_for_composite() {
        let comp = ffd().composite_map().unwrap();
        assert!(matches!(
            comp.instantiate(5),
            Err(SpinError::BadChainLength { .. })
        ));
    }

    #[test]
    fn chain_hamiltonian_commutes_with_itself() {
        let spec = ffd();
        let h = spec.instantiate(8).unwrap();
        assert!(h.commutator(&h, Convention::Exact).unwrap().is_zero());
    }

    #[test]
    fn model_file_roundtrip() {
        let spec = ModelSpec::ThreeSite(ffd());
        let file = ModelFile::from_spec(&spec);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let back: ModelFile = serde_json::from_str(&json).unwrap();
        assert_eq!(file, back);
        let spec2 = back.to_spec().unwrap();
        let file2 = ModelFile::from_spec(&spec2);
        assert_eq!(file, file2);
    }
}
