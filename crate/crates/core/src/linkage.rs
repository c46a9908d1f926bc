//! Comparison morphisms from a Koszul complex to a resolution, and the
//! linkage identities and membership tests built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complexes::{is_cohen_macaulay, koszul_complex, free_resolution, ComplexError, FreeResolution, KoszulComplex};
use crate::groebner::{ideal_codim, ideal_colon, GroebnerError, Ideal};
use crate::modules::{Lifter, ModuleError, PolyMatrix};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkageError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("generator `{0}` of the complete intersection is not in J")]
    ContainmentFailure(String),
    #[error("resolution must have rank E_0 = 1")]
    BadTarget,
    #[error("f = g A fails: entry {index} differs by `{difference}`")]
    FactorizationFailure { index: usize, difference: String },
    #[error("ideal has codimension {codim}, expected {p}")]
    WrongCodim { codim: usize, p: usize },
    #[error("ideal has {have} generators, need at least {p}")]
    TooFewGenerators { have: usize, p: usize },
    #[error("no complete intersection found after {tries} attempts; last coefficients {last:?}")]
    RetriesExhausted { tries: usize, last: Vec<Vec<i64>> },
}

/// Maps `a_k : K_k -> E_k`, `k = 0..=p`.
#[derive(Clone, Debug)]
pub struct ComplexMorphism {
    maps: Vec<PolyMatrix>,
}

impl ComplexMorphism {
    pub fn new(maps: Vec<PolyMatrix>) -> Self {
        ComplexMorphism { maps }
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn a(&self, k: usize) -> &PolyMatrix {
        &self.maps[k]
    }

    /// Entries of the top map `a_p`.
    pub fn top_entries(&self) -> Vec<Poly> {
        self.maps.last().map(|m| m.entries().to_vec()).unwrap_or_default()
    }
}

/// Lift `1 : K_0 -> E_0` to a morphism of complexes, degree by degree.
pub fn comparison_morphism(k: &KoszulComplex, e: &FreeResolution) -> Result<ComplexMorphism, LinkageError> {
    let ring = e.ideal().ring();
    if e.ranks()[0] != 1 {
        return Err(LinkageError::BadTarget);
    }
    for f in k.tuple() {
        if !e.ideal().contains(f) {
            return Err(LinkageError::ContainmentFailure(f.to_string()));
        }
    }
    let mut maps = vec![PolyMatrix::identity(ring, 1)];
    for deg in 1..=k.p() {
        let target = maps[deg - 1].try_mul(k.psi(deg))?;
        let phi = if deg <= e.length() {
            e.phi(deg).clone()
        } else {
            PolyMatrix::zeros(ring, target.rows(), 0)
        };
        let lifter = Lifter::new(&phi);
        let cols = target
            .columns()
            .iter()
            .map(|c| lifter.lift(c))
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(PolyMatrix::from_columns(ring, phi.cols(), &cols)?);
    }
    Ok(ComplexMorphism { maps })
}

/// One failing square `φ_k a_k = a_{k-1} ψ_k`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SquareFailure {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub difference: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SquareReport {
    pub a0_is_unit: bool,
    pub squares_commute: bool,
    pub failures: Vec<SquareFailure>,
}

impl SquareReport {
    pub fn ok(&self) -> bool {
        self.a0_is_unit && self.squares_commute
    }
}

/// Check `a_0` is a unit and `φ_k a_k = a_{k-1} ψ_k` for `k = 1..=p`.
/// `psi[k-1] = ψ_k`, `phi[k-1] = φ_k` (missing `φ_k` are zero maps), `a[k] = a_k`.
pub fn verify_squares(psi: &[PolyMatrix], phi: &[PolyMatrix], a: &[PolyMatrix]) -> Result<SquareReport, LinkageError> {
    let a0_is_unit = a.first().is_some_and(|m| {
        m.rows() == 1 && m.cols() == 1 && m.get(0, 0).is_constant() && !m.get(0, 0).is_zero()
    });
    if a.len() != psi.len() + 1 {
        return Err(ModuleError::Shape(format!("{} maps for {} Koszul differentials", a.len(), psi.len())).into());
    }
    let mut failures = Vec::new();
    for k in 1..a.len() {
        let right = a[k - 1].try_mul(&psi[k - 1])?;
        let left = match phi.get(k - 1) {
            Some(p) => p.try_mul(&a[k])?,
            None => PolyMatrix::zeros(right.ring(), right.rows(), right.cols()),
        };
        let diff = left.sub(&right)?;
        for r in 0..diff.rows() {
            for c in 0..diff.cols() {
                if !diff.get(r, c).is_zero() {
                    failures.push(SquareFailure { degree: k, row: r, col: c, difference: diff.get(r, c).to_string() });
                }
            }
        }
    }
    Ok(SquareReport { a0_is_unit, squares_commute: failures.is_empty(), failures })
}

/// Everything needed to test membership in `J` through a complete
/// intersection `I ⊆ J`.
#[derive(Clone, Debug)]
pub struct LinkData {
    pub i: Ideal,
    pub j: Ideal,
    pub koszul: KoszulComplex,
    pub resolution: FreeResolution,
    pub morphism: ComplexMorphism,
}

impl LinkData {
    pub fn new(i: &Ideal, j: &Ideal) -> Result<Self, LinkageError> {
        let koszul = koszul_complex(&i.nonzero_gens())?;
        let resolution = free_resolution(j, true)?;
        let morphism = comparison_morphism(&koszul, &resolution)?;
        Ok(LinkData { i: i.clone(), j: j.clone(), koszul, resolution, morphism })
    }

    pub fn top_entries(&self) -> Vec<Poly> {
        self.morphism.top_entries()
    }

    pub fn member(&self, g: &Poly) -> bool {
        membership_via_link(g, &self.i, &self.top_entries())
    }
}

/// `g ∈ J` iff `h g ∈ I` for every entry `h` of `a_p`.
pub fn membership_via_link(g: &Poly, i: &Ideal, ap_entries: &[Poly]) -> bool {
    if g.is_zero() {
        return true;
    }
    ap_entries.iter().all(|h| h.is_zero() || i.contains(&(h * g)))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Preconditions {
    pub codim_i: usize,
    pub codim_j: usize,
    pub p: usize,
    pub j_cohen_macaulay: bool,
    pub j_resolution_length: usize,
    pub i_contained_in_j: bool,
    pub hold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Generators and verdicts for `K = I : J`, `L` = entries of `a_p`,
/// `J = I : K` and `I : J = I + L`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LinkageReport {
    pub ring: String,
    pub i: Vec<String>,
    pub j: Vec<String>,
    pub preconditions: Preconditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_equals_i_colon_k: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colon_equals_i_plus_l: Option<bool>,
    pub witnesses: Vec<String>,
    pub ok: bool,
}

fn inclusion_witness(big: &Ideal, small: &Ideal, label: &str) -> Option<String> {
    small
        .gens()
        .iter()
        .find(|g| !big.contains(g))
        .map(|g| format!("{label}: `{g}` not contained"))
}

/// Check the preconditions, then `J = I : (I : J)` and `I : J = I + L`.
pub fn link_decomposition_check(i: &Ideal, j: &Ideal, a: &ComplexMorphism) -> Result<LinkageReport, LinkageError> {
    let p = i.nonzero_gens().len();
    let (codim_i, codim_j) = (ideal_codim(i), ideal_codim(j));
    let cm = is_cohen_macaulay(j)?;
    let contained = j.contains_ideal(i);
    let mut witness = None;
    if codim_i != p {
        witness = Some(format!("I has codimension {codim_i} but {p} generators"));
    } else if codim_j != p {
        witness = Some(format!("J has codimension {codim_j}, I has {p}"));
    } else if !cm.cohen_macaulay {
        witness = Some(format!(
            "J is not Cohen-Macaulay: codimension {} but minimal resolution length {}",
            cm.codim, cm.length
        ));
    } else if !contained {
        witness = inclusion_witness(j, i, "I in J");
    }
    let pre = Preconditions {
        codim_i,
        codim_j,
        p,
        j_cohen_macaulay: cm.cohen_macaulay,
        j_resolution_length: cm.length,
        i_contained_in_j: contained,
        hold: witness.is_none(),
        witness,
    };
    let mut report = LinkageReport {
        ring: i.ring().to_string(),
        i: i.gen_strings(),
        j: j.gen_strings(),
        preconditions: pre,
        k: None,
        l: None,
        j_equals_i_colon_k: None,
        colon_equals_i_plus_l: None,
        witnesses: Vec::new(),
        ok: false,
    };
    if !report.preconditions.hold {
        return Ok(report);
    }
    let k = ideal_colon(i, j)?;
    let l = Ideal::new(i.ring(), a.top_entries().into_iter().filter(|h| !h.is_zero()).collect())
        .map_err(GroebnerError::from)?;
    let i_colon_k = ideal_colon(i, &k)?;
    let i_plus_l = i.sum(&l);
    let mut w = Vec::new();
    w.extend(inclusion_witness(&i_colon_k, j, "J in I:K"));
    w.extend(inclusion_witness(j, &i_colon_k, "I:K in J"));
    let first = w.is_empty();
    let before = w.len();
    w.extend(inclusion_witness(&i_plus_l, &k, "I:J in I+L"));
    w.extend(inclusion_witness(&k, &i_plus_l, "I+L in I:J"));
    let second = w.len() == before;
    report.k = Some(k.gb_strings());
    report.l = Some(l.gen_strings());
    report.j_equals_i_colon_k = Some(first);
    report.colon_equals_i_plus_l = Some(second);
    report.witnesses = w;
    report.ok = first && second;
    Ok(report)
}

/// With `f = g A` (`f` the generators of `I`, `g` those of `J`),
/// `g ∈ J` iff `det(A) g ∈ I`.
pub fn det_transform_member(g: &Poly, i: &Ideal, j_gens: &[Poly], a: &PolyMatrix) -> Result<bool, LinkageError> {
    let f = i.nonzero_gens();
    if a.rows() != j_gens.len() || a.cols() != f.len() {
        return Err(ModuleError::Shape(format!(
            "A is {}x{}, expected {}x{}",
            a.rows(),
            a.cols(),
            j_gens.len(),
            f.len()
        ))
        .into());
    }
    let row = PolyMatrix::row(a.ring(), j_gens.to_vec());
    let prod = row.try_mul(a)?;
    for (idx, fi) in f.iter().enumerate() {
        let d = prod.get(0, idx) - fi;
        if !d.is_zero() {
            return Err(LinkageError::FactorizationFailure { index: idx, difference: d.to_string() });
        }
    }
    let det = a.det()?;
    Ok(i.contains(&(&det * g)))
}

const GENERIC_CI_TRIES: usize = 20;

/// `p` seeded random combinations of the generators of `J` (coefficients in
/// `{-3..3} \ {0}`) generating an ideal of codimension `p`.
pub fn generic_ci(j: &Ideal, p: usize, seed: u64) -> Result<Ideal, LinkageError> {
    let gens = j.nonzero_gens();
    if gens.len() < p {
        return Err(LinkageError::TooFewGenerators { have: gens.len(), p });
    }
    let codim = ideal_codim(j);
    if codim != p {
        return Err(LinkageError::WrongCodim { codim, p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = Vec::new();
    for _ in 0..GENERIC_CI_TRIES {
        let coeffs: Vec<Vec<i64>> = (0..p)
            .map(|_| {
                (0..gens.len())
                    .map(|_| {
                        let v: i64 = rng.gen_range(1..=3);
                        if rng.gen_bool(0.5) {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        let combos: Vec<Poly> = coeffs
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&gens)
                    .fold(Poly::zero(j.ring()), |acc, (&c, g)| &acc + &(&Poly::int(j.ring(), c) * g))
            })
            .collect();
        if combos.iter().all(|c| !c.is_zero()) {
            let cand = Ideal::new(j.ring(), combos).map_err(GroebnerError::from)?;
            if ideal_codim(&cand) == p {
                return Ok(cand);
            }
        }
        last = coeffs;
    }
    Err(LinkageError::RetriesExhausted { tries: GENERIC_CI_TRIES, last })
}

#[cfg(test)]
mod tests;
