//! JSON report shapes. Field order here is the order on the wire.

use cmlink_core::complexes::{ComplexReport, DegreeCheck};
use cmlink_core::linkage::SquareReport;
use cmlink_core::LinkageReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct GbReport {
    pub command: &'static str,
    pub ring: String,
    pub order: &'static str,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
}

#[derive(Serialize)]
pub struct MemberReport {
    pub command: &'static str,
    pub ring: String,
    pub g: String,
    pub via: &'static str,
    pub j: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_entries: Option<Vec<String>>,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gb_member: Option<bool>,
}

#[derive(Serialize)]
pub struct ColonReport {
    pub command: &'static str,
    pub ring: String,
    pub order: &'static str,
    pub i: Vec<String>,
    pub j: Vec<String>,
    pub colon: Vec<String>,
}

#[derive(Serialize)]
pub struct ResolveReport {
    pub command: &'static str,
    pub ring: String,
    pub generators: Vec<String>,
    pub minimalized: bool,
    pub is_minimal: bool,
    pub length: usize,
    pub ranks: Vec<usize>,
    pub differentials: Vec<String>,
    pub exact: bool,
    pub exactness: Vec<DegreeCheck>,
}

#[derive(Serialize)]
pub struct KoszulReport {
    pub command: &'static str,
    pub ring: String,
    pub tuple: Vec<String>,
    pub p: usize,
    pub ranks: Vec<usize>,
    pub differentials: Vec<String>,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct LiftReport {
    pub command: &'static str,
    pub ring: String,
    pub in_image: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct LinkReport {
    pub command: &'static str,
    pub ring: String,
    pub i: Vec<String>,
    pub j: Vec<String>,
    pub koszul: ComplexReport,
    pub resolution: ComplexReport,
    /// `a_0, ..., a_p` as matrix text blocks.
    pub morphism: Vec<String>,
    /// Entries of `a_p`.
    pub l: Vec<String>,
    pub squares: SquareReport,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub command: &'static str,
    pub squares: SquareReport,
    pub linkage: LinkageReport,
}

#[derive(Serialize)]
pub struct DetReport {
    pub command: &'static str,
    pub ring: String,
    pub g: String,
    pub det: String,
    pub member: bool,
}

#[derive(Serialize)]
pub struct ResultantReport {
    pub command: &'static str,
    pub ring: String,
    pub var: String,
    pub p: String,
    pub q: String,
    pub sylvester: String,
    pub euclid_ring: String,
    pub euclid_resultant: String,
    pub euclid_gcd: String,
    pub a: String,
    pub b: String,
    /// Resultant divided by Euclid's last remainder, when both are nonzero constants in `var`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resultant_over_gcd: Option<String>,
    pub common_factor: bool,
    pub agree: bool,
}
