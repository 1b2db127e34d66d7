//! JSON-facing report structures. All exact quantities are rendered as
//! fraction strings "p/q"; decimal renderings are added only on request and
//! never replace the exact values.

use crate::lattice::{IdempotentLattice, Spectrum};
use crate::monoid::FiniteMonoid;
use crate::ratio::{format_rat, rat_to_f64, Rat};
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Serialize, Clone, Debug)]
pub struct EigenvalueEntry {
    pub lambda: String,
    pub multiplicity: u64,
    pub lattice_node: usize,
    pub generators_above: Vec<String>,
    /// Marks lattice nodes whose eigenvalue slot carries no spectral mass.
    #[serde(skip_serializing_if = "is_false")]
    pub null_multiplicity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_float: Option<f64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct MergedEigenvalue {
    pub lambda: String,
    pub multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_float: Option<f64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<EigenvalueEntry>,
    /// Distinct eigenvalues with positive total multiplicity, summed across
    /// lattice nodes and sorted in decreasing order.
    pub merged: Vec<MergedEigenvalue>,
    pub omega_size: usize,
    pub verified_traces: bool,
}

fn is_false(flag: &bool) -> bool {
    !flag
}

/// Assembles the user-facing spectrum report. Every lattice node keeps its
/// slot in `eigenvalues` (zero-multiplicity slots are flagged rather than
/// dropped); `merged` carries the positive-multiplicity listing, with equal
/// eigenvalues from different nodes summed.
pub fn spectrum_report(
    m: &FiniteMonoid,
    lattice: &IdempotentLattice,
    spectrum: &Spectrum,
    verified_traces: bool,
    with_floats: bool,
) -> SpectrumReport {
    let eigenvalues = spectrum
        .nodes
        .iter()
        .map(|node| EigenvalueEntry {
            lambda: format_rat(&node.lambda),
            multiplicity: node.multiplicity.to_u64().expect("desk-scale multiplicity"),
            lattice_node: node.node,
            generators_above: lattice.generators_above(m, node.node),
            null_multiplicity: node.multiplicity.to_u64() == Some(0),
            lambda_float: with_floats.then(|| rat_to_f64(&node.lambda)),
        })
        .collect();
    let merged = spectrum
        .merged()
        .into_iter()
        .map(|(lambda, multiplicity)| MergedEigenvalue {
            lambda: format_rat(&lambda),
            multiplicity: multiplicity.to_u64().expect("desk-scale multiplicity"),
            lambda_float: with_floats.then(|| rat_to_f64(&lambda)),
        })
        .collect();
    SpectrumReport {
        eigenvalues,
        merged,
        omega_size: spectrum.omega_size,
        verified_traces,
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct DistributionEntry {
    pub state: String,
    pub probability: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probability_float: Option<f64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct DistributionReport {
    pub entries: Vec<DistributionEntry>,
}

pub fn distribution_report(
    labels: &[String],
    values: &[Rat],
    with_floats: bool,
) -> DistributionReport {
    let entries = labels
        .iter()
        .zip(values)
        .map(|(label, value)| DistributionEntry {
            state: label.clone(),
            probability: format_rat(value),
            probability_float: with_floats.then(|| rat_to_f64(value)),
        })
        .collect();
    DistributionReport { entries }
}

#[derive(Serialize, Clone, Debug)]
pub struct BoundEntry {
    pub n: usize,
    pub kind: &'static str,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_float: Option<f64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SimulationReport {
    pub seed: u64,
    pub trials: u64,
    /// Labeled explicitly so exact and sampled numbers are never confused.
    pub monte_carlo: bool,
    pub empirical: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_tv_to_exact: Option<f64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct StructureReport {
    pub states: usize,
    pub elements: usize,
    pub idempotents: usize,
    pub r_classes: usize,
    pub l_classes: usize,
    pub minimal_ideal_size: usize,
    pub r_trivial: bool,
    pub aperiodic: bool,
    pub left_regular_band: bool,
    pub karnofsky_rhodes: bool,
    pub lattice_nodes: Option<usize>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ErrorObject {
    pub error: String,
    pub kind: &'static str,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn distribution_serializes_fractions() {
        let report = distribution_report(
            &["ab".to_string(), "ba".to_string()],
            &[rat(1, 3), rat(2, 3)],
            false,
        );
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"probability\":\"1/3\""));
        assert!(!json.contains("float"));
    }

    #[test]
    fn spectrum_report_keeps_flagged_null_slots_and_a_merged_view() {
        use crate::action::ActionTable;
        use crate::green::GreenStructure;
        use crate::lattice::spectrum;
        use crate::models::toom::{toom_loan_generators, ToomLoanSpec};
        use crate::prob::ProbabilityAssignment;

        let spec = ToomLoanSpec::uniform(2, 2).unwrap();
        let gens = toom_loan_generators(&spec).unwrap();
        let m = FiniteMonoid::close(gens, 200_000).unwrap();
        let green = GreenStructure::compute(&m);
        let lat = IdempotentLattice::build(&m, &green).unwrap();
        let p = ProbabilityAssignment::on_generators(&m, &spec.flat_weights()).unwrap();
        let action = ActionTable::natural(&m);
        let spec_out = spectrum(&lat, &action, &p).unwrap();
        let report = spectrum_report(&m, &lat, &spec_out, true, false);

        // every lattice node keeps a slot, including the null ones
        assert_eq!(report.eigenvalues.len(), lat.len());
        assert!(report.eigenvalues.iter().any(|e| e.null_multiplicity));
        for e in &report.eigenvalues {
            assert_eq!(e.null_multiplicity, e.multiplicity == 0);
        }

        // the merged listing drops null slots and accounts for every state
        assert!(report.merged.iter().all(|e| e.multiplicity > 0));
        let total: u64 = report.merged.iter().map(|e| e.multiplicity).sum();
        assert_eq!(total as usize, report.omega_size);
        assert!(report.merged.len() < report.eigenvalues.len());

        // the flag is serialized only where it is set
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"null_multiplicity\":true"));
        assert!(!json.contains("\"null_multiplicity\":false"));
    }

    #[test]
    fn float_renderings_are_additive() {
        let report = distribution_report(&["x".to_string()], &[rat(1, 2)], true);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"probability\":\"1/2\""));
        assert!(json.contains("\"probability_float\":0.5"));
    }
}
