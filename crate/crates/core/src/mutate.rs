//! Single-entry mutation harness: perturb one structure-constant entry at a
//! time and hand the damaged module to the validators.  Used to demonstrate
//! that the axiom checks actually have teeth — a healthy module must produce
//! violation reports once any load-bearing entry is bumped.

use crate::algebra::{validate_d2cm, validate_dcm, DCModule, D2CModule};
use crate::catalog::ModuleKind;
use crate::error::Result;
use crate::rat::{rat, Rat};

/// One perturbed copy of a module: `label` names the mutated entry using the
/// document-format field paths (`g.struct[i][j][k]`, `alpha[a][i]`, ...).
#[derive(Debug, Clone)]
pub struct Mutation {
    pub label: String,
    pub kind: ModuleKind,
}

fn bump(r: &mut Rat) {
    *r = r.clone() + rat(1);
}

fn rank3_sites(name: &str, tensor: &[Vec<Vec<Rat>>]) -> Vec<(String, (usize, usize, usize))> {
    tensor
        .iter()
        .enumerate()
        .flat_map(|(i, block)| {
            block.iter().enumerate().flat_map(move |(j, row)| {
                (0..row.len()).map(move |k| (format!("{name}[{i}][{j}][{k}]"), (i, j, k)))
            })
        })
        .collect()
}

fn matrix_sites(name: &str, rows: &[Vec<Rat>]) -> Vec<(String, (usize, usize))> {
    rows.iter()
        .enumerate()
        .flat_map(|(i, row)| (0..row.len()).map(move |j| (format!("{name}[{i}][{j}]"), (i, j))))
        .collect()
}

fn crossed_mutations(m: &DCModule) -> Vec<Mutation> {
    let mut out = Vec::new();
    for (label, (i, j, k)) in rank3_sites("g.struct", &m.g.bracket) {
        let mut c = m.clone();
        bump(&mut c.g.bracket[i][j][k]);
        out.push(Mutation { label, kind: ModuleKind::Crossed(c) });
    }
    for (label, (i, j, k)) in rank3_sites("h.struct", &m.h.bracket) {
        let mut c = m.clone();
        bump(&mut c.h.bracket[i][j][k]);
        out.push(Mutation { label, kind: ModuleKind::Crossed(c) });
    }
    for (label, (i, j)) in matrix_sites("alpha", &m.alpha.cols) {
        let mut c = m.clone();
        bump(&mut c.alpha.cols[i][j]);
        out.push(Mutation { label, kind: ModuleKind::Crossed(c) });
    }
    for (label, (i, j, k)) in rank3_sites("act_gh", &m.act.ops) {
        let mut c = m.clone();
        bump(&mut c.act.ops[i][j][k]);
        out.push(Mutation { label, kind: ModuleKind::Crossed(c) });
    }
    out
}

fn two_crossed_mutations(m: &D2CModule) -> Vec<Mutation> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<Mutation>, label: String, c: D2CModule| {
        out.push(Mutation { label, kind: ModuleKind::TwoCrossed(c) });
    };
    for (label, (i, j, k)) in rank3_sites("g.struct", &m.g.bracket) {
        let mut c = m.clone();
        bump(&mut c.g.bracket[i][j][k]);
        push(&mut out, label, c);
    }
    for (label, (i, j, k)) in rank3_sites("h.struct", &m.h.bracket) {
        let mut c = m.clone();
        bump(&mut c.h.bracket[i][j][k]);
        push(&mut out, label, c);
    }
    for (label, (i, j, k)) in rank3_sites("l.struct", &m.l.bracket) {
        let mut c = m.clone();
        bump(&mut c.l.bracket[i][j][k]);
        push(&mut out, label, c);
    }
    for (label, (i, j)) in matrix_sites("alpha", &m.alpha.cols) {
        let mut c = m.clone();
        bump(&mut c.alpha.cols[i][j]);
        push(&mut out, label, c);
    }
    for (label, (i, j)) in matrix_sites("beta", &m.beta.cols) {
        let mut c = m.clone();
        bump(&mut c.beta.cols[i][j]);
        push(&mut out, label, c);
    }
    for (label, (i, j, k)) in rank3_sites("act_gh", &m.act_h.ops) {
        let mut c = m.clone();
        bump(&mut c.act_h.ops[i][j][k]);
        push(&mut out, label, c);
    }
    for (label, (i, j, k)) in rank3_sites("act_gl", &m.act_l.ops) {
        let mut c = m.clone();
        bump(&mut c.act_l.ops[i][j][k]);
        push(&mut out, label, c);
    }
    for (label, (i, j, k)) in rank3_sites("peiffer", &m.lift.table) {
        let mut c = m.clone();
        bump(&mut c.lift.table[i][j][k]);
        push(&mut out, label, c);
    }
    out
}

/// Every +1 single-entry perturbation of the module's structure tensors.
pub fn single_entry_mutations(kind: &ModuleKind) -> Vec<Mutation> {
    match kind {
        ModuleKind::Crossed(m) => crossed_mutations(m),
        ModuleKind::TwoCrossed(m) => two_crossed_mutations(m),
    }
}

/// The subset of [`single_entry_mutations`] the validators actually flag.
/// Not every bump breaks an axiom — on a fully abelian module with zero maps
/// an isolated `alpha` entry can stay consistent — so callers that need
/// guaranteed violations should draw from this list.
pub fn violating_mutations(kind: &ModuleKind) -> Result<Vec<Mutation>> {
    let mut out = Vec::new();
    for mutation in single_entry_mutations(kind) {
        let valid = match &mutation.kind {
            ModuleKind::Crossed(m) => validate_dcm(m)?.is_valid(),
            ModuleKind::TwoCrossed(m) => validate_d2cm(m)?.is_valid(),
        };
        if !valid {
            out.push(mutation);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn every_tensor_entry_produces_one_mutation() {
        let entry = catalog::get("nil3").unwrap();
        let m = match &entry.kind {
            ModuleKind::TwoCrossed(m) => m.clone(),
            _ => panic!("expected the 2-crossed layout"),
        };
        let (g, h, l) = (m.g.dim, m.h.dim, m.l.dim);
        let expected = g * g * g + h * h * h + l * l * l  // brackets
            + h * g + l * h                               // alpha, beta
            + g * h * h + g * l * l                       // actions
            + h * h * l;                                  // lifting
        assert_eq!(single_entry_mutations(&entry.kind).len(), expected);
    }

    #[test]
    fn labels_use_document_field_paths_and_are_unique() {
        let entry = catalog::get("adjoint").unwrap();
        let muts = single_entry_mutations(&entry.kind);
        let mut labels: Vec<&str> = muts.iter().map(|m| m.label.as_str()).collect();
        assert!(labels.iter().any(|l| l.starts_with("g.struct[")));
        assert!(labels.iter().any(|l| l.starts_with("alpha[")));
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), muts.len());
    }

    #[test]
    fn flagged_mutations_fail_validation_and_the_original_passes() {
        let entry = catalog::get("heis_sp").unwrap();
        let m = match &entry.kind {
            ModuleKind::TwoCrossed(m) => m.clone(),
            _ => panic!("expected the 2-crossed layout"),
        };
        assert!(validate_d2cm(&m).unwrap().is_valid());
        let flagged = violating_mutations(&entry.kind).unwrap();
        assert!(!flagged.is_empty());
        for mutation in &flagged {
            if let ModuleKind::TwoCrossed(c) = &mutation.kind {
                let report = validate_d2cm(c).unwrap();
                assert!(!report.is_valid(), "{} not flagged", mutation.label);
                assert!(!report.violations.is_empty());
            }
        }
    }

    #[test]
    fn structure_bumps_on_the_matrix_module_break_axioms() {
        // The full adjoint stack is rigid: its bracket entries are all
        // load-bearing, so every g-bracket bump must be flagged.
        let entry = catalog::get("adjoint").unwrap();
        let flagged = violating_mutations(&entry.kind).unwrap();
        let g_bumps = flagged.iter().filter(|m| m.label.starts_with("g.struct")).count();
        let total_g = match &entry.kind {
            ModuleKind::Crossed(m) => m.g.dim * m.g.dim * m.g.dim,
            _ => unreachable!(),
        };
        assert_eq!(g_bumps, total_g);
    }
}
