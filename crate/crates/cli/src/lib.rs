//! Command implementations behind the `hcs` binary: load a module (built-in
//! name or JSON document), run the requested verification suite with a fixed
//! seed, and assemble a deterministic report.
//!
//! Every check is exact: a record is `exact-zero` only when the residual
//! vanishes identically as a polynomial differential form.  Reports for a
//! fixed `(config, seed)` pair are byte-identical across runs.

pub mod report;

use std::path::PathBuf;

use hcs_core::algebra::{
    balance_d2cm, balance_dcm, embed_dcm, validate_d2cm, validate_dcm, DCModule, D2CModule,
    ValidationReport,
};
use hcs_core::avform::{av_random, AVForm, Slot};
use hcs_core::catalog::ModuleKind;
use hcs_core::chern::{
    action_2cs, action_3cs, action_cs, chern1_closure_residual, chern1_invariance_residual,
    chern2_closure_residual, chern2_invariance_residual, chern3_closure_residual,
    chern3_invariance_residual, chern_weil1, chern_weil2, chern_weil2_expansion, chern_weil3,
    chern_weil3_expansion, cs_form, lagr_2cs, lagr_3cs, ActionConfig,
};
use hcs_core::error::{Error, Result};
use hcs_core::gauge::{
    bianchi2_residual, bianchi3_residual, curvature2, curvature3, curvature_transform_check2,
    curvature_transform_check3, gbianchi1_residual, gbianchi2_residual, gcurv_check1, gcurv_check2,
    Conn2, Conn3, GaugeParams,
};
use hcs_core::genform::{
    g1_add, g1_bracket, g1_d, g1_random, g1_scale, g1_sub, g2_add, g2_bracket, g2_d, g2_random,
    g2_scale, g2_sub, GenForm1, GenForm2,
};
use hcs_core::modfile::{self, to_document, ModuleSource};
use hcs_core::mutate::violating_mutations;
use hcs_core::pairing::{
    check_pairing, solve_invariant_forms_d2cm, solve_invariant_forms_dcm, PairingData,
};
use hcs_core::poly::RatPoly;
use hcs_core::rat::{rat, ratq, Rat};
use hcs_core::rng::{seeded_rng, Density, EngineRng};
use hcs_core::sform::ScalarForm;

use report::{fnv1a_hex, rat_str, CheckStatus, Recorder, Report};

/// Which tier of the theory a chern run verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    /// Ordinary Chern–Simons: base-layer connection only (needs `pair_g`).
    Cs,
    /// Two-term theory over a crossed module (needs `pair_gh`).
    TwoCs,
    /// Three-term theory over a 2-crossed module (needs `pair_h`, `pair_gl`).
    ThreeCs,
}

impl Theory {
    pub fn name(&self) -> &'static str {
        match self {
            Theory::Cs => "cs",
            Theory::TwoCs => "2cs",
            Theory::ThreeCs => "3cs",
        }
    }
}

/// Subcommand selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Validate,
    Identities,
    Chern,
    InvariantForms,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Validate => "validate",
            CommandKind::Identities => "identities",
            CommandKind::Chern => "chern",
            CommandKind::InvariantForms => "invariant-forms",
        }
    }
}

/// One fully specified run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Built-in example name or module document path.
    pub module: String,
    pub n_vars: usize,
    pub seed: u64,
    pub trials: usize,
    pub max_poly_degree: u32,
    pub coeff_bound: i64,
    /// `None` selects the deepest theory the module's pairing supports.
    pub theory: Option<Theory>,
    /// Append expected-violation records from single-entry mutations.
    pub mutate: bool,
    /// Write the report here instead of stdout.
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidInput("trials must be at least 1".into()));
        }
        if !(1..=10).contains(&self.n_vars) {
            return Err(Error::InvalidInput(format!(
                "n_vars must lie in 1..10, got {}",
                self.n_vars
            )));
        }
        if self.coeff_bound < 1 {
            return Err(Error::InvalidInput("coeff-bound must be at least 1".into()));
        }
        Ok(())
    }

    fn density(&self) -> Density {
        Density {
            max_poly_degree: self.max_poly_degree,
            coeff_bound: self.coeff_bound,
            monomials_per_component: 1,
        }
    }

    /// Decorrelated deterministic generator for one trial.
    fn trial_rng(&self, trial: usize) -> EngineRng {
        seeded_rng(self.seed.wrapping_add((trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
    }
}

/// Dispatch a run.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.check()?;
    match config.command {
        CommandKind::Validate => cmd_validate(config),
        CommandKind::Identities => cmd_identities(config),
        CommandKind::Chern => cmd_chern(config),
        CommandKind::InvariantForms => cmd_invariant_forms(config),
    }
}

fn recorder_for(config: &RunConfig, source: &ModuleSource) -> Recorder {
    let doc = serde_json::to_string(&to_document(&source.kind, &source.pairing))
        .expect("module document serialization");
    let base = format!(
        "{}|{}|nvars={}|deg={}|bound={}",
        fnv1a_hex(&doc),
        config.command.name(),
        config.n_vars,
        config.max_poly_degree,
        config.coeff_bound
    );
    Recorder::new(base, config.seed)
}

// ---------------------------------------------------------------------------
// Residual summaries.
// ---------------------------------------------------------------------------

fn scalar_verdict(f: &ScalarForm) -> (CheckStatus, String) {
    if f.is_zero() {
        (CheckStatus::ExactZero, "0".into())
    } else {
        (CheckStatus::Violated, format!("nonzero {}-form residual", f.degree()))
    }
}

fn parts_verdict(parts: &[(&str, bool)]) -> (CheckStatus, String) {
    let bad: Vec<&str> = parts.iter().filter(|(_, zero)| !zero).map(|(name, _)| *name).collect();
    if bad.is_empty() {
        (CheckStatus::ExactZero, "0".into())
    } else {
        (CheckStatus::Violated, format!("nonzero residual in {}", bad.join(", ")))
    }
}

fn g1_verdict(f: &GenForm1) -> (CheckStatus, String) {
    parts_verdict(&[("body", f.part0.is_zero()), ("symbol part", f.part1.is_zero())])
}

fn g2_verdict(f: &GenForm2) -> (CheckStatus, String) {
    parts_verdict(&[
        ("body", f.part0.is_zero()),
        ("first symbol part", f.part1.is_zero()),
        ("second symbol part", f.part2.is_zero()),
        ("top part", f.part12.is_zero()),
    ])
}

fn validation_verdict(report: &ValidationReport) -> (CheckStatus, String, Option<serde_json::Value>) {
    if report.is_valid() {
        (CheckStatus::ExactZero, format!("0 ({} laws checked)", report.checked.len()), None)
    } else {
        let laws: Vec<String> = report
            .violations
            .iter()
            .map(|v| format!("{}{:?}", v.law, v.indices))
            .collect();
        (
            CheckStatus::Violated,
            format!("{} violation(s): {}", report.violations.len(), laws.join(", ")),
            Some(serde_json::to_value(report).expect("validation report serialization")),
        )
    }
}

// ---------------------------------------------------------------------------
// Module plumbing.
// ---------------------------------------------------------------------------

/// True when the base/middle layers on their own satisfy the crossed-module
/// axioms; the two-term identities are only meaningful on such modules.
fn upper_layer_is_crossed(m: &D2CModule) -> Result<bool> {
    let upper = DCModule {
        g: m.g.clone(),
        h: m.h.clone(),
        alpha: m.alpha.clone(),
        act: m.act_h.clone(),
    };
    Ok(validate_dcm(&upper)?.is_valid())
}

/// Draw gauge parameters, retrying past non-nilpotent generators; `None`
/// when the module's base layer does not exponentiate polynomially.
fn try_gauge_params(
    rng: &mut EngineRng,
    m: &D2CModule,
    n_vars: usize,
    density: &Density,
) -> Result<Option<GaugeParams>> {
    for _ in 0..8 {
        match GaugeParams::random(rng, m, n_vars, density) {
            Ok(p) => return Ok(Some(p)),
            Err(Error::NotNilpotent) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// The same transformation with the top-layer parameter dropped; the
/// two-tier transformation law carries no degree-2 parameter.
fn middle_params(m: &D2CModule, p: &GaugeParams, n_vars: usize) -> Result<GaugeParams> {
    GaugeParams::new(m, p.g.clone(), p.phi.clone(), AVForm::zero(Slot::L, m.l.dim, n_vars, 2))
}

fn infer_theory(pairing: &PairingData) -> Result<Theory> {
    if pairing.pair_h.is_some() && pairing.pair_gl.is_some() {
        Ok(Theory::ThreeCs)
    } else if pairing.pair_gh.is_some() {
        Ok(Theory::TwoCs)
    } else if pairing.pair_g.is_some() {
        Ok(Theory::Cs)
    } else {
        Err(Error::MissingPairing(
            "module carries no pairing data; supply one or pick a paired example".into(),
        ))
    }
}

fn require_theory_pairing(theory: Theory, pairing: &PairingData) -> Result<()> {
    let missing = match theory {
        Theory::Cs if pairing.pair_g.is_none() => Some("pair_g"),
        Theory::TwoCs if pairing.pair_gh.is_none() => Some("pair_gh"),
        Theory::ThreeCs if pairing.pair_h.is_none() => Some("pair_h"),
        Theory::ThreeCs if pairing.pair_gl.is_none() => Some("pair_gl"),
        _ => None,
    };
    match missing {
        Some(name) => Err(Error::MissingPairing(format!(
            "theory {} needs {name} on this module",
            theory.name()
        ))),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

/// Axiom certification: structural validators plus pairing invariance.
pub fn cmd_validate(config: &RunConfig) -> Result<Report> {
    let source = modfile::resolve(&config.module)?;
    let mut rec = recorder_for(config, &source);

    match &source.kind {
        ModuleKind::Crossed(m) => {
            let (status, residual, data) = validation_verdict(&validate_dcm(m)?);
            rec.push(
                "axioms",
                "crossed-module axioms: equivariance and the Peiffer identity",
                0,
                status,
                residual,
                data,
            );
        }
        ModuleKind::TwoCrossed(m) => {
            let (status, residual, data) = validation_verdict(&validate_d2cm(m)?);
            rec.push(
                "axioms",
                "2-crossed-module axioms: complex, equivariance, and the lifting laws",
                0,
                status,
                residual,
                data,
            );
        }
    }

    let m2 = source.kind.as_two_crossed();
    let (status, residual, data) = validation_verdict(&check_pairing(&m2, &source.pairing)?);
    rec.push(
        "pairing",
        "pairing symmetry and invariance under the module structure maps",
        0,
        status,
        residual,
        data,
    );

    if config.mutate {
        push_mutation_records(&mut rec, config, &source)?;
    }

    Ok(Report::new(config.command.name(), &source.label, config.seed, rec.into_checks()))
}

/// Expected-violation records: bump one structure entry, watch the
/// validators flag it.  Only mutations the validators reject are drawn, so
/// these records prove the checks are sensitive to every listed site.
fn push_mutation_records(rec: &mut Recorder, config: &RunConfig, source: &ModuleSource) -> Result<()> {
    let flagged = violating_mutations(&source.kind)?;
    if flagged.is_empty() {
        rec.push(
            "mutation-axioms",
            "single-entry mutations are flagged by the validators",
            0,
            CheckStatus::Violated,
            "no single-entry mutation of this module violates the axioms".into(),
            None,
        );
        return Ok(());
    }
    for (trial, mutation) in flagged.iter().cycle().take(config.trials.max(flagged.len().min(20))).enumerate() {
        let report = match &mutation.kind {
            ModuleKind::Crossed(m) => validate_dcm(m)?,
            ModuleKind::TwoCrossed(m) => validate_d2cm(m)?,
        };
        let laws: Vec<&str> = report.violations.iter().map(|v| v.law.as_str()).collect();
        rec.push(
            "mutation-axioms",
            "single-entry mutations are flagged by the validators",
            trial,
            CheckStatus::ExpectedViolation,
            format!("bump {} violates {}", mutation.label, laws.join(", ")),
            Some(serde_json::json!({ "site": mutation.label, "violated": laws })),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

fn sign(p: i64) -> Rat {
    if p.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn g1_leibniz_residual(m: &D2CModule, a: &GenForm1, b: &GenForm1) -> Result<GenForm1> {
    let lhs = g1_d(m, &g1_bracket(m, a, b)?)?;
    let rhs = g1_add(
        &g1_bracket(m, &g1_d(m, a)?, b)?,
        &g1_scale(&g1_bracket(m, a, &g1_d(m, b)?)?, &sign(a.degree)),
    )?;
    g1_sub(&lhs, &rhs)
}

fn g2_leibniz_residual(m: &D2CModule, a: &GenForm2, b: &GenForm2) -> Result<GenForm2> {
    let lhs = g2_d(m, &g2_bracket(m, a, b)?)?;
    let rhs = g2_add(
        &g2_bracket(m, &g2_d(m, a)?, b)?,
        &g2_scale(&g2_bracket(m, a, &g2_d(m, b)?)?, &sign(a.degree)),
    )?;
    g2_sub(&lhs, &rhs)
}

/// Differential-calculus and gauge-identity suites.
pub fn cmd_identities(config: &RunConfig) -> Result<Report> {
    let source = modfile::resolve(&config.module)?;
    let mut rec = recorder_for(config, &source);
    let m = source.kind.as_two_crossed();
    let density = config.density();
    let n = config.n_vars;
    let crossed_upper = upper_layer_is_crossed(&m)?;
    let fine = m.is_fine();

    for trial in 0..config.trials {
        let mut rng = config.trial_rng(trial);

        // -- derivative squares to zero on generalized forms --
        let a1 = g1_random(&mut rng, &m, n, 1, ratq(-1, 2), &density);
        let dd1 = g1_d(&m, &g1_d(&m, &a1)?)?;
        let (status, residual) = g1_verdict(&dd1);
        rec.push(
            "d-squared-one-symbol",
            "the one-symbol exterior derivative squares to zero",
            trial,
            status,
            residual,
            None,
        );

        let a2 = g2_random(&mut rng, &m, n, 1, rat(0), rat(-1), &density);
        let dd2 = g2_d(&m, &g2_d(&m, &a2)?)?;
        let (status, residual) = g2_verdict(&dd2);
        rec.push(
            "d-squared-two-symbol",
            "the two-symbol exterior derivative squares to zero",
            trial,
            status,
            residual,
            None,
        );

        // -- graded Leibniz (vanishing symbol constants: holds universally) --
        let la = g1_random(&mut rng, &m, n, 1, rat(0), &density);
        let lb = g1_random(&mut rng, &m, n, 2, rat(0), &density);
        let (status, residual) = g1_verdict(&g1_leibniz_residual(&m, &la, &lb)?);
        rec.push(
            "leibniz-one-symbol",
            "graded Leibniz rule for the one-symbol bracket",
            trial,
            status,
            residual,
            None,
        );

        let la2 = g2_random(&mut rng, &m, n, 1, rat(0), rat(0), &density);
        let lb2 = g2_random(&mut rng, &m, n, 2, rat(0), rat(0), &density);
        let (status, residual) = g2_verdict(&g2_leibniz_residual(&m, &la2, &lb2)?);
        rec.push(
            "leibniz-two-symbol",
            "graded Leibniz rule for the two-symbol bracket",
            trial,
            status,
            residual,
            None,
        );

        // -- generalized connections encode curvature and Bianchi --
        let c2 = Conn2::random(&mut rng, &m, n, &density);
        let c3 = Conn3::random(&mut rng, &m, n, &density);

        let (status, residual) = g1_verdict(&gcurv_check1(&m, &c2)?);
        rec.push(
            "gen-curvature-one",
            "the one-symbol connection's curvature matches the component curvature",
            trial,
            status,
            residual,
            None,
        );
        let (status, residual) = g2_verdict(&gcurv_check2(&m, &c3)?);
        rec.push(
            "gen-curvature-two",
            "the two-symbol connection's curvature matches the component curvature",
            trial,
            status,
            residual,
            None,
        );
        if crossed_upper {
            let (status, residual) = g1_verdict(&gbianchi1_residual(&m, &c2)?);
            rec.push(
                "gen-bianchi-one",
                "generalized Bianchi identity for the one-symbol curvature",
                trial,
                status,
                residual,
                None,
            );
        }
        if fine {
            let (status, residual) = g2_verdict(&gbianchi2_residual(&m, &c3)?);
            rec.push(
                "gen-bianchi-two",
                "generalized Bianchi identity for the two-symbol curvature",
                trial,
                status,
                residual,
                None,
            );
        }

        // -- component Bianchi identities --
        if crossed_upper {
            let (r1, r2) = bianchi2_residual(&m, &c2)?;
            let (status, residual) =
                parts_verdict(&[("base layer", r1.is_zero()), ("middle layer", r2.is_zero())]);
            rec.push(
                "bianchi-two",
                "2-curvature Bianchi identity",
                trial,
                status,
                residual,
                None,
            );
        }
        let (r1, r2, r3) = bianchi3_residual(&m, &c3)?;
        let (status, residual) = parts_verdict(&[
            ("base layer", r1.is_zero()),
            ("middle layer", r2.is_zero()),
            ("top layer", r3.is_zero()),
        ]);
        rec.push(
            "bianchi-three",
            "3-curvature Bianchi identity",
            trial,
            status,
            residual,
            None,
        );

        // -- curvature covariance under finite gauge transformations --
        if let Some(params) = try_gauge_params(&mut rng, &m, n, &density)? {
            if crossed_upper {
                let params2 = middle_params(&m, &params, n)?;
                let (r1, r2) = curvature_transform_check2(&m, &params2, &c2)?;
                let (status, residual) =
                    parts_verdict(&[("base layer", r1.is_zero()), ("middle layer", r2.is_zero())]);
                rec.push(
                    "gauge-transform-two",
                    "2-curvature transforms covariantly under gauge transformations",
                    trial,
                    status,
                    residual,
                    None,
                );
            }
            let (r1, r2, r3) = curvature_transform_check3(&m, &params, &c3)?;
            let (status, residual) = parts_verdict(&[
                ("base layer", r1.is_zero()),
                ("middle layer", r2.is_zero()),
                ("top layer", r3.is_zero()),
            ]);
            rec.push(
                "gauge-transform-three",
                "3-curvature transforms covariantly under gauge transformations",
                trial,
                status,
                residual,
                None,
            );
        }
    }

    if config.mutate {
        push_mutation_records(&mut rec, config, &source)?;
        push_mutated_identity_records(&mut rec, config, &source)?;
    }

    Ok(Report::new(config.command.name(), &source.label, config.seed, rec.into_checks()))
}

/// Identity sensitivity on damaged modules: re-run the 3-Bianchi residual on
/// validator-flagged mutations and record the (expected) failures.
fn push_mutated_identity_records(
    rec: &mut Recorder,
    config: &RunConfig,
    source: &ModuleSource,
) -> Result<()> {
    let flagged = violating_mutations(&source.kind)?;
    let density = config.density();
    for (trial, mutation) in flagged.iter().take(config.trials).enumerate() {
        let m = mutation.kind.as_two_crossed();
        let mut rng = config.trial_rng(trial);
        let c3 = Conn3::random(&mut rng, &m, config.n_vars, &density);
        let (r1, r2, r3) = bianchi3_residual(&m, &c3)?;
        let broken = !(r1.is_zero() && r2.is_zero() && r3.is_zero());
        rec.push(
            "mutation-bianchi-three",
            "the 3-curvature Bianchi identity is sensitive to structure damage",
            trial,
            if broken { CheckStatus::ExpectedViolation } else { CheckStatus::ExactZero },
            if broken {
                format!("bump {} breaks the identity", mutation.label)
            } else {
                format!("bump {} leaves this identity intact", mutation.label)
            },
            Some(serde_json::json!({ "site": mutation.label })),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// chern
// ---------------------------------------------------------------------------

/// Chern-form suites: closure, gauge invariance, transgression by both
/// routes, specialization at the zero base connection, and action values.
pub fn cmd_chern(config: &RunConfig) -> Result<Report> {
    let source = modfile::resolve(&config.module)?;
    let theory = match config.theory {
        Some(t) => {
            require_theory_pairing(t, &source.pairing)?;
            t
        }
        None => infer_theory(&source.pairing)?,
    };
    let m = source.kind.as_two_crossed();
    if theory != Theory::Cs && !upper_layer_is_crossed(&m)? {
        return Err(Error::InvalidInput(
            "the two- and three-term chern suites need base/middle layers forming a crossed module"
                .into(),
        ));
    }
    let mut rec = recorder_for(config, &source);

    for trial in 0..config.trials {
        let mut rng = config.trial_rng(trial);
        match theory {
            Theory::Cs => chern_trial_cs(&mut rec, config, &m, &source.pairing, &mut rng, trial)?,
            Theory::TwoCs => chern_trial_2cs(&mut rec, config, &m, &source.pairing, &mut rng, trial)?,
            Theory::ThreeCs => chern_trial_3cs(&mut rec, config, &m, &source.pairing, &mut rng, trial)?,
        }
    }

    push_pinned_action_record(&mut rec, theory)?;
    if m.l.dim == 0 && theory == Theory::ThreeCs {
        push_top_layer_reduction_record(&mut rec, config, &m)?;
    }

    Ok(Report::new(config.command.name(), &source.label, config.seed, rec.into_checks()))
}

fn chern_trial_cs(
    rec: &mut Recorder,
    config: &RunConfig,
    m: &D2CModule,
    pairing: &PairingData,
    rng: &mut EngineRng,
    trial: usize,
) -> Result<()> {
    let density = config.density();
    let n = config.n_vars;
    let a = av_random(rng, Slot::G, m.g.dim, n, 1, &density);
    let a1 = av_random(rng, Slot::G, m.g.dim, n, 1, &density);

    let (status, residual) = scalar_verdict(&chern1_closure_residual(m, pairing, &a)?);
    rec.push("chern-closure", "the second Chern form is closed", trial, status, residual, None);

    if let Some(params) = try_gauge_params(rng, m, n, &density)? {
        let (status, residual) =
            scalar_verdict(&chern1_invariance_residual(m, pairing, &params.g, &a)?);
        rec.push(
            "chern-invariance",
            "the second Chern form is gauge invariant",
            trial,
            status,
            residual,
            None,
        );
    }

    let tg = chern_weil1(m, pairing, &a, &a1)?;
    let (status, residual) = scalar_verdict(&tg.residual);
    rec.push(
        "chern-weil",
        "the Chern forms of two connections differ by an exact transgression",
        trial,
        status,
        residual,
        None,
    );

    let zero = AVForm::zero(Slot::G, m.g.dim, n, 1);
    let special = chern_weil1(m, pairing, &zero, &a)?.q.sub(&cs_form(m, pairing, &a)?)?;
    let (status, residual) = scalar_verdict(&special);
    rec.push(
        "cs-specialization",
        "transgression from the zero connection is the Chern-Simons form",
        trial,
        status,
        residual,
        None,
    );
    Ok(())
}

fn chern_trial_2cs(
    rec: &mut Recorder,
    config: &RunConfig,
    m: &D2CModule,
    pairing: &PairingData,
    rng: &mut EngineRng,
    trial: usize,
) -> Result<()> {
    let density = config.density();
    let n = config.n_vars;
    let c = Conn2::random(rng, m, n, &density);
    let c1 = Conn2::random(rng, m, n, &density);

    let (status, residual) = scalar_verdict(&chern2_closure_residual(m, pairing, &c)?);
    rec.push("chern-closure", "the second 2-Chern form is closed", trial, status, residual, None);

    if let Some(params) = try_gauge_params(rng, m, n, &density)? {
        let params = middle_params(m, &params, n)?;
        let (status, residual) = scalar_verdict(&chern2_invariance_residual(m, pairing, &params, &c)?);
        rec.push(
            "chern-invariance",
            "the second 2-Chern form is gauge invariant",
            trial,
            status,
            residual,
            None,
        );
    }

    let tg = chern_weil2(m, pairing, &c, &c1)?;
    let (status, residual) = scalar_verdict(&tg.residual);
    rec.push(
        "chern-weil",
        "the 2-Chern forms of two connections differ by an exact transgression",
        trial,
        status,
        residual,
        None,
    );

    let exp = chern_weil2_expansion(m, pairing, &c, &c1)?;
    let (status, residual) = scalar_verdict(&exp.residual);
    rec.push(
        "chern-weil-expansion",
        "the termwise expansion of the 2-transgression satisfies the derivative identity",
        trial,
        status,
        residual,
        None,
    );
    let (status, residual) = scalar_verdict(&exp.q.sub(&tg.q)?);
    rec.push(
        "chern-weil-routes",
        "termwise expansion and parameter integration build the same 2-transgression",
        trial,
        status,
        residual,
        None,
    );

    let zero = Conn2::zero(m, n);
    let special = chern_weil2(m, pairing, &zero, &c)?.q.sub(&lagr_2cs(m, pairing, &c)?.raw)?;
    let (status, residual) = scalar_verdict(&special);
    rec.push(
        "cs-specialization",
        "transgression from the zero connection is the two-term Chern-Simons lagrangian",
        trial,
        status,
        residual,
        None,
    );

    let lagr = lagr_2cs(m, pairing, &c)?;
    let (status, residual) = scalar_verdict(&lagr.residual()?);
    let data = if n == 4 {
        let v = action_2cs(m, pairing, &c, &ActionConfig::default())?;
        Some(serde_json::json!({ "action_integral": rat_str(&v.integral) }))
    } else {
        None
    };
    rec.push(
        "lagrangian-builds",
        "generalized-form and component builds of the two-term lagrangian agree up to an exact term",
        trial,
        status,
        residual,
        data,
    );
    Ok(())
}

fn chern_trial_3cs(
    rec: &mut Recorder,
    config: &RunConfig,
    m: &D2CModule,
    pairing: &PairingData,
    rng: &mut EngineRng,
    trial: usize,
) -> Result<()> {
    let density = config.density();
    let n = config.n_vars;
    let c = Conn3::random(rng, m, n, &density);
    let c1 = Conn3::random(rng, m, n, &density);

    let (status, residual) = scalar_verdict(&chern3_closure_residual(m, pairing, &c)?);
    rec.push("chern-closure", "the second 3-Chern form is closed", trial, status, residual, None);

    if let Some(params) = try_gauge_params(rng, m, n, &density)? {
        let (status, residual) = scalar_verdict(&chern3_invariance_residual(m, pairing, &params, &c)?);
        rec.push(
            "chern-invariance",
            "the second 3-Chern form is gauge invariant",
            trial,
            status,
            residual,
            None,
        );
    }

    let tg = chern_weil3(m, pairing, &c, &c1)?;
    let (status, residual) = scalar_verdict(&tg.residual);
    rec.push(
        "chern-weil",
        "the 3-Chern forms of two connections differ by an exact transgression",
        trial,
        status,
        residual,
        None,
    );

    let exp = chern_weil3_expansion(m, pairing, &c, &c1)?;
    let (status, residual) = scalar_verdict(&exp.residual);
    rec.push(
        "chern-weil-expansion",
        "the termwise expansion of the 3-transgression satisfies the derivative identity",
        trial,
        status,
        residual,
        None,
    );
    let (status, residual) = scalar_verdict(&exp.q.sub(&tg.q)?);
    rec.push(
        "chern-weil-routes",
        "termwise expansion and parameter integration build the same 3-transgression",
        trial,
        status,
        residual,
        None,
    );

    let zero = Conn3::zero(m, n);
    let special = chern_weil3(m, pairing, &zero, &c)?.q.sub(&lagr_3cs(m, pairing, &c)?.raw)?;
    let (status, residual) = scalar_verdict(&special);
    rec.push(
        "cs-specialization",
        "transgression from the zero connection is the three-term Chern-Simons lagrangian",
        trial,
        status,
        residual,
        None,
    );

    let lagr = lagr_3cs(m, pairing, &c)?;
    let (status, residual) = scalar_verdict(&lagr.residual()?);
    let data = if n == 5 {
        let v = action_3cs(m, pairing, &c, &ActionConfig::default())?;
        Some(serde_json::json!({ "action_integral": rat_str(&v.integral) }))
    } else {
        None
    };
    rec.push(
        "lagrangian-builds",
        "generalized-form and component builds of the three-term lagrangian agree up to an exact term",
        trial,
        status,
        residual,
        data,
    );
    Ok(())
}

/// Frozen action values on hand-integrable connections, one per tier.  These
/// run on fixed built-in modules regardless of the module under test and pin
/// the engine's normalization.
fn push_pinned_action_record(rec: &mut Recorder, theory: Theory) -> Result<()> {
    let sf = ScalarForm::from_poly;
    let (expected, actual, module) = match theory {
        Theory::Cs => {
            let source = modfile::resolve("adjoint")?;
            let m = source.kind.as_two_crossed();
            let n = 3;
            let x = |i: usize| RatPoly::var(n, i);
            let dx = |i: usize| ScalarForm::dx(n, i);
            let a = AVForm::new(
                Slot::G,
                n,
                1,
                vec![
                    sf(x(0)).wedge(&dx(1))?,
                    dx(2),
                    sf(x(1)).wedge(&dx(0))?,
                ],
            )?;
            let v = action_cs(&m, &source.pairing, &a, &ActionConfig::default())?;
            (ratq(1, 2), v.integral, "adjoint")
        }
        Theory::TwoCs => {
            let source = modfile::resolve("dim1")?;
            let m = source.kind.as_two_crossed();
            let n = 4;
            let x = |i: usize| RatPoly::var(n, i);
            let dx = |i: usize| ScalarForm::dx(n, i);
            let a = AVForm::single(Slot::G, 1, 0, sf(x(3)).wedge(&dx(0))?);
            let b = AVForm::single(
                Slot::H,
                1,
                0,
                sf(RatPoly::mul(&x(0), &x(1))?).wedge(&dx(1))?.wedge(&dx(2))?,
            );
            let c = Conn2::new(&m, a, b)?;
            let v = action_2cs(&m, &source.pairing, &c, &ActionConfig::default())?;
            (ratq(-1, 2), v.integral, "dim1")
        }
        Theory::ThreeCs => {
            let source = modfile::resolve("abelian")?;
            let m = source.kind.as_two_crossed();
            let n = 5;
            let x = |i: usize| RatPoly::var(n, i);
            let dx = |i: usize| ScalarForm::dx(n, i);
            let a = AVForm::single(Slot::G, 2, 0, sf(x(4)).wedge(&dx(0))?);
            let b = AVForm::new(
                Slot::H,
                n,
                2,
                vec![
                    sf(x(3)).wedge(&dx(0))?.wedge(&dx(1))?,
                    sf(x(2)).wedge(&dx(3))?.wedge(&dx(4))?,
                ],
            )?;
            let cc = AVForm::single(
                Slot::L,
                2,
                0,
                sf(x(1)).wedge(&dx(1))?.wedge(&dx(2))?.wedge(&dx(3))?,
            );
            let c = Conn3::new(&m, a, b, cc)?;
            let v = action_3cs(&m, &source.pairing, &c, &ActionConfig::default())?;
            (ratq(3, 2), v.integral, "abelian")
        }
    };
    let pass = expected == actual;
    rec.push(
        "action-pinned",
        "the action of a hand-integrable connection matches its frozen value",
        0,
        if pass { CheckStatus::ExactZero } else { CheckStatus::Violated },
        if pass {
            "0".into()
        } else {
            format!("expected {}, computed {}", rat_str(&expected), rat_str(&actual))
        },
        Some(serde_json::json!({
            "module": module,
            "expected_integral": rat_str(&expected),
            "computed_integral": rat_str(&actual),
        })),
    );
    Ok(())
}

/// With an empty top layer the three-tier curvature must collapse onto the
/// two-tier one: same base and middle curvature, identically empty top part.
fn push_top_layer_reduction_record(rec: &mut Recorder, config: &RunConfig, m: &D2CModule) -> Result<()> {
    let mut rng = config.trial_rng(usize::MAX / 2);
    let density = config.density();
    let c3 = Conn3::random(&mut rng, m, config.n_vars, &density);
    let c2 = c3.truncate();
    let f3 = curvature3(m, &c3)?;
    let f2 = curvature2(m, &c2)?;
    let r1 = hcs_core::avform::av_sub(&f3.omega1, &f2.omega1)?;
    let r2 = hcs_core::avform::av_sub(&f3.omega2, &f2.omega2)?;
    let (status, residual) = parts_verdict(&[
        ("base curvature", r1.is_zero()),
        ("middle curvature", r2.is_zero()),
        ("top curvature", f3.omega3.is_zero()),
    ]);
    rec.push(
        "top-layer-reduction",
        "an empty top layer reduces the three-tier curvature to the two-tier one",
        0,
        status,
        residual,
        None,
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// invariant-forms
// ---------------------------------------------------------------------------

fn matrix_json(m: &hcs_core::linalg::RatMatrix) -> serde_json::Value {
    serde_json::Value::from(
        m.data
            .iter()
            .map(|row| serde_json::Value::from(row.iter().map(|r| rat_str(r)).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

/// Invariant-pairing solver: emit the basis, singularity flags, and a
/// pairing-validator record per basis element.  Unbalanced modules are
/// balanced first and the extension is noted.
pub fn cmd_invariant_forms(config: &RunConfig) -> Result<Report> {
    let source = modfile::resolve(&config.module)?;
    let mut rec = recorder_for(config, &source);

    match &source.kind {
        ModuleKind::Crossed(m) => {
            let (m, note) = if m.g.dim == m.h.dim {
                (m.clone(), None)
            } else {
                let balanced = balance_dcm(m)?;
                let note = format!(
                    "auto-balanced: middle layer extended from dimension {} to {}",
                    m.h.dim, balanced.h.dim
                );
                (balanced, Some(note))
            };
            let basis = solve_invariant_forms_dcm(&m)?;
            let m2 = embed_dcm(&m);
            let basis_json: Vec<serde_json::Value> = basis
                .iter()
                .map(|mat| {
                    let p = PairingData { pair_gh: Some(mat.clone()), ..PairingData::default() };
                    serde_json::json!({
                        "pair_gh": matrix_json(mat),
                        "singular": p.singularity_flags().pair_gh,
                    })
                })
                .collect();
            rec.push(
                "solver-basis",
                "basis of the space of invariant middle pairings",
                0,
                CheckStatus::ExactZero,
                format!("dimension {}", basis.len()),
                Some(serde_json::json!({
                    "dimension": basis.len(),
                    "balanced": note.is_none(),
                    "note": note,
                    "basis": basis_json,
                })),
            );
            for (k, mat) in basis.iter().enumerate() {
                let p = PairingData { pair_gh: Some(mat.clone()), ..PairingData::default() };
                let (status, residual, data) = validation_verdict(&check_pairing(&m2, &p)?);
                rec.push(
                    "solver-pairing-axioms",
                    "every solved pairing satisfies the invariance laws",
                    k,
                    status,
                    residual,
                    data,
                );
            }
        }
        ModuleKind::TwoCrossed(m) => {
            let (m, note) = if m.g.dim == m.l.dim {
                (m.clone(), None)
            } else {
                let balanced = balance_d2cm(m)?;
                let note = format!(
                    "auto-balanced: top layer extended from dimension {} to {}",
                    m.l.dim, balanced.l.dim
                );
                (balanced, Some(note))
            };
            let basis = solve_invariant_forms_d2cm(&m)?;
            let basis_json: Vec<serde_json::Value> = basis
                .iter()
                .map(|b| {
                    let p = PairingData {
                        pair_h: Some(b.pair_h.clone()),
                        pair_gl: Some(b.pair_gl.clone()),
                        ..PairingData::default()
                    };
                    let flags = p.singularity_flags();
                    serde_json::json!({
                        "pair_h": matrix_json(&b.pair_h),
                        "pair_gl": matrix_json(&b.pair_gl),
                        "singular_h": flags.pair_h,
                        "singular_gl": flags.pair_gl,
                    })
                })
                .collect();
            rec.push(
                "solver-basis",
                "basis of the space of invariant middle/top pairing pairs",
                0,
                CheckStatus::ExactZero,
                format!("dimension {}", basis.len()),
                Some(serde_json::json!({
                    "dimension": basis.len(),
                    "balanced": note.is_none(),
                    "note": note,
                    "basis": basis_json,
                })),
            );
            for (k, b) in basis.iter().enumerate() {
                let p = PairingData {
                    pair_h: Some(b.pair_h.clone()),
                    pair_gl: Some(b.pair_gl.clone()),
                    ..PairingData::default()
                };
                let (status, residual, data) = validation_verdict(&check_pairing(&m, &p)?);
                rec.push(
                    "solver-pairing-axioms",
                    "every solved pairing satisfies the invariance laws",
                    k,
                    status,
                    residual,
                    data,
                );
            }
        }
    }

    Ok(Report::new(config.command.name(), &source.label, config.seed, rec.into_checks()))
}
