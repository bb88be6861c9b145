//! Verification suites behind `piano-cat verify`. Each suite emits JSON lines:
//! one per failing instance, then a summary line.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::Result;
use piano_core::cyclic_geometry::{Arc, ArcSet};
use piano_core::derived_equivalence::{
    both_choices, check_beta_delta, signed_matrix, verify_phi_homomorphism, InitialChoice,
};
use piano_core::endomorphism_rings::verify_path_algebra_iso;
use piano_core::generators::enumerate_limit_generators_capped;
use piano_core::quiver_algebras::{
    actual_degree_component, check_confluence, degree_component_structure,
    degree_component_structure_corrected, isomorphism_key, path_enumeration_oracle,
    piano_from_extended, PianoQuiver,
};
use piano_core::surface_dissections::{enumerate_extended_dissections, epsilon, epsilon_inverse};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Bijection,
    PathAlgebraIso,
    PianoAsPaths,
    BetaDelta,
    DerivedEquiv,
    Confluence,
    All,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Bijection => "bijection",
            Which::PathAlgebraIso => "path-algebra-iso",
            Which::PianoAsPaths => "piano-as-paths",
            Which::BetaDelta => "beta-delta",
            Which::DerivedEquiv => "derived-equiv",
            Which::Confluence => "confluence",
            Which::All => "all",
        }
    }
}

pub struct Settings {
    pub n: usize,
    pub window: i64,
    pub len: usize,
    pub cap: usize,
    pub choice: Option<InitialChoice>,
}

/// Collects report lines and whether everything passed.
#[derive(Default)]
pub struct Report {
    pub lines: Vec<Value>,
    pub failed: bool,
}

impl Report {
    fn summary(&mut self, check: Which, n: usize, instances: usize, failures: usize) {
        self.failed |= failures > 0;
        self.lines.push(json!({
            "check": check.name(),
            "n": n,
            "instances": instances,
            "failures": failures,
            "pass": failures == 0,
        }));
    }

    fn failure(&mut self, check: Which, instance: &ArcSet, witness: Value) {
        self.lines.push(json!({
            "check": check.name(),
            "instance": instance,
            "pass": false,
            "witness": witness,
        }));
    }
}

pub fn run(which: Which, s: &Settings) -> Result<Report> {
    let gens = enumerate_limit_generators_capped(s.n, false, s.cap)?;
    let mut report = Report::default();
    let all = which == Which::All;
    if all || which == Which::Bijection {
        bijection(s, &gens, &mut report)?;
    }
    if all || which == Which::PathAlgebraIso {
        let mut failures = 0;
        for g in &gens {
            let r = verify_path_algebra_iso(g, s.window)?;
            if !r.passed() {
                failures += 1;
                report.failure(Which::PathAlgebraIso, g, json!(r.mismatches.first()));
            }
        }
        report.summary(Which::PathAlgebraIso, s.n, gens.len(), failures);
    }
    if all || which == Which::PianoAsPaths {
        piano_as_paths(s, &gens, &mut report)?;
    }
    if all || which == Which::BetaDelta {
        signs(Which::BetaDelta, s, &gens, &mut report)?;
    }
    if all || which == Which::DerivedEquiv {
        signs(Which::DerivedEquiv, s, &gens, &mut report)?;
    }
    if all || which == Which::Confluence {
        confluence(s, &gens, &mut report)?;
    }
    Ok(report)
}

fn normalized_sorted(g: &ArcSet) -> Vec<Arc> {
    let mut arcs: Vec<Arc> = g.arcs().iter().map(Arc::normalized).collect();
    arcs.sort();
    arcs
}

fn bijection(s: &Settings, gens: &[ArcSet], report: &mut Report) -> Result<()> {
    let dissections = enumerate_extended_dissections(s.n);
    let mut failures = 0;
    let mut images = BTreeSet::new();
    for g in gens {
        let d = epsilon(g)?;
        let back = epsilon_inverse(&d)?;
        if back.arcs() != normalized_sorted(g).as_slice() {
            failures += 1;
            report.failure(Which::Bijection, g, json!({"round_trip": back}));
        }
        images.insert(serde_json::to_string(&d.canonical())?);
    }
    let targets: BTreeSet<String> =
        dissections.iter().map(|d| serde_json::to_string(&d.canonical())).collect::<Result<_, _>>()?;
    for d in &dissections {
        let g = epsilon_inverse(d)?;
        if epsilon(&g)?.canonical() != d.canonical() {
            failures += 1;
            report.failure(Which::Bijection, &g, json!({"dissection": d}));
        }
    }
    if images != targets || gens.len() != dissections.len() {
        failures += 1;
        report.lines.push(json!({
            "check": "bijection",
            "pass": false,
            "witness": {"generators": gens.len(), "dissections": dissections.len(), "distinct_images": images.len()},
        }));
    }
    report.summary(Which::Bijection, s.n, gens.len() + dissections.len(), failures);
    Ok(())
}

fn piano_as_paths(s: &Settings, gens: &[ArcSet], report: &mut Report) -> Result<()> {
    let mut failures = 0;
    let mut corrected_failures = 0;
    for g in gens {
        let p = piano_from_extended(&epsilon(g)?)?;
        for i in -s.window..=s.window {
            let actual = actual_degree_component(&p, i, s.window)?;
            let predicted = degree_component_structure(&p, i, s.window)?;
            if degree_component_structure_corrected(&p, i, s.window)? != actual {
                corrected_failures += 1;
            }
            if predicted != actual {
                failures += 1;
                report.failure(
                    Which::PianoAsPaths,
                    g,
                    json!({"degree": i, "predicted": predicted.columns, "actual": actual.columns}),
                );
                break;
            }
        }
    }
    report.summary(Which::PianoAsPaths, s.n, gens.len(), failures);
    report.lines.push(json!({
        "check": "piano-as-paths-corrected",
        "n": s.n,
        "instances": gens.len(),
        "failures": corrected_failures,
        "pass": corrected_failures == 0,
    }));
    report.failed |= corrected_failures > 0;
    Ok(())
}

fn signs(which: Which, s: &Settings, gens: &[ArcSet], report: &mut Report) -> Result<()> {
    let choices: Vec<InitialChoice> = match s.choice {
        Some(c) => vec![c],
        None => both_choices().to_vec(),
    };
    let mut failures = 0;
    let mut instances = 0;
    for g in gens {
        for &c in &choices {
            instances += 1;
            let m = signed_matrix(g, c)?;
            let mut violations = check_beta_delta(&m, g)?.violations;
            if which == Which::DerivedEquiv {
                violations.extend(verify_phi_homomorphism(g, &m, s.window)?.violations);
            }
            if let Some(v) = violations.first() {
                failures += 1;
                report.failure(which, g, json!({"choice": c.to_string(), "violation": v}));
            }
        }
    }
    report.summary(which, s.n, instances, failures);
    Ok(())
}

/// Piano quivers of all generators of size `n`, one per isomorphism class.
pub fn piano_classes(gens: &[ArcSet]) -> Result<BTreeMap<String, (ArcSet, PianoQuiver)>> {
    let mut classes = BTreeMap::new();
    for g in gens {
        let p = piano_from_extended(&epsilon(g)?)?;
        classes.entry(isomorphism_key(&p)).or_insert((g.clone(), p));
    }
    Ok(classes)
}

fn confluence(s: &Settings, gens: &[ArcSet], report: &mut Report) -> Result<()> {
    let classes = piano_classes(gens)?;
    let mut failures = 0;
    for (g, p) in classes.values() {
        let c = check_confluence(p, s.len);
        let o = path_enumeration_oracle(p, s.len)?;
        if !c.passed() || !o.mismatches.is_empty() {
            failures += 1;
            report.failure(
                Which::Confluence,
                g,
                json!({"confluence": c.witness, "oracle": o.mismatches.first()}),
            );
        }
    }
    report.summary(Which::Confluence, s.n, classes.len(), failures);
    Ok(())
}
