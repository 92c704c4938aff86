//! Randomized evidence reports around the open questions: strict
//! monotonicity of v(I^k), the limit conjecture for inclusion-maximal stable
//! primes, and the relation between v-stability and Ass-stability indices.
//! These report counts and reproduction data; they never assert an answer.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use vnum_core::decomp::associated_primes;
use vnum_core::filtration::{
    inclusion_maximal, stability_indices, stable_primes, v_function_p, Filtration, Window,
};
use vnum_core::parse::ideal_to_text;
use vnum_core::sample::random_ideal;
use vnum_core::vnum::v_number_with_ass;
use vnum_core::{Error, MonomialIdeal, Result};

pub struct Params {
    pub samples: usize,
    pub n: usize,
    pub max_deg: u64,
    pub max_gens: usize,
    pub seed: u64,
    pub fixed: Option<MonomialIdeal>,
    pub window: Window,
}

#[derive(Serialize)]
pub struct ParamsEcho {
    samples: usize,
    n: usize,
    #[serde(rename = "degreeCap")]
    degree_cap: u64,
    #[serde(rename = "maxGens")]
    max_gens: usize,
    seed: u64,
    #[serde(rename = "fixedIdeal")]
    fixed: Option<String>,
}

#[derive(Serialize)]
pub struct ExperimentOutcome {
    pub params: ParamsEcho,
    pub confirmations: usize,
    pub violations: usize,
    /// Samples whose window did not stabilize; reported, never counted.
    pub skipped: usize,
    /// Reproduction data for every violation, plus summary notes.
    pub details: Vec<Value>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn run(name: &str, params: Params) -> Result<ExperimentOutcome> {
    match name {
        "monotonicity" => monotonicity(params),
        "max-limit-conjecture" => max_limit(params),
        "vstab-vs-astab" => vstab_vs_astab(params),
        other => Err(Error::Unsupported(format!("unknown experiment '{other}'"))),
    }
}

fn echo(params: &Params) -> ParamsEcho {
    ParamsEcho {
        samples: params.samples,
        n: params.n,
        degree_cap: params.max_deg,
        max_gens: params.max_gens,
        seed: params.seed,
        fixed: params.fixed.as_ref().map(ideal_to_text),
    }
}

fn sample_ideals(params: &Params) -> Vec<MonomialIdeal> {
    if let Some(fixed) = &params.fixed {
        return vec![fixed.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    (0..params.samples)
        .map(|_| random_ideal(&mut rng, params.n, params.max_gens, params.max_deg))
        .collect()
}

/// Is v(I^k) < v(I^{k+1}) at every examined level?
fn monotonicity(params: Params) -> Result<ExperimentOutcome> {
    let mut out = ExperimentOutcome {
        params: echo(&params),
        confirmations: 0,
        violations: 0,
        skipped: 0,
        details: vec![],
        notes: vec![],
        warnings: vec![],
    };
    for ideal in sample_ideals(&params) {
        if ideal.is_unit() {
            out.skipped += 1;
            continue;
        }
        let f = Filtration::powers(ideal.clone());
        let mut values = Vec::with_capacity(params.window.kmax);
        for k in 1..=params.window.kmax {
            let level = f.ideal(k)?;
            let ass = associated_primes(&level)?;
            values.push(v_number_with_ass(&level, &ass)?.value);
        }
        let strict = values.windows(2).all(|w| w[0] < w[1]);
        if strict {
            out.confirmations += 1;
        } else {
            out.violations += 1;
            out.details.push(json!({
                "ideal": ideal_to_text(&ideal),
                "values": values,
            }));
        }
        if params.fixed.is_some() {
            out.notes.push(format!("v-sequence: {values:?}"));
        }
    }
    out.notes.push(
        "monotonicity of v(I^k) is an open question; counts are evidence only".to_string(),
    );
    Ok(out)
}

/// Does the fitted v_p slope equal alpha(I) for every inclusion-maximal
/// stable prime?
fn max_limit(params: Params) -> Result<ExperimentOutcome> {
    let mut out = ExperimentOutcome {
        params: echo(&params),
        confirmations: 0,
        violations: 0,
        skipped: 0,
        details: vec![],
        notes: vec![],
        warnings: vec![],
    };
    for ideal in sample_ideals(&params) {
        if ideal.is_unit() {
            out.skipped += 1;
            continue;
        }
        let alpha = ideal.alpha()? as i64;
        let f = Filtration::powers(ideal.clone());
        let sp = stable_primes(&f, params.window)?;
        let Some(stable) = sp.stable else {
            out.skipped += 1;
            continue;
        };
        let mut all_match = true;
        let mut slopes = Vec::new();
        for p in inclusion_maximal(&stable.primes) {
            let vp = v_function_p(&f, &p, params.window)?;
            match vp.tail {
                Some(tail) => {
                    let slope = tail.branches[0].slope;
                    slopes.push(json!({ "prime": p, "slope": slope }));
                    if slope != alpha {
                        all_match = false;
                    }
                }
                None => {
                    out.skipped += 1;
                    all_match = true;
                    slopes.clear();
                    break;
                }
            }
        }
        if slopes.is_empty() {
            continue;
        }
        if all_match {
            out.confirmations += 1;
        } else {
            out.violations += 1;
            out.details.push(json!({
                "ideal": ideal_to_text(&ideal),
                "alpha": alpha,
                "slopes": slopes,
            }));
        }
    }
    out.notes
        .push("the limit conjecture for maximal stable primes is open; evidence only".to_string());
    Ok(out)
}

/// Records the observed relation between vstab and astab.
fn vstab_vs_astab(params: Params) -> Result<ExperimentOutcome> {
    let mut out = ExperimentOutcome {
        params: echo(&params),
        confirmations: 0,
        violations: 0,
        skipped: 0,
        details: vec![],
        notes: vec![],
        warnings: vec![],
    };
    let mut smaller = 0usize;
    let mut equal = 0usize;
    let mut larger = 0usize;
    for ideal in sample_ideals(&params) {
        if ideal.is_unit() {
            out.skipped += 1;
            continue;
        }
        let f = Filtration::powers(ideal.clone());
        let idx = stability_indices(&f, params.window)?;
        match (idx.v_stab, idx.a_stab) {
            (Some(v), Some(a)) => {
                out.confirmations += 1;
                match v.cmp(&a) {
                    std::cmp::Ordering::Less => smaller += 1,
                    std::cmp::Ordering::Equal => equal += 1,
                    std::cmp::Ordering::Greater => larger += 1,
                }
                if params.fixed.is_some() {
                    out.notes.push(format!("vstab = {v}, astab = {a}"));
                }
                out.details.push(json!({
                    "ideal": ideal_to_text(&ideal),
                    "vstab": v,
                    "astab": a,
                }));
            }
            _ => out.skipped += 1,
        }
    }
    out.notes.push(format!(
        "vstab < astab: {smaller}, equal: {equal}, vstab > astab: {larger} (no comparison is asserted)"
    ));
    Ok(out)
}
