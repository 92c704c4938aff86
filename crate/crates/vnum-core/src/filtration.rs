//! Asymptotics along a filtration of monomial ideals: associated-prime
//! stabilization, socle components, v-function tails, and stability indices.
//!
//! Stabilization is detected empirically inside a finite window and every
//! outcome carries the examined range; a window that fails to stabilize is a
//! structured partial result, not an error. Power filtrations have period 1;
//! closure filtrations search periods up to the window's `periodMax` and
//! prefer the smallest period that fits.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::decomp::{associated_primes, monomial_localize};
use crate::error::{Error, Result};
use crate::ideal::{quotient_alpha, MonomialIdeal, MonomialPrime, QuotientAlpha};
use crate::newton::NewtonPolyhedron;
use crate::vector::ExponentVector;
use crate::vnum::{v_at_prime, v_number_with_ass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiltrationKind {
    #[serde(rename = "powers")]
    Powers,
    #[serde(rename = "closure-powers")]
    ClosurePowers,
}

/// Lazy map k -> I_k for ordinary powers or integral-closure powers,
/// memoized per handle. Level 0 is the unit ideal.
pub struct Filtration {
    kind: FiltrationKind,
    base: MonomialIdeal,
    np: Option<NewtonPolyhedron>,
    cache: Mutex<HashMap<usize, Arc<MonomialIdeal>>>,
}

impl Filtration {
    pub fn powers(base: MonomialIdeal) -> Filtration {
        Filtration {
            kind: FiltrationKind::Powers,
            base,
            np: None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn closure_powers(base: MonomialIdeal) -> Result<Filtration> {
        if base.is_zero() || base.is_unit() {
            return Err(Error::Unsupported(
                "closure filtration requires a proper non-zero ideal".to_string(),
            ));
        }
        let np = NewtonPolyhedron::from_ideal(&base)?;
        Ok(Filtration {
            kind: FiltrationKind::ClosurePowers,
            base,
            np: Some(np),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    pub fn ambient(&self) -> usize {
        self.base.ambient()
    }

    pub fn ideal(&self, k: usize) -> Result<Arc<MonomialIdeal>> {
        if k == 0 {
            return Ok(Arc::new(MonomialIdeal::unit(self.base.ambient())));
        }
        if let Some(hit) = self.cache.lock().unwrap().get(&k) {
            return Ok(hit.clone());
        }
        let level = match self.kind {
            FiltrationKind::Powers => {
                if k == 1 {
                    Arc::new(self.base.clone())
                } else {
                    let prev = self.ideal(k - 1)?;
                    Arc::new(prev.product(&self.base)?)
                }
            }
            FiltrationKind::ClosurePowers => {
                let np = self.np.as_ref().expect("closure filtrations carry facets");
                Arc::new(np.closure_power(k as u64)?)
            }
        };
        self.cache
            .lock()
            .unwrap()
            .entry(k)
            .or_insert_with(|| level.clone());
        Ok(level)
    }
}

/// Finite detection window: levels 1..=kmax, W trailing samples per residue,
/// candidate periods up to periodMax.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub kmax: usize,
    pub w: usize,
    #[serde(rename = "periodMax")]
    pub period_max: usize,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            kmax: 12,
            w: 3,
            period_max: 4,
        }
    }
}

impl Window {
    fn validate(&self) -> Result<()> {
        if self.kmax < self.w || self.w < 2 || self.period_max < 1 {
            return Err(Error::InvalidWindow {
                kmax: self.kmax,
                w: self.w,
            });
        }
        Ok(())
    }
}

/// The eventually-periodic associated-prime data detected in a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableSet {
    pub primes: BTreeSet<MonomialPrime>,
    pub period: usize,
    #[serde(rename = "perResidue")]
    pub per_residue: Vec<BTreeSet<MonomialPrime>>,
    #[serde(rename = "stabilizedAt")]
    pub stabilized_at: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelAss {
    pub k: usize,
    pub primes: BTreeSet<MonomialPrime>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StablePrimesOutcome {
    pub levels: Vec<LevelAss>,
    pub stable: Option<StableSet>,
    pub window: Window,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StableMaxOutcome {
    pub maximal: Option<BTreeSet<MonomialPrime>>,
    pub base: StablePrimesOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct StableCheckOutcome {
    pub verdict: Option<bool>,
    /// First and last level of the stabilized range that was checked.
    pub examined: Option<(usize, usize)>,
    pub window: Window,
    pub warnings: Vec<String>,
}

/// Shared per-window data: level ideals, their associated primes, and the
/// detected stable structure.
struct Analysis {
    window: Window,
    levels: Vec<Arc<MonomialIdeal>>,
    ass: Vec<BTreeSet<MonomialPrime>>,
    stable: Option<StableSet>,
}

const NOT_STABILIZED: &str = "not stabilized within kmax";

fn analyze(f: &Filtration, window: Window) -> Result<Analysis> {
    window.validate()?;
    if f.base.is_zero() || f.base.is_unit() {
        return Err(Error::Unsupported(
            "filtration asymptotics require a proper non-zero base ideal".to_string(),
        ));
    }
    let mut levels = Vec::with_capacity(window.kmax);
    let mut ass = Vec::with_capacity(window.kmax);
    for k in 1..=window.kmax {
        let level = f.ideal(k)?;
        ass.push(associated_primes(&level)?);
        levels.push(level);
    }
    let stable = detect_stable(&ass, window, f.kind);
    Ok(Analysis {
        window,
        levels,
        ass,
        stable,
    })
}

fn detect_stable(
    ass: &[BTreeSet<MonomialPrime>],
    window: Window,
    kind: FiltrationKind,
) -> Option<StableSet> {
    let kmax = window.kmax;
    let period_max = match kind {
        FiltrationKind::Powers => 1,
        FiltrationKind::ClosurePowers => window.period_max,
    };
    'candidates: for c in 1..=period_max {
        let mut per_residue: Vec<BTreeSet<MonomialPrime>> = vec![BTreeSet::new(); c];
        for (j, slot) in per_residue.iter_mut().enumerate() {
            let ks: Vec<usize> = (1..=kmax).filter(|k| k % c == j).collect();
            if ks.len() < window.w {
                continue 'candidates;
            }
            let tail = &ks[ks.len() - window.w..];
            let set = &ass[tail[0] - 1];
            if !tail.iter().all(|&k| &ass[k - 1] == set) {
                continue 'candidates;
            }
            *slot = set.clone();
        }
        let mut stabilized_at = kmax + 1;
        for k in (1..=kmax).rev() {
            if ass[k - 1] == per_residue[k % c] {
                stabilized_at = k;
            } else {
                break;
            }
        }
        if stabilized_at > kmax {
            continue;
        }
        let mut primes = BTreeSet::new();
        for set in &per_residue {
            primes.extend(set.iter().cloned());
        }
        return Some(StableSet {
            primes,
            period: c,
            per_residue,
            stabilized_at,
        });
    }
    None
}

/// Associated primes of the level-k ideal of the filtration.
pub fn ass_of_level(f: &Filtration, k: usize) -> Result<BTreeSet<MonomialPrime>> {
    if k == 0 {
        return Err(Error::Unsupported(
            "level 0 is the unit ideal and has no associated primes".to_string(),
        ));
    }
    let level = f.ideal(k)?;
    associated_primes(&level)
}

/// The eventually-associated primes of the filtration, detected in a window.
pub fn stable_primes(f: &Filtration, window: Window) -> Result<StablePrimesOutcome> {
    let a = analyze(f, window)?;
    Ok(outcome_from(a))
}

fn outcome_from(a: Analysis) -> StablePrimesOutcome {
    let levels = a
        .ass
        .iter()
        .enumerate()
        .map(|(i, primes)| LevelAss {
            k: i + 1,
            primes: primes.clone(),
        })
        .collect();
    let warnings = if a.stable.is_none() {
        vec![NOT_STABILIZED.to_string()]
    } else {
        vec![]
    };
    StablePrimesOutcome {
        levels,
        stable: a.stable,
        window: a.window,
        warnings,
    }
}

/// Inclusion-maximal elements of a prime set.
pub fn inclusion_maximal(primes: &BTreeSet<MonomialPrime>) -> BTreeSet<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q.strictly_contains(p)))
        .cloned()
        .collect()
}

/// Stable primes filtered to the inclusion-maximal ones.
pub fn stable_max(f: &Filtration, window: Window) -> Result<StableMaxOutcome> {
    let base = stable_primes(f, window)?;
    let maximal = base
        .stable
        .as_ref()
        .map(|s| inclusion_maximal(&s.primes));
    Ok(StableMaxOutcome { maximal, base })
}

/// Whether `p` is eventually associated, decided after monomial localization:
/// `p` is stable for the filtration exactly when the full maximal ideal of
/// the localized ring is associated at every level of the stabilized range.
pub fn is_stable_prime(
    f: &Filtration,
    p: &MonomialPrime,
    window: Window,
) -> Result<StableCheckOutcome> {
    window.validate()?;
    if p.ambient() != f.ambient() {
        return Err(Error::DimensionMismatch {
            left: f.ambient(),
            right: p.ambient(),
        });
    }
    if f.base.is_zero() || f.base.is_unit() {
        return Err(Error::Unsupported(
            "filtration asymptotics require a proper non-zero base ideal".to_string(),
        ));
    }
    let localized = monomial_localize(&f.base, p)?;
    if localized.ideal.is_unit() {
        // Some generator avoids p entirely, so no power is contained in p.
        return Ok(StableCheckOutcome {
            verdict: Some(false),
            examined: None,
            window,
            warnings: vec![],
        });
    }
    let local_f = match f.kind {
        FiltrationKind::Powers => Filtration::powers(localized.ideal.clone()),
        FiltrationKind::ClosurePowers => Filtration::closure_powers(localized.ideal.clone())?,
    };
    let a = analyze(&local_f, window)?;
    match &a.stable {
        None => Ok(StableCheckOutcome {
            verdict: None,
            examined: Some((1, window.kmax)),
            window,
            warnings: vec![NOT_STABILIZED.to_string()],
        }),
        Some(ss) => {
            let full = MonomialPrime::full(localized.vars.len());
            let verdict = (ss.stabilized_at..=window.kmax)
                .all(|k| a.ass[k - 1].contains(&full));
            Ok(StableCheckOutcome {
                verdict: Some(verdict),
                examined: Some((ss.stabilized_at, window.kmax)),
                window,
                warnings: vec![],
            })
        }
    }
}

/// One graded slice of the socle module along the filtration.
#[derive(Debug, Clone, Serialize)]
pub struct SocComponent {
    pub k: usize,
    pub numerator: MonomialIdeal,
    pub denominator: MonomialIdeal,
    #[serde(rename = "alphaValue")]
    pub alpha_value: Option<u64>,
    pub witness: Option<ExponentVector>,
}

/// The slice ((I_{k+1} : p) cap I_k) / ((I_{k+1} : p) cap sat(I_{k+1}, q) cap I_k)
/// with q the product of the strict over-primes of `p` in the stable set.
pub fn soc_component(
    f: &Filtration,
    p: &MonomialPrime,
    k: usize,
    stable_set: &BTreeSet<MonomialPrime>,
) -> Result<SocComponent> {
    if !stable_set.contains(p) {
        return Err(Error::NotAssociatedPrime(p.to_string()));
    }
    let n = f.ambient();
    let mut q = MonomialIdeal::unit(n);
    for over in stable_set.iter().filter(|o| o.strictly_contains(p)) {
        q = q.product(&over.as_ideal())?;
    }
    let level_k = f.ideal(k)?;
    let level_next = f.ideal(k + 1)?;
    let colon = level_next.colon_by_ideal(&p.as_ideal())?.ideal;
    let numerator = colon.intersect(&level_k)?;
    let saturation = level_next.saturation_total(&q)?;
    let denominator = numerator.intersect(&saturation)?;
    let (alpha_value, witness) = match quotient_alpha(&numerator, &denominator)? {
        QuotientAlpha::Degree { value, witness } => (Some(value), Some(witness)),
        QuotientAlpha::ZeroModule => (None, None),
    };
    Ok(SocComponent {
        k,
        numerator,
        denominator,
        alpha_value,
        witness,
    })
}

/// One linear branch of a quasi-linear tail: value = slope * k + intercept
/// on the residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub residue: usize,
    pub slope: i64,
    pub intercept: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiLinearTail {
    pub period: usize,
    pub branches: Vec<Branch>,
    #[serde(rename = "stabilizedAt")]
    pub stabilized_at: usize,
    pub window: Window,
}

impl QuasiLinearTail {
    /// Predicted value at level k, when k's residue class carries a branch.
    pub fn predict(&self, k: usize) -> Option<i64> {
        self.branches
            .iter()
            .find(|b| b.residue == k % self.period)
            .map(|b| b.slope * k as i64 + b.intercept)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VSample {
    pub k: usize,
    pub value: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VFunctionOutcome {
    pub samples: Vec<VSample>,
    pub tail: Option<QuasiLinearTail>,
    pub warnings: Vec<String>,
}

/// Fits per-residue linear tails on the last W samples of each required
/// residue class. Detection demands exact collinearity, an integral slope,
/// and the per-period step to be a generator degree of the Veronese level.
fn fit_tail(
    samples: &[VSample],
    period: usize,
    residues: &BTreeSet<usize>,
    veronese_degrees: &BTreeSet<u64>,
    window: Window,
) -> std::result::Result<QuasiLinearTail, String> {
    let mut branches = Vec::new();
    for &j in residues {
        let pts: Vec<VSample> = samples
            .iter()
            .filter(|s| s.k % period == j)
            .copied()
            .collect();
        if pts.len() < window.w {
            return Err(format!(
                "residue {j}: {} samples, need {}",
                pts.len(),
                window.w
            ));
        }
        let tail = &pts[pts.len() - window.w..];
        if tail.windows(2).any(|p| p[1].k - p[0].k != period) {
            return Err(format!("residue {j}: trailing samples are not consecutive"));
        }
        let step = tail[1].value as i64 - tail[0].value as i64;
        if tail
            .windows(2)
            .any(|p| p[1].value as i64 - p[0].value as i64 != step)
        {
            return Err(format!("residue {j}: trailing samples are not collinear"));
        }
        if step < 0 || step % period as i64 != 0 {
            return Err(format!("residue {j}: per-period step {step} is not admissible"));
        }
        if !veronese_degrees.contains(&(step as u64)) {
            return Err(format!(
                "residue {j}: per-period step {step} is not a Veronese generator degree"
            ));
        }
        let slope = step / period as i64;
        let last = tail[tail.len() - 1];
        let intercept = last.value as i64 - slope * last.k as i64;
        branches.push(Branch {
            residue: j,
            slope,
            intercept,
        });
    }
    let tail = QuasiLinearTail {
        period,
        branches,
        stabilized_at: 0,
        window,
    };
    // Stabilization index: first level from which every later level is
    // consistent with the fitted law. A level is consistent when its sample
    // matches the branch prediction, or when it is unsampled and its residue
    // class carries no branch (the prime is eventually absent there).
    let by_k: HashMap<usize, u64> = samples.iter().map(|s| (s.k, s.value)).collect();
    let consistent = |k: usize| -> bool {
        match (by_k.get(&k), tail.predict(k)) {
            (Some(&v), Some(pred)) => v as i64 == pred,
            (None, None) => true,
            _ => false,
        }
    };
    let mut stabilized_at = window.kmax + 1;
    for k in (1..=window.kmax).rev() {
        if consistent(k) {
            stabilized_at = k;
        } else {
            break;
        }
    }
    if stabilized_at > window.kmax {
        return Err("no level is consistent with the fitted tail".to_string());
    }
    Ok(QuasiLinearTail {
        stabilized_at,
        ..tail
    })
}

fn veronese_degrees(f: &Filtration, period: usize) -> Result<BTreeSet<u64>> {
    Ok(f.ideal(period)?
        .gens()
        .iter()
        .map(|g| g.degree())
        .collect())
}

fn v_function_inner(f: &Filtration, a: &Analysis) -> Result<VFunctionOutcome> {
    let mut samples = Vec::with_capacity(a.window.kmax);
    for k in 1..=a.window.kmax {
        let r = v_number_with_ass(&a.levels[k - 1], &a.ass[k - 1])?;
        samples.push(VSample { k, value: r.value });
    }
    let Some(stable) = &a.stable else {
        return Ok(VFunctionOutcome {
            samples,
            tail: None,
            warnings: vec![NOT_STABILIZED.to_string()],
        });
    };
    let degrees = veronese_degrees(f, stable.period)?;
    let residues: BTreeSet<usize> = (0..stable.period).collect();
    match fit_tail(&samples, stable.period, &residues, &degrees, a.window) {
        Err(reason) => Ok(VFunctionOutcome {
            samples,
            tail: None,
            warnings: vec![format!("tail not detected within kmax: {reason}")],
        }),
        Ok(tail) => {
            if f.kind == FiltrationKind::Powers {
                let alpha = f.base.alpha()? as i64;
                for b in &tail.branches {
                    if b.slope != alpha {
                        return Err(Error::Internal(format!(
                            "power-filtration v-slope {} differs from alpha {}",
                            b.slope, alpha
                        )));
                    }
                }
            }
            Ok(VFunctionOutcome {
                samples,
                tail: Some(tail),
                warnings: vec![],
            })
        }
    }
}

/// The v-function k -> v(I_k) over the window, with its quasi-linear tail.
/// For power filtrations a fitted slope different from alpha(base) is an
/// internal error: it can only mean a computation bug, so the run is
/// falsified rather than reported.
pub fn v_function(f: &Filtration, window: Window) -> Result<VFunctionOutcome> {
    let a = analyze(f, window)?;
    v_function_inner(f, &a)
}

fn v_function_p_inner(
    f: &Filtration,
    a: &Analysis,
    p: &MonomialPrime,
) -> Result<VFunctionOutcome> {
    let mut samples = Vec::new();
    for k in 1..=a.window.kmax {
        if a.ass[k - 1].contains(p) {
            let r = v_at_prime(&a.levels[k - 1], p, &a.ass[k - 1])?;
            samples.push(VSample { k, value: r.value });
        }
    }
    let Some(stable) = &a.stable else {
        return Ok(VFunctionOutcome {
            samples,
            tail: None,
            warnings: vec![NOT_STABILIZED.to_string()],
        });
    };
    if !stable.primes.contains(p) {
        return Err(Error::NotAssociatedPrime(p.to_string()));
    }
    let residues: BTreeSet<usize> = (0..stable.period)
        .filter(|&j| stable.per_residue[j].contains(p))
        .collect();
    let degrees = veronese_degrees(f, stable.period)?;
    match fit_tail(&samples, stable.period, &residues, &degrees, a.window) {
        Err(reason) => Ok(VFunctionOutcome {
            samples,
            tail: None,
            warnings: vec![format!("tail not detected within kmax: {reason}")],
        }),
        Ok(tail) => Ok(VFunctionOutcome {
            samples,
            tail: Some(tail),
            warnings: vec![],
        }),
    }
}

/// The v_p-function k -> v_p(I_k), sampled at the levels where p is
/// associated; requires p to lie in the detected stable set.
pub fn v_function_p(
    f: &Filtration,
    p: &MonomialPrime,
    window: Window,
) -> Result<VFunctionOutcome> {
    if p.ambient() != f.ambient() {
        return Err(Error::DimensionMismatch {
            left: f.ambient(),
            right: p.ambient(),
        });
    }
    let a = analyze(f, window)?;
    v_function_p_inner(f, &a, p)
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeIndex {
    pub prime: MonomialPrime,
    pub index: usize,
}

/// Window-bounded stability indices of a power filtration.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityIndices {
    #[serde(rename = "vstab")]
    pub v_stab: Option<usize>,
    #[serde(rename = "astab")]
    pub a_stab: Option<usize>,
    #[serde(rename = "vPstab")]
    pub v_p_stab: Vec<PrimeIndex>,
    #[serde(rename = "astabP")]
    pub a_stab_p: Vec<PrimeIndex>,
    pub caveat: String,
    pub window: Window,
    pub warnings: Vec<String>,
}

pub fn stability_indices(f: &Filtration, window: Window) -> Result<StabilityIndices> {
    if f.kind != FiltrationKind::Powers {
        return Err(Error::Unsupported(
            "stability indices are defined for power filtrations".to_string(),
        ));
    }
    let a = analyze(f, window)?;
    let caveat = "empirical (window-bounded)".to_string();
    let Some(stable) = a.stable.clone() else {
        return Ok(StabilityIndices {
            v_stab: None,
            a_stab: None,
            v_p_stab: vec![],
            a_stab_p: vec![],
            caveat,
            window,
            warnings: vec![NOT_STABILIZED.to_string()],
        });
    };
    let vf = v_function_inner(f, &a)?;
    let mut warnings = vf.warnings.clone();
    let v_stab = vf.tail.as_ref().map(|t| t.stabilized_at);

    let mut v_p_stab = Vec::new();
    let mut a_stab_p = Vec::new();
    for p in &stable.primes {
        let vp = v_function_p_inner(f, &a, p)?;
        match vp.tail {
            Some(t) => v_p_stab.push(PrimeIndex {
                prime: p.clone(),
                index: t.stabilized_at,
            }),
            None => warnings.extend(
                vp.warnings
                    .iter()
                    .map(|w| format!("v_p tail for {p}: {w}")),
            ),
        }
        let mut first = window.kmax + 1;
        for k in (1..=window.kmax).rev() {
            if a.ass[k - 1].contains(p) {
                first = k;
            } else {
                break;
            }
        }
        a_stab_p.push(PrimeIndex {
            prime: p.clone(),
            index: first,
        });
    }
    Ok(StabilityIndices {
        v_stab,
        a_stab: Some(stable.stabilized_at),
        v_p_stab,
        a_stab_p,
        caveat,
        window,
        warnings,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReesImage {
    pub var: String,
    pub image: String,
    pub bidegree: (u64, u64),
}

/// Presentation data of the Rees map: variables, images y_j -> f_j t, and
/// bidegrees. The kernel is not computed.
#[derive(Debug, Clone, Serialize)]
pub struct ReesMapDescription {
    #[serde(rename = "sourceVars")]
    pub source_vars: Vec<String>,
    #[serde(rename = "targetVars")]
    pub target_vars: Vec<String>,
    pub images: Vec<ReesImage>,
    #[serde(rename = "xBidegree")]
    pub x_bidegree: (u64, u64),
}

pub fn rees_map(ideal: &MonomialIdeal) -> Result<ReesMapDescription> {
    if ideal.is_unit() || ideal.is_zero() {
        return Err(Error::ReesMapUndefined);
    }
    let n = ideal.ambient();
    let mut source_vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    source_vars.extend((1..=ideal.gens().len()).map(|j| format!("y{j}")));
    let mut target_vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    target_vars.push("t".to_string());
    let images = ideal
        .gens()
        .iter()
        .enumerate()
        .map(|(j, g)| ReesImage {
            var: format!("y{}", j + 1),
            image: format!("{g}*t"),
            bidegree: (g.degree(), 1),
        })
        .collect();
    Ok(ReesMapDescription {
        source_vars,
        target_vars,
        images,
        x_bidegree: (1, 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::testutil::{ev, ideal, prime};

    fn triangle() -> MonomialIdeal {
        ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
    }

    fn w(kmax: usize) -> Window {
        Window {
            kmax,
            ..Window::default()
        }
    }

    #[test]
    fn filtration_axioms_hold_on_samples() {
        let f = Filtration::powers(triangle());
        let g = Filtration::closure_powers(ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        for h in [&f, &g] {
            assert!(h.ideal(0).unwrap().is_unit());
            for k in 0..=4usize {
                let a = h.ideal(k).unwrap();
                let b = h.ideal(k + 1).unwrap();
                assert!(b.is_subset_of(&a).unwrap(), "axiom (ii) at k={k}");
            }
            for k in 1..=3usize {
                for l in 1..=3usize {
                    let prod = h.ideal(k).unwrap().product(&h.ideal(l).unwrap()).unwrap();
                    assert!(
                        prod.is_subset_of(&h.ideal(k + l).unwrap()).unwrap(),
                        "axiom (iii) at k={k}, l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn ass_of_level_examples() {
        let f = Filtration::powers(triangle());
        assert_eq!(ass_of_level(&f, 1).unwrap().len(), 3);
        let at_two = ass_of_level(&f, 2).unwrap();
        assert_eq!(at_two.len(), 4);
        assert!(at_two.contains(&MonomialPrime::full(3)));

        let fx = Filtration::powers(ideal(1, &[&[1]]));
        for k in 1..=5 {
            assert_eq!(ass_of_level(&fx, k).unwrap().len(), 1, "k = {k}");
        }
        assert!(ass_of_level(&fx, 0).is_err());
    }

    #[test]
    fn stable_primes_examples() {
        let f = Filtration::powers(triangle());
        let out = stable_primes(&f, w(8)).unwrap();
        let stable = out.stable.unwrap();
        assert_eq!(stable.primes.len(), 4);
        assert!(stable.primes.contains(&MonomialPrime::full(3)));
        assert_eq!(stable.stabilized_at, 2);
        assert_eq!(stable.period, 1);
        assert_eq!(out.levels[0].primes.len(), 3);
        assert_eq!(out.levels[1].primes.len(), 4);

        let f = Filtration::powers(ideal(1, &[&[1]]));
        let out = stable_primes(&f, w(5)).unwrap();
        let stable = out.stable.unwrap();
        assert_eq!(stable.primes.len(), 1);
        assert_eq!(stable.stabilized_at, 1);
    }

    #[test]
    fn stable_max_examples() {
        let f = Filtration::powers(triangle());
        let out = stable_max(&f, w(8)).unwrap();
        let maximal = out.maximal.unwrap();
        assert_eq!(maximal.len(), 1);
        assert!(maximal.contains(&MonomialPrime::full(3)));

        let f = Filtration::powers(ideal(1, &[&[1]]));
        let out = stable_max(&f, w(5)).unwrap();
        assert_eq!(out.maximal.unwrap().len(), 1);
    }

    #[test]
    fn is_stable_prime_examples() {
        let f = Filtration::powers(triangle());
        let check = is_stable_prime(&f, &MonomialPrime::full(3), w(8)).unwrap();
        assert_eq!(check.verdict, Some(true));
        assert!(check.examined.is_some());

        let check = is_stable_prime(&f, &prime(3, &[0, 1]), w(8)).unwrap();
        assert_eq!(check.verdict, Some(true));

        // (x) misses the generator yz entirely.
        let check = is_stable_prime(&f, &prime(3, &[0]), w(8)).unwrap();
        assert_eq!(check.verdict, Some(false));
        assert!(check.examined.is_none());
    }

    #[test]
    fn is_stable_prime_agrees_with_stable_set_membership() {
        // The localization route must match direct membership in the
        // detected stable set, over every candidate prime.
        let filtrations = [
            Filtration::powers(triangle()),
            Filtration::powers(ideal(2, &[&[3, 0], &[2, 1], &[0, 2]])),
            Filtration::closure_powers(ideal(2, &[&[2, 0], &[0, 2]])).unwrap(),
            Filtration::closure_powers(ideal(2, &[&[3, 0], &[0, 2]])).unwrap(),
        ];
        for f in &filtrations {
            let n = f.ambient();
            let stable = stable_primes(f, w(8)).unwrap().stable.unwrap().primes;
            for mask in 1u32..(1 << n) {
                let support: std::collections::BTreeSet<usize> =
                    (0..n).filter(|v| mask >> v & 1 == 1).collect();
                let p = MonomialPrime::new(n, support).unwrap();
                let check = is_stable_prime(f, &p, w(8)).unwrap();
                assert_eq!(
                    check.verdict,
                    Some(stable.contains(&p)),
                    "{} on {p}",
                    f.base()
                );
            }
        }
    }

    #[test]
    fn window_validation() {
        let f = Filtration::powers(triangle());
        let bad = Window {
            kmax: 2,
            w: 3,
            period_max: 4,
        };
        assert!(matches!(
            stable_primes(&f, bad),
            Err(Error::InvalidWindow { .. })
        ));
        let bad = Window {
            kmax: 6,
            w: 1,
            period_max: 4,
        };
        assert!(matches!(
            v_function(&f, bad),
            Err(Error::InvalidWindow { .. })
        ));
    }

    #[test]
    fn soc_component_examples() {
        let f = Filtration::powers(triangle());
        let stable = stable_primes(&f, w(8)).unwrap().stable.unwrap().primes;
        let m = MonomialPrime::full(3);

        let soc = soc_component(&f, &m, 1, &stable).unwrap();
        assert_eq!(soc.alpha_value, Some(3));
        assert_eq!(soc.witness, Some(ev(&[1, 1, 1])));

        // Shifted-index identity with the v-number at the next level, for
        // every stable prime; the minimal primes exercise a non-trivial q.
        for p in &stable {
            for k in 2..=4usize {
                let soc = soc_component(&f, p, k, &stable).unwrap();
                let level = f.ideal(k + 1).unwrap();
                let v = v_at_prime(&level, p, &stable).unwrap();
                assert_eq!(soc.alpha_value, Some(v.value), "prime {p}, k = {k}");
            }
        }

        let fx = Filtration::powers(ideal(1, &[&[1]]));
        let stable = stable_primes(&fx, w(6)).unwrap().stable.unwrap().primes;
        let soc = soc_component(&fx, &prime(1, &[0]), 2, &stable).unwrap();
        assert_eq!(soc.alpha_value, Some(2));
        assert_eq!(soc.witness, Some(ev(&[2])));

        assert!(matches!(
            soc_component(&f, &prime(3, &[0]), 1, &stable),
            Err(Error::NotAssociatedPrime(_))
        ));
    }

    #[test]
    fn v_function_examples() {
        let f = Filtration::powers(triangle());
        let out = v_function(&f, w(8)).unwrap();
        let tail = out.tail.unwrap();
        assert_eq!(tail.period, 1);
        assert_eq!(tail.branches, vec![Branch { residue: 0, slope: 2, intercept: -1 }]);
        assert_eq!(tail.stabilized_at, 1);
        let expected: Vec<u64> = (1..=8).map(|k| 2 * k - 1).collect();
        let got: Vec<u64> = out.samples.iter().map(|s| s.value).collect();
        assert_eq!(got, expected);

        let f = Filtration::powers(ideal(1, &[&[1]]));
        let out = v_function(&f, w(6)).unwrap();
        let tail = out.tail.unwrap();
        assert_eq!((tail.branches[0].slope, tail.branches[0].intercept), (1, -1));
    }

    #[test]
    fn v_function_p_examples() {
        let f = Filtration::powers(triangle());
        let out = v_function_p(&f, &MonomialPrime::full(3), w(8)).unwrap();
        let tail = out.tail.unwrap();
        assert_eq!((tail.branches[0].slope, tail.branches[0].intercept), (2, -1));
        assert_eq!(tail.stabilized_at, 2);
        assert_eq!(out.samples.first().map(|s| s.k), Some(2));

        let f = Filtration::powers(ideal(1, &[&[1]]));
        let out = v_function_p(&f, &prime(1, &[0]), w(6)).unwrap();
        let tail = out.tail.unwrap();
        assert_eq!((tail.branches[0].slope, tail.branches[0].intercept), (1, -1));
    }

    #[test]
    fn tail_prediction_extends_past_window() {
        let f = Filtration::powers(triangle());
        let out = v_function(&f, w(6)).unwrap();
        let tail = out.tail.unwrap();
        let k = tail.stabilized_at + 3 * tail.period;
        let level = f.ideal(k).unwrap();
        let ass = associated_primes(&level).unwrap();
        let v = v_number_with_ass(&level, &ass).unwrap();
        assert_eq!(Some(v.value as i64), tail.predict(k));
    }

    #[test]
    fn stability_indices_examples() {
        let f = Filtration::powers(triangle());
        let idx = stability_indices(&f, w(8)).unwrap();
        assert_eq!(idx.v_stab, Some(1));
        assert_eq!(idx.a_stab, Some(2));
        let m = MonomialPrime::full(3);
        let vm = idx
            .v_p_stab
            .iter()
            .find(|pi| pi.prime == m)
            .expect("m is stable");
        assert_eq!(vm.index, 2);

        let fx = Filtration::powers(ideal(1, &[&[1]]));
        let idx = stability_indices(&fx, w(6)).unwrap();
        assert_eq!(idx.v_stab, Some(1));
        assert_eq!(idx.a_stab, Some(1));

        let g = Filtration::closure_powers(ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert!(stability_indices(&g, w(6)).is_err());
    }

    #[test]
    fn rees_map_examples() {
        let r = rees_map(&ideal(1, &[&[2]])).unwrap();
        assert_eq!(r.images.len(), 1);
        assert_eq!(r.images[0].bidegree, (2, 1));
        assert_eq!(r.images[0].image, "x1^2*t");

        let r = rees_map(&triangle()).unwrap();
        assert_eq!(r.images.len(), 3);
        assert!(r.images.iter().all(|im| im.bidegree == (2, 1)));

        assert!(matches!(
            rees_map(&MonomialIdeal::unit(2)),
            Err(Error::ReesMapUndefined)
        ));
    }

    #[test]
    fn socle_alpha_tracks_v_function_prediction() {
        let samples = [
            ideal(2, &[&[3, 0], &[2, 1], &[0, 2]]),
            ideal(3, &[&[2, 1, 0], &[0, 1, 2], &[1, 0, 1]]),
        ];
        for base in samples {
            let f = Filtration::powers(base.clone());
            let sp = stable_primes(&f, w(8)).unwrap().stable.unwrap();
            for p in &sp.primes {
                let vp = v_function_p(&f, p, w(8)).unwrap();
                let tail = vp.tail.unwrap();
                for k in tail.stabilized_at.max(2)..=6 {
                    let soc = soc_component(&f, p, k - 1, &sp.primes).unwrap();
                    assert_eq!(
                        soc.alpha_value.map(|a| a as i64),
                        tail.predict(k),
                        "{base} at prime {p}, k = {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn levels_are_safe_to_share_across_threads() {
        let f = Filtration::powers(triangle());
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for k in (1..=8usize).rev() {
                        let level = f.ideal(k).unwrap();
                        assert_eq!(level.alpha().unwrap(), 2 * k as u64);
                    }
                });
            }
        });
        // The cache holds one canonical value per level afterwards.
        for k in 1..=8usize {
            assert_eq!(*f.ideal(k).unwrap(), triangle().power(k as u64).unwrap());
        }
    }

    #[test]
    fn closure_filtration_stabilizes() {
        let g = Filtration::closure_powers(ideal(2, &[&[2, 0], &[0, 2]])).unwrap();
        let out = stable_primes(&g, w(8)).unwrap();
        let stable = out.stable.unwrap();
        assert_eq!(stable.period, 1);
        assert!(stable.primes.contains(&MonomialPrime::full(2)));
        let vf = v_function(&g, w(8)).unwrap();
        assert!(vf.tail.is_some());
    }
}
