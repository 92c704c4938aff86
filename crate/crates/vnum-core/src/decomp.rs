//! Irreducible decomposition, associated primes, and monomial localization.
//!
//! The splitting decomposition follows the classical recursion: pick the
//! first generator with at least two variables in its support, split off the
//! pure power of its lowest variable, and recurse on both summands. The
//! associated primes of a monomial ideal are the radical supports of the
//! irredundant irreducible components; they are computed here by the
//! equivalent localization route — `p` is associated exactly when the
//! maximal ideal of the localized ring has a non-trivial socle — which
//! avoids materializing decompositions of large power ideals. The two routes
//! are checked against each other in the test suite.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::dense::Grid;
use crate::error::{Error, Result};
use crate::ideal::{grid_ctx, MonomialIdeal, MonomialPrime};
use crate::vector::ExponentVector;

const MEMO_CAP: usize = 1 << 16;
const MAX_ASS_VARS: usize = 20;

/// An irreducible monomial ideal: all generators are pure variable powers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    pub ideal: MonomialIdeal,
    pub radical_support: BTreeSet<usize>,
}

fn memo() -> &'static Mutex<HashMap<MonomialIdeal, Arc<Vec<MonomialIdeal>>>> {
    static MEMO: OnceLock<Mutex<HashMap<MonomialIdeal, Arc<Vec<MonomialIdeal>>>>> =
        OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// First generator (canonical order) with >= 2 support variables, paired
/// with its lowest-index variable. `None` means every generator is a pure
/// power and the ideal is irreducible.
fn split_pivot(ideal: &MonomialIdeal) -> Option<(usize, usize)> {
    ideal
        .gens()
        .iter()
        .position(|g| g.support_size() >= 2)
        .map(|idx| {
            let var = ideal.gens()[idx].support().next().unwrap();
            (idx, var)
        })
}

fn decompose_raw(ideal: &MonomialIdeal) -> Result<Arc<Vec<MonomialIdeal>>> {
    if let Some(hit) = memo().lock().unwrap().get(ideal) {
        return Ok(hit.clone());
    }
    let result = match split_pivot(ideal) {
        None => Arc::new(vec![ideal.clone()]),
        Some((idx, var)) => {
            let n = ideal.ambient();
            let g = &ideal.gens()[idx];
            let mut pure = vec![0u64; n];
            pure[var] = g.entry(var);
            let mut rest = g.entries().to_vec();
            rest[var] = 0;

            let with = |part: Vec<u64>| -> Result<MonomialIdeal> {
                let mut gens: Vec<ExponentVector> = ideal.gens().to_vec();
                gens[idx] = ExponentVector::new(part)?;
                MonomialIdeal::new(n, gens)
            };
            let left = decompose_raw(&with(pure)?)?;
            let right = decompose_raw(&with(rest)?)?;
            let mut set: BTreeSet<MonomialIdeal> = left.iter().cloned().collect();
            set.extend(right.iter().cloned());
            Arc::new(set.into_iter().collect())
        }
    };
    let mut table = memo().lock().unwrap();
    if table.len() < MEMO_CAP {
        table.insert(ideal.clone(), result.clone());
    }
    Ok(result)
}

/// Irredundant irreducible decomposition of a proper non-zero monomial ideal.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::DecompositionUndefined);
    }
    let mut comps: Vec<MonomialIdeal> = decompose_raw(ideal)?.as_ref().clone();
    // Drop any component containing the intersection of the others.
    let mut changed = true;
    while changed && comps.len() > 1 {
        changed = false;
        for i in 0..comps.len() {
            let mut others: Option<MonomialIdeal> = None;
            for (j, c) in comps.iter().enumerate() {
                if j == i {
                    continue;
                }
                others = Some(match others {
                    None => c.clone(),
                    Some(a) => a.intersect(c)?,
                });
            }
            if others.unwrap().is_subset_of(&comps[i])? {
                comps.remove(i);
                changed = true;
                break;
            }
        }
    }
    Ok(comps
        .into_iter()
        .map(|ideal| {
            let radical_support = ideal.gens().iter().flat_map(|g| g.support()).collect();
            IrreducibleComponent {
                ideal,
                radical_support,
            }
        })
        .collect())
}

/// An ideal pushed into the smaller ring on the support of a prime, together
/// with the map from new variable positions back to original indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedIdeal {
    pub ideal: MonomialIdeal,
    /// `vars[j]` is the original index of the j-th localized variable.
    pub vars: Vec<usize>,
}

/// Monomial localization: substitute 1 for every variable outside the prime's
/// support and minimalize in the smaller ring.
pub fn monomial_localize(ideal: &MonomialIdeal, p: &MonomialPrime) -> Result<LocalizedIdeal> {
    if ideal.ambient() != p.ambient() {
        return Err(Error::DimensionMismatch {
            left: ideal.ambient(),
            right: p.ambient(),
        });
    }
    let vars: Vec<usize> = p.support().iter().copied().collect();
    let mut gens = Vec::with_capacity(ideal.gens().len());
    for g in ideal.gens() {
        let projected: Vec<u64> = vars.iter().map(|&v| g.entry(v)).collect();
        gens.push(ExponentVector::new(projected)?);
    }
    Ok(LocalizedIdeal {
        ideal: MonomialIdeal::new(vars.len(), gens)?,
        vars,
    })
}

/// Whether the graded maximal ideal is associated to `ideal`, i.e. whether
/// `(I : m)` strictly contains `I`. Any element of the difference has colon
/// exactly `m` because `m` is maximal.
pub(crate) fn maximal_ideal_is_associated(ideal: &MonomialIdeal) -> bool {
    if ideal.is_zero() || ideal.is_unit() || ideal.ambient() == 0 {
        return false;
    }
    let n = ideal.ambient();
    if let Some(ctx) = grid_ctx(&[ideal]) {
        let base = Grid::from_gens(&ctx, ideal.gens().iter());
        let mut acc: Option<Grid> = None;
        let mut shift = vec![0u64; n];
        for v in 0..n {
            shift[v] = 1;
            let shifted = base.colon_monomial(&shift);
            shift[v] = 0;
            match &mut acc {
                None => acc = Some(shifted),
                Some(a) => a.and_assign(&shifted),
            }
        }
        return !acc.unwrap().same_set(&base);
    }
    let m = MonomialPrime::full(n).as_ideal();
    match ideal.colon_by_ideal(&m) {
        Ok(c) => c.ideal != *ideal,
        Err(_) => false,
    }
}

/// The associated primes of a proper non-zero monomial ideal.
///
/// A candidate support must hit the support of every generator (it contains
/// a minimal prime); membership is then decided after monomial localization.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::DecompositionUndefined);
    }
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for g in ideal.gens() {
        union.extend(g.support());
    }
    let vars: Vec<usize> = union.into_iter().collect();
    if vars.len() > MAX_ASS_VARS {
        return Err(Error::Unsupported(format!(
            "associated-prime search over {} variables",
            vars.len()
        )));
    }
    let gen_masks: Vec<u32> = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut m = 0u32;
            for v in g.support() {
                let slot = vars.iter().position(|&w| w == v).unwrap();
                m |= 1 << slot;
            }
            m
        })
        .collect();

    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << vars.len()) {
        if gen_masks.iter().any(|&g| g & mask == 0) {
            continue;
        }
        let support: BTreeSet<usize> = vars
            .iter()
            .enumerate()
            .filter(|(slot, _)| mask >> slot & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        let p = MonomialPrime::new(ideal.ambient(), support)?;
        let localized = monomial_localize(ideal, &p)?;
        if maximal_ideal_is_associated(&localized.ideal) {
            out.insert(p);
        }
    }
    Ok(out)
}
