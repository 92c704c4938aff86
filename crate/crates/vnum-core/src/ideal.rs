use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::dense::{Grid, GridCtx};
use crate::error::{Error, Result};
use crate::vector::ExponentVector;

/// Cell budget for the dense-grid fast path.
const GRID_BUDGET: usize = 1 << 24;
/// Below this many candidates the plain antichain filter wins over a grid build.
const GRID_MIN_CANDIDATES: usize = 128;

/// A monomial ideal, stored as its unique minimal generating set.
///
/// Generators are pairwise incomparable under componentwise `<=` and kept in
/// lexicographic order, so equal ideals compare and serialize identically.
/// The zero ideal is the empty generator set; the unit ideal is `{1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<ExponentVector>,
}

/// Result of a colon by an ideal, carrying the zero-divisor convention flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonByIdeal {
    pub ideal: MonomialIdeal,
    /// Set when the divisor was the zero ideal and `(I : 0) = R` was returned.
    pub divisor_was_zero: bool,
}

/// Initial degree of a quotient of ideals num/den.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientAlpha {
    Degree { value: u64, witness: ExponentVector },
    ZeroModule,
}

impl MonomialIdeal {
    /// Canonical minimal generating set for the ideal spanned by `gens`.
    /// Idempotent and independent of input order.
    pub fn new(n: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            if g.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: g.ambient(),
                });
            }
        }
        Ok(MonomialIdeal {
            n,
            gens: minimalize(n, gens),
        })
    }

    /// Wraps generators already known to be a lex-sorted minimal antichain.
    pub(crate) fn from_canonical(n: usize, gens: Vec<ExponentVector>) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(
            gens.len() > 512
                || gens
                    .iter()
                    .all(|g| gens.iter().all(|h| g == h || !h.divides(g)))
        );
        MonomialIdeal { n, gens }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![] }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![ExponentVector::zeros(n)],
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    fn check_ambient(&self, other: usize) -> Result<()> {
        if self.n != other {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other,
            });
        }
        Ok(())
    }

    /// Componentwise maximum of the generators, the box the ideal lives in.
    pub(crate) fn max_exponents(&self) -> Vec<u64> {
        let mut maxes = vec![0u64; self.n];
        for g in &self.gens {
            for (m, &e) in maxes.iter_mut().zip(g.entries()) {
                *m = (*m).max(e);
            }
        }
        maxes
    }

    /// Membership of the monomial x^u: some generator divides it.
    pub fn contains(&self, u: &ExponentVector) -> Result<bool> {
        self.check_ambient(u.ambient())?;
        Ok(self.contains_unchecked(u))
    }

    pub(crate) fn contains_unchecked(&self, u: &ExponentVector) -> bool {
        let du = u.degree();
        self.gens
            .iter()
            .any(|g| g.degree() <= du && g.divides(u))
    }

    /// Ideal containment: every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ambient(other.n)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.n)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.n, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.n)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.n));
        }
        let mut cand = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                cand.push(a.checked_add(b)?);
            }
        }
        MonomialIdeal::new(self.n, cand)
    }

    /// k-th power; `power(I, 0)` is the unit ideal by the filtration convention.
    pub fn power(&self, k: u64) -> Result<MonomialIdeal> {
        if k == 0 {
            return Ok(MonomialIdeal::unit(self.n));
        }
        if self.is_zero() || self.is_unit() {
            return Ok(self.clone());
        }
        if self.gens.len() == 1 {
            return MonomialIdeal::new(self.n, vec![self.gens[0].checked_scale(k)?]);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.n)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MonomialIdeal::zero(self.n));
        }
        if let Some(ctx) = grid_ctx(&[self, other]) {
            let mut g = Grid::from_gens(&ctx, self.gens.iter());
            g.and_assign(&Grid::from_gens(&ctx, other.gens.iter()));
            return Ok(MonomialIdeal::from_canonical(self.n, g.min_gens()));
        }
        let mut cand = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                cand.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.n, cand)
    }

    /// The colon `(I : x^u)`, generated by g / gcd(g, x^u).
    pub fn colon_by_monomial(&self, u: &ExponentVector) -> Result<MonomialIdeal> {
        self.check_ambient(u.ambient())?;
        MonomialIdeal::new(self.n, self.gens.iter().map(|g| g.colon_shift(u)).collect())
    }

    /// The colon `(I : J)` as the intersection of the colons by J's generators.
    /// A zero divisor yields the unit ideal, flagged in the result.
    pub fn colon_by_ideal(&self, j: &MonomialIdeal) -> Result<ColonByIdeal> {
        self.check_ambient(j.n)?;
        if j.is_zero() {
            return Ok(ColonByIdeal {
                ideal: MonomialIdeal::unit(self.n),
                divisor_was_zero: true,
            });
        }
        if let Some(ctx) = grid_ctx(&[self]) {
            let base = Grid::from_gens(&ctx, self.gens.iter());
            let mut acc: Option<Grid> = None;
            for g in &j.gens {
                let shifted = base.colon_monomial(g.entries());
                match &mut acc {
                    None => acc = Some(shifted),
                    Some(a) => a.and_assign(&shifted),
                }
            }
            let ideal = MonomialIdeal::from_canonical(self.n, acc.unwrap().min_gens());
            return Ok(ColonByIdeal {
                ideal,
                divisor_was_zero: false,
            });
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in &j.gens {
            let c = self.colon_by_monomial(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(ColonByIdeal {
            ideal: acc.unwrap(),
            divisor_was_zero: false,
        })
    }

    /// The saturation `(I : J^infinity)` by iterated colon, together with the
    /// number of colon iterations until the fixpoint.
    pub fn saturate(&self, j: &MonomialIdeal) -> Result<(MonomialIdeal, usize)> {
        self.check_ambient(j.n)?;
        if j.is_zero() {
            return Err(Error::Unsupported(
                "saturation by the zero ideal".to_string(),
            ));
        }
        if let Some(ctx) = grid_ctx(&[self]) {
            let mut cur = Grid::from_gens(&ctx, self.gens.iter());
            let mut rounds = 0usize;
            loop {
                let mut next: Option<Grid> = None;
                for g in &j.gens {
                    let shifted = cur.colon_monomial(g.entries());
                    match &mut next {
                        None => next = Some(shifted),
                        Some(a) => a.and_assign(&shifted),
                    }
                }
                let next = next.unwrap();
                if next.same_set(&cur) {
                    return Ok((
                        MonomialIdeal::from_canonical(self.n, cur.min_gens()),
                        rounds,
                    ));
                }
                cur = next;
                rounds += 1;
            }
        }
        let mut cur = self.clone();
        let mut rounds = 0usize;
        loop {
            let next = cur.colon_by_ideal(j)?.ideal;
            if next == cur {
                return Ok((cur, rounds));
            }
            cur = next;
            rounds += 1;
        }
    }

    /// The saturation without the iteration count, via
    /// `(I : J^inf) = intersection over generators g of (I : g^inf)`,
    /// where each principal saturation only depends on the support of g.
    /// On the grid a principal saturation is a single top-clamp shift.
    pub(crate) fn saturation_total(&self, j: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(j.n)?;
        if j.is_zero() {
            return Err(Error::Unsupported(
                "saturation by the zero ideal".to_string(),
            ));
        }
        let mut supports: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in &j.gens {
            supports.insert(g.support().collect());
        }
        // Supersets are redundant: a larger support saturates to a larger
        // ideal, which the smaller one's term already cuts down.
        let minimal: Vec<&Vec<usize>> = supports
            .iter()
            .filter(|s| {
                !supports
                    .iter()
                    .any(|t| t.len() < s.len() && t.iter().all(|v| s.contains(v)))
            })
            .collect();
        if let Some(ctx) = grid_ctx(&[self]) {
            let base = Grid::from_gens(&ctx, self.gens.iter());
            let mut acc: Option<Grid> = None;
            for s in &minimal {
                let mut shift = vec![0u64; self.n];
                for &v in s.iter() {
                    shift[v] = u64::MAX;
                }
                let shifted = base.colon_monomial(&shift);
                match &mut acc {
                    None => acc = Some(shifted),
                    Some(a) => a.and_assign(&shifted),
                }
            }
            let acc = acc.expect("j is non-zero");
            return Ok(MonomialIdeal::from_canonical(self.n, acc.min_gens()));
        }
        let mut acc: Option<MonomialIdeal> = None;
        for s in &minimal {
            let projected: Vec<ExponentVector> = self
                .gens
                .iter()
                .map(|g| {
                    let mut e = g.entries().to_vec();
                    for &v in s.iter() {
                        e[v] = 0;
                    }
                    ExponentVector::new(e).expect("zeroing entries cannot overflow")
                })
                .collect();
            let part = MonomialIdeal::new(self.n, projected)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.expect("j is non-zero"))
    }

    /// Initial degree: the least degree of a minimal generator.
    pub fn alpha(&self) -> Result<u64> {
        self.gens
            .iter()
            .map(|g| g.degree())
            .min()
            .ok_or(Error::AlphaOfZeroIdeal)
    }
}

/// Initial degree of the module num/den for ideals `den <= num`.
///
/// Because den is an ideal, a minimal-degree monomial of num \ den is always
/// witnessed by a minimal generator of num: any monomial of num is a multiple
/// of a generator, and if the generator lay in den so would the multiple.
pub fn quotient_alpha(num: &MonomialIdeal, den: &MonomialIdeal) -> Result<QuotientAlpha> {
    if num.ambient() != den.ambient() {
        return Err(Error::DimensionMismatch {
            left: num.ambient(),
            right: den.ambient(),
        });
    }
    if !den.is_subset_of(num)? {
        return Err(Error::ContainmentViolation);
    }
    let mut best: Option<&ExponentVector> = None;
    for g in num.gens() {
        if best.is_some_and(|b| b.degree() <= g.degree()) {
            continue;
        }
        if !den.contains_unchecked(g) {
            best = Some(g);
        }
    }
    Ok(match best {
        Some(w) => QuotientAlpha::Degree {
            value: w.degree(),
            witness: w.clone(),
        },
        None => QuotientAlpha::ZeroModule,
    })
}

/// Grid context covering all the given ideals, when the box fits the budget.
pub(crate) fn grid_ctx(ideals: &[&MonomialIdeal]) -> Option<GridCtx> {
    let n = ideals.first()?.ambient();
    let mut maxes = vec![0u64; n];
    for i in ideals {
        debug_assert_eq!(i.ambient(), n);
        for (m, e) in maxes.iter_mut().zip(i.max_exponents()) {
            *m = (*m).max(e);
        }
    }
    GridCtx::new(&maxes, GRID_BUDGET)
}

/// Reduces a raw generator list to the canonical minimal antichain.
fn minimalize(n: usize, mut cand: Vec<ExponentVector>) -> Vec<ExponentVector> {
    cand.sort_unstable();
    cand.dedup();
    if cand.len() <= 1 {
        return cand;
    }
    // Equigenerated sets are antichains after dedup: a strict divisor has
    // strictly smaller degree.
    let d0 = cand[0].degree();
    if cand.iter().all(|g| g.degree() == d0) {
        return cand;
    }
    if cand.len() >= GRID_MIN_CANDIDATES {
        let mut maxes = vec![0u64; n];
        for g in &cand {
            for (m, &e) in maxes.iter_mut().zip(g.entries()) {
                *m = (*m).max(e);
            }
        }
        if let Some(ctx) = GridCtx::new(&maxes, GRID_BUDGET) {
            return Grid::from_gens(&ctx, cand.iter()).min_gens();
        }
    }
    let mut by_degree: Vec<&ExponentVector> = cand.iter().collect();
    by_degree.sort_by_key(|g| g.degree());
    let mut kept: Vec<&ExponentVector> = Vec::new();
    for g in by_degree {
        if !kept.iter().any(|k| k.divides(g)) {
            kept.push(g);
        }
    }
    let mut out: Vec<ExponentVector> = kept.into_iter().cloned().collect();
    out.sort_unstable();
    out
}

impl fmt::Display for MonomialIdeal {
    /// Canonical text form: comma-separated monomials, `0` for the zero ideal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A monomial prime ideal `(x_i : i in support)`, stored by variable support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialPrime {
    n: usize,
    support: BTreeSet<usize>,
}

impl MonomialPrime {
    /// From 0-based variable indices; the support must be non-empty.
    pub fn new(n: usize, support: BTreeSet<usize>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptyPrime);
        }
        if let Some(&bad) = support.iter().find(|&&i| i >= n) {
            return Err(Error::VariableOutOfRange {
                index: bad + 1,
                ambient: n,
            });
        }
        Ok(MonomialPrime { n, support })
    }

    /// From 1-based indices as they appear in the CLI and JSON surfaces.
    pub fn from_one_based(n: usize, indices: &[usize]) -> Result<Self> {
        let mut support = BTreeSet::new();
        for &i in indices {
            if i == 0 {
                return Err(Error::VariableOutOfRange {
                    index: 0,
                    ambient: n,
                });
            }
            support.insert(i - 1);
        }
        MonomialPrime::new(n, support)
    }

    /// The graded maximal ideal (x_1, ..., x_n).
    pub fn full(n: usize) -> Self {
        MonomialPrime {
            n,
            support: (0..n).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn height(&self) -> usize {
        self.support.len()
    }

    pub fn is_full(&self) -> bool {
        self.support.len() == self.n
    }

    pub fn contains_prime(&self, other: &MonomialPrime) -> bool {
        other.support.is_subset(&self.support)
    }

    pub fn strictly_contains(&self, other: &MonomialPrime) -> bool {
        self.contains_prime(other) && self.support.len() > other.support.len()
    }

    /// The prime as a monomial ideal generated by its variables.
    pub fn as_ideal(&self) -> MonomialIdeal {
        let gens = self
            .support
            .iter()
            .map(|&i| ExponentVector::unit(self.n, i))
            .collect();
        MonomialIdeal::new(self.n, gens).expect("unit vectors share the ambient length")
    }
}

impl Serialize for MonomialPrime {
    /// Sorted 1-based index list, the wire form for prime sets.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.support.len()))?;
        for &i in &self.support {
            seq.serialize_element(&(i + 1))?;
        }
        seq.end()
    }
}

impl fmt::Display for MonomialPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|i| format!("x{}", i + 1)).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    pub fn ev(e: &[u64]) -> ExponentVector {
        ExponentVector::new(e.to_vec()).unwrap()
    }

    pub fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    pub fn prime(n: usize, vars: &[usize]) -> MonomialPrime {
        MonomialPrime::new(n, vars.iter().copied().collect()).unwrap()
    }
}
