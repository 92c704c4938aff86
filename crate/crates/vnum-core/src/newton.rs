//! Newton polyhedron of a monomial ideal: exact membership tests and minimal
//! generators of integral closures of powers.
//!
//! Membership of a point in the k-fold scaled polyhedron is decided by exact
//! rational LP feasibility (are there lambda_i >= 0 with sum k whose mix of
//! generators fits under the point). Closure powers are enumerated from an
//! exact integer facet description of `conv(A) + R^n_{>=0}`, computed once
//! per generator set: every facet normal is non-negative, is determined by a
//! spanning subset of generator points and coordinate rays, and scales
//! linearly in k. The two membership routes check each other in the tests.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dense::{Grid, GridCtx};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::simplex::simplex_feasible;
use crate::vector::ExponentVector;

const GRID_BUDGET: usize = 1 << 24;
const MAX_FACET_POINTS: usize = 24;

/// An inequality `<w, x> >= c` valid on the scale-1 polyhedron; at scale k
/// the right-hand side becomes `k * c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Facet {
    pub w: Vec<i128>,
    pub c: i128,
}

/// The Newton polyhedron `conv(A) + R^n_{>=0}` of a finite generator set A.
#[derive(Debug)]
pub struct NewtonPolyhedron {
    n: usize,
    points: Vec<ExponentVector>,
    facets: OnceLock<Result<Vec<Facet>>>,
}

impl NewtonPolyhedron {
    pub fn new(n: usize, points: Vec<ExponentVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyNewton);
        }
        for p in &points {
            if p.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: p.ambient(),
                });
            }
        }
        let mut points = points;
        points.sort_unstable();
        points.dedup();
        Ok(NewtonPolyhedron {
            n,
            points,
            facets: OnceLock::new(),
        })
    }

    /// Polyhedron of the minimal generators of a non-zero ideal.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        NewtonPolyhedron::new(ideal.ambient(), ideal.gens().to_vec())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    /// Whether `a` lies in the k-fold scaled polyhedron: exact LP feasibility
    /// of lambda >= 0, sum lambda = k, sum lambda_i A_i <= a componentwise.
    pub fn membership(&self, a: &ExponentVector, k: u64) -> Result<bool> {
        if a.ambient() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: a.ambient(),
            });
        }
        if k == 0 {
            return Err(Error::Unsupported(
                "Newton membership requires k >= 1".to_string(),
            ));
        }
        let columns: Vec<Vec<BigRational>> = self
            .points
            .iter()
            .map(|p| {
                p.entries()
                    .iter()
                    .map(|&e| BigRational::from_integer(BigInt::from(e)))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = a
            .entries()
            .iter()
            .map(|&e| BigRational::from_integer(BigInt::from(e)))
            .collect();
        let total = BigRational::from_integer(BigInt::from(k));
        Ok(simplex_feasible(&columns, &b, &total))
    }

    pub(crate) fn facets(&self) -> Result<&[Facet]> {
        self.facets
            .get_or_init(|| compute_facets(&self.points, self.n))
            .as_ref()
            .map(|f| f.as_slice())
            .map_err(Clone::clone)
    }

    /// Facet-route membership; algebraically equal to `membership` and used
    /// for bulk enumeration.
    pub(crate) fn facet_membership(&self, u: &[u64], k: u64) -> Result<bool> {
        let facets = self.facets()?;
        let k = i128::from(k);
        for f in facets {
            let mut dot: i128 = 0;
            for (w, &e) in f.w.iter().zip(u) {
                let term = w.checked_mul(i128::from(e));
                dot = term
                    .and_then(|t| dot.checked_add(t))
                    .ok_or_else(|| Error::TooLarge("facet evaluation overflow".to_string()))?;
            }
            let rhs = f
                .c
                .checked_mul(k)
                .ok_or_else(|| Error::TooLarge("facet evaluation overflow".to_string()))?;
            if dot < rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimal generators of the integral closure of the k-th power: the
    /// componentwise-minimal lattice points of the k-fold polyhedron.
    ///
    /// Minimal generators lie in the box `a_i <= k * M_i` where `M_i` is the
    /// largest i-th coordinate among generators: beyond it, dropping e_i
    /// stays in the polyhedron, contradicting minimality.
    pub fn closure_power(&self, k: u64) -> Result<MonomialIdeal> {
        if self.points.iter().any(|p| p.is_zero()) {
            return Err(Error::UnitIdealClosure);
        }
        if k == 0 {
            return Err(Error::Unsupported(
                "closure power requires k >= 1".to_string(),
            ));
        }
        let facets = self.facets()?;
        let mut maxes = vec![0u64; self.n];
        for p in &self.points {
            for (m, &e) in maxes.iter_mut().zip(p.entries()) {
                *m = (*m).max(e);
            }
        }
        for m in maxes.iter_mut() {
            *m = m.checked_mul(k).ok_or(Error::ExponentOverflow)?;
        }
        let ctx = GridCtx::new(&maxes, GRID_BUDGET).ok_or_else(|| {
            Error::TooLarge(format!(
                "closure-power box exceeds {GRID_BUDGET} cells at k = {k}"
            ))
        })?;

        let rhs: Vec<i128> = facets
            .iter()
            .map(|f| {
                f.c.checked_mul(i128::from(k))
                    .ok_or_else(|| Error::TooLarge("facet scale overflow".to_string()))
            })
            .collect::<Result<_>>()?;
        // Overflow guard for the incremental dot products over the box.
        for f in facets {
            let mut bound: i128 = 0;
            for (w, &m) in f.w.iter().zip(&maxes) {
                let term = w
                    .abs()
                    .checked_mul(i128::from(m))
                    .ok_or_else(|| Error::TooLarge("facet evaluation overflow".to_string()))?;
                bound = bound
                    .checked_add(term)
                    .ok_or_else(|| Error::TooLarge("facet evaluation overflow".to_string()))?;
            }
        }

        let mut grid = Grid::empty(&ctx);
        let dims: Vec<usize> = maxes.iter().map(|&m| m as usize + 1).collect();
        let cells: usize = dims.iter().product();
        let mut coords = vec![0usize; self.n];
        let mut dots: Vec<i128> = facets.iter().map(|_| 0).collect();
        for idx in 0..cells {
            if dots.iter().zip(&rhs).all(|(d, r)| d >= r) {
                grid.set(idx);
            }
            for v in (0..self.n).rev() {
                coords[v] += 1;
                if coords[v] < dims[v] {
                    for (dot, f) in dots.iter_mut().zip(facets) {
                        *dot += f.w[v];
                    }
                    break;
                }
                coords[v] = 0;
                for (dot, f) in dots.iter_mut().zip(facets) {
                    *dot -= f.w[v] * (dims[v] as i128 - 1);
                }
            }
        }
        Ok(MonomialIdeal::from_canonical(self.n, grid.min_gens()))
    }
}

/// Exact facet description of `conv(points) + R^n_{>=0}`.
///
/// Every facet is supported by a hyperplane through some generator points S
/// and coordinate directions D with |S| + |D| = n; enumerating those subsets
/// and keeping the inequalities valid on all generators yields a (possibly
/// redundant) complete description.
fn compute_facets(points: &[ExponentVector], n: usize) -> Result<Vec<Facet>> {
    if points.len() > MAX_FACET_POINTS {
        return Err(Error::TooLarge(format!(
            "facet enumeration over {} generators",
            points.len()
        )));
    }
    let mut out: BTreeSet<Facet> = BTreeSet::new();
    let m = points.len();
    for s in 1..=n.min(m) {
        for_each_combination(m, s, &mut |subset| {
            let base = subset[0];
            let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n - 1);
            for &i in &subset[1..] {
                rows.push(
                    (0..n)
                        .map(|j| {
                            let d = points[i].entry(j) as i128 - points[base].entry(j) as i128;
                            BigRational::from_integer(BigInt::from(d))
                        })
                        .collect(),
                );
            }
            for_each_combination(n, n - s, &mut |axes| {
                let mut sys = rows.clone();
                for &d in axes {
                    let mut row = vec![BigRational::zero(); n];
                    row[d] = BigRational::from_integer(BigInt::from(1));
                    sys.push(row);
                }
                let Some(mut w) = nullspace_primitive(&sys, n) else {
                    return;
                };
                if w.iter().any(|x| x.is_negative()) {
                    if w.iter().any(|x| x.is_positive()) {
                        return;
                    }
                    for x in w.iter_mut() {
                        *x = -x.clone();
                    }
                }
                let dot = |p: &ExponentVector| -> BigInt {
                    p.entries()
                        .iter()
                        .zip(&w)
                        .map(|(&e, wi)| wi * BigInt::from(e))
                        .sum()
                };
                let c = dot(&points[base]);
                if points.iter().any(|p| dot(p) < c) {
                    return;
                }
                let wi: Option<Vec<i128>> = w.iter().map(|x| x.to_i128()).collect();
                if let (Some(w), Some(c)) = (wi, c.to_i128()) {
                    out.insert(Facet { w, c });
                }
            });
        });
    }
    if out.is_empty() {
        return Err(Error::Internal(
            "facet enumeration produced no inequalities".to_string(),
        ));
    }
    Ok(out.into_iter().collect())
}

/// Primitive integer spanning vector of the nullspace when it has dimension
/// exactly one, `None` otherwise.
fn nullspace_primitive(rows: &[Vec<BigRational>], n: usize) -> Option<Vec<BigInt>> {
    let mut mat: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..n {
        let Some(pr) = (r..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mat[r][col].clone();
        for v in mat[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for j in 0..n {
                    let delta = &f * &mat[r][j];
                    mat[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if n - pivot_cols.len() != 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::from_integer(BigInt::from(1));
    for (row, &col) in pivot_cols.iter().enumerate() {
        x[col] = -mat[row][free].clone();
    }
    // Clear denominators and divide by the gcd.
    let mut scale = BigInt::from(1);
    for v in &x {
        scale = num_integer::lcm(scale, v.denom().clone());
    }
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * &scale / v.denom()).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = num_integer::gcd(g, v.clone());
    }
    if g.is_zero() {
        return None;
    }
    Some(ints.into_iter().map(|v| v / &g).collect())
}

/// Visits every k-element index combination of 0..n in lexicographic order.
fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::testutil::{ev, ideal};

    fn np(points: &[&[u64]]) -> NewtonPolyhedron {
        let n = points[0].len();
        NewtonPolyhedron::new(n, points.iter().map(|p| ev(p)).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let a = np(&[&[2, 0], &[0, 2]]);
        assert!(a.membership(&ev(&[1, 1]), 1).unwrap());
        assert!(a.membership(&ev(&[2, 0]), 1).unwrap());
        assert!(a.membership(&ev(&[4, 0]), 2).unwrap());
        let b = np(&[&[1, 1]]);
        assert!(!b.membership(&ev(&[1, 0]), 1).unwrap());
        assert!(NewtonPolyhedron::new(2, vec![]).is_err());
    }

    #[test]
    fn membership_is_monotone() {
        let a = np(&[&[2, 0], &[0, 2]]);
        assert!(a.membership(&ev(&[1, 2]), 1).unwrap());
        assert!(a.membership(&ev(&[5, 7]), 1).unwrap());
    }

    #[test]
    fn closure_power_examples() {
        let a = np(&[&[2, 0], &[0, 2]]);
        assert_eq!(
            a.closure_power(1).unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        let k2 = a.closure_power(2).unwrap();
        assert_eq!(k2.gens().len(), 5);
        assert!(k2.gens().iter().all(|g| g.degree() == 4));

        let principal = np(&[&[1, 1]]);
        for k in 1..=4 {
            assert_eq!(
                principal.closure_power(k).unwrap(),
                ideal(2, &[&[k, k]])
            );
        }

        assert_eq!(
            np(&[&[0, 0], &[1, 0]]).closure_power(1),
            Err(Error::UnitIdealClosure)
        );
    }

    #[test]
    fn closure_contains_power_and_detects_non_normal() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let np = NewtonPolyhedron::from_ideal(&i).unwrap();
        for k in 1..=4u64 {
            let closure = np.closure_power(k).unwrap();
            let power = i.power(k).unwrap();
            assert!(power.is_subset_of(&closure).unwrap());
        }
        assert_ne!(np.closure_power(1).unwrap(), i);

        let maximal = ideal(2, &[&[1, 0], &[0, 1]]);
        let np = NewtonPolyhedron::from_ideal(&maximal).unwrap();
        for k in 1..=4u64 {
            assert_eq!(np.closure_power(k).unwrap(), maximal.power(k).unwrap());
        }
    }

    #[test]
    fn facet_membership_matches_lp() {
        let samples = [
            np(&[&[2, 0], &[0, 2]]),
            np(&[&[1, 1]]),
            np(&[&[3, 0, 0], &[0, 2, 1], &[1, 0, 2]]),
            np(&[&[2, 1], &[1, 3], &[4, 0]]),
        ];
        for poly in &samples {
            for k in 1..=3u64 {
                let mut mismatches = Vec::new();
                for d in 0..=(4 * k) {
                    crate::vnum::for_each_monomial_of_degree(poly.ambient(), d, &mut |u| {
                        let a = ev(u);
                        let lp = poly.membership(&a, k).unwrap();
                        let facet = poly.facet_membership(u, k).unwrap();
                        if lp != facet {
                            mismatches.push((a.clone(), lp, facet));
                        }
                    });
                }
                assert!(mismatches.is_empty(), "k={k}: {mismatches:?}");
            }
        }
    }

    #[test]
    fn fourier_motzkin_oracle_agrees_with_lp() {
        // Independent route: eliminate the lambda variables directly.
        fn fm_feasible(points: &[ExponentVector], a: &ExponentVector, k: u64) -> bool {
            let m = points.len();
            let n = a.ambient();
            let q = |v: i128| BigRational::from_integer(BigInt::from(v));
            // Rows (coeffs, rhs) meaning sum coeffs * lambda <= rhs.
            let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
            for i in 0..m {
                let mut r = vec![BigRational::zero(); m];
                r[i] = q(-1);
                rows.push((r, BigRational::zero()));
            }
            rows.push((vec![q(1); m], q(k as i128)));
            rows.push((vec![q(-1); m], q(-(k as i128))));
            for j in 0..n {
                let r: Vec<BigRational> =
                    points.iter().map(|p| q(p.entry(j) as i128)).collect();
                rows.push((r, q(a.entry(j) as i128)));
            }
            for var in 0..m {
                let mut next: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
                let (pos, rest): (Vec<_>, Vec<_>) =
                    rows.into_iter().partition(|(c, _)| c[var] > BigRational::zero());
                let (neg, zero): (Vec<_>, Vec<_>) =
                    rest.into_iter().partition(|(c, _)| c[var] < BigRational::zero());
                next.extend(zero);
                for (cu, ru) in &pos {
                    for (cl, rl) in &neg {
                        let fu = -cl[var].clone();
                        let fl = cu[var].clone();
                        let coeffs: Vec<BigRational> = (0..m)
                            .map(|j| &cu[j] * &fu + &cl[j] * &fl)
                            .collect();
                        let rhs = ru * &fu + rl * &fl;
                        next.push((coeffs, rhs));
                    }
                }
                rows = next;
            }
            rows.iter().all(|(_, rhs)| !rhs.is_negative())
        }

        let samples = [
            np(&[&[2, 0], &[0, 2]]),
            np(&[&[1, 1], &[3, 0]]),
            np(&[&[2, 0, 1], &[0, 1, 1], &[1, 2, 0]]),
        ];
        for poly in &samples {
            for k in 1..=2u64 {
                for d in 0..=6u64 {
                    crate::vnum::for_each_monomial_of_degree(poly.ambient(), d, &mut |u| {
                        let a = ev(u);
                        assert_eq!(
                            poly.membership(&a, k).unwrap(),
                            fm_feasible(poly.points(), &a, k),
                            "point {a}, k={k}"
                        );
                    });
                }
            }
        }
    }

    #[test]
    fn closure_generators_are_minimal_members() {
        let polys = [
            np(&[&[2, 0], &[0, 2]]),
            np(&[&[3, 0], &[1, 1], &[0, 2]]),
            np(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]),
        ];
        for poly in &polys {
            for k in 1..=3u64 {
                let closure = poly.closure_power(k).unwrap();
                for g in closure.gens() {
                    assert!(poly.membership(g, k).unwrap(), "generator {g} not in kNP");
                    for v in g.support() {
                        let mut below = g.entries().to_vec();
                        below[v] -= 1;
                        assert!(
                            !poly.membership(&ev(&below), k).unwrap(),
                            "generator {g} not minimal at axis {v}"
                        );
                    }
                }
            }
        }
    }
}
