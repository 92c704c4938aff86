//! Dense bit-grid engine for monomial ideals with small exponent boxes.
//!
//! A monomial ideal whose minimal generators lie in the box `[0, L]` is an
//! upward-closed subset of the finite grid `prod [0, L_i]`, and is fully
//! determined by its restriction to that box. On the grid, intersection is
//! bitwise AND, the colon by a monomial is a clamped coordinate shift, and
//! minimal generators are the cells whose lower neighbours all lie outside
//! the set. Operations dispatch here whenever the box volume fits the cell
//! budget; the generator-based route in `ideal` handles everything else.

use crate::vector::ExponentVector;

/// Shared box geometry. Every grid in one computation uses the same context,
/// so bit-level operations line up cell by cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GridCtx {
    dims: Vec<usize>,
    strides: Vec<usize>,
    cells: usize,
}

impl GridCtx {
    /// Box covering exponents `0..=maxes[i]` per axis, or `None` when the
    /// cell count exceeds `budget`.
    pub(crate) fn new(maxes: &[u64], budget: usize) -> Option<GridCtx> {
        let mut dims = Vec::with_capacity(maxes.len());
        let mut cells: usize = 1;
        for &m in maxes {
            let d = usize::try_from(m).ok()?.checked_add(1)?;
            cells = cells.checked_mul(d)?;
            if cells > budget {
                return None;
            }
            dims.push(d);
        }
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Some(GridCtx {
            dims,
            strides,
            cells,
        })
    }

    /// Index of the componentwise clamp of `u` into the box.
    fn clamped_index(&self, u: &[u64]) -> usize {
        let mut idx = 0;
        for (i, &e) in u.iter().enumerate() {
            let c = (self.dims[i] - 1).min(usize::try_from(e).unwrap_or(usize::MAX));
            idx += c * self.strides[i];
        }
        idx
    }

    /// Visit every cell in ascending index order (lexicographic on coords).
    fn sweep(&self, mut f: impl FnMut(usize, &[usize])) {
        let n = self.dims.len();
        let mut coords = vec![0usize; n];
        for idx in 0..self.cells {
            f(idx, &coords);
            for v in (0..n).rev() {
                coords[v] += 1;
                if coords[v] < self.dims[v] {
                    break;
                }
                coords[v] = 0;
            }
        }
    }
}

/// Bitset over a `GridCtx` box, always upward closed for ideal semantics.
#[derive(Clone)]
pub(crate) struct Grid<'c> {
    ctx: &'c GridCtx,
    words: Vec<u64>,
}

impl<'c> Grid<'c> {
    pub(crate) fn empty(ctx: &'c GridCtx) -> Self {
        Grid {
            ctx,
            words: vec![0u64; ctx.cells.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, idx: usize) {
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    /// Builds the upward closure of the given generators.
    pub(crate) fn from_gens<'a>(
        ctx: &'c GridCtx,
        gens: impl Iterator<Item = &'a ExponentVector>,
    ) -> Self {
        let mut g = Grid::empty(ctx);
        for gen in gens {
            debug_assert!(gen
                .entries()
                .iter()
                .zip(&ctx.dims)
                .all(|(&e, &d)| (e as usize) < d));
            g.set(ctx.clamped_index(gen.entries()));
        }
        g.close_upward();
        g
    }

    /// Marks every cell above an already-marked one. Visiting cells in
    /// ascending index order ensures lower neighbours are final first.
    pub(crate) fn close_upward(&mut self) {
        let ctx = self.ctx;
        let mut bits = std::mem::take(&mut self.words);
        ctx.sweep(|idx, coords| {
            if bits[idx / 64] >> (idx % 64) & 1 == 1 {
                return;
            }
            for (v, &c) in coords.iter().enumerate() {
                if c > 0 {
                    let below = idx - ctx.strides[v];
                    if bits[below / 64] >> (below % 64) & 1 == 1 {
                        bits[idx / 64] |= 1 << (idx % 64);
                        break;
                    }
                }
            }
        });
        self.words = bits;
    }

    pub(crate) fn and_assign(&mut self, other: &Grid<'_>) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub(crate) fn same_set(&self, other: &Grid<'_>) -> bool {
        self.words == other.words
    }

    /// Membership of an arbitrary point, clamped into the box. Sound because
    /// generators lie inside the box and membership only compares against
    /// generator exponents.
    #[cfg(test)]
    pub(crate) fn contains_point(&self, u: &[u64]) -> bool {
        self.get(self.ctx.clamped_index(u))
    }

    /// Colon by the monomial x^b: out(u) = self(clamp(u + b)).
    pub(crate) fn colon_monomial(&self, b: &[u64]) -> Grid<'c> {
        let ctx = self.ctx;
        let mut out = Grid::empty(ctx);
        ctx.sweep(|idx, coords| {
            let mut src = idx;
            for v in 0..ctx.dims.len() {
                if b[v] > 0 {
                    let lifted =
                        (coords[v] as u64).saturating_add(b[v]).min((ctx.dims[v] - 1) as u64);
                    src += (lifted as usize - coords[v]) * ctx.strides[v];
                }
            }
            if self.get(src) {
                out.set(idx);
            }
        });
        out
    }

    /// Minimal generators: member cells with no member directly below.
    /// The ascending sweep yields them already in canonical lex order.
    pub(crate) fn min_gens(&self) -> Vec<ExponentVector> {
        let ctx = self.ctx;
        let mut gens = Vec::new();
        ctx.sweep(|idx, coords| {
            if !self.get(idx) {
                return;
            }
            for (v, &c) in coords.iter().enumerate() {
                if c > 0 && self.get(idx - ctx.strides[v]) {
                    return;
                }
            }
            gens.push(
                ExponentVector::new(coords.iter().map(|&c| c as u64).collect())
                    .expect("box coordinates cannot overflow"),
            );
        });
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(e: &[u64]) -> ExponentVector {
        ExponentVector::new(e.to_vec()).unwrap()
    }

    #[test]
    fn closure_and_min_gens_roundtrip() {
        let ctx = GridCtx::new(&[3, 3], 1 << 20).unwrap();
        let gens = [ev(&[2, 0]), ev(&[1, 1]), ev(&[2, 1])];
        let g = Grid::from_gens(&ctx, gens.iter());
        assert!(g.contains_point(&[3, 2]));
        assert!(!g.contains_point(&[0, 3]));
        // (2,1) is redundant: divisible by both (2,0) and (1,1).
        assert_eq!(g.min_gens(), vec![ev(&[1, 1]), ev(&[2, 0])]);
    }

    #[test]
    fn clamped_membership_beyond_box() {
        let ctx = GridCtx::new(&[2, 2], 1 << 20).unwrap();
        let g = Grid::from_gens(&ctx, [ev(&[2, 0])].iter());
        assert!(g.contains_point(&[100, 0]));
        assert!(!g.contains_point(&[1, 100]));
    }

    #[test]
    fn colon_shift_matches_definition() {
        // ((x^2 y) : y) = (x^2)
        let ctx = GridCtx::new(&[2, 1], 1 << 20).unwrap();
        let g = Grid::from_gens(&ctx, [ev(&[2, 1])].iter());
        let c = g.colon_monomial(&[0, 1]);
        assert_eq!(c.min_gens(), vec![ev(&[2, 0])]);
    }
}
