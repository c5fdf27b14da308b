//! Matrices over `F_p` with rank and kernel computation.
//!
//! Storage is by sparse columns: the differential matrices here are very
//! sparse and close to triangular, so elimination on the column vectors,
//! pivoting on the largest row index, produces almost no fill.

use std::collections::HashMap;

use crate::fp::{Fp, PrimeContext};

/// Sparse vector with strictly increasing indices and nonzero entries.
pub type SparseVec = Vec<(usize, Fp)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

/// `x - f y`, both sorted.
fn axpy(x: &SparseVec, f: Fp, y: &SparseVec, ctx: &PrimeContext) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let take_x = b >= y.len() || (a < x.len() && x[a].0 < y[b].0);
        let take_y = a >= x.len() || (b < y.len() && y[b].0 < x[a].0);
        if take_x {
            out.push(x[a]);
            a += 1;
        } else if take_y {
            out.push((y[b].0, ctx.neg(ctx.mul(f, y[b].1))));
            b += 1;
        } else {
            let v = ctx.sub(x[a].1, ctx.mul(f, y[b].1));
            if !v.is_zero() {
                out.push((x[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Incremental column echelon form keyed by each pivot's largest row index.
struct Echelon<'a> {
    ctx: &'a PrimeContext,
    pivots: HashMap<usize, SparseVec>,
}

impl<'a> Echelon<'a> {
    fn new(ctx: &'a PrimeContext) -> Self {
        Self {
            ctx,
            pivots: HashMap::new(),
        }
    }

    /// Reduce `v` against the pivots; returns the multiples subtracted and the residue.
    fn reduce(&self, mut v: SparseVec, mut trace: Option<&mut Vec<(usize, Fp)>>) -> SparseVec {
        while let Some(&(r, c)) = v.last() {
            let Some(piv) = self.pivots.get(&r) else {
                break;
            };
            let lead = piv.last().expect("pivot nonempty").1;
            let f = self.ctx.mul(c, self.ctx.inv(lead).expect("nonzero"));
            if let Some(t) = trace.as_deref_mut() {
                t.push((r, f));
            }
            v = axpy(&v, f, piv, self.ctx);
        }
        v
    }

    fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v, None);
        match v.last() {
            None => false,
            Some(&(r, _)) => {
                self.pivots.insert(r, v);
                true
            }
        }
    }
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Build from sparse columns; entries must be sorted by row and nonzero.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)
            && c.iter().all(|e| e.0 < rows && !e.1.is_zero())));
        Self { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<Fp>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[c].push((r, *v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Fp {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.columns[c][i].1,
            Err(_) => Fp::ZERO,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Fp>> {
        let mut out = vec![vec![Fp::ZERO; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn rank(&self, ctx: &PrimeContext) -> usize {
        let mut ech = Echelon::new(ctx);
        self.columns
            .iter()
            .filter(|c| ech.insert((*c).clone()))
            .count()
    }

    /// A basis of the null space, as sparse vectors indexed by column.
    pub fn kernel_basis(&self, ctx: &PrimeContext) -> Vec<SparseVec> {
        // Each pivot remembers which combination of original columns produced it.
        let mut ech = Echelon::new(ctx);
        let mut origin: HashMap<usize, SparseVec> = HashMap::new();
        let mut kernel = Vec::new();
        for (c, col) in self.columns.iter().enumerate() {
            let mut trace = Vec::new();
            let residue = ech.reduce(col.clone(), Some(&mut trace));
            let mut combo: SparseVec = vec![(c, Fp::ONE)];
            for (r, f) in trace {
                combo = axpy(&combo, f, &origin[&r], ctx);
            }
            match residue.last() {
                None => kernel.push(combo),
                Some(&(r, _)) => {
                    ech.pivots.insert(r, residue);
                    origin.insert(r, combo);
                }
            }
        }
        kernel
    }

    pub fn mul_vec(&self, v: &SparseVec, ctx: &PrimeContext) -> Vec<Fp> {
        let mut out = vec![Fp::ZERO; self.rows];
        for &(c, x) in v {
            for &(r, a) in &self.columns[c] {
                out[r] = ctx.add(out[r], ctx.mul(a, x));
            }
        }
        out
    }
}
