use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::e1::{check_scope, e1_basis, E1Class, E1Element};
use crate::error::Result;
use crate::fp::PrimeContext;
use crate::lambda::admissible_basis;
use crate::matrix::{FpMatrix, SparseVec};

use super::lin::GoodwillieSs;

/// `d2` from the cell `(l, t, m, s)` to `(l, t - 1, m + 2, s - 1)`.
/// Columns follow `domain`, rows follow `codomain`.
#[derive(Clone, Debug)]
pub struct D2Matrix {
    pub l: i64,
    pub t: i64,
    pub m: usize,
    pub s: usize,
    pub domain: Vec<E1Class>,
    pub codomain: Vec<E1Class>,
    pub matrix: FpMatrix,
}

pub fn d2_matrix(ss: &GoodwillieSs, l: i64, t: i64, m: usize, s: usize) -> Result<D2Matrix> {
    let ctx = ss.ctx();
    let domain = e1_basis(l, t, m, s, ctx)?;
    let codomain = match s {
        0 => Vec::new(),
        _ => e1_basis(l, t - 1, m + 2, s - 1, ctx)?,
    };
    let index: HashMap<&E1Class, usize> =
        codomain.iter().enumerate().map(|(n, c)| (c, n)).collect();
    let mut columns = Vec::with_capacity(domain.len());
    for class in &domain {
        let image = ss.d2_basis(class)?;
        let mut col: SparseVec = image
            .iter()
            .map(|(c, v)| {
                let r = *index
                    .get(c)
                    .unwrap_or_else(|| panic!("d2({class}) has term {c} outside the target cell"));
                (r, *v)
            })
            .collect();
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    let matrix = FpMatrix::from_columns(codomain.len(), columns);
    Ok(D2Matrix {
        l,
        t,
        m,
        s,
        domain,
        codomain,
        matrix,
    })
}

/// One trigraded cell of the third page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PageCell {
    pub t: i64,
    pub m: usize,
    pub s: usize,
    pub dim_e1: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub dim_e3: usize,
}

/// Kernel basis of `d2` on a row-0 cell; nothing maps into row 0.
#[derive(Clone, Debug)]
pub struct Survivors {
    pub t: i64,
    pub s: usize,
    pub basis: Vec<E1Element>,
}

#[derive(Clone, Debug)]
pub struct PageReport {
    pub p: u32,
    pub l: i64,
    pub t_max: i64,
    pub m_max: usize,
    pub s_max: usize,
    pub cells: Vec<PageCell>,
    pub survivors: Vec<Survivors>,
}

impl PageReport {
    /// `t,m,dim_e1,dim_e3`, summed over Lambda length.
    pub fn to_csv(&self) -> String {
        let mut sums: Vec<((i64, usize), (usize, usize))> = Vec::new();
        for c in &self.cells {
            match sums.last_mut() {
                Some((key, acc)) if *key == (c.t, c.m) => {
                    acc.0 += c.dim_e1;
                    acc.1 += c.dim_e3;
                }
                _ => sums.push(((c.t, c.m), (c.dim_e1, c.dim_e3))),
            }
        }
        let mut out = String::from("t,m,dim_e1,dim_e3\n");
        for ((t, m), (e1, e3)) in sums {
            out.push_str(&format!("{t},{m},{e1},{e3}\n"));
        }
        out
    }

    pub fn cell(&self, t: i64, m: usize, s: usize) -> Option<&PageCell> {
        self.cells.iter().find(|c| c.t == t && c.m == m && c.s == s)
    }
}

#[derive(Default)]
struct CellRank {
    dim: usize,
    rank: usize,
    kernel: Option<Vec<E1Element>>,
}

fn cell_rank(
    ss: &GoodwillieSs,
    l: i64,
    t: i64,
    m: usize,
    s: usize,
    kernel: bool,
) -> Result<CellRank> {
    let ctx = ss.ctx();
    let d = d2_matrix(ss, l, t, m, s)?;
    let rank = d.matrix.rank(ctx);
    let kernel = kernel.then(|| {
        d.matrix
            .kernel_basis(ctx)
            .into_iter()
            .map(|v| {
                let mut x = E1Element::zero();
                for (c, f) in v {
                    x.add_term(d.domain[c].clone(), f, ctx);
                }
                x
            })
            .collect()
    });
    Ok(CellRank {
        dim: d.domain.len(),
        rank,
        kernel,
    })
}

/// Dimensions of the third page on `l <= t <= t_max`, even `m <= m_max`, `s <= s_max`.
/// With `kernels`, row-0 cells also carry a kernel basis.
pub fn e3_page(
    ss: &GoodwillieSs,
    l: i64,
    t_max: i64,
    m_max: usize,
    s_max: usize,
    kernels: bool,
) -> Result<PageReport> {
    let ctx = ss.ctx();
    check_scope(l, ctx)?;
    let mut wanted: Vec<(i64, usize, usize)> = Vec::new();
    for t in l..=t_max {
        for m in (0..=m_max).step_by(2) {
            for s in 0..=s_max {
                wanted.push((t, m, s));
                if m >= 2 {
                    wanted.push((t + 1, m - 2, s + 1));
                }
            }
        }
    }
    wanted.sort_unstable();
    wanted.dedup();
    let ranks: Vec<CellRank> = wanted
        .par_iter()
        .map(|&(t, m, s)| {
            let in_window = t <= t_max && s <= s_max;
            cell_rank(ss, l, t, m, s, kernels && m == 0 && in_window)
        })
        .collect::<Result<_>>()?;
    let mut ranks: HashMap<(i64, usize, usize), CellRank> = wanted.into_iter().zip(ranks).collect();
    let mut cells = Vec::new();
    let mut survivors = Vec::new();
    for t in l..=t_max {
        for m in (0..=m_max).step_by(2) {
            for s in 0..=s_max {
                let rank_in = match m {
                    0 => 0,
                    _ => ranks[&(t + 1, m - 2, s + 1)].rank,
                };
                let out = ranks.get_mut(&(t, m, s)).expect("computed");
                cells.push(PageCell {
                    t,
                    m,
                    s,
                    dim_e1: out.dim,
                    rank_out: out.rank,
                    rank_in,
                    dim_e3: (out.dim - out.rank)
                        .checked_sub(rank_in)
                        .expect("image of d2 larger than its kernel"),
                });
                if let Some(basis) = out.kernel.take() {
                    survivors.push(Survivors { t, s, basis });
                }
            }
        }
    }
    Ok(PageReport {
        p: ctx.p(),
        l,
        t_max,
        m_max,
        s_max,
        cells,
        survivors,
    })
}

/// `ι_l ⊗ ν_I` with `I` admissible of length `s`, degree `t - l`, and leading
/// index at most `l` (`p = 2`) or `l / 2` (odd `p`).
pub fn einf_row0_basis(l: i64, t: i64, s: usize, ctx: &PrimeContext) -> Result<Vec<E1Class>> {
    check_scope(l, ctx)?;
    let cap = if ctx.is_two() { l } else { l / 2 };
    Ok(admissible_basis(s, t - l, Some(cap as u32), ctx)
        .into_iter()
        .map(|w| E1Class::row0(l, w))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::LambdaMonomial;

    #[test]
    fn corner_cells() {
        let ctx = PrimeContext::new(2).unwrap();
        let ss = GoodwillieSs::new(ctx);
        let d = d2_matrix(&ss, 0, 0, 0, 0).unwrap();
        assert_eq!((d.matrix.rows(), d.matrix.cols()), (0, 1));
        let d = d2_matrix(&ss, 1, 3, 0, 1).unwrap();
        let c = d
            .domain
            .iter()
            .position(|x| x.lambda == LambdaMonomial::lambdas(&[2]))
            .unwrap();
        assert_eq!(d.codomain[d.matrix.column(c)[0].0].to_string(), "Q2 (i_1)");
        let r = e3_page(&ss, 3, 3, 2, 2, true).unwrap();
        assert_eq!(r.cell(3, 0, 0).unwrap().dim_e3, 1);
        assert_eq!(einf_row0_basis(0, 5, 2, &ctx).unwrap().len(), 0);
        assert_eq!(einf_row0_basis(0, 0, 3, &ctx).unwrap().len(), 1);
        assert_eq!(
            einf_row0_basis(1, 1, 0, &ctx).unwrap(),
            vec![E1Class::row0(1, LambdaMonomial::empty())]
        );
    }
}
