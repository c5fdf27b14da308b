//! Dyer-Lashof-Lie operations: CU sequences, excess, the Adem-type relations
//! and the action on classes `Q^J(ι_l)`.
//!
//! Sequences are stored outermost first: `[Q7, Q3]` is `Q̄^7 Q̄^3`, so `Q̄^3`
//! is applied first.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::fp::{binom_or_zero, Fp, PrimeContext};

/// `β^δ Q̄^j`; `δ = 0` at `p = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DllGenerator {
    pub index: u32,
    pub bockstein: u8,
}

impl DllGenerator {
    pub const fn q(index: u32) -> Self {
        Self {
            index,
            bockstein: 0,
        }
    }

    pub const fn bq(index: u32) -> Self {
        Self {
            index,
            bockstein: 1,
        }
    }

    pub fn validate(&self, ctx: &PrimeContext) -> Result<()> {
        if self.index < 1 {
            return Err(Error::InvalidGenerator(format!(
                "{self}: index must be positive"
            )));
        }
        if self.bockstein > 1 || (ctx.is_two() && self.bockstein != 0) {
            return Err(Error::InvalidGenerator(format!(
                "{self} does not exist at p = {}",
                ctx.p()
            )));
        }
        Ok(())
    }

    pub fn degree(&self, ctx: &PrimeContext) -> i64 {
        if ctx.is_two() {
            self.index as i64 - 1
        } else {
            2 * self.index as i64 * (ctx.p() as i64 - 1) - self.bockstein as i64 - 1
        }
    }

    /// Whether the operation kills every class of degree `q`.
    #[inline]
    pub fn vanishes_on(&self, q: i64, ctx: &PrimeContext) -> bool {
        if ctx.is_two() {
            self.index as i64 <= q
        } else {
            2 * self.index as i64 <= q
        }
    }
}

impl fmt::Display for DllGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bockstein {
            0 => write!(f, "Q{}", self.index),
            _ => write!(f, "bQ{}", self.index),
        }
    }
}

/// Strict CU inequality for an adjacent pair (outer, inner).
#[inline]
pub fn cu_pair(outer: DllGenerator, inner: DllGenerator, ctx: &PrimeContext) -> bool {
    let (j, i) = (outer.index as i64, inner.index as i64);
    if ctx.is_two() {
        j > 2 * i
    } else {
        j > ctx.p() as i64 * i - inner.bockstein as i64
    }
}

pub type DllWord = SmallVec<[DllGenerator; 4]>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DllSequence(pub DllWord);

impl DllSequence {
    pub fn empty() -> Self {
        Self(SmallVec::new())
    }

    pub fn new(gens: impl IntoIterator<Item = DllGenerator>) -> Self {
        Self(gens.into_iter().collect())
    }

    pub fn qs(indices: &[u32]) -> Self {
        Self::new(indices.iter().map(|&j| DllGenerator::q(j)))
    }

    pub fn gens(&self) -> &[DllGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<DllGenerator> {
        self.0.first().copied()
    }

    pub fn tail(&self) -> DllSequence {
        Self(self.0.iter().skip(1).copied().collect())
    }

    pub fn prepend(&self, g: DllGenerator) -> DllSequence {
        let mut w = DllWord::with_capacity(self.0.len() + 1);
        w.push(g);
        w.extend_from_slice(&self.0);
        Self(w)
    }

    pub fn degree(&self, ctx: &PrimeContext) -> i64 {
        self.0.iter().map(|g| g.degree(ctx)).sum()
    }

    pub fn validate(&self, ctx: &PrimeContext) -> Result<()> {
        self.0.iter().try_for_each(|g| g.validate(ctx))
    }
}

impl fmt::Display for DllSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

pub type DllElement = Combination<DllSequence>;

pub fn is_cu(j: &DllSequence, ctx: &PrimeContext) -> bool {
    j.0.windows(2).all(|w| cu_pair(w[0], w[1], ctx))
}

pub fn excess(j: &DllSequence, ctx: &PrimeContext) -> i64 {
    match j.0.last() {
        None => -1,
        Some(g) if ctx.is_two() => g.index as i64,
        Some(g) => 2 * g.index as i64,
    }
}

/// Raw right-hand side of the relation for a non-CU pair.
pub(crate) fn dll_adem_terms(
    outer: DllGenerator,
    inner: DllGenerator,
    ctx: &PrimeContext,
) -> SmallVec<[(DllGenerator, DllGenerator, Fp); 8]> {
    debug_assert!(!cu_pair(outer, inner, ctx));
    let mut out = SmallVec::new();
    let (j, i) = (outer.index as i64, inner.index as i64);
    if ctx.is_two() {
        for m in (2 * i + 1)..(i + j) {
            let c = binom_or_zero(2 * m - 2 * i - j - 1, m - 2 * i - 1, ctx);
            if !c.is_zero() {
                out.push((
                    DllGenerator::q(m as u32),
                    DllGenerator::q((i + j - m) as u32),
                    c,
                ));
            }
        }
        return out;
    }
    let p = ctx.p() as i64;
    let e = outer.bockstein as i64;
    if inner.bockstein == 1 {
        for m in (p * i)..(i + j) {
            let c = binom_or_zero(p * (m - i) - (p - 1) * j + e - 1, m - p * i, ctx);
            if !c.is_zero() {
                out.push((
                    DllGenerator::bq(m as u32),
                    DllGenerator {
                        index: (j + i - m) as u32,
                        bockstein: outer.bockstein,
                    },
                    ctx.mul(ctx.sign(e + 1), c),
                ));
            }
            if e == 0 {
                let c = binom_or_zero(p * (m - i) - (p - 1) * j, m - p * i, ctx);
                if !c.is_zero() {
                    out.push((
                        DllGenerator::q(m as u32),
                        DllGenerator::bq((j + i - m) as u32),
                        c,
                    ));
                }
            }
        }
    } else {
        for m in (p * i + 1)..(i + j) {
            let c = binom_or_zero(p * (m - i) - (p - 1) * j - 1, m - p * i - 1, ctx);
            if !c.is_zero() {
                out.push((
                    DllGenerator {
                        index: m as u32,
                        bockstein: outer.bockstein,
                    },
                    DllGenerator::q((j + i - m) as u32),
                    c,
                ));
            }
        }
    }
    out
}

/// The relation rewriting a non-CU pair. Output words need not be CU.
pub fn dll_adem_expand_pair(
    outer: DllGenerator,
    inner: DllGenerator,
    ctx: &PrimeContext,
) -> Result<DllElement> {
    outer.validate(ctx)?;
    inner.validate(ctx)?;
    if cu_pair(outer, inner, ctx) {
        return Err(Error::NotApplicable(format!("{outer} {inner} is CU")));
    }
    let mut out = DllElement::zero();
    for (a, b, c) in dll_adem_terms(outer, inner, ctx) {
        out.add_term(DllSequence::new([a, b]), c, ctx);
    }
    Ok(out)
}

/// Action of operations on basis classes `Q^J(ι_l)`, memoized.
pub struct DllAlgebra {
    ctx: PrimeContext,
    memo: DashMap<(DllGenerator, DllSequence, i64), Arc<DllElement>>,
}

impl DllAlgebra {
    pub fn new(ctx: PrimeContext) -> Self {
        Self {
            ctx,
            memo: DashMap::new(),
        }
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    /// `g · Q^J(ι_l)` in the CU basis, for `J` CU with excess above `l`.
    /// Generators of index below one act as zero.
    pub fn apply(&self, g: DllGenerator, j: &DllSequence, l: i64) -> Arc<DllElement> {
        let ctx = &self.ctx;
        let q = l + j.degree(ctx);
        if g.index < 1 || g.vanishes_on(q, ctx) {
            return Arc::new(DllElement::zero());
        }
        match j.first() {
            None => return Arc::new(DllElement::basis(j.prepend(g))),
            Some(h) if cu_pair(g, h, ctx) => return Arc::new(DllElement::basis(j.prepend(g))),
            _ => {}
        }
        let key = (g, j.clone(), l);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let h = j.first().expect("nonempty");
        let tail = j.tail();
        let mut out = DllElement::zero();
        for (a, b, c) in dll_adem_terms(g, h, ctx) {
            let inner = self.apply(b, &tail, l);
            for (w, c2) in inner.iter() {
                out.add_scaled(&self.apply(a, w, l), ctx.mul(c, *c2), ctx);
            }
        }
        let out = Arc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// Apply a word innermost first to `ι_l` and expand in the CU basis.
    pub fn normalize(&self, word: &DllSequence, base_degree: i64) -> DllElement {
        let ctx = &self.ctx;
        let mut acc = DllElement::basis(DllSequence::empty());
        for &g in word.gens().iter().rev() {
            acc = acc.map_linear(ctx, |j| (*self.apply(g, j, base_degree)).clone());
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

pub fn dll_normalize(word: &DllSequence, base_degree: i64, ctx: &PrimeContext) -> DllElement {
    DllAlgebra::new(*ctx).normalize(word, base_degree)
}

/// CU sequences of length `h` and degree `d` with excess above `l`, ascending.
pub fn cu_basis(h: usize, d: i64, l: i64, ctx: &PrimeContext) -> Vec<DllSequence> {
    fn go(
        h: usize,
        d: i64,
        l: i64,
        ctx: &PrimeContext,
        inner_first: &mut DllWord,
        out: &mut Vec<DllSequence>,
    ) {
        if h == 0 {
            if d == 0 {
                out.push(DllSequence(inner_first.iter().rev().copied().collect()));
            }
            return;
        }
        let bocksteins: &[u8] = if ctx.is_two() { &[0] } else { &[0, 1] };
        let mut j = 1u32;
        loop {
            let lowest = if ctx.is_two() {
                DllGenerator::q(j).degree(ctx)
            } else {
                DllGenerator::bq(j).degree(ctx)
            };
            if lowest > d {
                break;
            }
            for &b in bocksteins {
                let g = DllGenerator {
                    index: j,
                    bockstein: b,
                };
                let gd = g.degree(ctx);
                if gd > d {
                    continue;
                }
                let ok = match inner_first.last() {
                    None => !g.vanishes_on(l, ctx),
                    Some(&prev) => cu_pair(g, prev, ctx),
                };
                if !ok {
                    continue;
                }
                inner_first.push(g);
                go(h - 1, d - gd, l, ctx, inner_first, out);
                inner_first.pop();
            }
            j += 1;
        }
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    go(h, d, l, ctx, &mut DllWord::new(), &mut out);
    out.sort();
    out
}
