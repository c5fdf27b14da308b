//! The Lambda algebra: generators, admissible monomials and Adem straightening.
//!
//! At `p = 2` the generators are `λ_i` (`i >= 0`) of degree `i`. At odd `p`
//! they are `ν_i^ε` with `λ_i = ν_i^1` (`i >= 1`) and `μ_i = ν_i^0` (`i >= 0`)
//! of degree `2i(p-1) - ε`. A generator always carries its `ε`; at `p = 2`
//! it is fixed to 1.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::fp::{binom_or_zero, Fp, PrimeContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaGenerator {
    pub index: u32,
    pub epsilon: u8,
}

impl LambdaGenerator {
    pub const fn lambda(index: u32) -> Self {
        Self { index, epsilon: 1 }
    }

    pub const fn mu(index: u32) -> Self {
        Self { index, epsilon: 0 }
    }

    pub fn validate(&self, ctx: &PrimeContext) -> Result<()> {
        match (ctx.is_two(), self.epsilon) {
            (true, 1) => Ok(()),
            (true, _) => Err(Error::InvalidGenerator(format!(
                "{self} does not exist at p = 2"
            ))),
            (false, 0) => Ok(()),
            (false, 1) if self.index >= 1 => Ok(()),
            _ => Err(Error::InvalidGenerator(format!(
                "{self} does not exist at p = {}",
                ctx.p()
            ))),
        }
    }

    pub fn degree(&self, ctx: &PrimeContext) -> i64 {
        if ctx.is_two() {
            self.index as i64
        } else {
            2 * self.index as i64 * (ctx.p() as i64 - 1) - self.epsilon as i64
        }
    }
}

impl fmt::Display for LambdaGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.epsilon {
            0 => write!(f, "M{}", self.index),
            _ => write!(f, "L{}", self.index),
        }
    }
}

/// `g1 g2` is admissible, i.e. not the left side of an Adem relation.
#[inline]
pub fn admissible_pair(g1: LambdaGenerator, g2: LambdaGenerator, ctx: &PrimeContext) -> bool {
    let (a, b) = (g1.index as i64, g2.index as i64);
    if ctx.is_two() {
        b <= 2 * a
    } else {
        b <= ctx.p() as i64 * a - g1.epsilon as i64
    }
}

pub type LambdaWord = SmallVec<[LambdaGenerator; 6]>;

/// A word in the generators, read left to right. Ordered lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaMonomial(pub LambdaWord);

impl LambdaMonomial {
    pub fn empty() -> Self {
        Self(SmallVec::new())
    }

    pub fn new(gens: impl IntoIterator<Item = LambdaGenerator>) -> Self {
        Self(gens.into_iter().collect())
    }

    /// Words in the `λ_i` only, the usual case at `p = 2`.
    pub fn lambdas(indices: &[u32]) -> Self {
        Self::new(indices.iter().map(|&i| LambdaGenerator::lambda(i)))
    }

    pub fn gens(&self) -> &[LambdaGenerator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<LambdaGenerator> {
        self.0.first().copied()
    }

    /// The word with its first letter removed.
    pub fn tail(&self) -> LambdaMonomial {
        Self(self.0.iter().skip(1).copied().collect())
    }

    pub fn prepend(&self, g: LambdaGenerator) -> LambdaMonomial {
        let mut w = LambdaWord::with_capacity(self.0.len() + 1);
        w.push(g);
        w.extend_from_slice(&self.0);
        Self(w)
    }

    pub fn concat(&self, other: &LambdaMonomial) -> LambdaMonomial {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Self(w)
    }

    pub fn degree(&self, ctx: &PrimeContext) -> i64 {
        self.0.iter().map(|g| g.degree(ctx)).sum()
    }

    pub fn validate(&self, ctx: &PrimeContext) -> Result<()> {
        self.0.iter().try_for_each(|g| g.validate(ctx))
    }
}

impl fmt::Display for LambdaMonomial {
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

pub type LambdaElement = Combination<LambdaMonomial>;

pub fn is_admissible(m: &LambdaMonomial, ctx: &PrimeContext) -> bool {
    m.0.windows(2).all(|w| admissible_pair(w[0], w[1], ctx))
}

/// Right-hand side of the Adem relation for an inadmissible pair, as raw
/// `(first, second, coefficient)` triples. Empty when the sum vanishes.
pub(crate) fn adem_terms(
    g1: LambdaGenerator,
    g2: LambdaGenerator,
    ctx: &PrimeContext,
) -> SmallVec<[(LambdaGenerator, LambdaGenerator, Fp); 8]> {
    debug_assert!(!admissible_pair(g1, g2, ctx));
    let mut out = SmallVec::new();
    let (a, b) = (g1.index as i64, g2.index as i64);
    let n = a + b;
    if ctx.is_two() {
        for i in 1..=n {
            let c = binom_or_zero(b - i - 1, i - 2 * a - 1, ctx);
            if !c.is_zero() {
                out.push((
                    LambdaGenerator::lambda((n - i) as u32),
                    LambdaGenerator::lambda(i as u32),
                    c,
                ));
            }
        }
        return out;
    }
    let p = ctx.p() as i64;
    let e = g2.epsilon as i64;
    if g1.epsilon == 1 {
        for i in 0..=n {
            let c = binom_or_zero((p - 1) * (b - i) - e, i - p * a, ctx);
            if !c.is_zero() {
                let c = ctx.mul(ctx.sign(i + a + e), c);
                out.push((
                    LambdaGenerator {
                        index: (n - i) as u32,
                        epsilon: g2.epsilon,
                    },
                    LambdaGenerator::lambda(i as u32),
                    c,
                ));
            }
            if e == 0 {
                let c = binom_or_zero((p - 1) * (b - i) - 1, i - p * a, ctx);
                if !c.is_zero() {
                    let c = ctx.mul(ctx.sign(i + a + 1), c);
                    out.push((
                        LambdaGenerator::lambda((n - i) as u32),
                        LambdaGenerator::mu(i as u32),
                        c,
                    ));
                }
            }
        }
    } else {
        for i in 1..=n {
            let c = binom_or_zero((p - 1) * (b - i) - 1, i - p * a - 1, ctx);
            if !c.is_zero() {
                let c = ctx.mul(ctx.sign(i + a), c);
                out.push((
                    LambdaGenerator::mu((n - i) as u32),
                    LambdaGenerator {
                        index: i as u32,
                        epsilon: g2.epsilon,
                    },
                    c,
                ));
            }
        }
    }
    out
}

/// The Adem relation applied to an inadmissible pair.
pub fn adem_expand_pair(
    g1: LambdaGenerator,
    g2: LambdaGenerator,
    ctx: &PrimeContext,
) -> Result<LambdaElement> {
    g1.validate(ctx)?;
    g2.validate(ctx)?;
    if admissible_pair(g1, g2, ctx) {
        return Err(Error::NotApplicable(format!("{g1} {g2} is admissible")));
    }
    let mut out = LambdaElement::zero();
    for (x, y, c) in adem_terms(g1, g2, ctx) {
        out.add_term(LambdaMonomial::new([x, y]), c, ctx);
    }
    Ok(out)
}

/// Memoized straightening engine.
///
/// Normal forms are built by folding a word from the right: every prefix
/// letter is left-multiplied onto an already admissible tail. Left
/// multiplication of a generator onto an admissible monomial is cached; the
/// cache is dropped whenever it grows past its limit.
pub struct LambdaAlgebra {
    ctx: PrimeContext,
    left: DashMap<(LambdaGenerator, LambdaMonomial), Arc<LambdaElement>>,
    limit: usize,
}

impl LambdaAlgebra {
    pub const DEFAULT_CACHE_LIMIT: usize = 200_000;

    pub fn new(ctx: PrimeContext) -> Self {
        Self::with_cache_limit(ctx, Self::DEFAULT_CACHE_LIMIT)
    }

    pub fn with_cache_limit(ctx: PrimeContext, limit: usize) -> Self {
        Self {
            ctx,
            left: DashMap::new(),
            limit,
        }
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    /// `g * m` in admissible form, for admissible `m`.
    pub fn left_multiply(&self, g: LambdaGenerator, m: &LambdaMonomial) -> Arc<LambdaElement> {
        let ctx = &self.ctx;
        match m.first() {
            None => return Arc::new(LambdaElement::basis(m.prepend(g))),
            Some(h) if admissible_pair(g, h, ctx) => {
                return Arc::new(LambdaElement::basis(m.prepend(g)))
            }
            _ => {}
        }
        let key = (g, m.clone());
        if let Some(hit) = self.left.get(&key) {
            return hit.clone();
        }
        let h = m.first().expect("nonempty");
        let tail = m.tail();
        let mut out = LambdaElement::zero();
        for (a, b, c) in adem_terms(g, h, ctx) {
            let inner = self.left_multiply(b, &tail);
            for (w, c2) in inner.iter() {
                let outer = self.left_multiply(a, w);
                out.add_scaled(&outer, ctx.mul(c, *c2), ctx);
            }
        }
        let out = Arc::new(out);
        if self.left.len() >= self.limit {
            self.left.clear();
        }
        self.left.insert(key, out.clone());
        out
    }

    pub fn normalize(&self, word: &LambdaMonomial) -> LambdaElement {
        let ctx = &self.ctx;
        let mut acc = LambdaElement::basis(LambdaMonomial::empty());
        for &g in word.gens().iter().rev() {
            acc = acc.map_linear(ctx, |m| (*self.left_multiply(g, m)).clone());
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// The admissible terms of `word` whose first index is at least `min`.
    ///
    /// Left multiplication by `ν_a` raises the first index by at most `a`, so
    /// partial products that cannot reach `min` are dropped early.
    pub fn normalize_leading_at_least(&self, word: &LambdaMonomial, min: u32) -> LambdaElement {
        let ctx = &self.ctx;
        let gens = word.gens();
        let mut rest: u64 = gens.iter().map(|g| g.index as u64).sum();
        let mut acc = LambdaElement::basis(LambdaMonomial::empty());
        for &g in gens.iter().rev() {
            rest -= g.index as u64;
            acc = acc.map_linear(ctx, |m| {
                let mut out = (*self.left_multiply(g, m)).clone();
                out.retain(|w| w.first().map_or(0, |h| h.index as u64) + rest >= min as u64);
                out
            });
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn normalize_element(&self, x: &LambdaElement) -> LambdaElement {
        x.map_linear(&self.ctx, |m| self.normalize(m))
    }

    pub fn multiply(&self, a: &LambdaElement, b: &LambdaElement) -> LambdaElement {
        let ctx = &self.ctx;
        let mut out = LambdaElement::zero();
        for (x, c1) in a {
            for (y, c2) in b {
                out.add_scaled(&self.normalize(&x.concat(y)), ctx.mul(*c1, *c2), ctx);
            }
        }
        out
    }

    pub fn cache_len(&self) -> usize {
        self.left.len()
    }
}

/// Normal form of a single word (builds a throwaway engine).
pub fn normalize(word: &LambdaMonomial, ctx: &PrimeContext) -> LambdaElement {
    LambdaAlgebra::new(*ctx).normalize(word)
}

pub fn multiply(a: &LambdaElement, b: &LambdaElement, ctx: &PrimeContext) -> LambdaElement {
    LambdaAlgebra::new(*ctx).multiply(a, b)
}

/// Straighten by repeatedly rewriting an inadmissible adjacent pair chosen by
/// `pick` among the candidate positions. No caching; used as a cross-check.
///
/// Panics if the number of rewrites exceeds `(degree + length)^3`.
pub fn straighten_with<F>(word: &LambdaMonomial, ctx: &PrimeContext, mut pick: F) -> LambdaElement
where
    F: FnMut(&[usize]) -> usize,
{
    let budget = {
        let n = (word.degree(ctx).max(0) as u64 + word.len() as u64).max(2);
        n.saturating_mul(n).saturating_mul(n)
    };
    let mut steps = 0u64;
    let mut done = LambdaElement::zero();
    let mut pending = LambdaElement::basis(word.clone());
    while let Some((w, c)) = pending.iter().next_back().map(|(w, c)| (w.clone(), *c)) {
        pending.add_term(w.clone(), ctx.neg(c), ctx);
        let bad: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&t| !admissible_pair(w.0[t], w.0[t + 1], ctx))
            .collect();
        if bad.is_empty() {
            done.add_term(w, c, ctx);
            continue;
        }
        steps += 1;
        assert!(steps <= budget, "straightening budget exhausted on {word}");
        let t = bad[pick(&bad) % bad.len()];
        for (x, y, c2) in adem_terms(w.0[t], w.0[t + 1], ctx) {
            let mut v = w.0.clone();
            v[t] = x;
            v[t + 1] = y;
            pending.add_term(LambdaMonomial(v), ctx.mul(c, c2), ctx);
        }
    }
    done
}

/// Leftmost-pair straightening.
pub fn straighten_leftmost(word: &LambdaMonomial, ctx: &PrimeContext) -> LambdaElement {
    straighten_with(word, ctx, |_| 0)
}

fn generators_up_to_degree(d: i64, ctx: &PrimeContext) -> Vec<LambdaGenerator> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    if ctx.is_two() {
        out.extend((0..=d as u32).map(LambdaGenerator::lambda));
    } else {
        let step = 2 * (ctx.p() as i64 - 1);
        let mut i = 0u32;
        while step * i as i64 - 1 <= d {
            out.push(LambdaGenerator::mu(i));
            if i >= 1 {
                out.push(LambdaGenerator::lambda(i));
            }
            i += 1;
        }
        out.retain(|g| g.degree(ctx) <= d);
        out.sort();
    }
    out
}

/// Admissible monomials of length `s` and degree `d`, in ascending
/// lexicographic order, optionally with leading index at most `cap`.
pub fn admissible_basis(
    s: usize,
    d: i64,
    cap: Option<u32>,
    ctx: &PrimeContext,
) -> Vec<LambdaMonomial> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        s: usize,
        d: i64,
        prev: Option<LambdaGenerator>,
        gens: &[LambdaGenerator],
        cap: Option<u32>,
        ctx: &PrimeContext,
        word: &mut LambdaWord,
        out: &mut Vec<LambdaMonomial>,
    ) {
        if s == 0 {
            if d == 0 {
                out.push(LambdaMonomial(word.clone()));
            }
            return;
        }
        for &g in gens {
            let gd = g.degree(ctx);
            if gd > d {
                continue;
            }
            match prev {
                None => {
                    if cap.is_some_and(|c| g.index > c) {
                        continue;
                    }
                }
                Some(h) => {
                    if !admissible_pair(h, g, ctx) {
                        continue;
                    }
                }
            }
            // remaining letters have nonnegative degree
            if s == 1 && gd != d {
                continue;
            }
            word.push(g);
            go(s - 1, d - gd, Some(g), gens, cap, ctx, word, out);
            word.pop();
        }
    }
    let gens = generators_up_to_degree(d, ctx);
    let mut out = Vec::new();
    go(
        s,
        d,
        None,
        &gens,
        cap,
        ctx,
        &mut LambdaWord::new(),
        &mut out,
    );
    out
}
