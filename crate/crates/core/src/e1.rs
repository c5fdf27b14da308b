//! Basis of the renormalized E1-page for `V = Σ^l k`.
//!
//! A class `Q^J(ι_l) ⊗ ν_I` is graded by total degree `t`, row `m = 2|J|`
//! and Lambda length `s = |I|`. Because `λ_0` (and `μ_0` at odd `p`) has
//! degree zero, a `(t, m)` cell is infinite; every enumeration here fixes `s`.

use std::fmt;

use crate::combination::Combination;
use crate::dll::{cu_basis, excess, is_cu, DllSequence};
use crate::error::{Error, Result};
use crate::fp::PrimeContext;
use crate::lambda::{admissible_basis, is_admissible, LambdaMonomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E1Class {
    pub l: i64,
    pub dll: DllSequence,
    pub lambda: LambdaMonomial,
}

impl E1Class {
    pub fn new(l: i64, dll: DllSequence, lambda: LambdaMonomial) -> Self {
        Self { l, dll, lambda }
    }

    /// `ι_l ⊗ ν_I`
    pub fn row0(l: i64, lambda: LambdaMonomial) -> Self {
        Self::new(l, DllSequence::empty(), lambda)
    }

    pub fn t(&self, ctx: &PrimeContext) -> i64 {
        self.l + self.dll.degree(ctx) + self.lambda.degree(ctx)
    }

    pub fn m(&self) -> usize {
        2 * self.dll.len()
    }

    pub fn s(&self) -> usize {
        self.lambda.len()
    }

    /// Basis membership: valid generators, `J` CU with excess above `l`, `I` admissible.
    pub fn validate(&self, ctx: &PrimeContext) -> Result<()> {
        check_scope(self.l, ctx)?;
        self.dll.validate(ctx)?;
        self.lambda.validate(ctx)?;
        if !is_cu(&self.dll, ctx) {
            return Err(Error::InvalidArgument(format!("{} is not CU", self.dll)));
        }
        if !self.dll.is_empty() && excess(&self.dll, ctx) <= self.l {
            return Err(Error::InvalidArgument(format!(
                "{} has excess at most {}",
                self.dll, self.l
            )));
        }
        if !is_admissible(&self.lambda, ctx) {
            return Err(Error::InvalidArgument(format!(
                "{} is not admissible",
                self.lambda
            )));
        }
        Ok(())
    }
}

/// `Q7 Q3 (i_1) * L2 M5`; the `* ...` part is omitted for the empty Lambda word.
impl fmt::Display for E1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.dll.gens() {
            write!(f, "{g} ")?;
        }
        write!(f, "(i_{})", self.l)?;
        if !self.lambda.is_empty() {
            write!(f, " * {}", self.lambda)?;
        }
        Ok(())
    }
}

pub type E1Element = Combination<E1Class>;

/// Rejects negative `l` and, at odd `p`, odd `l`.
pub fn check_scope(l: i64, ctx: &PrimeContext) -> Result<()> {
    if l < 0 {
        return Err(Error::InvalidArgument(format!(
            "generator degree {l} is negative"
        )));
    }
    if ctx.is_odd() && l % 2 != 0 {
        return Err(Error::OutOfScope(format!(
            "odd generator degree {l} at p = {}",
            ctx.p()
        )));
    }
    Ok(())
}

/// Classes of degree `t`, row `m` and Lambda length `s`, in ascending order.
pub fn e1_basis(l: i64, t: i64, m: usize, s: usize, ctx: &PrimeContext) -> Result<Vec<E1Class>> {
    check_scope(l, ctx)?;
    let mut out = Vec::new();
    if !m.is_multiple_of(2) || t < l {
        return Ok(out);
    }
    for dj in 0..=(t - l) {
        let js = cu_basis(m / 2, dj, l, ctx);
        if js.is_empty() {
            continue;
        }
        let is = admissible_basis(s, t - l - dj, None, ctx);
        for j in &js {
            for i in &is {
                out.push(E1Class::new(l, j.clone(), i.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn e1_dimension(l: i64, t: i64, m: usize, s: usize, ctx: &PrimeContext) -> Result<usize> {
    Ok(e1_basis(l, t, m, s, ctx)?.len())
}

/// All classes with Lambda length at most `s_max`.
pub fn e1_basis_upto(
    l: i64,
    t: i64,
    m: usize,
    s_max: usize,
    ctx: &PrimeContext,
) -> Result<Vec<E1Class>> {
    let mut out = Vec::new();
    for s in 0..=s_max {
        out.extend(e1_basis(l, t, m, s, ctx)?);
    }
    out.sort();
    Ok(out)
}
