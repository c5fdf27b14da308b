use std::sync::Arc;

use dashmap::DashMap;

use crate::combination::Combination;
use crate::dll::{DllAlgebra, DllGenerator};
use crate::e1::{check_scope, E1Class, E1Element};
use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeContext};
use crate::lambda::{is_admissible, LambdaAlgebra, LambdaGenerator, LambdaMonomial};

use super::shift::{choose_shift, ShiftChoice};

/// `d2(ι_0 ⊗ ν_I)` before any instability pruning: terms `Q̄^{ε}_{i} ⊗ ν_{I'}`
/// keyed by the operation and the remaining Lambda word.
pub type UniversalExpansion = Combination<(DllGenerator, LambdaMonomial)>;

/// Shared engine: Lambda and DLL straightening plus the memoized universal expansions.
pub struct GoodwillieSs {
    ctx: PrimeContext,
    lambda: LambdaAlgebra,
    dll: DllAlgebra,
    universal: DashMap<LambdaMonomial, Arc<UniversalExpansion>>,
}

impl GoodwillieSs {
    pub fn new(ctx: PrimeContext) -> Self {
        Self {
            ctx,
            lambda: LambdaAlgebra::new(ctx),
            dll: DllAlgebra::new(ctx),
            universal: DashMap::new(),
        }
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn lambda(&self) -> &LambdaAlgebra {
        &self.lambda
    }

    pub fn dll(&self) -> &DllAlgebra {
        &self.dll
    }

    /// The operation attached to a Lambda generator with the given index.
    pub(crate) fn operation(&self, g: LambdaGenerator, index: u32) -> DllGenerator {
        DllGenerator {
            index,
            bockstein: if self.ctx.is_two() { 0 } else { g.epsilon },
        }
    }

    /// Lin's formula evaluated with one explicit shift.
    pub fn lin_expansion(
        &self,
        word: &LambdaMonomial,
        shift: ShiftChoice,
    ) -> Result<UniversalExpansion> {
        let ctx = &self.ctx;
        word.validate(ctx)?;
        if !is_admissible(word, ctx) {
            return Err(Error::InvalidArgument(format!("{word} is not admissible")));
        }
        let mut out = UniversalExpansion::zero();
        let Some(first) = word.first() else {
            return Ok(out);
        };
        if first.index >= 1 {
            out.add_term(
                (self.operation(first, first.index), word.tail()),
                Fp::ONE,
                ctx,
            );
        }
        if word.len() < 2 {
            return Ok(out);
        }
        let k = shift.k as u32;
        let mut shifted = Combination::zero();
        for t in 1..word.len() {
            let mut w = word.clone();
            w.0[t].index += k;
            shifted.add_scaled(&self.lambda.normalize_leading_at_least(&w, k), Fp::ONE, ctx);
        }
        for (w, c) in shifted {
            let lead = w.first().expect("nonempty");
            if lead.index < k {
                continue;
            }
            let i = lead.index - k;
            if i >= 1 {
                out.add_term((self.operation(lead, i), w.tail()), c, ctx);
            }
        }
        Ok(out)
    }

    /// Lin's formula at the chosen shift, checked against the next exponent.
    pub fn universal(&self, word: &LambdaMonomial) -> Result<Arc<UniversalExpansion>> {
        if let Some(hit) = self.universal.get(word) {
            return Ok(hit.clone());
        }
        let shift = choose_shift(word, 0, &self.ctx);
        let out = self.lin_expansion(word, shift)?;
        if word.len() >= 2 && out != self.lin_expansion(word, shift.next(&self.ctx)?)? {
            return Err(Error::ShiftMismatch {
                word: word.to_string(),
                m: shift.exponent,
            });
        }
        let out = Arc::new(out);
        self.universal.insert(word.clone(), out.clone());
        Ok(out)
    }

    /// `d2(ι_l ⊗ ν_I)` for admissible `I`.
    pub fn d2_row0(&self, l: i64, word: &LambdaMonomial) -> Result<E1Element> {
        self.d2_class(&E1Class::row0(l, word.clone()))
    }

    /// `d2` of a basis class.
    pub fn d2_class(&self, class: &E1Class) -> Result<E1Element> {
        class.validate(&self.ctx)?;
        self.d2_basis(class)
    }

    /// `d2` of a class already known to be in the basis.
    pub(crate) fn d2_basis(&self, class: &E1Class) -> Result<E1Element> {
        let ctx = &self.ctx;
        let mut out = E1Element::zero();
        for ((g, rest), c) in self.universal(&class.lambda)?.iter() {
            for (j, c2) in self.dll.apply(*g, &class.dll, class.l).iter() {
                out.add_term(
                    E1Class::new(class.l, j.clone(), rest.clone()),
                    ctx.mul(*c, *c2),
                    ctx,
                );
            }
        }
        Ok(out)
    }

    pub fn d2(&self, x: &E1Element) -> Result<E1Element> {
        let mut out = E1Element::zero();
        for (class, c) in x {
            out.add_scaled(&self.d2_class(class)?, *c, &self.ctx);
        }
        Ok(out)
    }

    /// Rewrite an arbitrary combination of `Q^J(ι_l) ⊗ ν_I` in the basis.
    pub fn canonicalize(&self, x: &E1Element) -> Result<E1Element> {
        let ctx = &self.ctx;
        let mut out = E1Element::zero();
        for (class, c) in x {
            check_scope(class.l, ctx)?;
            class.dll.validate(ctx)?;
            class.lambda.validate(ctx)?;
            let js = self.dll.normalize(&class.dll, class.l);
            if js.is_zero() {
                continue;
            }
            let is = self.lambda.normalize(&class.lambda);
            for (j, c1) in &js {
                for (i, c2) in &is {
                    let coeff = ctx.mul(*c, ctx.mul(*c1, *c2));
                    out.add_term(E1Class::new(class.l, j.clone(), i.clone()), coeff, ctx);
                }
            }
        }
        Ok(out)
    }

    pub fn universal_cache_len(&self) -> usize {
        self.universal.len()
    }
}
