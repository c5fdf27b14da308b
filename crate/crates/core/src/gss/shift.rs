use crate::dll::{DllGenerator, DllSequence};
use crate::e1::{E1Class, E1Element};
use crate::error::{Error, Result};
use crate::fp::PrimeContext;
use crate::lambda::LambdaMonomial;

/// A shift `k = p^M` for Lin's formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftChoice {
    pub exponent: u32,
    pub k: u64,
}

impl ShiftChoice {
    pub fn from_exponent(exponent: u32, ctx: &PrimeContext) -> Result<Self> {
        let k = ctx
            .power_of_p(exponent)
            .filter(|&k| k <= u32::MAX as u64 / 2)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("shift {}^{exponent} too large", ctx.p()))
            })?;
        Ok(Self { exponent, k })
    }

    pub fn next(&self, ctx: &PrimeContext) -> Result<Self> {
        Self::from_exponent(self.exponent + 1, ctx)
    }
}

/// Smallest `M` with `p^M > 2(i_2 + ... + i_s) + i_1 + l + s`.
pub fn choose_shift(word: &LambdaMonomial, l: i64, ctx: &PrimeContext) -> ShiftChoice {
    let g = word.gens();
    let rest: i64 = g.iter().skip(1).map(|x| x.index as i64).sum();
    let first = g.first().map_or(0, |x| x.index as i64);
    let bound = 2 * rest + first + l + g.len() as i64;
    let mut exponent = 0;
    while (ctx.p() as i64).pow(exponent) <= bound {
        exponent += 1;
    }
    ShiftChoice::from_exponent(exponent, ctx).expect("bound fits")
}

/// `ψ_k`: lowers the index of the single operation of a row-2 element by `k`,
/// dropping terms that become unstable or reach index zero.
pub fn shift_operator(x: &E1Element, k: u64, ctx: &PrimeContext) -> Result<E1Element> {
    let mut out = E1Element::zero();
    for (class, c) in x {
        let [g] = class.dll.gens() else {
            return Err(Error::InvalidArgument(format!(
                "shift operators act on row 2 only, got {class}"
            )));
        };
        let Some(index) = (g.index as u64).checked_sub(k).filter(|&i| i >= 1) else {
            continue;
        };
        let h = DllGenerator {
            index: index as u32,
            bockstein: g.bockstein,
        };
        if h.vanishes_on(class.l, ctx) {
            continue;
        }
        let moved = E1Class::new(class.l, DllSequence::new([h]), class.lambda.clone());
        out.add_term(moved, *c, ctx);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        let c2 = PrimeContext::new(2).unwrap();
        assert_eq!(
            choose_shift(&LambdaMonomial::lambdas(&[3, 6]), 0, &c2).k,
            32
        );
        assert_eq!(choose_shift(&LambdaMonomial::lambdas(&[3]), 0, &c2).k, 8);
        let c3 = PrimeContext::new(3).unwrap();
        let w = LambdaMonomial::new([
            crate::lambda::LambdaGenerator::lambda(2),
            crate::lambda::LambdaGenerator::mu(5),
        ]);
        assert_eq!(choose_shift(&w, 0, &c3).k, 27);
    }

    #[test]
    fn shifting() {
        let c = PrimeContext::new(2).unwrap();
        let x = E1Element::basis(E1Class::new(
            0,
            DllSequence::qs(&[5]),
            LambdaMonomial::lambdas(&[1]),
        ));
        assert_eq!(shift_operator(&x, 0, &c).unwrap(), x);
        let y = E1Element::basis(E1Class::new(
            0,
            DllSequence::qs(&[3]),
            LambdaMonomial::lambdas(&[1]),
        ));
        assert_eq!(shift_operator(&x, 2, &c).unwrap(), y);
        assert!(shift_operator(&x, 5, &c).unwrap().is_zero());
        let z = E1Element::basis(E1Class::new(
            3,
            DllSequence::qs(&[5]),
            LambdaMonomial::empty(),
        ));
        assert!(shift_operator(&z, 2, &c).unwrap().is_zero());
        let w = E1Element::basis(E1Class::row0(0, LambdaMonomial::lambdas(&[1])));
        assert!(shift_operator(&w, 1, &c).is_err());
    }
}
