use crate::dll::{DllGenerator, DllSequence};
use crate::e1::{check_scope, E1Class, E1Element};
use crate::error::{Error, Result};
use crate::fp::{binom_or_zero, Fp, PrimeContext};
use crate::lambda::{admissible_pair, LambdaGenerator, LambdaMonomial};

/// Closed form of `d2(ι_l ⊗ g1 g2)` for an admissible pair.
pub fn d2_quadratic(
    l: i64,
    g1: LambdaGenerator,
    g2: LambdaGenerator,
    ctx: &PrimeContext,
) -> Result<E1Element> {
    check_scope(l, ctx)?;
    g1.validate(ctx)?;
    g2.validate(ctx)?;
    if !admissible_pair(g1, g2, ctx) {
        return Err(Error::NotApplicable(format!("{g1} {g2} is not admissible")));
    }
    let mut out = E1Element::zero();
    let mut add = |index: i64, bockstein: u8, g: LambdaGenerator, c: Fp| {
        if index < 1 {
            return;
        }
        let op = DllGenerator {
            index: index as u32,
            bockstein,
        };
        if op.vanishes_on(l, ctx) {
            return;
        }
        let class = E1Class::new(l, DllSequence::new([op]), LambdaMonomial::new([g]));
        out.add_term(class, c, ctx);
    };
    let (i, j) = (g1.index as i64, g2.index as i64);
    if ctx.is_two() {
        add(i, 0, g2, Fp::ONE);
        for m in (2 * i + 1)..(i + j) {
            let c = binom_or_zero(2 * m - 2 * i - j - 1, m - 2 * i - 1, ctx);
            add(i + j - m, 0, LambdaGenerator::lambda(m as u32), c);
        }
        return Ok(out);
    }
    let p = ctx.p() as i64;
    let e = g2.epsilon as i64;
    if g1.epsilon == 1 {
        add(i, 1, g2, Fp::ONE);
        for m in (p * i)..(i + j) {
            let c = binom_or_zero(p * (m - i) - (p - 1) * j + e - 1, m - p * i, ctx);
            add(
                j + i - m,
                g2.epsilon,
                LambdaGenerator::lambda(m as u32),
                ctx.mul(ctx.sign(e), c),
            );
            let c = binom_or_zero(p * (m - i) - (p - 1) * j, m - p * i, ctx);
            add(
                j + i - m,
                1,
                LambdaGenerator::mu(m as u32),
                ctx.mul(ctx.scalar(e - 1), c),
            );
        }
    } else {
        add(i, 0, g2, Fp::ONE);
        for m in (p * i + 1)..(i + j) {
            let c = binom_or_zero(p * (m - i) - (p - 1) * j - 1, m - p * i - 1, ctx);
            let g = LambdaGenerator {
                index: m as u32,
                epsilon: g2.epsilon,
            };
            add(j + i - m, 0, g, ctx.neg(c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = PrimeContext::new(2).unwrap();
        let l = LambdaGenerator::lambda;
        let d = d2_quadratic(0, l(3), l(6), &c).unwrap();
        assert_eq!(
            d.to_string(),
            "Q3 (i_0) * L6 + Q2 (i_0) * L7 + Q1 (i_0) * L8"
        );
        let d = d2_quadratic(0, l(1), l(2), &c).unwrap();
        assert_eq!(d.to_string(), "Q1 (i_0) * L2");
        assert!(d2_quadratic(0, l(1), l(3), &c).is_err());
    }
}
