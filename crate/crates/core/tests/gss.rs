use gss_core::{
    choose_shift, d2_matrix, d2_quadratic, derive_dll_adem, dll_normalize, e1_basis, e3_page,
    einf_row0_basis, is_cu, normalize, shift_operator, Combination, DllGenerator, DllSequence,
    E1Class, E1Element, Error, GoodwillieSs, LambdaGenerator, LambdaMonomial, PrimeContext,
};
use proptest::prelude::*;

fn ctx(p: u32) -> PrimeContext {
    PrimeContext::new(p).unwrap()
}

fn class(l: i64, j: &[u32], i: &[u32]) -> E1Class {
    E1Class::new(l, DllSequence::qs(j), LambdaMonomial::lambdas(i))
}

fn row0(l: i64, w: LambdaMonomial) -> E1Element {
    Combination::basis(E1Class::row0(l, w))
}

#[test]
fn worked_example() {
    let ss = GoodwillieSs::new(ctx(2));
    let d = ss.d2_row0(0, &LambdaMonomial::lambdas(&[3, 6])).unwrap();
    assert_eq!(
        d.to_string(),
        "Q3 (i_0) * L6 + Q2 (i_0) * L7 + Q1 (i_0) * L8"
    );
    let q = d2_quadratic(
        0,
        LambdaGenerator::lambda(3),
        LambdaGenerator::lambda(6),
        ss.ctx(),
    )
    .unwrap();
    assert_eq!(q, d);
}

#[test]
fn documented_differentials() {
    let c2 = ctx(2);
    let ss = GoodwillieSs::new(c2);
    assert!(ss.d2_row0(3, &LambdaMonomial::empty()).unwrap().is_zero());
    assert_eq!(
        ss.d2_row0(2, &LambdaMonomial::lambdas(&[3])).unwrap(),
        Combination::basis(class(2, &[3], &[]))
    );
    let x = Combination::basis(class(1, &[3], &[2]));
    assert!(ss.d2(&x).unwrap().is_zero());
    let x = Combination::basis(class(1, &[7], &[3]));
    let want = dll_normalize(&DllSequence::qs(&[3, 7]), 1, &c2).map_linear(&c2, |j| {
        Combination::basis(E1Class::new(1, j.clone(), LambdaMonomial::empty()))
    });
    assert_eq!(ss.d2(&x).unwrap(), want);
    let one_two = d2_quadratic(
        4,
        LambdaGenerator::lambda(1),
        LambdaGenerator::lambda(2),
        &c2,
    )
    .unwrap();
    assert!(one_two.is_zero());
    let one_two = d2_quadratic(
        0,
        LambdaGenerator::lambda(1),
        LambdaGenerator::lambda(2),
        &c2,
    )
    .unwrap();
    assert_eq!(one_two, Combination::basis(class(0, &[1], &[2])));
}

#[test]
fn odd_quadratic_matches_algorithm() {
    let c3 = ctx(3);
    let ss = GoodwillieSs::new(c3);
    for g2 in [LambdaGenerator::mu(3), LambdaGenerator::lambda(3)] {
        let g1 = LambdaGenerator::mu(1);
        let word = LambdaMonomial::new([g1, g2]);
        assert_eq!(
            d2_quadratic(0, g1, g2, &c3).unwrap(),
            ss.d2_row0(0, &word).unwrap()
        );
    }
    let bad = d2_quadratic(
        0,
        LambdaGenerator::lambda(1),
        LambdaGenerator::lambda(9),
        &c3,
    );
    assert!(matches!(bad, Err(Error::NotApplicable(_))));
}

#[test]
fn derived_relation_example() {
    let ss = GoodwillieSs::new(ctx(2));
    let r = derive_dll_adem(&ss, LambdaGenerator::lambda(2), LambdaGenerator::lambda(4)).unwrap();
    assert_eq!(r.derived, r.closed_form);
    assert_eq!((r.outer, r.inner), (DllGenerator::q(4), DllGenerator::q(2)));
}

#[test]
fn shift_bounds() {
    let c2 = ctx(2);
    assert_eq!(
        choose_shift(&LambdaMonomial::lambdas(&[3, 6]), 0, &c2).k,
        32
    );
    assert_eq!(choose_shift(&LambdaMonomial::lambdas(&[3]), 0, &c2).k, 8);
    let c3 = ctx(3);
    let w = LambdaMonomial::new([
        LambdaGenerator::lambda(2),
        LambdaGenerator::mu(1),
        LambdaGenerator::lambda(5),
        LambdaGenerator::mu(0),
    ]);
    assert_eq!(choose_shift(&w, 0, &c3).k, 27);
}

#[test]
fn shift_operators() {
    let c2 = ctx(2);
    let x = Combination::basis(class(0, &[5], &[1]));
    assert_eq!(shift_operator(&x, 0, &c2).unwrap(), x);
    assert_eq!(
        shift_operator(&x, 2, &c2).unwrap(),
        Combination::basis(class(0, &[3], &[1]))
    );
    assert!(shift_operator(&x, 5, &c2).unwrap().is_zero());
    let y = Combination::basis(class(3, &[5], &[1]));
    assert!(shift_operator(&y, 2, &c2).unwrap().is_zero());
    let z = Combination::basis(class(0, &[9, 3], &[]));
    assert!(matches!(
        shift_operator(&z, 2, &c2),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn matrices_and_pages() {
    let c2 = ctx(2);
    let ss = GoodwillieSs::new(c2);
    let d = d2_matrix(&ss, 0, 0, 0, 0).unwrap();
    assert_eq!((d.matrix.rows(), d.matrix.cols()), (0, 1));
    let d = d2_matrix(&ss, 1, 3, 0, 2).unwrap();
    assert_eq!(d.domain, e1_basis(1, 3, 0, 2, &c2).unwrap());
    assert_eq!(d.codomain, e1_basis(1, 2, 2, 1, &c2).unwrap());
    let col = d
        .domain
        .iter()
        .position(|c| c.lambda == LambdaMonomial::lambdas(&[2, 0]))
        .unwrap();
    let row = d
        .codomain
        .iter()
        .position(|c| *c == class(1, &[2], &[0]))
        .unwrap();
    assert_eq!(d.matrix.get(row, col).value(), 1);

    let page = e3_page(&ss, 2, 20, 4, 2, true).unwrap();
    let corner = page.cell(2, 0, 0).unwrap();
    assert_eq!((corner.dim_e1, corner.dim_e3), (1, 1));
    for cell in &page.cells {
        if cell.m >= 2 {
            assert_eq!(cell.dim_e3, 0, "{cell:?}");
        } else {
            assert_eq!(
                cell.dim_e3,
                einf_row0_basis(2, cell.t, cell.s, &c2).unwrap().len()
            );
        }
    }
    let csv = page.to_csv();
    assert!(csv.starts_with("t,m,dim_e1,dim_e3\n2,0,3,3\n"));
}

type Key = Vec<(u32, u8)>;

/// Order used by the filtration: innermost operation first, then the Lambda word.
fn filtration_key(c: &E1Class) -> (Key, Key) {
    let j = c
        .dll
        .gens()
        .iter()
        .rev()
        .map(|g| (g.index, g.bockstein))
        .collect();
    let i = c
        .lambda
        .gens()
        .iter()
        .map(|g| (g.index, g.epsilon))
        .collect();
    (j, i)
}

#[test]
fn leading_term_of_d2() {
    for (p, ls, t_max) in [(2, vec![0, 1, 2, 3], 22), (3, vec![0, 2], 40)] {
        let ctx = ctx(p);
        let ss = GoodwillieSs::new(ctx);
        for l in ls {
            for t in l..=t_max {
                for m in [0, 2, 4] {
                    for s in 1..=3 {
                        for c in e1_basis(l, t, m, s, &ctx).unwrap() {
                            let d = ss.d2_class(&c).unwrap();
                            let first = c.lambda.first().unwrap();
                            let Some(op) = (first.index >= 1).then(|| DllGenerator {
                                index: first.index,
                                bockstein: if ctx.is_two() { 0 } else { first.epsilon },
                            }) else {
                                continue;
                            };
                            let lead = E1Class::new(l, c.dll.prepend(op), c.lambda.tail());
                            let stable = is_cu(&lead.dll, &ctx)
                                && !op.vanishes_on(l + c.dll.degree(&ctx), &ctx);
                            if !stable {
                                continue;
                            }
                            assert_eq!(d.coefficient(&lead).value(), 1, "{c}: {d}");
                            for k in d.keys().filter(|k| **k != lead) {
                                assert!(
                                    filtration_key(k) < filtration_key(&lead),
                                    "{c}: {k} above {lead}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

/// `d2(x ν_i) = d2(x) ν_i + ψ_k d2(x ν_{i+k})` for `x = ι_l ⊗ ν_a`.
#[test]
fn leibniz_james() {
    for (p, ls) in [(2, vec![0, 1, 2, 3]), (3, vec![0, 2, 4])] {
        let ctx = ctx(p);
        let ss = GoodwillieSs::new(ctx);
        let gens: Vec<_> = (0..=8)
            .flat_map(|i| [LambdaGenerator::mu(i), LambdaGenerator::lambda(i)])
            .filter(|g| g.validate(&ctx).is_ok())
            .collect();
        let d2_of = |l: i64, w: LambdaMonomial| -> E1Element {
            let x = normalize(&w, &ctx).map_linear(&ctx, |m| row0(l, m.clone()));
            ss.d2(&x).unwrap()
        };
        for &l in &ls {
            for &ga in &gens {
                for &gi in &gens {
                    let bound = 2 * gi.index as i64 + ga.index as i64 + l + 2;
                    let mut e = 0;
                    while (ctx.p() as i64).pow(e) <= bound {
                        e += 1;
                    }
                    for e in [e, e + 1] {
                        let k = ctx.power_of_p(e).unwrap();
                        let lhs = d2_of(l, LambdaMonomial::new([ga, gi]));
                        let first = ss.d2_row0(l, &LambdaMonomial::new([ga])).unwrap();
                        let times = first.map_linear(&ctx, |c| {
                            let w = c.lambda.concat(&LambdaMonomial::new([gi]));
                            normalize(&w, &ctx).map_linear(&ctx, |m| {
                                Combination::basis(E1Class::new(l, c.dll.clone(), m.clone()))
                            })
                        });
                        let far = LambdaGenerator {
                            index: gi.index + k as u32,
                            epsilon: gi.epsilon,
                        };
                        let shifted =
                            shift_operator(&d2_of(l, LambdaMonomial::new([ga, far])), k, &ctx)
                                .unwrap();
                        let mut rhs = times;
                        rhs.add_scaled(&shifted, gss_core::Fp::ONE, &ctx);
                        assert_eq!(lhs, rhs, "p={p} l={l} {ga} {gi} k={k}");
                    }
                }
            }
        }
    }
}

fn some_class() -> impl Strategy<Value = (u32, E1Class)> {
    (
        prop_oneof![Just(2u32), Just(3u32)],
        0i64..=3,
        0i64..=40,
        0usize..=2,
        1usize..=3,
        any::<prop::sample::Index>(),
    )
        .prop_filter_map("nonempty cell", |(p, half, t, h, s, pick)| {
            let ctx = ctx(p);
            let l = if p == 2 { half + 1 } else { half * 2 };
            let cell = e1_basis(l, l + t, 2 * h, s, &ctx).ok()?;
            (!cell.is_empty()).then(|| (p, pick.get(&cell).clone()))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn d2_is_graded((p, c) in some_class()) {
        let ctx = ctx(p);
        let ss = GoodwillieSs::new(ctx);
        let d = ss.d2_class(&c).unwrap();
        for k in d.keys() {
            prop_assert_eq!(k.l, c.l);
            prop_assert_eq!(k.t(&ctx), c.t(&ctx) - 1);
            prop_assert_eq!(k.m(), c.m() + 2);
            prop_assert_eq!(k.s(), c.s() - 1);
            prop_assert!(k.validate(&ctx).is_ok());
        }
        let mut twice = E1Element::zero();
        for (k, v) in &d {
            twice.add_scaled(&ss.d2_class(k).unwrap(), *v, &ctx);
        }
        prop_assert!(twice.is_zero());
    }

    #[test]
    fn d2_is_linear((p, a) in some_class(), (q, b) in some_class(), scale in 1u32..3) {
        prop_assume!(p == q);
        let ctx = ctx(p);
        let ss = GoodwillieSs::new(ctx);
        let mut x = Combination::basis(a.clone());
        x.add_term(b.clone(), ctx.scalar(scale as i64), &ctx);
        let mut want = ss.d2_class(&a).unwrap();
        want.add_scaled(&ss.d2_class(&b).unwrap(), ctx.scalar(scale as i64), &ctx);
        prop_assert_eq!(ss.d2(&x).unwrap(), want);
    }
}

#[test]
fn out_of_scope_inputs() {
    let ss = GoodwillieSs::new(ctx(3));
    let r = ss.d2_row0(1, &LambdaMonomial::new([LambdaGenerator::lambda(2)]));
    assert!(matches!(r, Err(Error::OutOfScope(_))));
    let bad = ss.d2_row0(
        0,
        &LambdaMonomial::new([LambdaGenerator::mu(1), LambdaGenerator::lambda(9)]),
    );
    assert!(matches!(bad, Err(Error::InvalidArgument(_))));
}
