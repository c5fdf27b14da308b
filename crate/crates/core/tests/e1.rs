use gss_core::{
    admissible_basis, check_scope, e1_basis, e1_basis_upto, e1_dimension, excess, is_admissible,
    is_cu, DllSequence, E1Class, Error, LambdaMonomial, PrimeContext,
};

fn ctx(p: u32) -> PrimeContext {
    PrimeContext::new(p).unwrap()
}

#[test]
fn documented_cells() {
    let c2 = ctx(2);
    let cell = e1_basis(1, 3, 2, 0, &c2).unwrap();
    assert_eq!(
        cell,
        vec![E1Class::new(
            1,
            DllSequence::qs(&[3]),
            LambdaMonomial::empty()
        )]
    );
    let cell = e1_basis(1, 3, 2, 1, &c2).unwrap();
    assert_eq!(
        cell,
        vec![
            E1Class::new(1, DllSequence::qs(&[2]), LambdaMonomial::lambdas(&[1])),
            E1Class::new(1, DllSequence::qs(&[3]), LambdaMonomial::lambdas(&[0])),
        ]
    );
    assert_eq!(
        e1_basis(0, 0, 0, 0, &c2).unwrap(),
        vec![E1Class::row0(0, LambdaMonomial::empty())]
    );
    assert_eq!(e1_dimension(5, 4, 2, 0, &c2).unwrap(), 0);
    assert_eq!(e1_dimension(5, 4, 2, 1, &c2).unwrap(), 0);
    assert!(e1_basis_upto(2, 2, 2, 3, &ctx(3)).unwrap().is_empty());
}

#[test]
fn scope_guard() {
    assert!(matches!(
        e1_basis(1, 3, 0, 0, &ctx(3)),
        Err(Error::OutOfScope(_))
    ));
    assert!(matches!(
        check_scope(-1, &ctx(2)),
        Err(Error::InvalidArgument(_))
    ));
    assert!(check_scope(4, &ctx(3)).is_ok());
}

#[test]
fn classes_satisfy_their_invariants() {
    for (p, ls, t_max) in [(2, vec![0, 1, 3], 24), (3, vec![0, 2], 40)] {
        let ctx = ctx(p);
        for l in ls {
            for t in l..=t_max {
                for m in [0, 2, 4, 6] {
                    for s in 0..=3 {
                        let cell = e1_basis(l, t, m, s, &ctx).unwrap();
                        assert!(cell.windows(2).all(|w| w[0] < w[1]));
                        for c in &cell {
                            assert!(is_cu(&c.dll, &ctx));
                            assert!(c.dll.is_empty() || excess(&c.dll, &ctx) > l);
                            assert!(is_admissible(&c.lambda, &ctx));
                            assert_eq!(c.t(&ctx), t);
                            assert_eq!(c.m(), m);
                            assert_eq!(c.s(), s);
                            assert_eq!(l + c.dll.degree(&ctx) + c.lambda.degree(&ctx), t);
                            c.validate(&ctx).unwrap();
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn row_zero_is_the_admissible_basis() {
    for (p, l) in [(2, 0), (2, 3), (3, 2)] {
        let ctx = ctx(p);
        for t in l..l + 30 {
            for s in 0..=4 {
                let row: Vec<_> = e1_basis(l, t, 0, s, &ctx)
                    .unwrap()
                    .into_iter()
                    .map(|c| c.lambda)
                    .collect();
                assert_eq!(row, admissible_basis(s, t - l, None, &ctx));
            }
        }
    }
}
