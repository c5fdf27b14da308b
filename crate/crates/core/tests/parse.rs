use gss_core::json::{e1_from_json, e1_to_json, JsonElement};
use gss_core::parse::{parse_dll_sequence, parse_e1_element, parse_lambda_element};
use gss_core::{
    parse_element, Combination, DllGenerator, DllSequence, E1Class, E1Element, Error,
    LambdaGenerator, LambdaMonomial, Parsed, PrimeContext,
};
use proptest::prelude::*;

fn ctx(p: u32) -> PrimeContext {
    PrimeContext::new(p).unwrap()
}

fn lambda_gen(p: u32) -> BoxedStrategy<LambdaGenerator> {
    if p == 2 {
        (0u32..300).prop_map(LambdaGenerator::lambda).boxed()
    } else {
        prop_oneof![
            (0u32..300).prop_map(LambdaGenerator::mu),
            (1u32..300).prop_map(LambdaGenerator::lambda)
        ]
        .boxed()
    }
}

fn dll_gen(p: u32) -> BoxedStrategy<DllGenerator> {
    if p == 2 {
        (1u32..300).prop_map(DllGenerator::q).boxed()
    } else {
        prop_oneof![
            (1u32..300).prop_map(DllGenerator::q),
            (1u32..300).prop_map(DllGenerator::bq)
        ]
        .boxed()
    }
}

fn element() -> impl Strategy<Value = (u32, E1Element)> {
    prop_oneof![Just(2u32), Just(3u32)].prop_flat_map(|p| {
        let class = (
            prop::collection::vec(dll_gen(p), 0..=3),
            prop::collection::vec(lambda_gen(p), 0..=3),
            1u32..p,
        );
        (0i64..=3, prop::collection::vec(class, 1..=4)).prop_map(move |(half, terms)| {
            let ctx = ctx(p);
            let mut x = E1Element::zero();
            for (j, i, c) in terms {
                let class = E1Class::new(half * 2, DllSequence::new(j), LambdaMonomial::new(i));
                x.add_term(class, ctx.scalar(c as i64), &ctx);
            }
            (p, x)
        })
    })
}

proptest! {
    #[test]
    fn display_round_trips((p, x) in element()) {
        let ctx = ctx(p);
        let text = x.to_string();
        let back = match parse_element(&text, &ctx).unwrap() {
            Parsed::E1(y) => y,
            Parsed::Lambda(y) if y.is_zero() => E1Element::zero(),
            other => panic!("{text} parsed as {other:?}"),
        };
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn json_round_trips((p, x) in element()) {
        let ctx = ctx(p);
        let text = serde_json::to_string(&e1_to_json(&x, 0, &ctx)).unwrap();
        let v: JsonElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(e1_from_json(&v).unwrap(), x);
    }
}

#[test]
fn documented_inputs() {
    let c2 = ctx(2);
    assert_eq!(
        parse_lambda_element("L3 L6", &c2).unwrap(),
        Combination::basis(LambdaMonomial::lambdas(&[3, 6]))
    );
    let x = parse_e1_element("L3 L6", 4, &c2).unwrap();
    assert_eq!(
        x,
        Combination::basis(E1Class::row0(4, LambdaMonomial::lambdas(&[3, 6])))
    );
    assert_eq!(parse_dll_sequence("1", &c2).unwrap(), DllSequence::empty());
    assert!(matches!(
        parse_element("bQ3", &c2),
        Err(Error::Parse { pos: 1, .. })
    ));
    assert!(matches!(
        parse_element("Q0", &c2),
        Err(Error::Parse { pos: 1, .. })
    ));
    assert!(matches!(
        parse_element("L1 +", &c2),
        Err(Error::Parse { pos: 5, .. })
    ));
    assert!(matches!(
        parse_element("(i_2) * ", &c2),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn sums_collect_like_terms() {
    let c3 = ctx(3);
    let x = parse_lambda_element("2*M1 + M1 + L2", &c3).unwrap();
    assert_eq!(
        x,
        Combination::basis(LambdaMonomial::new([LambdaGenerator::lambda(2)]))
    );
}

#[test]
fn json_rejects_invalid_generators() {
    let v: JsonElement =
        serde_json::from_str(r#"{"p":2,"l":0,"terms":[{"coeff":1,"dll":[[3,1]],"lambda":[]}]}"#)
            .unwrap();
    assert!(e1_from_json(&v).is_err());
    let v: JsonElement =
        serde_json::from_str(r#"{"p":3,"l":0,"terms":[{"coeff":3,"dll":[],"lambda":[[1,0]]}]}"#)
            .unwrap();
    assert!(matches!(
        e1_from_json(&v),
        Err(Error::ScalarOutOfRange { .. })
    ));
}
