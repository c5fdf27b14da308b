//! JSON forms of elements and page reports.
//!
//! An element is `{"p":2,"l":1,"terms":[{"coeff":1,"dll":[[3,0]],"lambda":[[6,1]]}]}`
//! with `dll` entries `[index, bockstein]` outermost first and `lambda`
//! entries `[index, epsilon]` left to right. Terms are listed leading term first.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dll::{DllElement, DllGenerator, DllSequence};
use crate::e1::{E1Class, E1Element};
use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeContext};
use crate::gss::PageReport;
use crate::lambda::{LambdaElement, LambdaGenerator, LambdaMonomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: u32,
    pub dll: Vec<[u32; 2]>,
    pub lambda: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonElement {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<i64>,
    pub terms: Vec<JsonTerm>,
}

fn dll_entries(j: &DllSequence) -> Vec<[u32; 2]> {
    j.gens()
        .iter()
        .map(|g| [g.index, g.bockstein as u32])
        .collect()
}

fn lambda_entries(w: &LambdaMonomial) -> Vec<[u32; 2]> {
    w.gens()
        .iter()
        .map(|g| [g.index, g.epsilon as u32])
        .collect()
}

/// `l` is used for the zero element, which has no terms to read it from.
pub fn e1_to_json(x: &E1Element, l: i64, ctx: &PrimeContext) -> JsonElement {
    let l = x.keys().next().map_or(l, |c| c.l);
    JsonElement {
        p: ctx.p(),
        l: Some(l),
        terms: x
            .iter()
            .rev()
            .map(|(c, v)| JsonTerm {
                coeff: v.value(),
                dll: dll_entries(&c.dll),
                lambda: lambda_entries(&c.lambda),
            })
            .collect(),
    }
}

pub fn lambda_to_json(x: &LambdaElement, ctx: &PrimeContext) -> JsonElement {
    JsonElement {
        p: ctx.p(),
        l: None,
        terms: x
            .iter()
            .rev()
            .map(|(w, v)| JsonTerm {
                coeff: v.value(),
                dll: Vec::new(),
                lambda: lambda_entries(w),
            })
            .collect(),
    }
}

pub fn dll_to_json(x: &DllElement, l: i64, ctx: &PrimeContext) -> JsonElement {
    JsonElement {
        p: ctx.p(),
        l: Some(l),
        terms: x
            .iter()
            .rev()
            .map(|(j, v)| JsonTerm {
                coeff: v.value(),
                dll: dll_entries(j),
                lambda: Vec::new(),
            })
            .collect(),
    }
}

/// Read an element back; every generator and coefficient is validated.
pub fn e1_from_json(v: &JsonElement) -> Result<E1Element> {
    let ctx = PrimeContext::new(v.p)?;
    let l =
        v.l.ok_or_else(|| Error::InvalidArgument("element has no generator degree".into()))?;
    let mut out = E1Element::zero();
    for t in &v.terms {
        let coeff = Fp::new(t.coeff, &ctx)?;
        let mut ops = Vec::new();
        for &[index, b] in &t.dll {
            let g = DllGenerator {
                index,
                bockstein: u8::try_from(b).unwrap_or(u8::MAX),
            };
            g.validate(&ctx)?;
            ops.push(g);
        }
        let mut gens = Vec::new();
        for &[index, e] in &t.lambda {
            let g = LambdaGenerator {
                index,
                epsilon: u8::try_from(e).unwrap_or(u8::MAX),
            };
            g.validate(&ctx)?;
            gens.push(g);
        }
        let class = E1Class::new(l, DllSequence::new(ops), LambdaMonomial::new(gens));
        out.add_term(class, coeff, &ctx);
    }
    Ok(out)
}

pub fn page_to_json(r: &PageReport, ctx: &PrimeContext) -> Value {
    let survivors: Vec<Value> = r
        .survivors
        .iter()
        .map(|s| {
            json!({
                "t": s.t,
                "s": s.s,
                "basis": s.basis.iter().map(|x| e1_to_json(x, r.l, ctx)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "p": r.p,
        "l": r.l,
        "t_max": r.t_max,
        "m_max": r.m_max,
        "s_max": r.s_max,
        "cells": r.cells,
        "survivors": survivors,
    })
}
