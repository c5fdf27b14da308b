use rayon::prelude::*;
use serde::Serialize;

use crate::dll::{dll_adem_expand_pair, DllElement, DllGenerator, DllSequence};
use crate::e1::{e1_basis, E1Element};
use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeContext};
use crate::lambda::{admissible_basis, admissible_pair, LambdaGenerator, LambdaMonomial};

use super::lin::GoodwillieSs;
use super::page::{e3_page, einf_row0_basis};
use super::quadratic::d2_quadratic;
use super::shift::choose_shift;

/// A DLL relation recovered from `d2 d2 = 0`, next to its closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedRelation {
    pub outer: DllGenerator,
    pub inner: DllGenerator,
    pub derived: DllElement,
    pub closed_form: DllElement,
}

/// Apply the universal `d2` twice to `ι_0 ⊗ g1 g2`, keep the resulting words of
/// two operations unreduced, and solve the vanishing sum for the word coming
/// from the leading term. Fails with `RelationMismatch` if the result differs
/// from the closed-form relation.
pub fn derive_dll_adem(
    ss: &GoodwillieSs,
    g1: LambdaGenerator,
    g2: LambdaGenerator,
) -> Result<DerivedRelation> {
    let ctx = ss.ctx();
    g1.validate(ctx)?;
    g2.validate(ctx)?;
    if g1.index < 1 || g2.index < 1 {
        return Err(Error::NotApplicable(format!(
            "{g1} {g2} involves an index-zero generator"
        )));
    }
    if !admissible_pair(g1, g2, ctx) {
        return Err(Error::NotApplicable(format!("{g1} {g2} is not admissible")));
    }
    let once = ss.universal(&LambdaMonomial::new([g1, g2]))?;
    let mut twice = DllElement::zero();
    for ((op, rest), c) in once.iter() {
        let [h] = rest.gens() else {
            unreachable!("length-two input leaves one Lambda letter");
        };
        if h.index >= 1 {
            let word = DllSequence::new([ss.operation(*h, h.index), *op]);
            twice.add_term(word, *c, ctx);
        }
    }
    let outer = ss.operation(g2, g2.index);
    let inner = ss.operation(g1, g1.index);
    let lead = DllSequence::new([outer, inner]);
    let pair = format!("{outer} {inner}");
    let lead_coeff = twice.coefficient(&lead);
    twice.add_term(lead.clone(), ctx.neg(lead_coeff), ctx);
    let derived = twice.scaled(ctx.neg(Fp::ONE), ctx);
    let closed_form = dll_adem_expand_pair(outer, inner, ctx)?;
    if lead_coeff != Fp::ONE || derived != closed_form {
        return Err(Error::RelationMismatch {
            pair,
            derived: format!("{lead_coeff}*[{lead}] = {derived}"),
            closed: closed_form.to_string(),
        });
    }
    Ok(DerivedRelation {
        outer,
        inner,
        derived,
        closed_form,
    })
}

/// The machine checks run by `verify` and the acceptance suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    DerivedAdem,
    ShiftIndependence,
    Quadratic,
    D2Squared,
    Whitehead,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::DerivedAdem,
        Check::ShiftIndependence,
        Check::Quadratic,
        Check::D2Squared,
        Check::Whitehead,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::DerivedAdem => "derived-adem",
            Check::ShiftIndependence => "shift-independence",
            Check::Quadratic => "quadratic-closed-form",
            Check::D2Squared => "d2-squared",
            Check::Whitehead => "whitehead",
        }
    }

    pub fn run(&self, ss: &GoodwillieSs, sweep: &Sweep) -> CheckReport {
        let (checked, failure) = match self {
            Check::DerivedAdem => check_derived_adem(ss, sweep),
            Check::ShiftIndependence => check_shift_independence(ss, sweep),
            Check::Quadratic => check_quadratic(ss, sweep),
            Check::D2Squared => check_d2_squared(ss, sweep),
            Check::Whitehead => check_whitehead(ss, sweep),
        };
        CheckReport {
            check: self.name(),
            p: ss.ctx().p(),
            checked,
            failure,
        }
    }
}

/// Windows for the sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub ls: Vec<i64>,
    pub t_max: i64,
    pub m_max: usize,
    pub s_max: usize,
    /// Largest first index of the quadratic checks.
    pub i_max: u32,
    pub shift_len: usize,
    pub shift_degree: i64,
}

impl Sweep {
    pub fn standard(ctx: &PrimeContext, s_max: usize) -> Self {
        let (ls, t_max, m_max) = match ctx.p() {
            2 => ((0..=6).collect(), 40, 6),
            3 => (vec![0, 2, 4], 60, 4),
            _ => (vec![0, 2], 40, 4),
        };
        Self {
            ls,
            t_max,
            m_max,
            s_max,
            i_max: 12,
            shift_len: 3,
            shift_degree: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub p: u32,
    pub checked: usize,
    /// The first failing case in sweep order.
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Run `f` over `items` in parallel; report the total count and the first
/// failure in item order, so the outcome does not depend on scheduling.
fn sweep_items<T, F>(items: &[T], f: F) -> (usize, Option<String>)
where
    T: Sync,
    F: Fn(&T) -> std::result::Result<usize, String> + Sync + Send,
{
    let results: Vec<_> = items.par_iter().map(f).collect();
    let mut checked = 0;
    for r in results {
        match r {
            Ok(n) => checked += n,
            Err(w) => return (checked, Some(w)),
        }
    }
    (checked, None)
}

fn generators_up_to(index: u32, ctx: &PrimeContext) -> Vec<LambdaGenerator> {
    let mut out = Vec::new();
    for i in 0..=index {
        for g in [LambdaGenerator::mu(i), LambdaGenerator::lambda(i)] {
            if g.validate(ctx).is_ok() {
                out.push(g);
            }
        }
    }
    out
}

/// Admissible pairs with first index at most `i_max`.
fn admissible_pairs(i_max: u32, ctx: &PrimeContext) -> Vec<(LambdaGenerator, LambdaGenerator)> {
    let top = ctx.p() * i_max;
    let seconds = generators_up_to(top, ctx);
    let mut out = Vec::new();
    for g1 in generators_up_to(i_max, ctx) {
        for &g2 in &seconds {
            if admissible_pair(g1, g2, ctx) {
                out.push((g1, g2));
            }
        }
    }
    out
}

fn check_derived_adem(ss: &GoodwillieSs, sweep: &Sweep) -> (usize, Option<String>) {
    let pairs: Vec<_> = admissible_pairs(sweep.i_max, ss.ctx())
        .into_iter()
        .filter(|(a, b)| a.index >= 1 && b.index >= 1)
        .collect();
    sweep_items(&pairs, |&(g1, g2)| {
        derive_dll_adem(ss, g1, g2)
            .map(|_| 1)
            .map_err(|e| format!("{g1} {g2}: {e}"))
    })
}

fn check_shift_independence(ss: &GoodwillieSs, sweep: &Sweep) -> (usize, Option<String>) {
    let ctx = ss.ctx();
    let mut words = Vec::new();
    for s in 2..=sweep.shift_len {
        for d in 0..=sweep.shift_degree {
            words.extend(admissible_basis(s, d, None, ctx));
        }
    }
    sweep_items(&words, |w| {
        let run = || -> Result<bool> {
            let m = choose_shift(w, 0, ctx);
            Ok(ss.lin_expansion(w, m)? == ss.lin_expansion(w, m.next(ctx)?)?)
        };
        match run() {
            Ok(true) => Ok(1),
            Ok(false) => Err(format!("{w}: expansions differ")),
            Err(e) => Err(format!("{w}: {e}")),
        }
    })
}

fn check_quadratic(ss: &GoodwillieSs, sweep: &Sweep) -> (usize, Option<String>) {
    let ctx = ss.ctx();
    let mut items = Vec::new();
    for &l in &sweep.ls {
        for (g1, g2) in admissible_pairs(sweep.i_max, ctx) {
            items.push((l, g1, g2));
        }
    }
    sweep_items(&items, |&(l, g1, g2)| {
        let word = LambdaMonomial::new([g1, g2]);
        let run = || -> Result<(E1Element, E1Element)> {
            Ok((d2_quadratic(l, g1, g2, ctx)?, ss.d2_row0(l, &word)?))
        };
        match run() {
            Ok((a, b)) if a == b => Ok(1),
            Ok((a, b)) => Err(format!("l={l}, {word}: closed form {a}, algorithm {b}")),
            Err(e) => Err(format!("l={l}, {word}: {e}")),
        }
    })
}

fn cells(sweep: &Sweep) -> Vec<(i64, i64, usize, usize)> {
    let mut out = Vec::new();
    for &l in &sweep.ls {
        for t in l..=sweep.t_max {
            for m in (0..=sweep.m_max).step_by(2) {
                for s in 1..=sweep.s_max {
                    out.push((l, t, m, s));
                }
            }
        }
    }
    out
}

fn check_d2_squared(ss: &GoodwillieSs, sweep: &Sweep) -> (usize, Option<String>) {
    let ctx = ss.ctx();
    sweep_items(&cells(sweep), |&(l, t, m, s)| {
        let run = || -> Result<std::result::Result<usize, String>> {
            let basis = e1_basis(l, t, m, s, ctx)?;
            for class in &basis {
                let once = ss.d2_basis(class)?;
                let mut twice = E1Element::zero();
                for (y, c) in &once {
                    twice.add_scaled(&ss.d2_basis(y)?, *c, ctx);
                }
                if !twice.is_zero() {
                    return Ok(Err(format!("d2 d2({class}) = {twice}")));
                }
            }
            Ok(Ok(basis.len()))
        };
        run().unwrap_or_else(|e| Err(format!("cell l={l} t={t} m={m} s={s}: {e}")))
    })
}

fn check_whitehead(ss: &GoodwillieSs, sweep: &Sweep) -> (usize, Option<String>) {
    let ctx = ss.ctx();
    let mut checked = 0;
    for &l in &sweep.ls {
        let report = match e3_page(ss, l, sweep.t_max, sweep.m_max, sweep.s_max, false) {
            Ok(r) => r,
            Err(e) => return (checked, Some(format!("l={l}: {e}"))),
        };
        for cell in &report.cells {
            checked += 1;
            let (t, m, s) = (cell.t, cell.m, cell.s);
            if m >= 2 {
                if cell.dim_e3 != 0 {
                    return (
                        checked,
                        Some(format!(
                            "l={l} t={t} m={m} s={s}: E3 has dimension {}",
                            cell.dim_e3
                        )),
                    );
                }
                continue;
            }
            let einf = match einf_row0_basis(l, t, s, ctx) {
                Ok(b) => b,
                Err(e) => return (checked, Some(format!("l={l}: {e}"))),
            };
            if einf.len() != cell.dim_e3 {
                return (
                    checked,
                    Some(format!(
                        "l={l} t={t} s={s}: {} row-0 survivors, {} predicted",
                        cell.dim_e3,
                        einf.len()
                    )),
                );
            }
            for class in &einf {
                match ss.d2_basis(class) {
                    Ok(d) if d.is_zero() => {}
                    Ok(d) => {
                        return (
                            checked,
                            Some(format!("predicted survivor {class} has d2 = {d}")),
                        )
                    }
                    Err(e) => return (checked, Some(format!("{class}: {e}"))),
                }
            }
        }
    }
    (checked, None)
}
