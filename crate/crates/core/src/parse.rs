//! Parser for the ASCII element syntax.
//!
//! ```text
//! element := "0" | term ("+" term)*
//! term    := [coeff "*"] body
//! body    := op* "(i_" l ")" ["*" word]     class Q^J(ι_l) ⊗ ν_I
//!          | op+                             DLL word
//!          | word                            Lambda monomial
//! op      := "Q" n | "bQ" n
//! word    := "1" | ("L" n | "M" n)+
//! ```
//!
//! Columns in errors are 1-based character positions.

use crate::combination::Combination;
use crate::dll::{DllElement, DllGenerator, DllSequence};
use crate::e1::{E1Class, E1Element};
use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeContext};
use crate::lambda::{LambdaElement, LambdaGenerator, LambdaMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Lambda(LambdaElement),
    Dll(DllElement),
    E1(E1Element),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Star,
    Plus,
    L(u32),
    M(u32),
    Q(u32),
    Bq(u32),
    Iota(u64),
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> Result<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return err(start + 1, "expected a number");
        }
        let text: String = chars[start..*i].iter().collect();
        text.parse::<u64>()
            .or_else(|_| err(start + 1, format!("number {text} is too large")))
    };
    let index = |i: &mut usize| -> Result<u32> {
        let at = *i + 1;
        let n = number(i)?;
        u32::try_from(n).or_else(|_| err(at, format!("index {n} is too large")))
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '*' => {
                i += 1;
                Tok::Star
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '0'..='9' => Tok::Num(number(&mut i)?),
            'L' => {
                i += 1;
                Tok::L(index(&mut i)?)
            }
            'M' => {
                i += 1;
                Tok::M(index(&mut i)?)
            }
            'Q' => {
                i += 1;
                Tok::Q(index(&mut i)?)
            }
            'b' if chars.get(i + 1) == Some(&'Q') => {
                i += 2;
                Tok::Bq(index(&mut i)?)
            }
            '(' => {
                let prefix: String = chars[i..].iter().take(3).collect();
                if prefix != "(i_" {
                    return err(pos, "expected (i_<l>)");
                }
                i += 3;
                let l = number(&mut i)?;
                if chars.get(i) != Some(&')') {
                    return err(i + 1, "expected )");
                }
                i += 1;
                Tok::Iota(l)
            }
            other => return err(pos, format!("unknown token {other:?}")),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

enum Term {
    Lambda(LambdaMonomial),
    Dll(DllSequence),
    E1(E1Class),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    end: usize,
    ctx: &'a PrimeContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|t| t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn lambda_gen(&self, g: LambdaGenerator) -> Result<LambdaGenerator> {
        g.validate(self.ctx)
            .or_else(|e| err(self.pos(), e.to_string()))?;
        Ok(g)
    }

    fn word(&mut self) -> Result<LambdaMonomial> {
        if self.peek() == Some(Tok::Num(1)) {
            self.at += 1;
            return Ok(LambdaMonomial::empty());
        }
        let mut gens = Vec::new();
        loop {
            let g = match self.peek() {
                Some(Tok::L(i)) => LambdaGenerator::lambda(i),
                Some(Tok::M(i)) => LambdaGenerator::mu(i),
                _ => break,
            };
            gens.push(self.lambda_gen(g)?);
            self.at += 1;
        }
        if gens.is_empty() {
            return err(self.pos(), "expected a Lambda word");
        }
        Ok(LambdaMonomial::new(gens))
    }

    fn term(&mut self) -> Result<(Fp, Term)> {
        let mut coeff = Fp::ONE;
        if let (Some(Tok::Num(n)), Some((_, Tok::Star))) = (self.peek(), self.toks.get(self.at + 1))
        {
            if n >= self.ctx.p() as u64 {
                return err(
                    self.pos(),
                    format!("coefficient {n} is not in 0..{}", self.ctx.p()),
                );
            }
            coeff = self.ctx.scalar(n as i64);
            self.at += 2;
        }
        let mut ops = Vec::new();
        loop {
            let g = match self.peek() {
                Some(Tok::Q(j)) => DllGenerator::q(j),
                Some(Tok::Bq(j)) => DllGenerator::bq(j),
                _ => break,
            };
            g.validate(self.ctx)
                .or_else(|e| err(self.pos(), e.to_string()))?;
            ops.push(g);
            self.at += 1;
        }
        if let Some(Tok::Iota(l)) = self.peek() {
            self.at += 1;
            let lambda = if self.peek() == Some(Tok::Star) {
                self.at += 1;
                self.word()?
            } else {
                LambdaMonomial::empty()
            };
            let class = E1Class::new(l as i64, DllSequence::new(ops), lambda);
            return Ok((coeff, Term::E1(class)));
        }
        if !ops.is_empty() {
            return Ok((coeff, Term::Dll(DllSequence::new(ops))));
        }
        Ok((coeff, Term::Lambda(self.word()?)))
    }
}

/// Parse an element; the kind is determined by its first term.
pub fn parse_element(src: &str, ctx: &PrimeContext) -> Result<Parsed> {
    let toks = lex(src)?;
    let end = src.chars().count() + 1;
    if toks.is_empty() {
        return err(1, "empty input");
    }
    if toks == [(toks[0].0, Tok::Num(0))] {
        return Ok(Parsed::Lambda(Combination::zero()));
    }
    let mut p = Parser {
        toks: &toks,
        at: 0,
        end,
        ctx,
    };
    let mut out: Option<Parsed> = None;
    loop {
        let pos = p.pos();
        let (c, term) = p.term()?;
        match (&mut out, term) {
            (None, Term::Lambda(w)) => out = Some(Parsed::Lambda(Combination::from_term(w, c))),
            (None, Term::Dll(w)) => out = Some(Parsed::Dll(Combination::from_term(w, c))),
            (None, Term::E1(x)) => out = Some(Parsed::E1(Combination::from_term(x, c))),
            (Some(Parsed::Lambda(acc)), Term::Lambda(w)) => acc.add_term(w, c, ctx),
            (Some(Parsed::Dll(acc)), Term::Dll(w)) => acc.add_term(w, c, ctx),
            (Some(Parsed::E1(acc)), Term::E1(x)) => acc.add_term(x, c, ctx),
            _ => return err(pos, "terms of different kinds"),
        }
        match p.peek() {
            None => break,
            Some(Tok::Plus) => p.at += 1,
            Some(_) => return err(p.pos(), "expected + or end of input"),
        }
    }
    Ok(out.expect("at least one term"))
}

/// Parse a class expression, reading a bare Lambda element as `ι_l ⊗ x`.
pub fn parse_e1_element(src: &str, l: i64, ctx: &PrimeContext) -> Result<E1Element> {
    match parse_element(src, ctx)? {
        Parsed::E1(x) => Ok(x),
        Parsed::Lambda(x) => {
            let mut out = E1Element::zero();
            for (w, c) in x {
                out.add_term(E1Class::row0(l, w), c, ctx);
            }
            Ok(out)
        }
        Parsed::Dll(_) => err(1, "expected a class or a Lambda element, found a DLL word"),
    }
}

pub fn parse_lambda_element(src: &str, ctx: &PrimeContext) -> Result<LambdaElement> {
    match parse_element(src, ctx)? {
        Parsed::Lambda(x) => Ok(x),
        _ => err(1, "expected a Lambda element"),
    }
}

pub fn parse_dll_sequence(src: &str, ctx: &PrimeContext) -> Result<DllSequence> {
    match parse_element(src, ctx)? {
        Parsed::Dll(x) if x.len() == 1 => {
            let (w, c) = x.into_iter().next().expect("one term");
            if c != Fp::ONE {
                return err(1, "expected a single DLL word without coefficient");
            }
            Ok(w)
        }
        Parsed::Lambda(x) if x == Combination::basis(LambdaMonomial::empty()) => {
            Ok(DllSequence::empty())
        }
        _ => err(1, "expected a single DLL word"),
    }
}
