//! Text syntax for polynomials: `x^3 + 2x + 1`, `X^2 + 2*Y^2`, `-x^2 - 1`.
//! Whitespace is ignored and `*` between factors is optional. A coefficient
//! literal `c < q` is the field element with encoding `c`; larger literals
//! are read as integers in the prime subfield unless parsing is strict.

use super::{HomForm, UniPoly};
use crate::galois::{Field, Scalar};
use crate::{Error, Result};

/// A parsed value and whether any coefficient literal had to be reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub reduced: bool,
}

struct Term {
    negative: bool,
    coeff: u64,
    exps: Vec<u32>,
}

fn parse_terms(s: &str, nvars: usize, var: impl Fn(char) -> Option<usize>) -> Result<Vec<Term>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let err = |at: usize, what: &str| Error::Parse(format!("{what} at position {at} in {s:?}"));
    let number = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i)
            .then(|| chars[start..*i].iter().collect::<String>().parse().ok())
            .flatten()
    };
    let mut terms = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        if chars[i] == '+' || chars[i] == '-' {
            negative = chars[i] == '-';
            i += 1;
        } else if !terms.is_empty() {
            return Err(err(i, "expected + or -"));
        }
        let coeff = number(&mut i);
        let mut exps = vec![0u32; nvars];
        let mut saw_var = false;
        loop {
            if i < chars.len() && chars[i] == '*' && (coeff.is_some() || saw_var) {
                i += 1;
            }
            let Some(v) = chars.get(i).and_then(|&c| var(c)) else {
                break;
            };
            i += 1;
            let e = if chars.get(i) == Some(&'^') {
                i += 1;
                number(&mut i).ok_or_else(|| err(i, "expected exponent"))?
            } else {
                1
            };
            exps[v] += u32::try_from(e).map_err(|_| err(i, "exponent too large"))?;
            saw_var = true;
        }
        if coeff.is_none() && !saw_var {
            return Err(err(i, "expected a coefficient or variable"));
        }
        terms.push(Term {
            negative,
            coeff: coeff.unwrap_or(1),
            exps,
        });
    }
    Ok(terms)
}

fn coefficient(f: &Field, t: &Term, strict: bool, reduced: &mut bool) -> Result<Scalar> {
    let c = match f.scalar(t.coeff) {
        Ok(c) => c,
        Err(e) if strict => return Err(e),
        Err(_) => {
            *reduced = true;
            f.from_i64((t.coeff % f.characteristic() as u64) as i64)
        }
    };
    Ok(if t.negative { f.neg(c) } else { c })
}

impl UniPoly {
    /// Parses a polynomial in `x`.
    pub fn parse(f: &Field, s: &str, strict: bool) -> Result<Parsed<UniPoly>> {
        let terms = parse_terms(s, 1, |c| (c == 'x').then_some(0))?;
        let mut reduced = false;
        let mut out = UniPoly::zero();
        for t in &terms {
            let c = coefficient(f, t, strict, &mut reduced)?;
            out = out.add(f, &UniPoly::monomial(c, t.exps[0] as usize));
        }
        Ok(Parsed {
            value: out,
            reduced,
        })
    }
}

impl HomForm {
    /// Parses a form in `X, Y, Z` (either case) with `nvars <= 3` variables.
    pub fn parse(f: &Field, s: &str, nvars: usize, strict: bool) -> Result<Parsed<HomForm>> {
        if !(1..=3).contains(&nvars) {
            return Err(Error::InvalidArgument(
                "forms take one to three variables".into(),
            ));
        }
        let var = |c: char| {
            match c.to_ascii_uppercase() {
                'X' => Some(0),
                'Y' => Some(1),
                'Z' => Some(2),
                _ => None,
            }
            .filter(|&v| v < nvars)
        };
        let terms = parse_terms(s, nvars, var)?;
        let degree = terms[0].exps.iter().sum();
        let mut reduced = false;
        let mut pairs = Vec::with_capacity(terms.len());
        for t in &terms {
            pairs.push((t.exps.clone(), coefficient(f, t, strict, &mut reduced)?));
        }
        Ok(Parsed {
            value: HomForm::from_terms(f, nvars, degree, pairs)?,
            reduced,
        })
    }
}
