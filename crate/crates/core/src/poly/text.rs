//! Line-oriented text form:
//!
//! ```text
//! nvars 5
//! -3/1 0/1 : 1 0 0 0 2
//! 0/1 3/1 : 0 0 1 1 1
//! ```
//!
//! One term per line as `a b : e₁ … e_n` for the coefficient `a + b√3`, in
//! ascending graded-lex order. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, Scalar};
use crate::error::{Error, Result};

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str, line: usize) -> Result<BigRational> {
    let bad = |m: &str| Error::Parse {
        line,
        message: format!("{m}: {s:?}"),
    };
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n = BigInt::from_str(n).map_err(|_| bad("bad numerator"))?;
    let d = BigInt::from_str(d).map_err(|_| bad("bad denominator"))?;
    if d == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

impl Polynomial {
    pub fn to_text(&self) -> String {
        let mut out = format!("nvars {}\n", self.nvars);
        for (m, c) in self.terms() {
            let exps: Vec<String> = m.exponents().iter().map(u32::to_string).collect();
            writeln!(
                out,
                "{} {} : {}",
                fmt_rational(c.rational_part()),
                fmt_rational(c.surd_part()),
                exps.join(" ")
            )
            .expect("writing to a String");
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut nvars = None;
        let mut terms = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("nvars") {
                let n: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad nvars header {body:?}"),
                })?;
                nvars = Some(n);
                continue;
            }
            let n = nvars.ok_or_else(|| Error::Parse {
                line,
                message: "term before nvars header".into(),
            })?;
            let (coeffs, exps) = body.split_once(':').ok_or_else(|| Error::Parse {
                line,
                message: "missing ':' separator".into(),
            })?;
            let coeffs: Vec<&str> = coeffs.split_whitespace().collect();
            if coeffs.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "expected two coefficients".into(),
                });
            }
            let c = Scalar::new(parse_rational(coeffs[0], line)?, parse_rational(coeffs[1], line)?);
            let e = exps
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad exponent {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if e.len() != n {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {n} exponents, found {}", e.len()),
                });
            }
            terms.push((c, e));
        }
        let n = nvars.ok_or(Error::Parse {
            line: 0,
            message: "missing nvars header".into(),
        })?;
        Polynomial::from_terms(n, terms)
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_text(s)
    }
}
