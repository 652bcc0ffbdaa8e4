//! Text form of series: `3 + 5e - 2e^3 + 7e^-1`, with `e` standing for ε.
//! Coefficients may be integers, fractions (`5/2e`) or decimals (`0.25e^2`).

use thiserror::Error;

use super::{Coeff, HyperReal};
use crate::rational::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse series `{input}`: {reason}")]
pub struct ParseHyperError {
    pub input: String,
    pub reason: String,
}

fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    let mut dangling = false;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        // a sign directly after `^` belongs to the exponent
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !current.is_empty() {
                out.push((negative, std::mem::take(&mut current)));
                negative = false;
            }
            if ch == '-' {
                negative = !negative;
            }
            dangling = true;
        } else {
            current.push(ch);
            dangling = false;
        }
        prev = Some(ch);
    }
    if !current.is_empty() || out.is_empty() || dangling {
        out.push((negative, current));
    }
    out
}

pub(super) fn parse_series(input: &str) -> Result<HyperReal, ParseHyperError> {
    let err = |reason: &str| ParseHyperError { input: input.to_string(), reason: reason.to_string() };
    let mut terms = Vec::new();
    for (negative, body) in split_terms(input) {
        if body.is_empty() {
            return Err(err("empty term"));
        }
        let (coef_text, exp) = match body.find(['e', 'E']) {
            None => (body.as_str(), 0i32),
            Some(pos) => {
                let coef = body[..pos].trim_end_matches('*');
                let rest = &body[pos + 1..];
                let exp = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<i32>().map_err(|_| err("bad exponent"))?
                } else {
                    return Err(err("expected `^` after `e`"));
                };
                (coef, exp)
            }
        };
        let mut coef = if coef_text.is_empty() {
            crate::rational::one()
        } else {
            parse_rational(coef_text).map_err(|_| err("bad coefficient"))?
        };
        if negative {
            coef = -coef;
        }
        terms.push((exp, Coeff::Exact(coef)));
    }
    Ok(HyperReal::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parses_mixed_terms() {
        let x = parse_series("3 + 5e - 2e^3 + 7e^-1").unwrap();
        assert_eq!(x.coeff(0), Coeff::from_int(3));
        assert_eq!(x.coeff(1), Coeff::from_int(5));
        assert_eq!(x.coeff(3), Coeff::from_int(-2));
        assert_eq!(x.coeff(-1), Coeff::from_int(7));
    }

    #[test]
    fn parses_fractions_and_bare_units() {
        let x = parse_series("-e + 5/2e^-2 + 0.5").unwrap();
        assert_eq!(x.coeff(1), Coeff::from_int(-1));
        assert_eq!(x.coeff(-2), Coeff::Exact(rat(5, 2)));
        assert_eq!(x.coeff(0), Coeff::Exact(rat(1, 2)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_series("3 +").is_err());
        assert!(parse_series("ex").is_err());
        assert!(parse_series("").is_err());
    }
}
