use super::{Rational, Ring, UniPoly};
use crate::error::{Error, Result};

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.parse()
}

/// Parse a univariate polynomial in `x` written as a sum of terms, e.g.
/// `x^10 - 2`, `3/2*x^2 - x + 1/3`, `-(1/2)x`.
pub fn parse_unipoly(s: &str) -> Result<UniPoly<Rational>> {
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut rest = src.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ if first => (false, rest),
            _ => return Err(Error::Parse(format!("expected `+` or `-` in `{s}`"))),
        };
        first = false;
        let end = term_end(body);
        let (coef, exp) = parse_term(&body[..end]).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{m} in `{s}`")),
            other => other,
        })?;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Rational::zero());
        }
        let c = if neg { coef.neg() } else { coef };
        coeffs[exp] = coeffs[exp].add(&c);
        rest = &body[end..];
    }
    Ok(UniPoly::new(coeffs))
}

/// Index of the next top-level `+`/`-` (not inside parentheses and not
/// directly after `^`).
fn term_end(body: &str) -> usize {
    let bytes = body.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' => return i,
            _ => {}
        }
    }
    bytes.len()
}

fn parse_term(t: &str) -> Result<(Rational, usize)> {
    if t.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coef_part, var_part) = match t.find('x') {
        Some(i) => (&t[..i], Some(&t[i + 1..])),
        None => (t, None),
    };
    let coef_part = coef_part.strip_suffix('*').unwrap_or(coef_part);
    let coef_part = coef_part
        .strip_prefix('(')
        .and_then(|c| c.strip_suffix(')'))
        .unwrap_or(coef_part);
    let coef = if coef_part.is_empty() {
        if var_part.is_none() {
            return Err(Error::Parse("empty term".into()));
        }
        Rational::one()
    } else {
        coef_part.parse::<Rational>()?
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(e) => {
            let e = e.strip_prefix('^').ok_or_else(|| Error::Parse(format!("bad exponent `{e}`")))?;
            e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?
        }
    };
    if exp > 4096 {
        return Err(Error::Parse(format!("exponent {exp} too large")));
    }
    Ok((coef, exp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn parses_common_forms() {
        let p = parse_unipoly("x^10-2").unwrap();
        assert_eq!(p.degree(), Some(10));
        assert_eq!(p.coeff(0), Rational::from(-2));
        assert_eq!(parse_unipoly("3/2*x^2 - x + 1/3").unwrap(), UniPoly::new(vec![q(1, 3), q(-1, 1), q(3, 2)]));
        assert_eq!(parse_unipoly("-(1/2)x").unwrap(), UniPoly::new(vec![q(0, 1), q(-1, 2)]));
        assert_eq!(parse_unipoly("x^2+x^2").unwrap(), UniPoly::new(vec![q(0, 1), q(0, 1), q(2, 1)]));
        assert_eq!(parse_unipoly("2x^3").unwrap().coeff(3), Rational::from(2));
        assert_eq!(parse_unipoly("7").unwrap(), UniPoly::constant(Rational::from(7)));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x^", "x^a", "2**x", "y+1", "1/0", "x^-1"] {
            assert!(parse_unipoly(s).is_err(), "{s}");
        }
    }
}
