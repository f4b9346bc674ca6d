//! Exact rational scalars. Everything in this crate is computed over `Rat`;
//! there is no floating point anywhere.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "n" or "n/d"; the result is reduced with positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::parse(0, 0, format!("invalid rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| bad())?;
    let d: BigInt = den.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// "n" or "n/d" in lowest terms, d > 0.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num::integer::gcd(gcd, x.abs());
    }
    if gcd.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &gcd).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "1/2", "-7/3", "4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn primitive_vector() {
        let v = vec![ratio(1, 2), rat(-2), rat(0)];
        let p = primitive_integer_vector(&v);
        let expect: Vec<BigInt> = [1, -4, 0].iter().map(|&n| BigInt::from(n)).collect();
        assert_eq!(p, expect);
    }
}
