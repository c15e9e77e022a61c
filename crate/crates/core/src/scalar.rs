//! Exact rational scalars.
//!
//! The ground field is fixed to the rationals. `BigRational` keeps values in
//! lowest terms with a positive denominator, which is exactly the invariant
//! the algebra code relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Canonical `"p/q"` form used by the definition files and hashing.
pub fn to_canonical(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Scales a rational vector to a primitive integer vector (content 1, first
/// nonzero entry positive). Returns `None` for the zero vector.
pub fn primitive_integer_row<'a, I>(entries: I) -> Option<Vec<(usize, BigInt)>>
where
    I: IntoIterator<Item = (usize, &'a Scalar)>,
{
    let entries: Vec<(usize, &Scalar)> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    if entries.is_empty() {
        return None;
    }
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut row: Vec<(usize, BigInt)> = entries
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut row);
    Some(row)
}

/// Divides an integer row by its content and fixes the sign of the leading
/// entry. The row must be sorted by column.
pub fn make_primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row.first().is_some_and(|(_, v)| v.is_negative());
    if g.is_zero() {
        return;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    if negate {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// Serde adapters writing big integers as decimal strings.
pub mod bigint_text {
    use num_bigint::BigInt;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}
