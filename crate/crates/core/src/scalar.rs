//! The cyclotomic field `Q(zeta_24)`.
//!
//! Elements are rational combinations of `1, z, .., z^7` where `z` is a
//! primitive 24th root of unity, reduced modulo `z^8 - z^4 + 1`. Only nonzero
//! coordinates are stored, so rational scalars cost a single `BigRational`.
//!
//! Text form: `0`, `3/2`, `z^3 + z^21`-style sums such as `1 - 2/3*z + z^5`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

const DEG: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    // sorted by power, no zero coefficients
    terms: Vec<(u8, BigRational)>,
}

fn reduce(mut dense: Vec<BigRational>) -> Scalar {
    // z^8 = z^4 - 1
    let mut k = dense.len();
    while k > DEG {
        k -= 1;
        let c = std::mem::replace(&mut dense[k], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        dense[k - 4] += &c;
        dense[k - 8] -= &c;
    }
    dense.truncate(DEG);
    let terms = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u8, c))
        .collect();
    Scalar { terms }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: vec![(0, q)] }
        }
    }

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        let mut dense = vec![BigRational::zero(); k.max(DEG) + 1];
        dense[k] = BigRational::one();
        reduce(dense)
    }

    /// A primitive `r`-th root of unity, `z^(24/r)`.
    pub fn root_of_unity(r: i64) -> Result<Self> {
        if r <= 0 || 24 % r != 0 {
            return Err(Error::NotADivisorOf24(r));
        }
        Ok(Self::zeta_pow(24 / r))
    }

    /// `z^3 + z^21`, i.e. `2 cos(pi/4)`.
    pub fn sqrt2() -> Self {
        Self::zeta_pow(3) + Self::zeta_pow(21)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    /// Integer value, if this is a rational integer fitting an i64.
    pub fn to_i64(&self) -> Option<i64> {
        let q = self.to_rational()?;
        if !q.is_integer() {
            return None;
        }
        i64::try_from(q.to_integer()).ok()
    }

    /// Coordinates with respect to `1, z, .., z^7`.
    pub fn coords(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); DEG];
        for (i, c) in &self.terms {
            v[*i as usize] = c.clone();
        }
        v
    }

    pub fn from_coords(c: &[BigRational]) -> Self {
        reduce(c.to_vec())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Scalar { terms: self.terms.iter().map(|(i, c)| (*i, c * q)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if let [(0, q)] = self.terms.as_slice() {
            return o.scale(q);
        }
        if let [(0, q)] = o.terms.as_slice() {
            return self.scale(q);
        }
        let mut dense = vec![BigRational::zero(); 2 * DEG - 1];
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                dense[(*i + *j) as usize] += a * b;
            }
        }
        reduce(dense)
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), o.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push((*x).clone());
                        a.next();
                    } else if y.0 < x.0 {
                        out.push((*y).clone());
                        b.next();
                    } else {
                        let s = &x.1 + &y.1;
                        if !s.is_zero() {
                            out.push((x.0, s));
                        }
                        a.next();
                        b.next();
                    }
                }
            }
        }
        Scalar { terms: out }
    }

    /// Multiplicative inverse, by solving the 8x8 multiplication system.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let [(0, q)] = self.terms.as_slice() {
            return Ok(Scalar::from_rational(q.recip()));
        }
        // column j of m = coords of self * z^j
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); DEG + 1]; DEG];
        for j in 0..DEG {
            let col = (self * &Scalar::zeta_pow(j as i64)).coords();
            for i in 0..DEG {
                m[i][j] = col[i].clone();
            }
        }
        m[0][DEG] = BigRational::one();
        for c in 0..DEG {
            let p = (c..DEG).find(|&r| !m[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            m.swap(c, p);
            let piv = m[c][c].clone();
            for k in c..=DEG {
                m[c][k] = &m[c][k] / &piv;
            }
            for r in 0..DEG {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=DEG {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Ok(reduce(m.into_iter().map(|row| row[DEG].clone()).collect()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn parse(s: &str) -> Result<Scalar> {
        s.parse()
    }
}

fn fmt_q(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let zpart = match i {
                0 => String::new(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            };
            if zpart.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{zpart}")?;
            } else {
                write!(f, "{}*{zpart}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let bytes = src.as_bytes();
        let mut pos = 0;
        let mut acc = Scalar::zero();
        let bad = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad("expected sign"));
            }
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                pos += 1;
            }
            let coef = if pos > start {
                let txt = &src[start..pos];
                let q = match txt.split_once('/') {
                    Some((a, b)) => {
                        let a: BigInt = a.parse().map_err(|_| bad("bad numerator"))?;
                        let b: BigInt = b.parse().map_err(|_| bad("bad denominator"))?;
                        if b.is_zero() {
                            return Err(bad("zero denominator"));
                        }
                        BigRational::new(a, b)
                    }
                    None => BigRational::from_integer(txt.parse().map_err(|_| bad("bad integer"))?),
                };
                Some(q)
            } else {
                None
            };
            let mut power = 0i64;
            let has_star = pos < bytes.len() && bytes[pos] == b'*';
            if has_star {
                if coef.is_none() {
                    return Err(bad("dangling '*'"));
                }
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'z' {
                pos += 1;
                power = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let ps = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    power = src[ps..pos].parse().map_err(|_| bad("bad exponent"))?;
                }
            } else if has_star || coef.is_none() {
                return Err(bad("expected 'z'"));
            }
            let c = coef.unwrap_or_else(BigRational::one) * BigRational::from_integer(BigInt::from(sign));
            acc += Scalar::zeta_pow(power).scale(&c);
        }
        Ok(acc)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}
impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.add_ref(&o)
    }
}
impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.add_ref(&-o)
    }
}
impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.add_ref(&-o)
    }
}
impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}
impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect() }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
/// Panics on a zero divisor; use [`Scalar::checked_div`] to get an error instead.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}
impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = self.add_ref(&o);
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(&-o);
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}
