use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact fraction with 64-bit parts, always reduced with a positive
/// denominator. Arithmetic is overflow-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// `num/den` in lowest terms. Fails on a zero denominator or if the
    /// reduced parts do not fit.
    pub fn new(num: i64, den: i64) -> Result<Rational> {
        Self::from_i128(num as i128, den as i128, "Rational::new")
    }

    pub fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128, op: &'static str) -> Result<Rational> {
        if den == 0 {
            return Err(Error::Domain {
                op,
                detail: "zero denominator".into(),
            });
        }
        let g = gcd(num, den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Ok(Rational { num, den }),
            _ => Err(Error::Overflow(op)),
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i64 {
        self.num.signum()
    }

    pub fn checked_add(self, o: Rational) -> Result<Rational> {
        let n = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        let d = self.den as i128 * o.den as i128;
        Self::from_i128(n, d, "rational add")
    }

    pub fn checked_sub(self, o: Rational) -> Result<Rational> {
        self.checked_add(o.checked_neg()?)
    }

    pub fn checked_mul(self, o: Rational) -> Result<Rational> {
        let n = self.num as i128 * o.num as i128;
        let d = self.den as i128 * o.den as i128;
        Self::from_i128(n, d, "rational mul")
    }

    pub fn checked_div(self, o: Rational) -> Result<Rational> {
        if o.num == 0 {
            return Err(Error::Domain {
                op: "rational div",
                detail: "division by zero".into(),
            });
        }
        let n = self.num as i128 * o.den as i128;
        let d = self.den as i128 * o.num as i128;
        Self::from_i128(n, d, "rational div")
    }

    pub fn checked_neg(self) -> Result<Rational> {
        match self.num.checked_neg() {
            Some(num) => Ok(Rational { num, den: self.den }),
            None => Err(Error::Overflow("rational neg")),
        }
    }

    /// Floor of the fraction.
    pub fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}
