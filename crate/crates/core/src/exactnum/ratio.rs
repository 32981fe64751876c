use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use super::Natural;
use crate::error::{Error, Result};

/// Non-negative rational number kept in lowest terms.
///
/// Zero is `0/1`; the denominator is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: Natural,
    den: Natural,
}

impl Ratio {
    pub fn new(num: impl Into<Natural>, den: impl Into<Natural>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Natural, den: Natural) -> Self {
        if num.is_zero() {
            return Ratio {
                num,
                den: Natural::one(),
            };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Ratio { num, den }
        } else {
            Ratio {
                num: &num / &g,
                den: &den / &g,
            }
        }
    }

    pub fn zero() -> Self {
        Ratio {
            num: Natural::zero(),
            den: Natural::one(),
        }
    }

    pub fn one() -> Self {
        Ratio {
            num: Natural::one(),
            den: Natural::one(),
        }
    }

    pub fn integer(n: impl Into<Natural>) -> Self {
        Ratio {
            num: n.into(),
            den: Natural::one(),
        }
    }

    /// `1/u`. Fails for `u = 0`.
    pub fn unit(u: &Natural) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Ratio {
            num: Natural::one(),
            den: u.clone(),
        })
    }

    pub fn numer(&self) -> &Natural {
        &self.num
    }

    pub fn denom(&self) -> &Natural {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_unit_fraction(&self) -> bool {
        self.num.is_one()
    }

    pub fn checked_sub(&self, rhs: &Ratio) -> Option<Ratio> {
        let l = &self.num * &rhs.den;
        let r = &rhs.num * &self.den;
        let num = l.checked_sub(&r)?;
        Some(Self::reduced(num, &self.den * &rhs.den))
    }

    pub fn checked_div(&self, rhs: &Ratio) -> Option<Ratio> {
        if rhs.is_zero() {
            return None;
        }
        Some(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Option<Ratio> {
        if self.is_zero() {
            None
        } else {
            Some(Ratio {
                num: self.den.clone(),
                den: self.num.clone(),
            })
        }
    }

    /// Sum of `1/u` over `denoms`. Fails on a zero denominator.
    pub fn sum_of_units<'a, I>(denoms: I) -> Result<Ratio>
    where
        I: IntoIterator<Item = &'a Natural>,
    {
        let mut acc = Ratio::zero();
        for u in denoms {
            acc = &acc + &Ratio::unit(u)?;
        }
        Ok(acc)
    }
}

impl Add<&Ratio> for &Ratio {
    type Output = Ratio;
    fn add(self, rhs: &Ratio) -> Ratio {
        if self.den == rhs.den {
            return Ratio::reduced(&self.num + &rhs.num, self.den.clone());
        }
        Ratio::reduced(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        &self + &rhs
    }
}

impl Mul<&Ratio> for &Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &Ratio) -> Ratio {
        Ratio::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        &self * &rhs
    }
}

/// Panics on division by zero; see [`Ratio::checked_div`].
impl Div<&Ratio> for &Ratio {
    type Output = Ratio;
    fn div(self, rhs: &Ratio) -> Ratio {
        self.checked_div(rhs).expect("division by zero ratio")
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Natural> for Ratio {
    fn from(n: Natural) -> Self {
        Ratio::integer(n)
    }
}

/// Accepts `"a/b"` or a bare integer `"a"`.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => Ratio::new(n.trim().parse::<Natural>()?, d.trim().parse::<Natural>()?),
            None => Ok(Ratio::integer(s.parse::<Natural>()?)),
        }
    }
}

/// Always `num/den`, including integers (`1/1`).
impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: u64, d: u64) -> Ratio {
        Ratio::new(n, d).unwrap()
    }

    #[test]
    fn stored_reduced() {
        let x = r(6, 12);
        assert_eq!(x.numer(), &Natural::from(1u8));
        assert_eq!(x.denom(), &Natural::from(2u8));
        assert_eq!(r(0, 7), Ratio::zero());
        assert_eq!(r(0, 7).denom(), &Natural::one());
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(Ratio::new(1u8, 0u8), Err(Error::ZeroDenominator)));
        assert!("3/0".parse::<Ratio>().is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/6".parse::<Ratio>().unwrap(), r(1, 6));
        assert_eq!("4/8".parse::<Ratio>().unwrap().to_string(), "1/2");
        assert_eq!("1".parse::<Ratio>().unwrap().to_string(), "1/1");
        assert!("1/x".parse::<Ratio>().is_err());
    }

    #[test]
    fn unit_sums() {
        let d: Vec<Natural> = [2u64, 3, 6].into_iter().map(Natural::from).collect();
        assert_eq!(Ratio::sum_of_units(&d).unwrap(), Ratio::one());
        let d: Vec<Natural> = [2u64, 3, 7].into_iter().map(Natural::from).collect();
        assert_eq!(Ratio::sum_of_units(&d).unwrap(), r(41, 42));
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(r(1, 3) < r(1, 2));
        assert!(r(2, 3) > r(3, 5));
        assert_eq!(r(2, 4).cmp(&r(1, 2)), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn add_then_sub_round_trips(an in 0u64..10_000, ad in 1u64..10_000, bn in 0u64..10_000, bd in 1u64..10_000) {
            let a = r(an, ad);
            let b = r(bn, bd);
            let s = &a + &b;
            prop_assert_eq!(s.checked_sub(&b).unwrap(), a);
        }

        #[test]
        fn mul_then_div_round_trips(an in 0u64..10_000, ad in 1u64..10_000, bn in 1u64..10_000, bd in 1u64..10_000) {
            let a = r(an, ad);
            let b = r(bn, bd);
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }
}
