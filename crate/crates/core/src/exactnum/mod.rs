//! Exact integer and rational arithmetic plus the divisor-theoretic functions
//! (σ_s, gcd/lcm, factorization) the rest of the crate is built on.
//!
//! Nothing here touches floating point. Factorization delegates to
//! `num-prime` (trial division, then Pollard rho with a BPSW primality test).

mod natural;
mod ratio;

use num_prime::nt_funcs;

pub use natural::Natural;
pub use ratio::Ratio;

use crate::error::{Error, Result};

/// Prime factorization of `n ≥ 1` as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(n: &Natural) -> Result<Vec<(Natural, u32)>> {
    if n.is_zero() {
        return Err(Error::Zero("factorize"));
    }
    let pairs = match n.to_u128() {
        Some(v) => nt_funcs::factorize128(v)
            .into_iter()
            .map(|(p, e)| (Natural::from(p), e as u32))
            .collect(),
        None => nt_funcs::factorize(n.as_biguint().clone())
            .into_iter()
            .map(|(p, e)| (Natural::from(p), e as u32))
            .collect(),
    };
    Ok(pairs)
}

pub(crate) fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    nt_funcs::factorize64(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

/// All positive divisors of `n ≥ 1`, ascending.
pub fn divisors(n: &Natural) -> Result<Vec<Natural>> {
    let fac = factorize(n)?;
    let mut out = vec![Natural::one()];
    for (p, e) in &fac {
        let len = out.len();
        let mut pk = Natural::one();
        for _ in 0..*e {
            pk = &pk * p;
            for i in 0..len {
                out.push(&out[i] * &pk);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// σ_0(n), the number of divisors.
pub fn divisor_count(n: &Natural) -> Result<Natural> {
    Ok(factorize(n)?.iter().map(|(_, e)| Natural::from(*e + 1)).product())
}

/// σ_1(n), the sum of divisors.
pub fn divisor_sum(n: &Natural) -> Result<Natural> {
    Ok(factorize(n)?
        .iter()
        .map(|(p, e)| (p.pow(e + 1) - 1u64) / (p - 1u64))
        .product())
}

/// σ_s(n) = Σ_{d | n} d^s for s ∈ {-1, 0, 1}.
///
/// σ_0 and σ_1 use the multiplicative closed forms; σ_{-1} is summed over
/// the divisor list directly, so `σ_1(n)/n = σ_{-1}(n)` is a genuine check
/// between two routes rather than a tautology.
pub fn sigma(s: i32, n: &Natural) -> Result<Ratio> {
    if n.is_zero() {
        return Err(Error::Zero("sigma"));
    }
    match s {
        0 => Ok(Ratio::integer(divisor_count(n)?)),
        1 => Ok(Ratio::integer(divisor_sum(n)?)),
        -1 => {
            // Σ 1/d = (Σ n/d) / n
            let total: Natural = divisors(n)?.iter().map(|d| n / d).sum();
            Ratio::new(total, n.clone())
        }
        other => Err(Error::SigmaExponent(other)),
    }
}

/// Abundancy index I(n) = σ_{-1}(n).
pub fn abundancy(n: &Natural) -> Result<Ratio> {
    sigma(-1, n)
}

/// `(gcd, lcm)` of a non-empty list of positive values.
pub fn gcd_lcm(values: &[Natural]) -> Result<(Natural, Natural)> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyInput("gcd_lcm"))?;
    if values.iter().any(Natural::is_zero) {
        return Err(Error::Zero("gcd_lcm"));
    }
    let mut g = first.clone();
    let mut l = first.clone();
    for v in rest {
        g = g.gcd(v);
        l = l.lcm(v);
    }
    Ok((g, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn ns(v: &[u64]) -> Vec<Natural> {
        v.iter().copied().map(Natural::from).collect()
    }

    fn brute_divisors(v: u64) -> Vec<u64> {
        (1..=v).filter(|d| v.is_multiple_of(*d)).collect()
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(&n(1)).unwrap(), ns(&[1]));
        assert_eq!(divisors(&n(6)).unwrap(), ns(&[1, 2, 3, 6]));
        assert_eq!(divisors(&n(3465)).unwrap().len(), 24);
        assert!(matches!(divisors(&n(0)), Err(Error::Zero(_))));
    }

    #[test]
    fn divisors_match_brute_force() {
        for v in 1..=600u64 {
            let got: Vec<u64> = divisors(&n(v)).unwrap().iter().map(|d| d.to_u64().unwrap()).collect();
            assert_eq!(got, brute_divisors(v), "n = {v}");
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(0, &n(3465)).unwrap(), Ratio::integer(24u32));
        assert_eq!(sigma(-1, &n(6)).unwrap(), Ratio::integer(2u32));
        // Brute force: sum of the 24 divisors of 3465.
        let brute: u64 = brute_divisors(3465).iter().sum();
        assert_eq!(brute, 7488);
        assert_eq!(sigma(1, &n(3465)).unwrap(), Ratio::integer(7488u32));
        assert!(matches!(sigma(2, &n(6)), Err(Error::SigmaExponent(2))));
        assert!(matches!(sigma(0, &n(0)), Err(Error::Zero(_))));
    }

    #[test]
    fn gcd_lcm_examples() {
        let seed = ns(&[3, 5, 7, 9, 11, 15, 35, 45, 231]);
        assert_eq!(gcd_lcm(&seed).unwrap(), (n(1), n(3465)));
        assert_eq!(gcd_lcm(&ns(&[6])).unwrap(), (n(6), n(6)));
        assert_eq!(gcd_lcm(&ns(&[2, 3, 6])).unwrap(), (n(1), n(6)));
        assert!(matches!(gcd_lcm(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn factorize_examples() {
        let f = |v: u64| -> Vec<(u64, u32)> {
            factorize(&n(v))
                .unwrap()
                .into_iter()
                .map(|(p, e)| (p.to_u64().unwrap(), e))
                .collect()
        };
        assert_eq!(f(3465), vec![(3, 2), (5, 1), (7, 1), (11, 1)]);
        assert_eq!(f(1), vec![]);
        assert_eq!(f(10395), vec![(3, 3), (5, 1), (7, 1), (11, 1)]);
        assert!(factorize(&n(0)).is_err());
    }

    #[test]
    fn factorize_beyond_prime_table_and_u64() {
        let p = 65537u64;
        let q = 4294967311u64; // prime > 2^32
        let f = factorize(&n(p * p)).unwrap();
        assert_eq!(f, vec![(n(p), 2)]);
        let big = &n(q) * &n(q) * n(6);
        let f = factorize(&big).unwrap();
        assert_eq!(f, vec![(n(2), 1), (n(3), 1), (n(q), 2)]);
        let m61 = n((1u64 << 61) - 1);
        let cube = m61.pow(3) * 10u64;
        assert!(cube.to_u128().is_none());
        let f = factorize(&cube).unwrap();
        assert_eq!(f, vec![(n(2), 1), (n(5), 1), (m61, 3)]);
    }

    #[test]
    fn factorization_reconstructs_n() {
        for v in 1..=10_000u64 {
            let prod: Natural = factorize(&n(v)).unwrap().iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, v);
        }
    }

    #[test]
    fn sigma_one_over_n_is_sigma_minus_one() {
        for v in 1..=10_000u64 {
            let s1 = sigma(1, &n(v)).unwrap();
            let lhs = &s1 / &Ratio::integer(v);
            assert_eq!(lhs, sigma(-1, &n(v)).unwrap(), "n = {v}");
        }
    }

    #[test]
    fn sigma_is_multiplicative_on_coprimes() {
        for a in 1..=200u64 {
            for b in 1..=200u64 {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                for s in [0, 1] {
                    let ab = sigma(s, &n(a * b)).unwrap();
                    let prod = &sigma(s, &n(a)).unwrap() * &sigma(s, &n(b)).unwrap();
                    assert_eq!(ab, prod, "s={s} a={a} b={b}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn gcd_lcm_against_pairwise_definition(vals in proptest::collection::vec(1u64..5000, 1..6)) {
            let (g, l) = gcd_lcm(&ns(&vals)).unwrap();
            let g = g.to_u64().unwrap();
            for v in &vals {
                prop_assert_eq!(v % g, 0);
                prop_assert!(l.to_u128().unwrap() % (*v as u128) == 0);
            }
        }
    }
}
