//! Rational functions, plus the linear-factor fraction sums that every
//! localization formula reduces to.

use std::collections::BTreeMap;
use std::fmt;

use super::mpoly::MPoly;
use crate::error::{consistency, Result};
use crate::rat::Rat;

/// `num / den` with `den ≠ 0`. Equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFun { num, den }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFun::new(p, MPoly::one())
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        RatFun::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if the denominator divides.
    pub fn to_poly(&self) -> Option<MPoly> {
        self.num.div_exact(&self.den)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A difference `z_hi - z_lo` with `hi > lo` (1-based indices).
pub type ZDiff = (usize, usize);

/// Accumulates `Σ num_t / ∏ (z_b − z_a)` and returns the sum as a
/// polynomial, failing if the denominators do not cancel.
///
/// Every factor is normalised to `z_hi − z_lo` with a sign; the common
/// denominator takes each normalised factor to its largest multiplicity.
#[derive(Default)]
pub struct LinearFractionSum {
    terms: Vec<(MPoly, BTreeMap<ZDiff, u32>)>,
}

impl LinearFractionSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `num / ∏_{(b,a) in den} (z_b − z_a)`.
    pub fn push(&mut self, num: MPoly, den: impl IntoIterator<Item = (usize, usize)>) {
        if num.is_zero() {
            return;
        }
        let mut sign = 1i64;
        let mut factors = BTreeMap::new();
        for (b, a) in den {
            assert!(a != b, "vanishing linear factor z{b} - z{a}");
            let key = if b > a {
                (b, a)
            } else {
                sign = -sign;
                (a, b)
            };
            *factors.entry(key).or_insert(0) += 1;
        }
        let num = if sign < 0 { -&num } else { num };
        self.terms.push((num, factors));
    }

    pub fn finish(self) -> Result<MPoly> {
        let mut common: BTreeMap<ZDiff, u32> = BTreeMap::new();
        for (_, f) in &self.terms {
            for (&k, &e) in f {
                let slot = common.entry(k).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut total = MPoly::zero();
        for (num, f) in &self.terms {
            let mut t = num.clone();
            for (&k, &e) in &common {
                let missing = e - f.get(&k).copied().unwrap_or(0);
                for _ in 0..missing {
                    t = &t * &zdiff(k);
                }
            }
            total.add_assign_ref(&t);
        }
        // Divide factor by factor: each quotient is cheap and exactness of
        // the whole is equivalent to exactness at every step.
        for (&k, &e) in &common {
            for _ in 0..e {
                total = match total.div_exact(&zdiff(k)) {
                    Some(q) => q,
                    None => {
                        return consistency(format!(
                            "localization sum not divisible by z{} - z{}",
                            k.0, k.1
                        ))
                    }
                };
            }
        }
        Ok(total)
    }
}

fn zdiff((b, a): ZDiff) -> MPoly {
    &MPoly::z(b) - &MPoly::z(a)
}

/// Product `∏ (z_b − z_a)` over the given pairs.
pub fn product_of_differences(pairs: impl IntoIterator<Item = (usize, usize)>) -> MPoly {
    pairs
        .into_iter()
        .fold(MPoly::one(), |acc, (b, a)| &acc * &(&MPoly::z(b) - &MPoly::z(a)))
}

/// Evaluate `∏ (z_b − z_a)` at a point given by `z[s-1]`.
pub fn product_of_differences_at(pairs: impl IntoIterator<Item = (usize, usize)>, z: &[Rat]) -> Rat {
    pairs
        .into_iter()
        .fold(Rat::one(), |acc, (b, a)| acc * (&z[b - 1] - &z[a - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratfun_equality_by_cross_multiplication() {
        let a = RatFun::new(MPoly::z(1), MPoly::z(2));
        let b = RatFun::new(&MPoly::z(1) * &MPoly::z(1), &MPoly::z(1) * &MPoly::z(2));
        assert_eq!(a, b);
        assert_eq!(b.add(&a), RatFun::new(MPoly::int(2) * MPoly::z(1), MPoly::z(2)));
    }

    #[test]
    fn two_point_sum_cancels() {
        // z1/(z2 - z1) + z2/(z1 - z2) = -1
        let mut s = LinearFractionSum::new();
        s.push(MPoly::z(1), [(2, 1)]);
        s.push(MPoly::z(2), [(1, 2)]);
        assert_eq!(s.finish().unwrap(), MPoly::int(-1));
    }

    #[test]
    fn non_cancelling_sum_is_an_error() {
        let mut s = LinearFractionSum::new();
        s.push(MPoly::one(), [(2, 1)]);
        assert!(s.finish().is_err());
    }
}
