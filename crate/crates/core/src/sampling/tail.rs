// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use super::SampleError;

/// `Pr[Bin(m, p) >= d]`, summed in log space with compensated addition.
pub fn binomial_tail(m: u64, p: f64, d: u64) -> Result<f64, SampleError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(SampleError::InvalidProbability(p));
    }
    if d == 0 {
        return Ok(1.0);
    }
    if d > m || p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    // every term is measured relative to the mode term, so the sequence
    // being summed does not depend on d and the tail is monotone in d
    let mode = (((m + 1) as f64 * p).floor() as u64).min(m);
    let top = ln_binomial(m, mode) + mode as f64 * lp + (m - mode) as f64 * lq;
    let step = lp - lq;
    let mut rel = vec![0.0f64; (m - d + 1) as usize];
    let at = |i: u64| (i - d) as usize;
    if d <= mode {
        for i in (d..mode).rev() {
            rel[at(i)] = rel[at(i + 1)] + ((i + 1) as f64).ln() - ((m - i) as f64).ln() - step;
        }
    }
    let mut prev = 0.0;
    for i in mode + 1..=m {
        prev += ((m - i + 1) as f64).ln() - (i as f64).ln() + step;
        if i >= d {
            rel[at(i)] = prev;
        }
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &l in rel.iter().rev() {
        let x = l.exp();
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    Ok(((sum + comp) * top.exp()).min(1.0))
}

/// `ln C(m, d)` as a compensated sum of logarithms.
fn ln_binomial(m: u64, d: u64) -> f64 {
    let d = d.min(m - d);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for j in 0..d {
        let x = ((m - j) as f64).ln() - ((j + 1) as f64).ln();
        let y = x - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Largest `d` with `Pr[Bin(m, 2/n) >= d] >= n^(-exponent)`.
pub fn degree_quantile_d0(n: u64, m: u64, exponent: f64) -> Result<u64, SampleError> {
    if exponent.is_nan() || exponent <= 0.0 {
        return Err(SampleError::InvalidExponent(exponent));
    }
    if n < 2 {
        return Err(SampleError::TooFewVertices { n: n as usize, m });
    }
    let p = 2.0 / n as f64;
    let threshold = (n as f64).powf(-exponent);
    // the tail is non-increasing in d and equals 1 at d = 0
    let (mut lo, mut hi) = (0u64, m);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if binomial_tail(m, p, mid)? >= threshold {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;

    fn exact_tail(m: u64, p: f64, d: u64) -> f64 {
        let p = BigRational::from_float(p).unwrap();
        let q = BigRational::one() - &p;
        let mut total = BigRational::zero();
        let mut choose = BigInt::one();
        for i in 0..=m {
            if i >= d {
                let term = BigRational::from_integer(choose.clone())
                    * num_traits::pow(p.clone(), i as usize)
                    * num_traits::pow(q.clone(), (m - i) as usize);
                total += term;
            }
            choose = choose * BigInt::from(m - i) / BigInt::from(i + 1);
        }
        total.to_f64().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(binomial_tail(2, 0.5, 1).unwrap(), 0.75);
        assert_eq!(binomial_tail(17, 0.3, 0).unwrap(), 1.0);
        let v = binomial_tail(10, 0.3, 10).unwrap();
        assert!((v - 0.3f64.powi(10)).abs() < 1e-18);
        assert!((v - 5.9049e-6).abs() < 1e-12);
        assert!(binomial_tail(3, 1.5, 1).is_err());
        assert!(binomial_tail(3, -0.1, 1).is_err());
        assert_eq!(binomial_tail(3, 0.0, 1).unwrap(), 0.0);
        assert_eq!(binomial_tail(3, 1.0, 3).unwrap(), 1.0);
        assert_eq!(binomial_tail(3, 0.5, 4).unwrap(), 0.0);
    }

    #[test]
    fn agrees_with_rational_evaluation() {
        for m in 0..=20 {
            for &p in &[0.01, 0.1, 0.25, 0.3, 0.5, 2.0 / 7.0, 0.9, 0.999] {
                for d in 0..=m + 1 {
                    let got = binomial_tail(m, p, d).unwrap();
                    let want = exact_tail(m, p, d);
                    assert!((got - want).abs() <= 1e-12, "m={m} p={p} d={d}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(degree_quantile_d0(10, 0, 0.9).unwrap(), 0);
        let (n, m) = (100u64, 1000u64);
        let got = degree_quantile_d0(n, m, 0.9).unwrap();
        let threshold = (n as f64).powf(-0.9);
        let scan = (0..=m)
            .filter(|&d| binomial_tail(m, 2.0 / n as f64, d).unwrap() >= threshold)
            .max()
            .unwrap();
        assert_eq!(got, scan);
        assert!(degree_quantile_d0(n, m, 0.95).unwrap() >= got);
        assert!(degree_quantile_d0(n, m, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn tail_non_increasing(m in 0u64..200, p in 0.0f64..=1.0) {
            let mut prev = 1.0;
            for d in 0..=m + 1 {
                let t = binomial_tail(m, p, d).unwrap();
                prop_assert!(t <= prev);
                prev = t;
            }
        }

        #[test]
        fn quantile_monotone_in_exponent(n in 2u64..60, m in 0u64..400) {
            prop_assert!(degree_quantile_d0(n, m, 0.95).unwrap() >= degree_quantile_d0(n, m, 0.9).unwrap());
        }
    }
}
