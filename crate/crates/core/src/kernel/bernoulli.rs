use alloc::vec::Vec;

use super::rational::Rational;

/// Bernoulli number `B_r` with `B_1 = -1/2`.
pub fn bernoulli(r: usize) -> Rational {
    // Akiyama-Tanigawa produces B_1 = +1/2; flip it.
    let mut a: Vec<Rational> = Vec::with_capacity(r + 1);
    for m in 0..=r {
        a.push(Rational::new(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = &Rational::from(j as i64) * &d;
        }
    }
    if r == 1 {
        -a[0].clone()
    } else {
        a[0].clone()
    }
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(Rational::from).product()
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for j in 0..k {
        acc = &acc * &Rational::new((n - j) as i64, (j + 1) as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), Rational::new(-1, 2));
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
        assert_eq!(bernoulli(12), Rational::new(-691, 2730));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Rational::from(10));
        assert_eq!(factorial(5), Rational::from(120));
    }
}
