use core::fmt;

/// Number of variables `x1..x8` a monomial can carry.
pub const MAX_VARS: usize = 8;

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

/// A monomial `x1^e1 ... x8^e8` with exponents below 256.
///
/// Exponents are packed one byte per variable with `x1` in the most
/// significant byte. Together with the leading total degree this makes the
/// derived ordering graded lexicographic with `x1 > x2 > ... > x8`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    degree: u16,
    packed: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, packed: 0 };

    /// The variable `x_index`, `1 <= index <= MAX_VARS`.
    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u8) -> Self {
        assert!((1..=MAX_VARS).contains(&index), "variable x{index} out of range");
        Monomial { degree: exp as u16, packed: (exp as u64) << (8 * (MAX_VARS - index)) }
    }

    /// Builds a monomial from exponents of `x1, x2, ...`.
    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.packed |= (e as u64) << (8 * (MAX_VARS - 1 - i));
            m.degree += e as u16;
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn is_one(&self) -> bool {
        self.packed == 0
    }

    /// Exponent of `x_index`.
    pub fn exp(&self, index: usize) -> u8 {
        debug_assert!((1..=MAX_VARS).contains(&index));
        (self.packed >> (8 * (MAX_VARS - index))) as u8
    }

    pub fn exponents(&self) -> [u8; MAX_VARS] {
        self.packed.to_be_bytes()
    }

    /// Highest variable index with a nonzero exponent, 0 for the unit.
    pub fn max_var(&self) -> usize {
        if self.packed == 0 {
            0
        } else {
            MAX_VARS - (self.packed.trailing_zeros() as usize / 8)
        }
    }

    /// Product of monomials. Panics if an exponent would exceed 255.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let s = self.packed.wrapping_add(other.packed);
        let carry = (self.packed & other.packed) | ((self.packed | other.packed) & !s);
        assert!(carry & HIGH_BITS == 0, "monomial exponent overflow");
        Monomial { degree: self.degree + other.degree, packed: s }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let a = self.exponents();
        let b = other.exponents();
        a.iter().zip(b.iter()).all(|(x, y)| x <= y)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { degree: other.degree - self.degree, packed: other.packed - self.packed }
    }

    /// The monomial with `x_index` removed.
    pub fn without(&self, index: usize) -> Monomial {
        let e = self.exp(index);
        Monomial {
            degree: self.degree - e as u16,
            packed: self.packed & !(0xffu64 << (8 * (MAX_VARS - index))),
        }
    }
}


impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn graded_lex_with_lower_index_bigger() {
        let x1 = Monomial::var(1);
        let x2 = Monomial::var(2);
        assert!(x1 > x2);
        assert!(x2.mul(&x2) > x1);
        assert!(x1.mul(&x1) > x1.mul(&x2));
        assert!(x1.mul(&x2) > x2.mul(&x2));
        assert!(Monomial::ONE < x1);
    }

    #[test]
    fn exponent_queries() {
        let m = Monomial::from_exponents(&[2, 0, 1]);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.exp(1), 2);
        assert_eq!(m.max_var(), 3);
        assert_eq!(m.without(1), Monomial::var(3));
        assert_eq!(m.to_string(), "x1^2*x3");
        assert!(Monomial::var(3).divides(&m));
        assert_eq!(Monomial::var(3).quotient_of(&m), Monomial::var_pow(1, 2));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_detected() {
        let m = Monomial::var_pow(2, 200);
        let _ = m.mul(&m);
    }
}
