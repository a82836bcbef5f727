//! Truncated noncommutative formal power series over the rationals.
//!
//! A series carries its alphabet and an explicit truncation degree N; only
//! monomials of degree <= N are stored and no key ever maps to zero.  All
//! operations truncate at N, so mixing truncations is an error rather than a
//! silent loss of precision.  Two series are equal iff their alphabets,
//! truncations and coefficient maps are equal.

use crate::alphabet::{Alphabet, Monomial};
use crate::scalar::{format_scalar, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series alphabets differ")]
    AlphabetMismatch,
    #[error("series truncations differ: {left} vs {right}")]
    TruncationMismatch { left: u32, right: u32 },
    #[error("constant term must be zero")]
    ConstantTermNotZero,
    #[error("constant term must be one")]
    ConstantTermNotOne,
    #[error("constant term is zero, series not invertible")]
    NotInvertible,
    #[error("generator {0} has no assigned image")]
    UnassignedGenerator(String),
    #[error("series is not primitive")]
    NotPrimitive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCSeries {
    alphabet: Arc<Alphabet>,
    truncation: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl NCSeries {
    pub fn zero(alphabet: &Arc<Alphabet>, truncation: u32) -> Self {
        NCSeries { alphabet: Arc::clone(alphabet), truncation, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, truncation: u32) -> Self {
        Self::constant(alphabet, truncation, Scalar::one())
    }

    pub fn constant(alphabet: &Arc<Alphabet>, truncation: u32, c: Scalar) -> Self {
        let mut s = Self::zero(alphabet, truncation);
        s.add_term(Monomial::one(), c);
        s
    }

    /// The series consisting of one generator.
    pub fn generator(alphabet: &Arc<Alphabet>, truncation: u32, index: usize) -> Self {
        let mut s = Self::zero(alphabet, truncation);
        s.add_term(Monomial::generator(alphabet, index), Scalar::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(
        alphabet: &Arc<Alphabet>,
        truncation: u32,
        terms: I,
    ) -> Self {
        let mut s = Self::zero(alphabet, truncation);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    /// Smallest degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// Adds `c` to the coefficient of `m`, dropping zeros and overflow terms.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() || m.degree() > self.truncation {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.alphabet != other.alphabet {
            return Err(SeriesError::AlphabetMismatch);
        }
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero(&self.alphabet, self.truncation);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        NCSeries { alphabet: Arc::clone(&self.alphabet), truncation: self.truncation, terms }
    }

    /// Truncating Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let n = self.truncation;
        let mut out = Self::zero(&self.alphabet, n);
        for (ma, ca) in &self.terms {
            let budget = n - ma.degree();
            for (mb, cb) in &other.terms {
                if mb.degree() > budget {
                    break; // keys are degree-sorted
                }
                out.add_term(ma.concat(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Drops terms above `n` and lowers the truncation to `n`.
    pub fn truncated(&self, n: u32) -> Self {
        assert!(n <= self.truncation, "cannot raise a truncation");
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= n);
        Self::from_terms(&self.alphabet, n, terms.map(|(m, c)| (m.clone(), c.clone())))
    }

    /// The degree-`d` part, kept at the same truncation.
    pub fn homogeneous(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d);
        Self::from_terms(&self.alphabet, self.truncation, terms.map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Multiplicative inverse; errors when the constant term is zero.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        // 1/(c(1-w)) = (1/c) sum w^k with w = 1 - f/c of positive min degree.
        let scaled = self.scale(&c0.recip());
        let w = Self::one(&self.alphabet, self.truncation).checked_sub(&scaled)?;
        let mut sum = Self::one(&self.alphabet, self.truncation);
        let mut power = Self::one(&self.alphabet, self.truncation);
        for _ in 1..=self.truncation {
            power = power.checked_mul(&w)?;
            if power.is_zero() {
                break;
            }
            sum = sum.checked_add(&power)?;
        }
        Ok(sum.scale(&c0.recip()))
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ConstantTermNotZero);
        }
        let mut sum = Self::one(&self.alphabet, self.truncation);
        let mut power = Self::one(&self.alphabet, self.truncation);
        let mut factorial = Scalar::one();
        for k in 1..=self.truncation {
            power = power.checked_mul(self)?;
            if power.is_zero() {
                break;
            }
            factorial *= Scalar::from_integer(k.into());
            sum = sum.checked_add(&power.scale(&factorial.recip()))?;
        }
        Ok(sum)
    }

    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let v = self.checked_sub(&Self::one(&self.alphabet, self.truncation))?;
        let mut sum = Self::zero(&self.alphabet, self.truncation);
        let mut power = Self::one(&self.alphabet, self.truncation);
        for k in 1..=self.truncation {
            power = power.checked_mul(&v)?;
            if power.is_zero() {
                break;
            }
            let coeff = Scalar::from_integer(k.into()).recip();
            let signed = if k % 2 == 1 { coeff } else { -coeff };
            sum = sum.checked_add(&power.scale(&signed))?;
        }
        Ok(sum)
    }

    /// Rational power of a series with constant term one: exp(m log self).
    pub fn pow_scalar(&self, m: &Scalar) -> Result<Self, SeriesError> {
        self.log()?.scale(m).exp()
    }

    /// Small nonnegative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.alphabet, self.truncation);
        for _ in 0..k {
            out = out.checked_mul(self).expect("same context");
        }
        out
    }

    /// Algebra-map substitution: each generator is replaced by its image and
    /// monomials become products of images.
    ///
    /// Exact at the images' truncation when every image has zero constant
    /// term and the source truncation is at least the target truncation.
    /// Group-coordinate substitution (images with constant term one) must go
    /// through logs first; see the relation checkers.
    pub fn substitute(
        &self,
        images: &BTreeMap<String, NCSeries>,
    ) -> Result<NCSeries, SeriesError> {
        let mut context: Option<&NCSeries> = None;
        for img in images.values() {
            match context {
                None => context = Some(img),
                Some(c) => c.check_compatible(img)?,
            }
        }
        let mut resolved: Vec<Option<&NCSeries>> = vec![None; self.alphabet.len()];
        for (name, img) in images {
            if let Some(i) = self.alphabet.index_of(name) {
                resolved[i] = Some(img);
            }
        }
        let target = match context {
            Some(c) => (Arc::clone(c.alphabet()), c.truncation()),
            // Constant series need no images; keep the source context.
            None => (Arc::clone(&self.alphabet), self.truncation),
        };
        let mut out = NCSeries::zero(&target.0, target.1);
        for (m, c) in &self.terms {
            let mut prod = NCSeries::constant(&target.0, target.1, c.clone());
            for &l in m.letters() {
                let img = resolved[l as usize].ok_or_else(|| {
                    SeriesError::UnassignedGenerator(self.alphabet.name(l as usize).to_string())
                })?;
                prod = prod.checked_mul(img)?;
                if prod.is_zero() {
                    break;
                }
            }
            out = out.checked_add(&prod)?;
        }
        Ok(out)
    }

    /// Coproduct into the doubled alphabet, primitive on generators.
    ///
    /// The image lives in the tensor square, encoded as a series over
    /// [`Alphabet::doubled`] with every monomial normal-ordered as a primed
    /// block followed by a double-primed block.
    pub fn coproduct(&self) -> NCSeries {
        let doubled = self.alphabet.doubled();
        let n = self.alphabet.len() as u8;
        let mut out = NCSeries::zero(&doubled, self.truncation);
        for (m, c) in &self.terms {
            let letters = m.letters();
            let k = letters.len();
            // Split the word into the subsequence sent left and its complement.
            for mask in 0u64..(1u64 << k) {
                let mut word = Vec::with_capacity(k);
                for (i, &l) in letters.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        word.push(l);
                    }
                }
                for (i, &l) in letters.iter().enumerate() {
                    if mask & (1 << i) == 0 {
                        word.push(l + n);
                    }
                }
                out.add_term(Monomial::new(&doubled, word), c.clone());
            }
        }
        out
    }

    /// Left tensor embedding into the doubled alphabet (primed letters).
    fn tensor_left(&self, doubled: &Arc<Alphabet>) -> NCSeries {
        let terms = self.terms.iter().map(|(m, c)| {
            (Monomial::new(doubled, m.letters().to_vec()), c.clone())
        });
        NCSeries::from_terms(doubled, self.truncation, terms)
    }

    /// Right tensor embedding into the doubled alphabet (double-primed).
    fn tensor_right(&self, doubled: &Arc<Alphabet>) -> NCSeries {
        let n = self.alphabet.len() as u8;
        let terms = self.terms.iter().map(|(m, c)| {
            let word: Vec<u8> = m.letters().iter().map(|&l| l + n).collect();
            (Monomial::new(doubled, word), c.clone())
        });
        NCSeries::from_terms(doubled, self.truncation, terms)
    }

    /// Group-likeness: constant term one and coproduct equal to the tensor
    /// square, up to combined degree N.
    pub fn is_grouplike(&self) -> bool {
        self.constant_term().is_one() && self.grouplike_defect().is_zero()
    }

    /// Delta(f) - f (x) f in the doubled alphabet; zero iff the coproduct
    /// condition holds (the constant term is not inspected).
    pub fn grouplike_defect(&self) -> NCSeries {
        let doubled = self.alphabet.doubled();
        let square = self
            .tensor_left(&doubled)
            .checked_mul(&self.tensor_right(&doubled))
            .expect("same context");
        self.coproduct().checked_sub(&square).expect("same context")
    }

    /// Primitivity: coproduct is `self (x) 1 + 1 (x) self`.
    pub fn is_primitive(&self) -> bool {
        if !self.constant_term().is_zero() {
            return false;
        }
        let doubled = self.alphabet.doubled();
        let sum = self
            .tensor_left(&doubled)
            .checked_add(&self.tensor_right(&doubled))
            .expect("same context");
        self.coproduct() == sum
    }

    /// Report rendering: one line per monomial, `coeff * word`, degree-lex.
    pub fn report_lines(&self) -> Vec<String> {
        if self.terms.is_empty() {
            return vec!["0".to_string()];
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("{} * {}", format_scalar(c), m.display(&self.alphabet)))
            .collect()
    }
}

impl Add for &NCSeries {
    type Output = NCSeries;
    fn add(self, rhs: &NCSeries) -> NCSeries {
        self.checked_add(rhs).expect("series context mismatch")
    }
}

impl Sub for &NCSeries {
    type Output = NCSeries;
    fn sub(self, rhs: &NCSeries) -> NCSeries {
        self.checked_sub(rhs).expect("series context mismatch")
    }
}

impl Mul for &NCSeries {
    type Output = NCSeries;
    fn mul(self, rhs: &NCSeries) -> NCSeries {
        self.checked_mul(rhs).expect("series context mismatch")
    }
}

impl Neg for &NCSeries {
    type Output = NCSeries;
    fn neg(self) -> NCSeries {
        self.scale(&-Scalar::one())
    }
}

/// Commutator ab - ba.
pub fn commutator(a: &NCSeries, b: &NCSeries) -> NCSeries {
    &(a * b) - &(b * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn xy(n: u32) -> (Arc<Alphabet>, NCSeries, NCSeries) {
        let ab = Alphabet::xy();
        let x = NCSeries::generator(&ab, n, 0);
        let y = NCSeries::generator(&ab, n, 1);
        (ab, x, y)
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let (_, x, _) = xy(4);
        let diff = &x - &x;
        assert!(diff.is_zero());
        assert_eq!(diff.support_len(), 0);
    }

    #[test]
    fn product_truncates_at_n() {
        let (_, x, y) = xy(2);
        let xy2 = &x * &y;
        let higher = &xy2 * &y;
        assert!(higher.is_zero(), "degree 3 exceeds truncation 2");
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let ab = Alphabet::xy();
        let a = NCSeries::generator(&ab, 2, 0);
        let b = NCSeries::generator(&ab, 3, 0);
        assert_eq!(
            a.checked_add(&b),
            Err(SeriesError::TruncationMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = NCSeries::generator(&Alphabet::xy(), 2, 0);
        let b = NCSeries::generator(&Alphabet::t3(), 2, 0);
        assert_eq!(a.checked_mul(&b), Err(SeriesError::AlphabetMismatch));
    }

    #[test]
    fn exp_coefficients_are_inverse_factorials() {
        let (ab, x, _) = xy(5);
        let e = x.exp().unwrap();
        let mut word = Vec::new();
        let mut fact = 1i64;
        for k in 1..=5u32 {
            word.push(0u8);
            fact *= k as i64;
            assert_eq!(e.coeff(&Monomial::new(&ab, word.clone())), frac(1, fact));
        }
        assert_eq!(e.constant_term(), int(1));
    }

    #[test]
    fn exp_log_inverse_on_generators() {
        let (_, x, y) = xy(5);
        let p = &x.scale(&frac(1, 3)) + &commutator(&x, &y).scale(&frac(2, 7));
        assert_eq!(p.exp().unwrap().log().unwrap(), p);
        let g = &x.exp().unwrap() * &y.exp().unwrap();
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let (ab, x, _) = xy(3);
        let bad = &x + &NCSeries::one(&ab, 3);
        assert_eq!(bad.exp(), Err(SeriesError::ConstantTermNotZero));
        assert_eq!(x.log(), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn inverse_of_grouplike() {
        let (ab, x, y) = xy(4);
        let g = &x.exp().unwrap() * &y.exp().unwrap();
        let inv = g.inverse().unwrap();
        assert_eq!(&g * &inv, NCSeries::one(&ab, 4));
        assert_eq!(&inv * &g, NCSeries::one(&ab, 4));
        let zero = NCSeries::zero(&ab, 4);
        assert_eq!(zero.inverse(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn substitute_swaps_generators() {
        let (_, x, y) = xy(3);
        let f = &x * &y;
        let mut images = BTreeMap::new();
        images.insert("X".to_string(), y.clone());
        images.insert("Y".to_string(), x.clone());
        assert_eq!(f.substitute(&images).unwrap(), &y * &x);
    }

    #[test]
    fn substitute_missing_generator_errors() {
        let (_, x, y) = xy(3);
        let f = &x * &y;
        let mut images = BTreeMap::new();
        images.insert("X".to_string(), y.clone());
        assert_eq!(
            f.substitute(&images),
            Err(SeriesError::UnassignedGenerator("Y".to_string()))
        );
    }

    #[test]
    fn substitute_into_other_alphabet() {
        let (_, x, y) = xy(2);
        let t3 = Alphabet::t3();
        let t12 = NCSeries::generator(&t3, 2, 0);
        let t13 = NCSeries::generator(&t3, 2, 1);
        let t23 = NCSeries::generator(&t3, 2, 2);
        let f = commutator(&x, &y);
        let mut images = BTreeMap::new();
        images.insert("X".to_string(), t12.clone());
        images.insert("Y".to_string(), &t13 + &t23);
        let image = f.substitute(&images).unwrap();
        let expected = commutator(&t12, &(&t13 + &t23));
        assert_eq!(image, expected);
    }

    #[test]
    fn generator_coproduct_is_primitive() {
        let (_, x, y) = xy(4);
        assert!(x.is_primitive());
        assert!((&x.scale(&frac(3, 2)) + &commutator(&x, &y)).is_primitive());
        assert!(!(&x * &y).is_primitive());
    }

    #[test]
    fn exponential_of_primitive_is_grouplike() {
        let (_, x, y) = xy(4);
        assert!(x.exp().unwrap().is_grouplike());
        let p = &x + &commutator(&x, &y).scale(&frac(1, 2));
        assert!(p.exp().unwrap().is_grouplike());
        assert!(!(&x.exp().unwrap() + &y).is_grouplike());
    }

    #[test]
    fn product_of_grouplikes_is_grouplike() {
        let (_, x, y) = xy(4);
        let g = &x.exp().unwrap() * &y.exp().unwrap();
        assert!(g.is_grouplike());
        // Independent route: its log is primitive.
        assert!(g.log().unwrap().is_primitive());
    }

    #[test]
    fn report_lines_degree_lex() {
        let (ab, x, y) = xy(2);
        let s = &(&NCSeries::one(&ab, 2) + &y.scale(&frac(-1, 2))) + &(&x * &y).scale(&int(3));
        assert_eq!(s.report_lines(), vec!["1 * 1", "-1/2 * Y", "3 * X.Y"]);
        assert_eq!(NCSeries::zero(&ab, 2).report_lines(), vec!["0"]);
    }

    #[test]
    fn rational_powers_multiply_exponents() {
        let (_, x, y) = xy(4);
        let g = &x.exp().unwrap() * &y.exp().unwrap();
        let half = g.pow_scalar(&frac(1, 2)).unwrap();
        assert_eq!(&half * &half, g);
        assert_eq!(g.pow_scalar(&int(-1)).unwrap(), g.inverse().unwrap());
    }
}
