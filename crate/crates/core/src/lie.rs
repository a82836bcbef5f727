//! Free Lie algebra elements in Lyndon coordinates.
//!
//! Basis: one bracketed monomial per Lyndon word, bracketed along the
//! standard factorization (longest proper Lyndon suffix).  The expansion of
//! the bracketing of w in the tensor algebra is w plus lexicographically
//! larger words of the same degree, which makes coordinate extraction a
//! triangular elimination.

use crate::alphabet::{Alphabet, Monomial};
use crate::scalar::Scalar;
use crate::series::{commutator, NCSeries, SeriesError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Lyndon words over `n` letters with length in `1..=max_len`, in
/// lexicographic order (Duval's generation).
pub fn lyndon_words(n: usize, max_len: u32) -> Vec<Vec<u8>> {
    assert!(n >= 1);
    let max_len = max_len as usize;
    let mut out = Vec::new();
    let mut w = vec![0u8];
    loop {
        if w.len() <= max_len {
            out.push(w.clone());
        }
        // Extend periodically to maximum length, then increment the tail.
        let k = w.len();
        while w.len() < max_len {
            let next = w[w.len() - k];
            w.push(next);
        }
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// Standard factorization w = uv with v the longest proper Lyndon suffix.
pub(crate) fn standard_factorization(w: &[u8]) -> (Vec<u8>, Vec<u8>) {
    debug_assert!(w.len() >= 2);
    // The longest proper suffix that is Lyndon is the lexicographically
    // smallest proper suffix.
    let mut best = 1;
    for i in 2..w.len() {
        if w[i..] < w[best..] {
            best = i;
        }
    }
    (w[..best].to_vec(), w[best..].to_vec())
}

/// Tensor-algebra expansion of the standard bracketing of a Lyndon word.
fn bracket_expansion(alphabet: &Arc<Alphabet>, truncation: u32, w: &[u8]) -> NCSeries {
    if w.len() == 1 {
        return NCSeries::generator(alphabet, truncation, w[0] as usize);
    }
    let (u, v) = standard_factorization(w);
    let a = bracket_expansion(alphabet, truncation, &u);
    let b = bracket_expansion(alphabet, truncation, &v);
    commutator(&a, &b)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("word {0:?} is not a Lyndon word")]
    NotLyndon(String),
}

/// Element of the free Lie algebra, truncated at degree N.
///
/// Coordinates are keyed by Lyndon words stored as monomials; zero
/// coordinates are never kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    alphabet: Arc<Alphabet>,
    truncation: u32,
    coords: BTreeMap<Monomial, Scalar>,
}

impl LieElement {
    pub fn zero(alphabet: &Arc<Alphabet>, truncation: u32) -> Self {
        assert!(alphabet.unit_degrees(), "Lyndon coordinates need unit degrees");
        LieElement { alphabet: Arc::clone(alphabet), truncation, coords: BTreeMap::new() }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, truncation: u32, index: usize) -> Self {
        let mut e = Self::zero(alphabet, truncation);
        e.add_coord(Monomial::generator(alphabet, index), Scalar::one());
        e
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.coords.iter()
    }

    pub fn coord(&self, w: &Monomial) -> Scalar {
        self.coords.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_coord(&mut self, w: Monomial, c: Scalar) {
        if c.is_zero() || w.degree() > self.truncation {
            return;
        }
        let entry = self.coords.entry(w).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            // Re-fetch to drop; BTreeMap has no entry-remove without the key.
            self.coords.retain(|_, v| !v.is_zero());
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LieError> {
        if self.alphabet != other.alphabet {
            return Err(SeriesError::AlphabetMismatch.into());
        }
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            }
            .into());
        }
        let mut out = self.clone();
        for (w, c) in &other.coords {
            out.add_coord(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero(&self.alphabet, self.truncation);
        }
        let coords = self.coords.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        LieElement { alphabet: Arc::clone(&self.alphabet), truncation: self.truncation, coords }
    }

    /// Builds an element from explicit Lyndon coordinates.
    pub fn from_coords<I: IntoIterator<Item = (Vec<u8>, Scalar)>>(
        alphabet: &Arc<Alphabet>,
        truncation: u32,
        coords: I,
    ) -> Result<Self, LieError> {
        let mut e = Self::zero(alphabet, truncation);
        for (word, c) in coords {
            if !is_lyndon(&word) {
                let shown: String = word.iter().map(|l| alphabet.name(*l as usize)).collect();
                return Err(LieError::NotLyndon(shown));
            }
            e.add_coord(Monomial::new(alphabet, word), c);
        }
        Ok(e)
    }

    /// Expansion in the tensor algebra; always primitive.
    pub fn embed(&self) -> NCSeries {
        let mut out = NCSeries::zero(&self.alphabet, self.truncation);
        for (w, c) in &self.coords {
            let expanded = bracket_expansion(&self.alphabet, self.truncation, w.letters());
            out = out.checked_add(&expanded.scale(c)).expect("same context");
        }
        out
    }

    /// Lyndon coordinates of a primitive series.
    ///
    /// Triangular elimination degree by degree, smallest word first; errors
    /// when the input is not primitive.
    pub fn project(series: &NCSeries) -> Result<Self, LieError> {
        if !series.is_primitive() {
            return Err(LieError::Series(SeriesError::NotPrimitive));
        }
        let alphabet = Arc::clone(series.alphabet());
        let truncation = series.truncation();
        let mut out = Self::zero(&alphabet, truncation);
        let mut remaining = series.clone();
        for word in lyndon_words(alphabet.len(), truncation) {
            let key = Monomial::new(&alphabet, word.clone());
            let c = remaining.coeff(&key);
            if c.is_zero() {
                continue;
            }
            let expanded = bracket_expansion(&alphabet, truncation, &word);
            remaining = remaining.checked_sub(&expanded.scale(&c)).expect("same context");
            out.add_coord(key, c);
        }
        if !remaining.is_zero() {
            return Err(LieError::Series(SeriesError::NotPrimitive));
        }
        Ok(out)
    }

    /// Lie bracket, computed in the tensor algebra and projected back.
    pub fn bracket(&self, other: &Self) -> Result<Self, LieError> {
        if self.alphabet != other.alphabet {
            return Err(SeriesError::AlphabetMismatch.into());
        }
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            }
            .into());
        }
        Self::project(&commutator(&self.embed(), &other.embed()))
    }

    /// Degree-d coordinates as a dense vector over the Lyndon words of degree d.
    pub fn degree_vector(&self, d: u32) -> Vec<Scalar> {
        let words = lyndon_basis_of_degree(&self.alphabet, d);
        words
            .iter()
            .map(|w| self.coord(&Monomial::new(&self.alphabet, w.clone())))
            .collect()
    }

    /// Report rendering, one `coeff * word` line per Lyndon coordinate.
    pub fn report_lines(&self) -> Vec<String> {
        if self.coords.is_empty() {
            return vec!["0".to_string()];
        }
        self.coords
            .iter()
            .map(|(w, c)| format!("{} * {}", crate::scalar::format_scalar(c), w.display(&self.alphabet)))
            .collect()
    }
}

/// Whether `w` is a Lyndon word: nonempty and strictly smaller than all of
/// its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of exact length `d`, in lexicographic order.
pub fn lyndon_basis_of_degree(alphabet: &Alphabet, d: u32) -> Vec<Vec<u8>> {
    lyndon_words(alphabet.len(), d)
        .into_iter()
        .filter(|w| w.len() == d as usize)
        .collect()
}

/// Graded dimension of the free Lie algebra in each degree 1..=max.
pub fn lie_dimensions(n: usize, max: u32) -> Vec<usize> {
    let mut counts = vec![0usize; max as usize];
    for w in lyndon_words(n, max) {
        counts[w.len() - 1] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn lyndon_generation_small_cases() {
        let words = lyndon_words(2, 3);
        let shown: Vec<Vec<u8>> = vec![
            vec![0],
            vec![0, 0, 1],
            vec![0, 1],
            vec![0, 1, 1],
            vec![1],
        ];
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(sorted, shown);
        assert!(words.iter().all(|w| is_lyndon(w)));
    }

    /// Necklace-count oracle, independent of the word generator.
    fn witt(n: u64, d: u64) -> u64 {
        fn mobius(mut m: u64) -> i64 {
            let mut result = 1i64;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    m /= p;
                    if m % p == 0 {
                        return 0;
                    }
                    result = -result;
                }
                p += 1;
            }
            if m > 1 {
                result = -result;
            }
            result as i64
        }
        let mut sum = 0i64;
        for e in 1..=d {
            if d % e == 0 {
                sum += mobius(d / e) * (n.pow(e as u32) as i64);
            }
        }
        (sum / d as i64) as u64
    }

    #[test]
    fn dimensions_match_necklace_formula_through_degree_eight() {
        let dims = lie_dimensions(2, 8);
        let expected: Vec<usize> = (1..=8).map(|d| witt(2, d) as usize).collect();
        assert_eq!(dims, expected);
        assert_eq!(dims, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn embed_project_round_trip() {
        let ab = Alphabet::xy();
        let e = LieElement::from_coords(
            &ab,
            5,
            vec![
                (vec![0], int(2)),
                (vec![0, 1], frac(1, 3)),
                (vec![0, 0, 1], int(-1)),
                (vec![0, 1, 1], frac(7, 2)),
            ],
        )
        .unwrap();
        let series = e.embed();
        assert!(series.is_primitive());
        assert_eq!(LieElement::project(&series).unwrap(), e);
    }

    #[test]
    fn project_rejects_non_primitive() {
        let ab = Alphabet::xy();
        let x = NCSeries::generator(&ab, 3, 0);
        let y = NCSeries::generator(&ab, 3, 1);
        let err = LieElement::project(&(&x * &y));
        assert_eq!(err, Err(LieError::Series(SeriesError::NotPrimitive)));
    }

    #[test]
    fn bracket_of_generators() {
        let ab = Alphabet::xy();
        let x = LieElement::generator(&ab, 4, 0);
        let y = LieElement::generator(&ab, 4, 1);
        let b = x.bracket(&y).unwrap();
        // [x, y] is the Lyndon word xy with coefficient 1.
        assert_eq!(b.coord(&Monomial::new(&ab, vec![0, 1])), int(1));
        assert_eq!(b.coords().count(), 1);
        // Antisymmetry.
        let neg = y.bracket(&x).unwrap();
        assert_eq!(neg, b.scale(&int(-1)));
    }

    #[test]
    fn jacobi_identity_on_sampled_elements() {
        let ab = Alphabet::xy();
        let a = LieElement::from_coords(&ab, 6, vec![(vec![0], int(1)), (vec![0, 1], int(2))]).unwrap();
        let b = LieElement::from_coords(&ab, 6, vec![(vec![1], frac(1, 2)), (vec![0, 0, 1], int(1))])
            .unwrap();
        let c = LieElement::from_coords(&ab, 6, vec![(vec![0, 1], int(-3))]).unwrap();
        let ab_c = a.bracket(&b).unwrap().bracket(&c).unwrap();
        let bc_a = b.bracket(&c).unwrap().bracket(&a).unwrap();
        let ca_b = c.bracket(&a).unwrap().bracket(&b).unwrap();
        let total = ab_c.checked_add(&bc_a).unwrap().checked_add(&ca_b).unwrap();
        assert!(total.is_zero());
    }

    #[test]
    fn rejects_non_lyndon_coordinates() {
        let ab = Alphabet::xy();
        let err = LieElement::from_coords(&ab, 3, vec![(vec![1, 0], int(1))]);
        assert!(matches!(err, Err(LieError::NotLyndon(_))));
    }

    #[test]
    fn bch_degree_two() {
        // log(exp X exp Y) = X + Y + [X,Y]/2 + higher.
        let ab = Alphabet::xy();
        let x = NCSeries::generator(&ab, 2, 0);
        let y = NCSeries::generator(&ab, 2, 1);
        let z = (&x.exp().unwrap() * &y.exp().unwrap()).log().unwrap();
        let e = LieElement::project(&z).unwrap();
        assert_eq!(e.coord(&Monomial::new(&ab, vec![0])), int(1));
        assert_eq!(e.coord(&Monomial::new(&ab, vec![1])), int(1));
        assert_eq!(e.coord(&Monomial::new(&ab, vec![0, 1])), frac(1, 2));
    }

    #[test]
    fn bch_degree_three_coefficients() {
        let ab = Alphabet::xy();
        let x = NCSeries::generator(&ab, 3, 0);
        let y = NCSeries::generator(&ab, 3, 1);
        let z = (&x.exp().unwrap() * &y.exp().unwrap()).log().unwrap();
        let e = LieElement::project(&z).unwrap();
        // Lyndon coordinates of the degree-3 part: [X,[X,Y]]/12 + [[X,Y],Y]/12
        // means xxy carries 1/12 and xyy carries 1/12 in this basis.
        assert_eq!(e.coord(&Monomial::new(&ab, vec![0, 0, 1])), frac(1, 12));
        assert_eq!(e.coord(&Monomial::new(&ab, vec![0, 1, 1])), frac(1, 12));
    }
}
