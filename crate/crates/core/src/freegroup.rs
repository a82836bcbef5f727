//! Reduced words in the free group on x and y, and the Magnus embedding.
//!
//! Letters are stored as nonzero i8 values: +1/-1 for x and its inverse,
//! +2/-2 for y.  Words are always freely reduced, so equality of words is
//! equality in the free group.

use crate::alphabet::Alphabet;
use crate::series::{NCSeries, SeriesError};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<i8>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    /// Builds a word and freely reduces it.
    pub fn from_letters<I: IntoIterator<Item = i8>>(letters: I) -> Self {
        let mut out: Vec<i8> = Vec::new();
        for l in letters {
            assert!(matches!(l.abs(), 1 | 2), "letters are +-1 (x) and +-2 (y)");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    /// Token format: `x`, `xi`, `y`, `yi` separated by whitespace.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let l = match tok {
                "x" => 1,
                "xi" => -1,
                "y" => 2,
                "yi" => -2,
                other => return Err(format!("unknown free-word token `{other}`")),
            };
            letters.push(l);
        }
        Ok(Self::from_letters(letters))
    }

    pub fn x() -> Self {
        FreeWord { letters: vec![1] }
    }

    pub fn y() -> Self {
        FreeWord { letters: vec![2] }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// a b a^-1 b^-1.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Magnus embedding x -> exp(X), y -> exp(Y) at the given truncation.
    ///
    /// A group homomorphism into the group-like elements: concatenation maps
    /// to the truncating series product.
    pub fn magnus(&self, truncation: u32) -> NCSeries {
        let ab = Alphabet::xy();
        self.magnus_in(&ab, truncation).expect("X and Y exist in the xy alphabet")
    }

    /// Magnus embedding into an arbitrary alphabet containing `X` and `Y`.
    pub fn magnus_in(&self, alphabet: &Arc<Alphabet>, truncation: u32) -> Result<NCSeries, SeriesError> {
        let xi = alphabet.index_of("X").ok_or(SeriesError::UnassignedGenerator("X".into()))?;
        let yi = alphabet.index_of("Y").ok_or(SeriesError::UnassignedGenerator("Y".into()))?;
        let x = NCSeries::generator(alphabet, truncation, xi);
        let y = NCSeries::generator(alphabet, truncation, yi);
        let table = [
            x.exp()?,
            (-&x).exp()?,
            y.exp()?,
            (-&y).exp()?,
        ];
        let mut out = NCSeries::one(alphabet, truncation);
        for &l in &self.letters {
            let factor = match l {
                1 => &table[0],
                -1 => &table[1],
                2 => &table[2],
                -2 => &table[3],
                _ => unreachable!(),
            };
            out = out.checked_mul(factor)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Monomial;
    use crate::scalar::int;

    #[test]
    fn free_reduction_cancels_adjacent_inverses() {
        let w = FreeWord::from_letters(vec![1, 2, -2, -1]);
        assert!(w.is_empty());
        let w = FreeWord::from_letters(vec![1, 2, -2, 1]);
        assert_eq!(w.letters(), &[1, 1]);
    }

    #[test]
    fn parse_tokens() {
        let w = FreeWord::parse("x y xi yi").unwrap();
        assert_eq!(w, FreeWord::commutator(&FreeWord::x(), &FreeWord::y()));
        assert!(FreeWord::parse("x z").is_err());
    }

    #[test]
    fn inverse_concat_is_identity() {
        let w = FreeWord::parse("x x y xi").unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn magnus_of_commutator_at_degree_two() {
        // x y x^-1 y^-1 -> 1 + XY - YX + higher order.
        let w = FreeWord::commutator(&FreeWord::x(), &FreeWord::y());
        let s = w.magnus(2);
        let ab = Alphabet::xy();
        let expected = NCSeries::from_terms(
            &ab,
            2,
            vec![
                (Monomial::one(), int(1)),
                (Monomial::new(&ab, vec![0, 1]), int(1)),
                (Monomial::new(&ab, vec![1, 0]), int(-1)),
            ],
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn magnus_is_a_homomorphism() {
        let a = FreeWord::parse("x y x").unwrap();
        let b = FreeWord::parse("xi y y").unwrap();
        let lhs = a.concat(&b).magnus(4);
        let rhs = &a.magnus(4) * &b.magnus(4);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn magnus_values_are_grouplike() {
        let w = FreeWord::parse("x y xi xi y").unwrap();
        assert!(w.magnus(4).is_grouplike());
    }
}
