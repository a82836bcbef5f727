//! Three-strand braid words and the reduced Burau representation.
//!
//! Words are freely reduced sequences over s1, s2 and their inverses.  Burau
//! sends a word to a 2x2 matrix of integer Laurent polynomials in t; the
//! reduced representation is faithful on three strands, so matrix equality
//! decides word equality.

use crate::freegroup::FreeWord;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Generator letters: +1/-1 for s1, +2/-2 for s2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BraidWord {
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord { letters: Vec::new() }
    }

    /// Builds a word and freely reduces adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = i8>>(letters: I) -> Self {
        let mut out: Vec<i8> = Vec::new();
        for l in letters {
            assert!(matches!(l.abs(), 1 | 2), "letters are +-1 (s1) and +-2 (s2)");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out }
    }

    /// Token format: `s1`, `s1i`, `s2`, `s2i` separated by whitespace.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let l = match tok {
                "s1" => 1,
                "s1i" => -1,
                "s2" => 2,
                "s2i" => -2,
                other => return Err(format!("unknown braid token `{other}`")),
            };
            letters.push(l);
        }
        Ok(Self::from_letters(letters))
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
        BraidWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn tokens(&self) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                1 => "s1",
                -1 => "s1i",
                2 => "s2",
                -2 => "s2i",
                _ => unreachable!(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.tokens())
    }
}

/// Integer Laurent polynomial in one variable t; no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// c * t^e.
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(e, BigInt::from(c));
        l
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// 2x2 matrix of Laurent polynomials, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub entries: [Laurent; 4],
}

impl LaurentMatrix {
    pub fn identity() -> Self {
        LaurentMatrix {
            entries: [Laurent::one(), Laurent::zero(), Laurent::zero(), Laurent::one()],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = |r: usize, c: usize| -> Laurent {
            self.entries[2 * r]
                .mul(&other.entries[c])
                .add(&self.entries[2 * r + 1].mul(&other.entries[2 + c]))
        };
        LaurentMatrix { entries: [e(0, 0), e(0, 1), e(1, 0), e(1, 1)] }
    }
}

fn burau_generator(letter: i8) -> LaurentMatrix {
    // s1 -> [[-t, 1], [0, 1]], s2 -> [[1, 0], [t, -t]]; inverses solved
    // exactly, determinants are units.
    let m = |a: Laurent, b: Laurent, c: Laurent, d: Laurent| LaurentMatrix { entries: [a, b, c, d] };
    match letter {
        1 => m(Laurent::monomial(1, -1), Laurent::one(), Laurent::zero(), Laurent::one()),
        -1 => m(
            Laurent::monomial(-1, -1),
            Laurent::monomial(-1, 1),
            Laurent::zero(),
            Laurent::one(),
        ),
        2 => m(Laurent::one(), Laurent::zero(), Laurent::monomial(1, 1), Laurent::monomial(1, -1)),
        -2 => m(
            Laurent::one(),
            Laurent::zero(),
            Laurent::one(),
            Laurent::monomial(-1, -1),
        ),
        _ => unreachable!(),
    }
}

/// Reduced Burau representation of a word.
pub fn burau(word: &BraidWord) -> LaurentMatrix {
    let mut out = LaurentMatrix::identity();
    for &l in word.letters() {
        out = out.mul(&burau_generator(l));
    }
    out
}

/// Word-problem decision through Burau matrix equality.
pub fn equal_braids(a: &BraidWord, b: &BraidWord) -> bool {
    burau(a) == burau(b)
}

/// Image of a free-group word under x -> s1^2, y -> s2^2, followed by n full
/// twists (s1 s2)^3n; negative n appends inverse twists.  The result is
/// freely reduced.
pub fn gt_automorphism_word(w: &FreeWord, n: i64) -> BraidWord {
    let mut letters: Vec<i8> = Vec::new();
    for &l in w.letters() {
        let (gen, count) = match l {
            1 => (1i8, 2),
            -1 => (-1i8, 2),
            2 => (2i8, 2),
            -2 => (-2i8, 2),
            _ => unreachable!(),
        };
        for _ in 0..count {
            letters.push(gen);
        }
    }
    let twist: Vec<i8> = if n >= 0 { vec![1, 2, 1, 2, 1, 2] } else { vec![-2, -1, -2, -1, -2, -1] };
    for _ in 0..n.unsigned_abs() {
        letters.extend_from_slice(&twist);
    }
    BraidWord::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = BraidWord::parse("s1 s2 s2i s1i").unwrap();
        assert!(w.is_empty());
        let w = BraidWord::parse("s1 s2 s2i s2").unwrap();
        assert_eq!(w.tokens(), "s1 s2");
    }

    #[test]
    fn burau_respects_inverses() {
        for tok in ["s1", "s2"] {
            let w = BraidWord::parse(tok).unwrap();
            let prod = burau(&w).mul(&burau(&w.inverse()));
            assert_eq!(prod, LaurentMatrix::identity());
        }
    }

    #[test]
    fn braid_relation_holds() {
        let a = BraidWord::parse("s1 s2 s1").unwrap();
        let b = BraidWord::parse("s2 s1 s2").unwrap();
        assert!(equal_braids(&a, &b));
        assert_ne!(a, b, "words differ even though braids agree");
    }

    #[test]
    fn distinct_braids_distinguished() {
        let a = BraidWord::parse("s1").unwrap();
        let b = BraidWord::parse("s2").unwrap();
        assert!(!equal_braids(&a, &b));
        assert!(!equal_braids(&a, &BraidWord::identity()));
    }

    #[test]
    fn burau_is_a_homomorphism() {
        let a = BraidWord::parse("s1 s2i s1 s1").unwrap();
        let b = BraidWord::parse("s2 s2 s1i").unwrap();
        assert_eq!(burau(&a.concat(&b)), burau(&a).mul(&burau(&b)));
    }

    #[test]
    fn full_twist_is_central() {
        let twist = BraidWord::parse("s1 s2 s1 s2 s1 s2").unwrap();
        for gen in ["s1", "s2", "s1 s2i"] {
            let g = BraidWord::parse(gen).unwrap();
            assert!(equal_braids(&twist.concat(&g), &g.concat(&twist)));
        }
    }

    #[test]
    fn gt_word_of_commutator() {
        let w = FreeWord::commutator(&FreeWord::x(), &FreeWord::y());
        let img = gt_automorphism_word(&w, 1);
        assert_eq!(
            img.tokens(),
            "s1 s1 s2 s2 s1i s1i s2i s2i s1 s2 s1 s2 s1 s2"
        );
    }

    #[test]
    fn gt_word_concatenation() {
        // Images compose: word part is a homomorphism, twists add.
        let a = FreeWord::parse("x y").unwrap();
        let b = FreeWord::parse("yi x").unwrap();
        let img = gt_automorphism_word(&a.concat(&b), 0);
        let composed = gt_automorphism_word(&a, 0).concat(&gt_automorphism_word(&b, 0));
        assert!(equal_braids(&img, &composed));
        // Twist parts concatenate too since the full twist is central.
        let with_twists = gt_automorphism_word(&a.concat(&b), 3);
        let split = gt_automorphism_word(&a, 1).concat(&gt_automorphism_word(&b, 2));
        assert!(equal_braids(&with_twists, &split));
    }

    #[test]
    fn negative_twists_cancel_positive() {
        let w = FreeWord::identity();
        let pos = gt_automorphism_word(&w, 2);
        let neg = gt_automorphism_word(&w, -2);
        assert!(pos.concat(&neg).is_empty());
    }
}
