//! Generator alphabets and noncommutative monomials.
//!
//! A monomial caches its total degree so the derived ordering is
//! degree-lexicographic: lower degree first, then lexicographic in the
//! alphabet's declared generator order.  All normal forms and reports rely on
//! this order.

use std::fmt;
use std::sync::Arc;

/// Finite ordered set of generators with positive integer degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl Alphabet {
    /// All generators get degree 1.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let degrees = vec![1; names.len()];
        Self::with_degrees(names, degrees)
    }

    pub fn with_degrees(names: Vec<String>, degrees: Vec<u32>) -> Arc<Self> {
        assert_eq!(names.len(), degrees.len(), "one degree per generator");
        assert!(names.len() <= u8::MAX as usize + 1, "at most 256 generators");
        assert!(degrees.iter().all(|&d| d >= 1), "degrees are positive");
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate generator {n}");
        }
        Arc::new(Alphabet { names, degrees })
    }

    /// The two-generator alphabet used for group-like series.
    pub fn xy() -> Arc<Self> {
        Self::new(vec!["X", "Y"])
    }

    /// Generators of the three-strand infinitesimal braid algebra.
    pub fn t3() -> Arc<Self> {
        Self::new(vec!["t12", "t13", "t23"])
    }

    /// Generators of the four-strand infinitesimal braid algebra.
    pub fn t4() -> Arc<Self> {
        Self::new(vec!["t12", "t13", "t14", "t23", "t24", "t34"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether every generator has degree 1.
    pub fn unit_degrees(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    /// Alphabet for coproduct values: a primed copy of every generator
    /// followed by a double-primed copy.  Index i maps to i (left tensor
    /// factor) and len() + i (right tensor factor).
    pub fn doubled(&self) -> Arc<Self> {
        let mut names: Vec<String> = self.names.iter().map(|n| format!("{n}'")).collect();
        names.extend(self.names.iter().map(|n| format!("{n}''")));
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&self.degrees);
        Self::with_degrees(names, degrees)
    }
}

/// Word in the generators, ordered by (degree, letters).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    letters: Vec<u8>,
}

impl Monomial {
    pub fn new(alphabet: &Alphabet, letters: Vec<u8>) -> Self {
        let degree = letters.iter().map(|&l| alphabet.degree_of(l as usize)).sum();
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.len()));
        Monomial { degree, letters }
    }

    pub fn one() -> Self {
        Monomial { degree: 0, letters: Vec::new() }
    }

    pub fn generator(alphabet: &Alphabet, index: usize) -> Self {
        Self::new(alphabet, vec![index as u8])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Monomial { degree: self.degree + other.degree, letters }
    }

    /// `X.Y.X` style rendering; the empty word prints as `1`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| alphabet.name(l as usize))
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("g{l}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// All monomials of exact degree `d`, in lexicographic order.
///
/// Requires unit degrees; the general weighted enumeration is not needed.
pub fn monomials_of_degree(alphabet: &Alphabet, d: u32) -> Vec<Monomial> {
    assert!(alphabet.unit_degrees(), "degree enumeration needs unit degrees");
    let n = alphabet.len();
    let mut out = Vec::with_capacity(n.pow(d));
    let mut current = vec![0u8; d as usize];
    loop {
        out.push(Monomial { degree: d, letters: current.clone() });
        // Odometer increment in base n.
        let mut pos = current.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if (current[pos] as usize) + 1 < n {
                current[pos] += 1;
                for c in &mut current[pos + 1..] {
                    *c = 0;
                }
                break;
            }
        }
    }
}
