//! Quotients of the tensor algebra by homogeneous relation ideals.
//!
//! The ideal of a finite homogeneous relator set is spanned in each degree d
//! by the products m1 * r * m2 over monomial pairs; row-reducing that
//! spanning set gives a reduced echelon basis per degree.  Normal forms are
//! computed by eliminating pivot monomials, so `reduce` is linear, idempotent
//! and kills exactly the ideal.  Echelon data is built on first use per
//! degree and cached.

use crate::alphabet::{monomials_of_degree, Alphabet, Monomial};
use crate::exec;
use crate::linalg::{cleanup_row, Echelon, SparseRow};
use crate::series::{NCSeries, SeriesError};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("relator {index} is not homogeneous")]
    InhomogeneousRelator { index: usize },
    #[error("relator {index} is zero")]
    ZeroRelator { index: usize },
}

struct DegreeData {
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    echelon: Echelon,
}

pub struct QuotientAlgebra {
    alphabet: Arc<Alphabet>,
    truncation: u32,
    /// Homogeneous relators; (series, degree) pairs.
    relators: Vec<(NCSeries, u32)>,
    degrees: Vec<OnceLock<DegreeData>>,
}

impl QuotientAlgebra {
    pub fn new(
        alphabet: &Arc<Alphabet>,
        truncation: u32,
        relators: Vec<NCSeries>,
    ) -> Result<Self, QuotientError> {
        assert!(alphabet.unit_degrees(), "monomial enumeration needs unit degrees");
        let mut checked = Vec::with_capacity(relators.len());
        for (index, r) in relators.into_iter().enumerate() {
            if r.alphabet() != alphabet {
                return Err(SeriesError::AlphabetMismatch.into());
            }
            if r.truncation() != truncation {
                return Err(SeriesError::TruncationMismatch {
                    left: r.truncation(),
                    right: truncation,
                }
                .into());
            }
            let Some(min) = r.min_degree() else {
                return Err(QuotientError::ZeroRelator { index });
            };
            if r.terms().any(|(m, _)| m.degree() != min) {
                return Err(QuotientError::InhomogeneousRelator { index });
            }
            checked.push((r, min));
        }
        let degrees = (0..=truncation).map(|_| OnceLock::new()).collect();
        Ok(QuotientAlgebra { alphabet: Arc::clone(alphabet), truncation, relators: checked, degrees })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    fn degree_data(&self, d: u32) -> &DegreeData {
        self.degrees[d as usize].get_or_init(|| {
            let monomials = monomials_of_degree(&self.alphabet, d);
            let index: BTreeMap<Monomial, usize> =
                monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            // One spanning row per (relator, left monomial, right monomial).
            let mut jobs: Vec<(usize, u32, u32)> = Vec::new();
            for (ri, (_, rdeg)) in self.relators.iter().enumerate() {
                if *rdeg > d {
                    continue;
                }
                for left in 0..=(d - rdeg) {
                    jobs.push((ri, left, d - rdeg - left));
                }
            }
            let rows: Vec<Vec<SparseRow>> = exec::map_indices(jobs.len(), |j| {
                let (ri, ldeg, rdeg) = jobs[j];
                let relator = &self.relators[ri].0;
                let lefts = monomials_of_degree(&self.alphabet, ldeg);
                let rights = monomials_of_degree(&self.alphabet, rdeg);
                let mut out = Vec::with_capacity(lefts.len() * rights.len());
                for m1 in &lefts {
                    for m2 in &rights {
                        let mut row: SparseRow = relator
                            .terms()
                            .map(|(w, c)| (index[&m1.concat(w).concat(m2)], c.clone()))
                            .collect();
                        row.sort_by_key(|(c, _)| *c);
                        out.push(cleanup_row(row));
                    }
                }
                out
            });
            let echelon = Echelon::from_rows(monomials.len(), rows.into_iter().flatten().collect());
            DegreeData { monomials, index, echelon }
        })
    }

    /// Dimension of the degree-d component of the quotient.
    pub fn dimension(&self, d: u32) -> usize {
        assert!(d <= self.truncation);
        let data = self.degree_data(d);
        data.monomials.len() - data.echelon.rank()
    }

    /// Dimensions of degrees 0..=N.
    pub fn dimensions(&self) -> Vec<usize> {
        (0..=self.truncation).map(|d| self.dimension(d)).collect()
    }

    /// Normal form modulo the ideal, degree by degree.
    pub fn reduce(&self, series: &NCSeries) -> Result<NCSeries, QuotientError> {
        if series.alphabet() != &self.alphabet {
            return Err(SeriesError::AlphabetMismatch.into());
        }
        if series.truncation() != self.truncation {
            return Err(SeriesError::TruncationMismatch {
                left: series.truncation(),
                right: self.truncation,
            }
            .into());
        }
        let mut degrees_present: Vec<u32> = Vec::new();
        for (m, _) in series.terms() {
            if degrees_present.last() != Some(&m.degree()) {
                degrees_present.push(m.degree());
            }
        }
        let mut out = NCSeries::zero(&self.alphabet, self.truncation);
        for d in degrees_present {
            let data = self.degree_data(d);
            let mut row: SparseRow = series
                .homogeneous(d)
                .terms()
                .map(|(m, c)| (data.index[m], c.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            for (col, c) in data.echelon.reduce(row) {
                out.add_term(data.monomials[col].clone(), c);
            }
        }
        Ok(out)
    }

    /// Three-strand infinitesimal braid relations on t12, t13, t23.
    pub fn drinfeld_kohno_t3(truncation: u32) -> Self {
        let ab = Alphabet::t3();
        let gen = |i: usize| NCSeries::generator(&ab, truncation, i);
        let (t12, t13, t23) = (gen(0), gen(1), gen(2));
        let comm = crate::series::commutator;
        let relators = vec![
            comm(&t12, &(&t13 + &t23)),
            comm(&t13, &(&t12 + &t23)),
            comm(&t23, &(&t12 + &t13)),
        ];
        // Below truncation 2 the degree-2 relators vanish and the quotient is free.
        let relators = relators.into_iter().filter(|r| !r.is_zero()).collect();
        Self::new(&ab, truncation, relators).expect("homogeneous by construction")
    }

    /// Four-strand infinitesimal braid relations on t12..t34.
    pub fn drinfeld_kohno_t4(truncation: u32) -> Self {
        let ab = Alphabet::t4();
        let gen_index = |i: usize, j: usize| -> usize {
            ab.index_of(&format!("t{i}{j}")).expect("pair generator")
        };
        let gen =
            |i: usize, j: usize| NCSeries::generator(&ab, truncation, gen_index(i, j));
        let comm = crate::series::commutator;
        let mut relators = Vec::new();
        // Triple relations: t_ij commutes with t_ik + t_jk for each triple.
        for i in 1..=4usize {
            for j in (i + 1)..=4 {
                for k in (j + 1)..=4 {
                    let (tij, tik, tjk) = (gen(i, j), gen(i, k), gen(j, k));
                    relators.push(comm(&tij, &(&tik + &tjk)));
                    relators.push(comm(&tik, &(&tij + &tjk)));
                    relators.push(comm(&tjk, &(&tij + &tik)));
                }
            }
        }
        // Disjoint pairs commute.
        relators.push(comm(&gen(1, 2), &gen(3, 4)));
        relators.push(comm(&gen(1, 3), &gen(2, 4)));
        relators.push(comm(&gen(1, 4), &gen(2, 3)));
        // Below truncation 2 the degree-2 relators vanish and the quotient is free.
        let relators = relators.into_iter().filter(|r| !r.is_zero()).collect();
        Self::new(&ab, truncation, relators).expect("homogeneous by construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::series::commutator;

    #[test]
    fn t3_graded_dimensions() {
        let q = QuotientAlgebra::drinfeld_kohno_t3(4);
        // Universal envelope of (free rank-2 Lie algebra + central element).
        assert_eq!(q.dimensions(), vec![1, 3, 7, 15, 31]);
        for (d, dim) in q.dimensions().iter().enumerate() {
            assert_eq!(*dim, (1usize << (d + 1)) - 1);
        }
    }

    #[test]
    fn reduce_is_idempotent_and_kills_ideal() {
        let q = QuotientAlgebra::drinfeld_kohno_t3(3);
        let ab = q.alphabet().clone();
        let t12 = NCSeries::generator(&ab, 3, 0);
        let t13 = NCSeries::generator(&ab, 3, 1);
        let t23 = NCSeries::generator(&ab, 3, 2);
        let relator = commutator(&t12, &(&t13 + &t23));
        // Products m1 * r * m2 reduce to zero.
        let padded = &(&t23 * &relator) + &relator;
        assert!(q.reduce(&padded).unwrap().is_zero());
        // Idempotence on a non-ideal element.
        let s = &(&t12 * &t13) + &t23;
        let reduced = q.reduce(&s).unwrap();
        assert_eq!(q.reduce(&reduced).unwrap(), reduced);
        // The central element stays nonzero in the quotient.
        let central = &(&t12 + &t13) + &t23;
        assert!(!q.reduce(&central).unwrap().is_zero());
    }

    #[test]
    fn reduce_is_linear() {
        let q = QuotientAlgebra::drinfeld_kohno_t3(3);
        let ab = q.alphabet().clone();
        let t12 = NCSeries::generator(&ab, 3, 0);
        let t13 = NCSeries::generator(&ab, 3, 1);
        let a = &t12 * &(&t13 + &t12);
        let b = &t13 * &t12;
        let lhs = q.reduce(&(&a.scale(&int(3)) + &b)).unwrap();
        let rhs = &q.reduce(&a).unwrap().scale(&int(3)) + &q.reduce(&b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn t4_low_degree_dimensions() {
        // Poincare series 1/((1-t)(1-2t)(1-3t)): 1, 6, 25, 90.
        let q = QuotientAlgebra::drinfeld_kohno_t4(3);
        assert_eq!(q.dimensions(), vec![1, 6, 25, 90]);
    }

    #[test]
    fn rejects_inhomogeneous_relator() {
        let ab = Alphabet::t3();
        let t12 = NCSeries::generator(&ab, 3, 0);
        let t13 = NCSeries::generator(&ab, 3, 1);
        let bad = &(&t12 * &t13) + &t12;
        let err = QuotientAlgebra::new(&ab, 3, vec![bad]);
        assert!(matches!(err, Err(QuotientError::InhomogeneousRelator { index: 0 })));
        let zero = NCSeries::zero(&ab, 3);
        assert!(matches!(
            QuotientAlgebra::new(&ab, 3, vec![zero]),
            Err(QuotientError::ZeroRelator { index: 0 })
        ));
    }

    #[test]
    fn reduce_checks_context() {
        let q = QuotientAlgebra::drinfeld_kohno_t3(3);
        let other = NCSeries::generator(&Alphabet::xy(), 3, 0);
        assert!(q.reduce(&other).is_err());
        let wrong_trunc = NCSeries::generator(&Alphabet::t3(), 2, 0);
        assert!(q.reduce(&wrong_trunc).is_err());
    }
}
