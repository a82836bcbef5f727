//! Pairs (f, g) of group-like series and the identities b1, b3, b4 cutting
//! out the self-dual pair algebra, with the projector chi = psi^{-1} phi, a
//! degree-by-degree solver for b4, formal pair combinations, their
//! composition, and the projection onto first components.
//!
//! Everything is exact at the shared truncation.  Over the rationals the
//! only series with constant term 1 squaring to 1 is 1 itself, so b1 forces
//! phi = psi and the b4 solution set for a fixed f is exactly {f}; the
//! solver derives this per degree instead of assuming it.

use crate::alphabet::{monomials_of_degree, Alphabet, Monomial};
use crate::exec;
use crate::gtrel::{gt_compose, GTElement, GTError};
use crate::linalg::{solve_affine, AffineSolution, SparseRow};
use crate::scalar::Scalar;
use crate::series::{NCSeries, SeriesError};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HGTError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Gt(#[from] GTError),
    #[error("components must live in the two-letter alphabet X, Y")]
    WrongAlphabet,
    #[error("component is not group-like")]
    NotGrouplike,
}

/// Pair of group-like series over X, Y at a shared truncation.
///
/// The second component stands for a formally dualized element; at
/// truncation the dualization is carried by the composition law, so the
/// pair stores two plain series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGTPair {
    pub f: NCSeries,
    pub g: NCSeries,
}

impl HGTPair {
    pub fn new(f: NCSeries, g: NCSeries) -> Result<Self, HGTError> {
        if f.alphabet().names() != ["X", "Y"] {
            return Err(HGTError::WrongAlphabet);
        }
        f.check_compatible(&g)?;
        if !f.is_grouplike() || !g.is_grouplike() {
            return Err(HGTError::NotGrouplike);
        }
        Ok(HGTPair { f, g })
    }

    /// The pair (1, 1).
    pub fn identity(truncation: u32) -> Self {
        let one = NCSeries::one(&Alphabet::xy(), truncation);
        HGTPair { f: one.clone(), g: one }
    }

    pub fn truncation(&self) -> u32 {
        self.f.truncation()
    }

    /// (f, g) -> (g, f); an involution preserving the b4 verdict.
    pub fn swap(&self) -> HGTPair {
        HGTPair { f: self.g.clone(), g: self.f.clone() }
    }
}

/// psi^{-1} phi.
pub fn chi(phi: &NCSeries, psi: &NCSeries) -> Result<NCSeries, SeriesError> {
    psi.inverse()?.checked_mul(phi)
}

/// u^2 = 1 at the truncation.
pub fn is_involution(u: &NCSeries) -> bool {
    let sq = u.checked_mul(u).expect("series is compatible with itself");
    sq == NCSeries::one(u.alphabet(), u.truncation())
}

/// psi^{-1} phi = phi^{-1} psi, exactly.
pub fn check_b1(phi: &NCSeries, psi: &NCSeries) -> Result<bool, SeriesError> {
    Ok(chi(phi, psi)? == chi(psi, phi)?)
}

/// g^{-1} chi f = f^{-1} chi^{-1} g, exactly.
pub fn check_b3(f: &NCSeries, g: &NCSeries, chi: &NCSeries) -> Result<bool, SeriesError> {
    let lhs = g.inverse()?.checked_mul(chi)?.checked_mul(f)?;
    let rhs = f.inverse()?.checked_mul(&chi.inverse()?)?.checked_mul(g)?;
    Ok(lhs == rhs)
}

/// g^{-1} f = f^{-1} g, exactly.  Equivalent to check_b3 with chi = 1.
pub fn check_b4(p: &HGTPair) -> bool {
    let lhs = p.g.inverse().and_then(|i| i.checked_mul(&p.f)).expect("pair invariant");
    let rhs = p.f.inverse().and_then(|i| i.checked_mul(&p.g)).expect("pair invariant");
    lhs == rhs
}

/// g^{-1} f - f^{-1} g for the current candidate; zero iff b4 holds.
fn b4_residual(f: &NCSeries, g: &NCSeries) -> NCSeries {
    let lhs = g.inverse().and_then(|i| i.checked_mul(f)).expect("unit constant terms");
    let rhs = f.inverse().and_then(|i| i.checked_mul(g)).expect("unit constant terms");
    lhs.checked_sub(&rhs).expect("same context")
}

/// Affine description of the degree-d part of log g extending the fixed
/// lower degrees; `solution` is None when infeasible.
#[derive(Debug, Clone)]
pub struct B4DegreeSolution {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub solution: Option<AffineSolution>,
}

#[derive(Debug, Clone)]
pub struct B4Solution {
    pub truncation: u32,
    pub degrees: Vec<B4DegreeSolution>,
    /// Canonical solution (free coefficients zero) when every degree was
    /// feasible.
    pub g: Option<NCSeries>,
}

impl B4Solution {
    /// Every degree feasible with empty nullspace.
    pub fn unique(&self) -> bool {
        self.g.is_some()
            && self.degrees.iter().all(|d| d.solution.as_ref().is_some_and(|s| s.is_unique()))
    }
}

/// Solves g^{-1} f = f^{-1} g for g degree by degree in the coefficients of
/// log g.  The degree-d residual is affine in the degree-d coefficients
/// (quadratic interaction starts at degree 2d), so probing at the zero
/// vector and at unit vectors yields exact constraint rows.
pub fn solve_b4(f: &NCSeries) -> Result<B4Solution, HGTError> {
    if !f.is_grouplike() {
        return Err(HGTError::NotGrouplike);
    }
    let al = f.alphabet();
    let n = f.truncation();
    let mut log_g = NCSeries::zero(al, n);
    let mut degrees = Vec::new();
    let mut feasible = true;

    for d in 1..=n {
        let monos = monomials_of_degree(al, d);
        let k = monos.len();
        let base_log = log_g.truncated(d);
        let f_d = f.truncated(d);

        let eval = |coeffs: &[Scalar]| -> NCSeries {
            let mut cand_log = base_log.clone();
            for (m, c) in monos.iter().zip(coeffs) {
                cand_log.add_term(m.clone(), c.clone());
            }
            let g = cand_log.exp().expect("zero constant term");
            b4_residual(&f_d, &g).homogeneous(d)
        };

        let zero_probe = eval(&vec![Scalar::zero(); k]);
        let unit_probes = exec::map_indices(k, |i| {
            let mut coeffs = vec![Scalar::zero(); k];
            coeffs[i] = Scalar::one();
            eval(&coeffs)
        });

        let rows: Vec<(SparseRow, Scalar)> = monos
            .iter()
            .map(|m| {
                let base_val = zero_probe.coeff(m);
                let row: SparseRow = unit_probes
                    .iter()
                    .enumerate()
                    .filter_map(|(i, p)| {
                        let v = p.coeff(m) - &base_val;
                        (!v.is_zero()).then_some((i, v))
                    })
                    .collect();
                (row, -base_val)
            })
            .collect();

        let solution = solve_affine(k, &rows);
        match &solution {
            Some(s) => {
                for (m, c) in monos.iter().zip(&s.particular) {
                    if !c.is_zero() {
                        log_g.add_term(m.clone(), c.clone());
                    }
                }
            }
            None => feasible = false,
        }
        degrees.push(B4DegreeSolution { degree: d, monomials: monos, solution });
        if !feasible {
            break;
        }
    }

    let g = feasible.then(|| log_g.exp().expect("zero constant term"));
    Ok(B4Solution { truncation: n, degrees, g })
}

/// Formal rational combination of distinct pairs; duplicates merge and zero
/// coefficients are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGTCombination {
    terms: Vec<(Scalar, HGTPair)>,
}

impl HGTCombination {
    pub fn new(terms: Vec<(Scalar, HGTPair)>) -> Result<Self, HGTError> {
        let mut first: Option<u32> = None;
        for (_, p) in &terms {
            match first {
                None => first = Some(p.truncation()),
                Some(n) if n != p.truncation() => {
                    return Err(SeriesError::TruncationMismatch {
                        left: n,
                        right: p.truncation(),
                    }
                    .into())
                }
                Some(_) => {}
            }
        }
        Ok(Self::normalized(terms))
    }

    fn normalized(terms: Vec<(Scalar, HGTPair)>) -> Self {
        let mut merged: Vec<(Scalar, HGTPair)> = Vec::new();
        for (c, p) in terms {
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((acc, _)) => *acc = &*acc + &c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        HGTCombination { terms: merged }
    }

    /// The single pair (1, 1) with coefficient 1.
    pub fn identity(truncation: u32) -> Self {
        HGTCombination { terms: vec![(Scalar::one(), HGTPair::identity(truncation))] }
    }

    pub fn terms(&self) -> &[(Scalar, HGTPair)] {
        &self.terms
    }
}

/// First-component law: f1(g X g^{-1}, Y) g with g the right factor.
fn compose_first(f1: &NCSeries, f2: &NCSeries) -> Result<NCSeries, HGTError> {
    let a = GTElement::new(Scalar::one(), f1.clone())?;
    let b = GTElement::new(Scalar::one(), f2.clone())?;
    Ok(gt_compose(&a, &b)?.f)
}

/// Composed combination plus the term products whose pair failed b4.
///
/// Violations are (left index, right index) into the input term lists;
/// the violating pairs stay in the result so nothing is silently dropped.
#[derive(Debug, Clone)]
pub struct ComposeOutcome {
    pub combination: HGTCombination,
    pub violations: Vec<(usize, usize)>,
}

/// Bilinear composition: first components compose by the group law, second
/// components by the opposite law (the function-algebra side), and each
/// composed pair is re-tested against b4.
pub fn compose(a: &HGTCombination, b: &HGTCombination) -> Result<ComposeOutcome, HGTError> {
    let mut terms = Vec::new();
    let mut violations = Vec::new();
    for (i, (ca, pa)) in a.terms.iter().enumerate() {
        for (j, (cb, pb)) in b.terms.iter().enumerate() {
            let f = compose_first(&pa.f, &pb.f)?;
            let g = compose_first(&pb.g, &pa.g)?;
            let pair = HGTPair::new(f, g)?;
            if !check_b4(&pair) {
                violations.push((i, j));
            }
            terms.push((ca * cb, pair));
        }
    }
    Ok(ComposeOutcome { combination: HGTCombination::normalized(terms), violations })
}

/// Formal rational combination of group elements, the target of
/// project_first; same normalization as pair combinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCombination {
    terms: Vec<(Scalar, NCSeries)>,
}

impl SeriesCombination {
    fn normalized(terms: Vec<(Scalar, NCSeries)>) -> Self {
        let mut merged: Vec<(Scalar, NCSeries)> = Vec::new();
        for (c, s) in terms {
            match merged.iter_mut().find(|(_, t)| *t == s) {
                Some((acc, _)) => *acc = &*acc + &c,
                None => merged.push((c, s)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        SeriesCombination { terms: merged }
    }

    pub fn terms(&self) -> &[(Scalar, NCSeries)] {
        &self.terms
    }

    /// Bilinear extension of the first-component law.
    pub fn compose(&self, other: &SeriesCombination) -> Result<SeriesCombination, HGTError> {
        let mut terms = Vec::new();
        for (ca, fa) in &self.terms {
            for (cb, fb) in &other.terms {
                terms.push((ca * cb, compose_first(fa, fb)?));
            }
        }
        Ok(Self::normalized(terms))
    }
}

/// Drops second components; multiplicative for `compose`.
pub fn project_first(c: &HGTCombination) -> SeriesCombination {
    SeriesCombination::normalized(
        c.terms.iter().map(|(coef, p)| (coef.clone(), p.f.clone())).collect(),
    )
}
