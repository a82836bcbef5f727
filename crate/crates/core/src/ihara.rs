//! Ihara bracket on the free Lie algebra over x, y, the b5 commutation
//! condition, and Lie-Poisson brackets of polynomial functions on the dual
//! of a finite-dimensional metrized Lie algebra, with the evaluation map
//! turning a Lie word into such a function.
//!
//! Bracket convention, fixed here once: {f, g} = D_f(g) - D_g(f) + [f, g]
//! where D_f is the derivation with D_f(x) = 0, D_f(y) = [y, f].  On a
//! degree-1 element D agrees with an adjoint action, so degree-1 elements
//! are central and b5 only has content from degree 2 up.

use crate::hopf::Tensor3;
use crate::lie::{standard_factorization, LieElement, LieError};
use crate::linalg::invert_dense;
use crate::scalar::Scalar;
use crate::series::{commutator, NCSeries, SeriesError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IharaError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("the bracket convention needs exactly two generators")]
    TwoGenerators,
    #[error("{0}")]
    Shape(String),
    #[error("bracket table is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails at ({i}, {j}, {k})")]
    JacobiFails { i: usize, j: usize, k: usize },
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("metric is degenerate")]
    MetricDegenerate,
    #[error("metric is not invariant at ({i}, {j}, {k})")]
    MetricNotInvariant { i: usize, j: usize, k: usize },
}

/// Derivation extension: each letter of each monomial is replaced in place
/// by its image, everything else fixed.
fn apply_derivation(s: &NCSeries, images: &[NCSeries]) -> NCSeries {
    let al = s.alphabet();
    let n = s.truncation();
    let mut out = NCSeries::zero(al, n);
    for (m, c) in s.terms() {
        let letters = m.letters();
        for (i, l) in letters.iter().enumerate() {
            let prefix = crate::alphabet::Monomial::new(al, letters[..i].to_vec());
            let suffix = crate::alphabet::Monomial::new(al, letters[i + 1..].to_vec());
            for (im, ic) in images[*l as usize].terms() {
                let word = prefix.concat(im).concat(&suffix);
                if word.degree() <= n {
                    out.add_term(word, c * ic);
                }
            }
        }
    }
    out
}

/// Images of x, y under D_f.
fn derivation_images(f: &NCSeries) -> Vec<NCSeries> {
    let y = NCSeries::generator(f.alphabet(), f.truncation(), 1);
    vec![NCSeries::zero(f.alphabet(), f.truncation()), commutator(&y, f)]
}

/// {f, g} = D_f(g) - D_g(f) + [f, g].
pub fn ihara_bracket(f: &LieElement, g: &LieElement) -> Result<LieElement, IharaError> {
    if f.alphabet().len() != 2 {
        return Err(IharaError::TwoGenerators);
    }
    let fs = f.embed();
    let gs = g.embed();
    fs.check_compatible(&gs)?;
    let d_f_of_g = apply_derivation(&gs, &derivation_images(&fs));
    let d_g_of_f = apply_derivation(&fs, &derivation_images(&gs));
    let total = &(&d_f_of_g - &d_g_of_f) + &commutator(&fs, &gs);
    Ok(LieElement::project(&total)?)
}

/// Vanishing of the bracket; `plain_bracket` switches the Ihara bracket for
/// the free Lie bracket.
pub fn check_b5(f: &LieElement, h: &LieElement, plain_bracket: bool) -> Result<bool, IharaError> {
    let b = if plain_bracket { f.bracket(h)? } else { ihara_bracket(f, h)? };
    Ok(b.is_zero())
}

/// Polynomial in the coordinate functions on the dual space; canonical
/// sorted-exponent form, no zero terms stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFunction {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl PolyFunction {
    pub fn zero(vars: usize) -> Self {
        PolyFunction { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    /// The coordinate function xi_i.
    pub fn coordinate(vars: usize, i: usize) -> Self {
        assert!(i < vars, "coordinate index");
        let mut expo = vec![0; vars];
        expo[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(expo, Scalar::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Scalar)>>(vars: usize, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expo: &[u32]) -> Scalar {
        self.terms.get(expo).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: Scalar) {
        assert_eq!(expo.len(), self.vars, "exponent length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(expo);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero(self.vars);
        }
        PolyFunction {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// d/d xi_i.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.vars, "coordinate index");
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut lowered = e.clone();
            lowered[i] -= 1;
            out.add_term(lowered, c * &crate::scalar::int(e[i] as i64));
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Terms as "coeff * label^k" strings, constant term as bare scalar.
    pub fn render(&self, labels: &[String]) -> Vec<String> {
        assert_eq!(labels.len(), self.vars, "label count");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut parts = vec![crate::scalar::format_scalar(c)];
                for (i, k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(labels[i].clone()),
                        _ => parts.push(format!("{}^{}", labels[i], k)),
                    }
                }
                parts.join(" * ")
            })
            .collect()
    }
}

impl Add for &PolyFunction {
    type Output = PolyFunction;
    fn add(self, rhs: &PolyFunction) -> PolyFunction {
        assert_eq!(self.vars, rhs.vars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyFunction {
    type Output = PolyFunction;
    fn sub(self, rhs: &PolyFunction) -> PolyFunction {
        self + &rhs.neg()
    }
}

impl Neg for &PolyFunction {
    type Output = PolyFunction;
    fn neg(self) -> PolyFunction {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &PolyFunction {
    type Output = PolyFunction;
    fn mul(self, rhs: &PolyFunction) -> PolyFunction {
        assert_eq!(self.vars, rhs.vars, "variable count");
        let mut out = PolyFunction::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let expo = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, ca * cb);
            }
        }
        out
    }
}

/// Finite-dimensional Lie algebra with an invariant inner product; all
/// axioms are verified exhaustively on construction.
///
/// bracket[i][j][k] is the coefficient of e_k in [e_i, e_j]; the metric is
/// row-major symmetric, its inverse is kept for the quadratic Casimir.
#[derive(Debug, Clone)]
pub struct MetrizedLieAlgebra {
    dim: usize,
    basis: Vec<String>,
    bracket: Tensor3,
    metric: Vec<Scalar>,
    metric_inv: Vec<Scalar>,
}

impl MetrizedLieAlgebra {
    pub fn new(
        basis: Vec<String>,
        bracket: Tensor3,
        metric: Vec<Scalar>,
    ) -> Result<Self, IharaError> {
        let m = basis.len();
        if bracket.n() != m {
            return Err(IharaError::Shape("bracket table does not match basis size".into()));
        }
        if metric.len() != m * m {
            return Err(IharaError::Shape("metric does not match basis size".into()));
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if *bracket.get(i, j, k) != -bracket.get(j, i, k) {
                        return Err(IharaError::NotAntisymmetric { i, j });
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let mut sum = Scalar::zero();
                        for mid in 0..m {
                            sum += bracket.get(i, j, mid) * bracket.get(mid, k, l);
                            sum += bracket.get(j, k, mid) * bracket.get(mid, i, l);
                            sum += bracket.get(k, i, mid) * bracket.get(mid, j, l);
                        }
                        if !sum.is_zero() {
                            return Err(IharaError::JacobiFails { i, j, k });
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                if metric[i * m + j] != metric[j * m + i] {
                    return Err(IharaError::MetricNotSymmetric);
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut lhs = Scalar::zero();
                    let mut rhs = Scalar::zero();
                    for mid in 0..m {
                        lhs += bracket.get(i, j, mid) * &metric[mid * m + k];
                        rhs += bracket.get(j, k, mid) * &metric[i * m + mid];
                    }
                    if lhs != rhs {
                        return Err(IharaError::MetricNotInvariant { i, j, k });
                    }
                }
            }
        }
        let metric_inv = invert_dense(m, &metric).ok_or(IharaError::MetricDegenerate)?;
        Ok(MetrizedLieAlgebra { dim: m, basis, bracket, metric, metric_inv })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.bracket.get(i, j, k)
    }

    pub fn bracket_tensor(&self) -> &Tensor3 {
        &self.bracket
    }

    pub fn metric(&self) -> &[Scalar] {
        &self.metric
    }

    /// Bracket of two algebra-valued polynomial vectors.
    pub fn bracket_vectors(&self, u: &[PolyFunction], v: &[PolyFunction]) -> Vec<PolyFunction> {
        let m = self.dim;
        (0..m)
            .map(|k| {
                let mut out = PolyFunction::zero(m);
                for i in 0..m {
                    for j in 0..m {
                        let c = self.bracket.get(i, j, k);
                        if !c.is_zero() {
                            out = &out + &(&u[i] * &v[j]).scale(c);
                        }
                    }
                }
                out
            })
            .collect()
    }

    /// The tautological assignment xi |-> sum_i xi_i e_i.
    pub fn coordinate_assignment(&self) -> Vec<PolyFunction> {
        (0..self.dim).map(|i| PolyFunction::coordinate(self.dim, i)).collect()
    }

    /// The constant assignment xi |-> e_k.
    pub fn constant_assignment(&self, k: usize) -> Vec<PolyFunction> {
        (0..self.dim)
            .map(|i| {
                if i == k {
                    PolyFunction::constant(self.dim, Scalar::one())
                } else {
                    PolyFunction::zero(self.dim)
                }
            })
            .collect()
    }

    /// Index raising xi |-> sum_{ij} g^{ij} xi_j e_i; sends x to the
    /// Casimir under evaluation.
    pub fn raising_assignment(&self) -> Vec<PolyFunction> {
        let m = self.dim;
        (0..m)
            .map(|i| {
                let mut p = PolyFunction::zero(m);
                for j in 0..m {
                    p = &p + &PolyFunction::coordinate(m, j).scale(&self.metric_inv[i * m + j]);
                }
                p
            })
            .collect()
    }

    /// Quadratic Casimir sum_{ij} g^{ij} xi_i xi_j; Poisson-central by
    /// metric invariance.
    pub fn casimir(&self) -> PolyFunction {
        let m = self.dim;
        let mut out = PolyFunction::zero(m);
        for i in 0..m {
            for j in 0..m {
                let c = &self.metric_inv[i * m + j];
                if !c.is_zero() {
                    let prod = &PolyFunction::coordinate(m, i) * &PolyFunction::coordinate(m, j);
                    out = &out + &prod.scale(c);
                }
            }
        }
        out
    }
}

/// Lie-Poisson bracket {F, G} = sum c[i][j][k] xi_k dF/dxi_i dG/dxi_j.
pub fn kirillov_bracket(
    f: &PolyFunction,
    g: &PolyFunction,
    alg: &MetrizedLieAlgebra,
) -> PolyFunction {
    let m = alg.dim();
    assert_eq!(f.vars(), m, "variable count");
    assert_eq!(g.vars(), m, "variable count");
    let mut out = PolyFunction::zero(m);
    for i in 0..m {
        let df = f.partial(i);
        if df.is_zero() {
            continue;
        }
        for j in 0..m {
            let dg = g.partial(j);
            if dg.is_zero() {
                continue;
            }
            let prod = &df * &dg;
            for k in 0..m {
                let c = alg.structure_constant(i, j, k);
                if !c.is_zero() {
                    out = &out + &(&prod * &PolyFunction::coordinate(m, k)).scale(c);
                }
            }
        }
    }
    out
}

/// Standard bracketing of a Lyndon word evaluated in the algebra, letters
/// sent to the assignment vectors.
fn eval_word(
    alg: &MetrizedLieAlgebra,
    a: &[PolyFunction],
    b: &[PolyFunction],
    w: &[u8],
    memo: &mut BTreeMap<Vec<u8>, Vec<PolyFunction>>,
) -> Vec<PolyFunction> {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let value = if w.len() == 1 {
        if w[0] == 0 { a.to_vec() } else { b.to_vec() }
    } else {
        let (u, v) = standard_factorization(w);
        let lu = eval_word(alg, a, b, &u, memo);
        let lv = eval_word(alg, a, b, &v, memo);
        alg.bracket_vectors(&lu, &lv)
    };
    memo.insert(w.to_vec(), value.clone());
    value
}

/// Evaluation f |-> f_g: substitute x -> a(xi), y -> b(xi) through the
/// algebra bracket and pair the result with xi, giving
/// f_g(xi) = sum_k f(a, b)_k xi_k.  Linear in f.
pub fn evaluate_on_g(
    f: &LieElement,
    alg: &MetrizedLieAlgebra,
    a: &[PolyFunction],
    b: &[PolyFunction],
) -> Result<PolyFunction, IharaError> {
    if f.alphabet().len() != 2 {
        return Err(IharaError::TwoGenerators);
    }
    let m = alg.dim();
    for assignment in [a, b] {
        if assignment.len() != m || assignment.iter().any(|p| p.vars() != m) {
            return Err(IharaError::Shape("assignment does not match algebra dimension".into()));
        }
    }
    let mut memo = BTreeMap::new();
    let mut value = vec![PolyFunction::zero(m); m];
    for (w, c) in f.coords() {
        let word = eval_word(alg, a, b, w.letters(), &mut memo);
        for (acc, comp) in value.iter_mut().zip(&word) {
            *acc = &*acc + &comp.scale(c);
        }
    }
    let mut out = PolyFunction::zero(m);
    for (k, comp) in value.iter().enumerate() {
        out = &out + &(comp * &PolyFunction::coordinate(m, k));
    }
    Ok(out)
}

/// {f_g, h_g} = 0 for the given evaluation data.
pub fn check_b5_evaluated(
    f: &LieElement,
    h: &LieElement,
    alg: &MetrizedLieAlgebra,
    a: &[PolyFunction],
    b: &[PolyFunction],
) -> Result<bool, IharaError> {
    let fg = evaluate_on_g(f, alg, a, b)?;
    let hg = evaluate_on_g(h, alg, a, b)?;
    Ok(kirillov_bracket(&fg, &hg, alg).is_zero())
}
