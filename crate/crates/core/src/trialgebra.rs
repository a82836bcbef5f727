//! Algebras with two products tied by the interchange law, their
//! two-coproduct refinement, and the Eckmann-Hilton collapse.
//!
//! The second product * may be partial: a basis-pair mask says where it is
//! defined and everything extends bilinearly.  An axiom instance is checked
//! only when every product occurrence in it lands on masked pairs; skipped
//! instances are counted in the report, so a nowhere-defined * passes
//! vacuously but visibly.

use crate::hopf::{
    comult_slices_of, format_vec, mask_defined, scan, tensor_sq_mul, AxiomCheck, CheckReport,
    HopfData, RMatrix, Tensor3,
};
use crate::hopf::{check_coquasitriangular_masked, check_quasitriangular};
use crate::linalg::{invert_dense, solve_affine, SparseRow};
use crate::scalar::Scalar;
use num_traits::{One, Zero};

/// Bilinear form playing the coquasitriangular role; same storage as an
/// R-matrix, entries r(e_i, e_j).
pub type CoquasiForm = RMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TrialgebraError {
    #[error("{what} has wrong shape: expected {expected} entries, got {got}")]
    Shape { what: &'static str, expected: usize, got: usize },
    #[error("pairing matrix is degenerate")]
    DegeneratePairing,
    #[error("hypothesis failed: {hypothesis} (witness {witness:?})")]
    HypothesisFailed { hypothesis: String, witness: Vec<usize> },
}

/// Two products, one possibly partial, sharing one coproduct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialgebraData {
    pub dim: usize,
    pub basis: Vec<String>,
    pub star_mult: Tensor3,
    /// star_mask[i][j] says whether e_i * e_j is defined.
    pub star_mask: Vec<Vec<bool>>,
    pub dot_mult: Tensor3,
    pub comult: Tensor3,
    pub counit: Vec<Scalar>,
}

impl TrialgebraData {
    pub fn new(
        basis: Vec<String>,
        star_mult: Tensor3,
        star_mask: Vec<Vec<bool>>,
        dot_mult: Tensor3,
        comult: Tensor3,
        counit: Vec<Scalar>,
    ) -> Result<Self, TrialgebraError> {
        let n = basis.len();
        for (what, len, expected) in [
            ("star tensor", star_mult.data().len(), n * n * n),
            ("dot tensor", dot_mult.data().len(), n * n * n),
            ("comult tensor", comult.data().len(), n * n * n),
            ("counit vector", counit.len(), n),
            ("star mask", star_mask.len(), n),
        ] {
            if len != expected {
                return Err(TrialgebraError::Shape { what, expected, got: len });
            }
        }
        for row in &star_mask {
            if row.len() != n {
                return Err(TrialgebraError::Shape {
                    what: "star mask row",
                    expected: n,
                    got: row.len(),
                });
            }
        }
        Ok(TrialgebraData { dim: n, basis, star_mult, star_mask, dot_mult, comult, counit })
    }
}

/// Two total products and two coproducts with their counits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraalgebraData {
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult1: Tensor3,
    pub mult2: Tensor3,
    pub comult1: Tensor3,
    pub comult2: Tensor3,
    pub counit1: Vec<Scalar>,
    pub counit2: Vec<Scalar>,
}

impl QuadraalgebraData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        basis: Vec<String>,
        mult1: Tensor3,
        mult2: Tensor3,
        comult1: Tensor3,
        comult2: Tensor3,
        counit1: Vec<Scalar>,
        counit2: Vec<Scalar>,
    ) -> Result<Self, TrialgebraError> {
        let n = basis.len();
        for (what, len, expected) in [
            ("first mult tensor", mult1.data().len(), n * n * n),
            ("second mult tensor", mult2.data().len(), n * n * n),
            ("first comult tensor", comult1.data().len(), n * n * n),
            ("second comult tensor", comult2.data().len(), n * n * n),
            ("first counit vector", counit1.len(), n),
            ("second counit vector", counit2.len(), n),
        ] {
            if len != expected {
                return Err(TrialgebraError::Shape { what, expected, got: len });
            }
        }
        Ok(QuadraalgebraData { dim: n, basis, mult1, mult2, comult1, comult2, counit1, counit2 })
    }
}

type Mask<'a> = Option<&'a [Vec<bool>]>;

/// True when every product occurrence in m(m(i,j),k) resp. m(i,m(j,k)) is
/// masked-defined.
fn assoc_defined(mult: &Tensor3, mask: Mask, i: usize, j: usize, k: usize) -> bool {
    let left = mask_defined(mask, i, j)
        && mult
            .slice(i, j)
            .iter()
            .enumerate()
            .all(|(m, c)| c.is_zero() || mask_defined(mask, m, k));
    let right = mask_defined(mask, j, k)
        && mult
            .slice(j, k)
            .iter()
            .enumerate()
            .all(|(m, c)| c.is_zero() || mask_defined(mask, i, m));
    left && right
}

/// Associativity, coproduct compatibility, and counit compatibility for one
/// product, restricted to mask-defined instances.
fn product_checks(
    tag: &str,
    n: usize,
    mult: &Tensor3,
    mask: Mask,
    slices: &[Vec<(usize, usize, Scalar)>],
    counit: &[Scalar],
) -> Vec<AxiomCheck> {
    let mut checks = Vec::new();

    let skipped_assoc = (0..n * n * n)
        .filter(|idx| !assoc_defined(mult, mask, idx / (n * n), (idx / n) % n, idx % n))
        .count();
    let mut check = scan(&format!("{tag} associativity"), n * n * n, |idx| {
        let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
        if !assoc_defined(mult, mask, i, j, k) {
            return None;
        }
        let mut lhs = vec![Scalar::zero(); n];
        for (m, c) in mult.slice(i, j).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (q, d) in mult.slice(m, k).iter().enumerate() {
                if !d.is_zero() {
                    lhs[q] += c * d;
                }
            }
        }
        let mut rhs = vec![Scalar::zero(); n];
        for (m, c) in mult.slice(j, k).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (q, d) in mult.slice(i, m).iter().enumerate() {
                if !d.is_zero() {
                    rhs[q] += c * d;
                }
            }
        }
        (lhs != rhs).then(|| {
            (vec![i, j, k], format!("lhs = {}, rhs = {}", format_vec(&lhs), format_vec(&rhs)))
        })
    });
    check.skipped = skipped_assoc;
    checks.push(check);

    let compat_defined = |i: usize, j: usize| -> bool {
        mask_defined(mask, i, j)
            && slices[i].iter().all(|(p, q, _)| {
                slices[j].iter().all(|(r, s, _)| {
                    mask_defined(mask, *p, *r) && mask_defined(mask, *q, *s)
                })
            })
    };
    let skipped_compat =
        (0..n * n).filter(|idx| !compat_defined(idx / n, idx % n)).count();
    let mut check = scan(&format!("{tag} coproduct compatibility"), n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        if !compat_defined(i, j) {
            return None;
        }
        let mut lhs = vec![Scalar::zero(); n * n];
        for (k, c) in mult.slice(i, j).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (p, q, d) in &slices[k] {
                lhs[p * n + q] += c * d;
            }
        }
        let mut rhs = vec![Scalar::zero(); n * n];
        for (a, b, ca) in &slices[i] {
            for (c, d, cb) in &slices[j] {
                let w = ca * cb;
                for (p, mp) in mult.slice(*a, *c).iter().enumerate() {
                    if mp.is_zero() {
                        continue;
                    }
                    for (q, mq) in mult.slice(*b, *d).iter().enumerate() {
                        if !mq.is_zero() {
                            rhs[p * n + q] += &(&w * mp) * mq;
                        }
                    }
                }
            }
        }
        (lhs != rhs)
            .then(|| (vec![i, j], format!("Delta(e{i} e{j}) != Delta(e{i}) Delta(e{j})")))
    });
    check.skipped = skipped_compat;
    checks.push(check);

    let skipped_counit = (0..n * n).filter(|idx| !mask_defined(mask, idx / n, idx % n)).count();
    let mut check = scan(&format!("{tag} counit compatibility"), n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        if !mask_defined(mask, i, j) {
            return None;
        }
        let lhs: Scalar =
            mult.slice(i, j).iter().enumerate().map(|(k, c)| c * &counit[k]).sum();
        let rhs = &counit[i] * &counit[j];
        (lhs != rhs).then(|| (vec![i, j], String::new()))
    });
    check.skipped = skipped_counit;
    checks.push(check);

    checks
}

fn coalgebra_checks(
    n: usize,
    slices: &[Vec<(usize, usize, Scalar)>],
    counit: &[Scalar],
) -> Vec<AxiomCheck> {
    let mut checks = Vec::new();
    checks.push(scan("coassociativity", n, |k| {
        let mut lhs: std::collections::BTreeMap<(usize, usize, usize), Scalar> = Default::default();
        let mut rhs = lhs.clone();
        for (i, j, c) in &slices[k] {
            for (a, b, d) in &slices[*i] {
                *lhs.entry((*a, *b, *j)).or_insert_with(Scalar::zero) += c * d;
            }
            for (a, b, d) in &slices[*j] {
                *rhs.entry((*i, *a, *b)).or_insert_with(Scalar::zero) += c * d;
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        (lhs != rhs).then(|| (vec![k], String::new()))
    }));
    checks.push(scan("left counit", n, |k| {
        let mut v = vec![Scalar::zero(); n];
        for (i, j, c) in &slices[k] {
            v[*j] += &counit[*i] * c;
        }
        let mut e = vec![Scalar::zero(); n];
        e[k] = Scalar::one();
        (v != e).then(|| (vec![k], format_vec(&v)))
    }));
    checks.push(scan("right counit", n, |k| {
        let mut v = vec![Scalar::zero(); n];
        for (i, j, c) in &slices[k] {
            v[*i] += &counit[*j] * c;
        }
        let mut e = vec![Scalar::zero(); n];
        e[k] = Scalar::one();
        (v != e).then(|| (vec![k], format_vec(&v)))
    }));
    checks
}

/// True when both sides of the interchange instance (i, j, k, l) are defined:
/// the star products on the left, and the star of the two dot products on the
/// right.
fn interchange_defined(t: &TrialgebraData, i: usize, j: usize, k: usize, l: usize) -> bool {
    let mask = Some(t.star_mask.as_slice());
    if !mask_defined(mask, i, j) || !mask_defined(mask, k, l) {
        return false;
    }
    t.dot_mult.slice(i, k).iter().enumerate().all(|(p, cp)| {
        cp.is_zero()
            || t.dot_mult
                .slice(j, l)
                .iter()
                .enumerate()
                .all(|(q, cq)| cq.is_zero() || mask_defined(mask, p, q))
    })
}

/// (a * b) . (c * d) on basis quadruples, as a coordinate vector.
fn interchange_lhs(t: &TrialgebraData, i: usize, j: usize, k: usize, l: usize) -> Vec<Scalar> {
    let n = t.dim;
    let mut out = vec![Scalar::zero(); n];
    for (p, cp) in t.star_mult.slice(i, j).iter().enumerate() {
        if cp.is_zero() {
            continue;
        }
        for (q, cq) in t.star_mult.slice(k, l).iter().enumerate() {
            if cq.is_zero() {
                continue;
            }
            let w = cp * cq;
            for (r, m) in t.dot_mult.slice(p, q).iter().enumerate() {
                if !m.is_zero() {
                    out[r] += &w * m;
                }
            }
        }
    }
    out
}

/// (a . c) * (b . d) on basis quadruples.
fn interchange_rhs(t: &TrialgebraData, i: usize, j: usize, k: usize, l: usize) -> Vec<Scalar> {
    let n = t.dim;
    let mut out = vec![Scalar::zero(); n];
    for (p, cp) in t.dot_mult.slice(i, k).iter().enumerate() {
        if cp.is_zero() {
            continue;
        }
        for (q, cq) in t.dot_mult.slice(j, l).iter().enumerate() {
            if cq.is_zero() {
                continue;
            }
            let w = cp * cq;
            for (r, m) in t.star_mult.slice(p, q).iter().enumerate() {
                if !m.is_zero() {
                    out[r] += &w * m;
                }
            }
        }
    }
    out
}

/// Full trialgebra verification: both products against the shared coproduct,
/// then the interchange law on every defined basis quadruple.
pub fn check_trialgebra(t: &TrialgebraData) -> CheckReport {
    let n = t.dim;
    let slices = comult_slices_of(&t.comult);
    let mask = Some(t.star_mask.as_slice());
    let mut checks = Vec::new();

    checks.extend(coalgebra_checks(n, &slices, &t.counit));
    checks.extend(product_checks("dot", n, &t.dot_mult, None, &slices, &t.counit));
    checks.extend(product_checks("star", n, &t.star_mult, mask, &slices, &t.counit));

    let skipped = (0..n * n * n * n)
        .filter(|idx| {
            let (i, j, k, l) =
                (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
            !interchange_defined(t, i, j, k, l)
        })
        .count();
    let mut check = scan("interchange", n * n * n * n, |idx| {
        let (i, j, k, l) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        if !interchange_defined(t, i, j, k, l) {
            return None;
        }
        let lhs = interchange_lhs(t, i, j, k, l);
        let rhs = interchange_rhs(t, i, j, k, l);
        (lhs != rhs).then(|| {
            (
                vec![i, j, k, l],
                format!(
                    "(e{i} * e{j}) . (e{k} * e{l}) = {}, (e{i} . e{k}) * (e{j} . e{l}) = {}",
                    format_vec(&lhs),
                    format_vec(&rhs)
                ),
            )
        })
    });
    check.skipped = skipped;
    checks.push(check);

    CheckReport { checks }
}

/// Two-sided unit of a multiplication tensor, if one exists.
pub fn solve_unit(mult: &Tensor3) -> Option<Vec<Scalar>> {
    let n = mult.n();
    let mut rows: Vec<(SparseRow, Scalar)> = Vec::new();
    for j in 0..n {
        for t in 0..n {
            let rhs = if j == t { Scalar::one() } else { Scalar::zero() };
            let left: SparseRow = (0..n)
                .filter(|i| !mult.get(*i, j, t).is_zero())
                .map(|i| (i, mult.get(i, j, t).clone()))
                .collect();
            let right: SparseRow = (0..n)
                .filter(|i| !mult.get(j, *i, t).is_zero())
                .map(|i| (i, mult.get(j, i, t).clone()))
                .collect();
            rows.push((left, rhs.clone()));
            rows.push((right, rhs));
        }
    }
    solve_affine(n, &rows).map(|s| s.particular)
}

fn mat_mul(n: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !bkj.is_zero() {
                    out[i * n + j] += aik * bkj;
                }
            }
        }
    }
    out
}

fn transpose(n: usize, a: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = a[j * n + i].clone();
        }
    }
    out
}

/// Biquasitriangularity: (A, dot, Delta) quasitriangular with R_dot,
/// (A, star, Delta) coquasitriangular with r_star, and the lift of r_star
/// through the pairing commutes with R_dot in (A x A, dot x dot).
///
/// The lift solves P^T R_hat P = r_star where P[a][i] = B(e_a, e_i), so
/// r_star(e_i, e_j) = sum R_hat[a][b] B(e_a, e_i) B(e_b, e_j).
pub fn check_biquasitriangular(
    t: &TrialgebraData,
    r_dot: &RMatrix,
    r_star: &CoquasiForm,
    pairing: &[Scalar],
) -> Result<CheckReport, TrialgebraError> {
    let n = t.dim;
    if pairing.len() != n * n {
        return Err(TrialgebraError::Shape {
            what: "pairing matrix",
            expected: n * n,
            got: pairing.len(),
        });
    }
    let p_inv = invert_dense(n, pairing).ok_or(TrialgebraError::DegeneratePairing)?;
    let pt_inv = transpose(n, &p_inv);

    let mut checks = Vec::new();
    let unit = match solve_unit(&t.dot_mult) {
        Some(u) => {
            checks.push(AxiomCheck::passed("dot product is unital"));
            u
        }
        None => {
            checks.push(AxiomCheck::failed(
                "dot product is unital",
                vec![],
                "no two-sided unit".into(),
            ));
            return Ok(CheckReport { checks });
        }
    };

    let dot_view = HopfData {
        dim: n,
        basis: t.basis.clone(),
        mult: t.dot_mult.clone(),
        unit,
        comult: t.comult.clone(),
        counit: t.counit.clone(),
        antipode: None,
    };
    checks.extend(check_quasitriangular(&dot_view, r_dot).checks);

    let star_view = HopfData {
        dim: n,
        basis: t.basis.clone(),
        mult: t.star_mult.clone(),
        unit: vec![Scalar::zero(); n],
        comult: t.comult.clone(),
        counit: t.counit.clone(),
        antipode: None,
    };
    checks.extend(
        check_coquasitriangular_masked(&star_view, r_star, Some(t.star_mask.as_slice())).checks,
    );

    let r_hat = mat_mul(n, &pt_inv, &mat_mul(n, &r_star.entries, &p_inv));
    let fwd = tensor_sq_mul(&t.dot_mult, &r_dot.entries, &r_hat);
    let bwd = tensor_sq_mul(&t.dot_mult, &r_hat, &r_dot.entries);
    if fwd == bwd {
        checks.push(AxiomCheck::passed("[R_dot, lifted r_star] = 0"));
    } else {
        checks.push(AxiomCheck::failed(
            "[R_dot, lifted r_star] = 0",
            vec![],
            format!("forward = {}, backward = {}", format_vec(&fwd), format_vec(&bwd)),
        ));
    }
    Ok(CheckReport { checks })
}

/// Quadraalgebra verification: all four (star, dot, coproduct) assignments
/// pass the trialgebra check, plus the dual interchange between the two
/// coproducts, (Delta2 x Delta2) Delta1 = swap23 (Delta1 x Delta1) Delta2.
pub fn check_quadraalgebra(q: &QuadraalgebraData) -> CheckReport {
    let n = q.dim;
    let total = vec![vec![true; n]; n];
    let mut checks = Vec::new();
    for (tag, star, dot, comult, counit) in [
        ("comult1, star = mult1", &q.mult1, &q.mult2, &q.comult1, &q.counit1),
        ("comult1, star = mult2", &q.mult2, &q.mult1, &q.comult1, &q.counit1),
        ("comult2, star = mult1", &q.mult1, &q.mult2, &q.comult2, &q.counit2),
        ("comult2, star = mult2", &q.mult2, &q.mult1, &q.comult2, &q.counit2),
    ] {
        let t = TrialgebraData {
            dim: n,
            basis: q.basis.clone(),
            star_mult: star.clone(),
            star_mask: total.clone(),
            dot_mult: dot.clone(),
            comult: comult.clone(),
            counit: counit.clone(),
        };
        for mut check in check_trialgebra(&t).checks {
            check.axiom = format!("[{tag}] {}", check.axiom);
            checks.push(check);
        }
    }

    let slices1 = comult_slices_of(&q.comult1);
    let slices2 = comult_slices_of(&q.comult2);
    checks.push(scan("co-interchange", n, |k| {
        let mut lhs: std::collections::BTreeMap<(usize, usize, usize, usize), Scalar> =
            Default::default();
        let mut rhs = lhs.clone();
        // (Delta2 x Delta2) Delta1 (e_k).
        for (m, mp, c) in &slices1[k] {
            for (a, b, d) in &slices2[*m] {
                for (e, f, g) in &slices2[*mp] {
                    *lhs.entry((*a, *b, *e, *f)).or_insert_with(Scalar::zero) += &(c * d) * g;
                }
            }
        }
        // swap23 (Delta1 x Delta1) Delta2 (e_k).
        for (m, mp, c) in &slices2[k] {
            for (a, b, d) in &slices1[*m] {
                for (e, f, g) in &slices1[*mp] {
                    *rhs.entry((*a, *e, *b, *f)).or_insert_with(Scalar::zero) += &(c * d) * g;
                }
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        rhs.retain(|_, v| !v.is_zero());
        (lhs != rhs)
            .then(|| (vec![k], "coproduct compositions differ on this basis vector".to_string()))
    }));

    CheckReport { checks }
}

/// Verdicts of the Eckmann-Hilton collapse, with the first mismatch if any.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EckmannHiltonReport {
    pub units_equal: bool,
    pub products_equal: bool,
    pub commutative: bool,
    pub witness: Option<String>,
}

impl EckmannHiltonReport {
    pub fn all_hold(&self) -> bool {
        self.units_equal && self.products_equal && self.commutative
    }
}

/// Checks the Eckmann-Hilton hypotheses (interchange between p1 and p2, u1
/// and u2 two-sided units) and then verifies the conclusions: the units
/// coincide, the products coincide, and the common product is commutative.
/// A hypothesis failure is an error, not a collapse verdict.
pub fn eckmann_hilton(
    p1: &Tensor3,
    p2: &Tensor3,
    u1: &[Scalar],
    u2: &[Scalar],
) -> Result<EckmannHiltonReport, TrialgebraError> {
    let n = p1.n();
    for (what, len, expected) in [
        ("second product tensor", p2.data().len(), n * n * n),
        ("first unit vector", u1.len(), n),
        ("second unit vector", u2.len(), n),
    ] {
        if len != expected {
            return Err(TrialgebraError::Shape { what, expected, got: len });
        }
    }

    let apply = |p: &Tensor3, a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let w = ca * cb;
                for (k, m) in p.slice(i, j).iter().enumerate() {
                    if !m.is_zero() {
                        out[k] += &w * m;
                    }
                }
            }
        }
        out
    };
    let basis = |j: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[j] = Scalar::one();
        v
    };

    for (p, u, name) in [(p1, u1, "u1 is a two-sided unit for p1"), (p2, u2, "u2 is a two-sided unit for p2")] {
        for j in 0..n {
            let e = basis(j);
            if apply(p, u, &e) != e || apply(p, &e, u) != e {
                return Err(TrialgebraError::HypothesisFailed {
                    hypothesis: name.into(),
                    witness: vec![j],
                });
            }
        }
    }

    for idx in 0..n * n * n * n {
        let (i, j, k, l) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        // (e_i p2 e_j) p1 (e_k p2 e_l) = (e_i p1 e_k) p2 (e_j p1 e_l).
        let lhs = apply(p1, &apply(p2, &basis(i), &basis(j)), &apply(p2, &basis(k), &basis(l)));
        let rhs = apply(p2, &apply(p1, &basis(i), &basis(k)), &apply(p1, &basis(j), &basis(l)));
        if lhs != rhs {
            return Err(TrialgebraError::HypothesisFailed {
                hypothesis: "interchange between p1 and p2".into(),
                witness: vec![i, j, k, l],
            });
        }
    }

    let units_equal = u1 == u2;
    let products_equal = p1 == p2;
    let mut commutative = true;
    let mut witness = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if p1.slice(i, j) != p1.slice(j, i) {
                commutative = false;
                witness = Some(format!("e{i} e{j} != e{j} e{i} under p1"));
                break 'outer;
            }
        }
    }
    if witness.is_none() {
        if !units_equal {
            witness = Some(format!("u1 = {}, u2 = {}", format_vec(u1), format_vec(u2)));
        } else if !products_equal {
            witness = Some("product tensors differ".into());
        }
    }
    Ok(EckmannHiltonReport { units_equal, products_equal, commutative, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::scalar::int;

    #[test]
    fn commutative_diagonal_trialgebras_pass() {
        for h in [z2_group_algebra(), z3_group_algebra(), klein_group_algebra()] {
            let report = check_trialgebra(&diagonal_trialgebra(&h));
            assert!(report.all_hold(), "{:?}", report.first_failure());
            assert!(report.checks.iter().all(|c| c.skipped == 0));
        }
    }

    #[test]
    fn s3_diagonal_fails_interchange_with_frozen_witness() {
        let report = check_trialgebra(&diagonal_trialgebra(&s3_group_algebra()));
        assert!(!report.all_hold());
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.axiom, "interchange");
        assert_eq!(failure.witness, Some(vec![0, 1, 3, 0]));
        // Everything except interchange holds for a group algebra.
        assert!(report.checks.iter().filter(|c| c.axiom != "interchange").all(|c| c.holds));
    }

    #[test]
    fn empty_mask_is_vacuous_but_counted() {
        let h = s3_group_algebra();
        let mut t = diagonal_trialgebra(&h);
        t.star_mask = vec![vec![false; 6]; 6];
        let report = check_trialgebra(&t);
        assert!(report.all_hold());
        let by_name = |name: &str| report.checks.iter().find(|c| c.axiom == name).unwrap();
        assert_eq!(by_name("star associativity").skipped, 6 * 6 * 6);
        assert_eq!(by_name("star coproduct compatibility").skipped, 36);
        assert_eq!(by_name("interchange").skipped, 6 * 6 * 6 * 6);
    }

    #[test]
    fn interchange_matches_brute_force_contraction() {
        // Independent evaluator: expand both star products fully, then one
        // dense dot product on the resulting vectors.
        for h in [z2_group_algebra(), s3_group_algebra(), sweedler_h4()] {
            let t = diagonal_trialgebra(&h);
            let n = t.dim;
            for idx in 0..n * n * n * n {
                let (i, j, k, l) =
                    (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
                let star_ij: Vec<Scalar> = (0..n).map(|r| t.star_mult.get(i, j, r).clone()).collect();
                let star_kl: Vec<Scalar> = (0..n).map(|r| t.star_mult.get(k, l, r).clone()).collect();
                let mut brute = vec![Scalar::zero(); n];
                for (p, cp) in star_ij.iter().enumerate() {
                    for (q, cq) in star_kl.iter().enumerate() {
                        for r in 0..n {
                            brute[r] += &(&(cp * cq) * t.dot_mult.get(p, q, r));
                        }
                    }
                }
                assert_eq!(brute, interchange_lhs(&t, i, j, k, l));
            }
        }
    }

    #[test]
    fn diagonal_quadraalgebra_passes_and_perturbation_breaks_co_interchange() {
        let q = diagonal_quadraalgebra(&z2_group_algebra());
        let report = check_quadraalgebra(&q);
        assert!(report.all_hold(), "{:?}", report.first_failure());

        let mut bad = q.clone();
        // Delta2(g) = g x g + 1 x g.
        *bad.comult2.get_mut(0, 1, 1) = int(1);
        let report = check_quadraalgebra(&bad);
        let co = report.checks.iter().find(|c| c.axiom == "co-interchange").unwrap();
        assert!(!co.holds);
        assert_eq!(co.witness, Some(vec![1]));
    }

    #[test]
    fn eckmann_hilton_on_group_algebras() {
        for h in [z2_group_algebra(), z3_group_algebra()] {
            let report = eckmann_hilton(&h.mult, &h.mult, &h.unit, &h.unit).unwrap();
            assert!(report.units_equal && report.products_equal && report.commutative);
            assert!(report.witness.is_none());
        }
    }

    #[test]
    fn eckmann_hilton_hypothesis_failures_are_errors() {
        let h = z2_group_algebra();
        let bad_unit = vec![int(0), int(1)];
        let err = eckmann_hilton(&h.mult, &h.mult, &h.unit, &bad_unit).unwrap_err();
        assert!(matches!(err, TrialgebraError::HypothesisFailed { ref hypothesis, .. }
            if hypothesis.contains("u2")));

        let s3 = s3_group_algebra();
        let err = eckmann_hilton(&s3.mult, &s3.mult, &s3.unit, &s3.unit).unwrap_err();
        assert_eq!(
            err,
            TrialgebraError::HypothesisFailed {
                hypothesis: "interchange between p1 and p2".into(),
                witness: vec![0, 1, 3, 0],
            }
        );
    }

    #[test]
    fn biquasitriangular_on_z2() {
        let t = diagonal_trialgebra(&z2_group_algebra());
        let identity_pairing = vec![int(1), int(0), int(0), int(1)];
        let fourier = CoquasiForm::new(2, z2_fourier_pairing()).unwrap();
        let report =
            check_biquasitriangular(&t, &z2_triangular_r(), &fourier, &identity_pairing).unwrap();
        assert!(report.all_hold(), "{:?}", report.first_failure());

        // r(g, g) = 2 breaks multiplicativity in the first slot.
        let bad = CoquasiForm::new(2, vec![int(1), int(1), int(1), int(2)]).unwrap();
        let report =
            check_biquasitriangular(&t, &z2_triangular_r(), &bad, &identity_pairing).unwrap();
        assert!(!report.all_hold());

        let singular = vec![int(1), int(1), int(1), int(1)];
        let err = check_biquasitriangular(&t, &z2_triangular_r(), &fourier, &singular).unwrap_err();
        assert_eq!(err, TrialgebraError::DegeneratePairing);
    }
}
