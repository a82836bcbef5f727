//! GT elements (lambda, f) at finite truncation: duality, hexagon, and
//! pentagon relations, composition, and a degree-by-degree affine solver.
//!
//! Relations are evaluated in the Magnus model x1 = exp X, x2 = exp Y,
//! x3 = (x1 x2)^{-1}, with powers x^m meaning exp(m log x) and arguments of
//! f passed through their logarithms.  The pentagon lives in the truncated
//! enveloping algebra of the four-strand Drinfeld-Kohno quotient.  Every
//! residual is an exact series; a relation holds iff its residual is zero.

use crate::alphabet::{monomials_of_degree, Alphabet, Monomial};
use crate::exec;
use crate::linalg::{solve_affine, AffineSolution, SparseRow};
use crate::quotient::QuotientAlgebra;
use crate::scalar::Scalar;
use crate::series::{NCSeries, SeriesError};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GTError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("f must live in the two-letter alphabet X, Y")]
    WrongAlphabet,
    #[error("f must have constant term 1")]
    ConstantTermNotOne,
}

/// Pair (lambda, f) with f a series over X, Y with constant term 1.
/// Group-likeness of f is a relation to check, not a construction invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTElement {
    pub lambda: Scalar,
    pub f: NCSeries,
}

impl GTElement {
    pub fn new(lambda: Scalar, f: NCSeries) -> Result<Self, GTError> {
        if f.alphabet().names() != ["X", "Y"] {
            return Err(GTError::WrongAlphabet);
        }
        if !f.constant_term().is_one() {
            return Err(GTError::ConstantTermNotOne);
        }
        Ok(GTElement { lambda, f })
    }

    /// The identity (1, 1).
    pub fn identity(truncation: u32) -> Self {
        GTElement { lambda: Scalar::one(), f: NCSeries::one(&Alphabet::xy(), truncation) }
    }

    pub fn truncation(&self) -> u32 {
        self.f.truncation()
    }
}

/// Verdict for one defining relation, with its exact defect series.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub relation: String,
    pub truncation: u32,
    pub holds: bool,
    pub first_failing_degree: Option<u32>,
    pub residual: NCSeries,
}

impl RelationReport {
    fn from_residual(relation: &str, residual: NCSeries) -> Self {
        RelationReport {
            relation: relation.to_string(),
            truncation: residual.truncation(),
            holds: residual.is_zero(),
            first_failing_degree: residual.min_degree(),
            residual,
        }
    }

    pub fn residual_lines(&self) -> Vec<String> {
        self.residual.report_lines()
    }
}

/// f evaluated at group-like arguments: substitute the logarithms.
fn apply_grouplike(f: &NCSeries, a: &NCSeries, b: &NCSeries) -> Result<NCSeries, SeriesError> {
    let mut images = BTreeMap::new();
    images.insert("X".to_string(), a.log()?);
    images.insert("Y".to_string(), b.log()?);
    f.substitute(&images)
}

/// f(X, Y) f(Y, X) - 1.
pub fn duality_residual(f: &NCSeries) -> Result<NCSeries, SeriesError> {
    let al = f.alphabet();
    let n = f.truncation();
    let mut images = BTreeMap::new();
    images.insert("X".to_string(), NCSeries::generator(al, n, 1));
    images.insert("Y".to_string(), NCSeries::generator(al, n, 0));
    let swapped = f.substitute(&images)?;
    f.checked_mul(&swapped)?.checked_sub(&NCSeries::one(al, n))
}

/// f(x3, x1) x3^m f(x2, x3) x2^m f(x1, x2) x1^m - 1 with m = (lambda - 1)/2.
pub fn hexagon_residual(lambda: &Scalar, f: &NCSeries) -> Result<NCSeries, SeriesError> {
    let al = f.alphabet();
    let n = f.truncation();
    let m = (lambda - Scalar::one()) / crate::scalar::int(2);
    let x = NCSeries::generator(al, n, 0);
    let y = NCSeries::generator(al, n, 1);
    let x1 = x.exp()?;
    let x2 = y.exp()?;
    let x3 = x1.checked_mul(&x2)?.inverse()?;
    let x1m = x.scale(&m).exp()?;
    let x2m = y.scale(&m).exp()?;
    let x3m = x3.log()?.scale(&m).exp()?;
    let f31 = apply_grouplike(f, &x3, &x1)?;
    let f23 = apply_grouplike(f, &x2, &x3)?;
    let f12 = apply_grouplike(f, &x1, &x2)?;
    let prod = f31
        .checked_mul(&x3m)?
        .checked_mul(&f23)?
        .checked_mul(&x2m)?
        .checked_mul(&f12)?
        .checked_mul(&x1m)?;
    prod.checked_sub(&NCSeries::one(al, n))
}

/// f(t12, t23 + t24) f(t13 + t23, t34)
///   - f(t23, t34) f(t12 + t13, t24 + t34) f(t12, t23), reduced in the
/// four-strand quotient.
pub fn pentagon_residual(
    f: &NCSeries,
    quotient: &QuotientAlgebra,
) -> Result<NCSeries, SeriesError> {
    let al = quotient.alphabet();
    let n = quotient.truncation();
    let gen = |name: &str| {
        NCSeries::generator(al, n, al.index_of(name).expect("four-strand generator"))
    };
    let pair = |a: NCSeries, b: NCSeries| {
        let mut images = BTreeMap::new();
        images.insert("X".to_string(), a);
        images.insert("Y".to_string(), b);
        images
    };
    let f1 = f.substitute(&pair(gen("t12"), gen("t23").checked_add(&gen("t24"))?))?;
    let f2 = f.substitute(&pair(gen("t13").checked_add(&gen("t23"))?, gen("t34")))?;
    let f3 = f.substitute(&pair(gen("t23"), gen("t34")))?;
    let f4 = f.substitute(&pair(
        gen("t12").checked_add(&gen("t13"))?,
        gen("t24").checked_add(&gen("t34"))?,
    ))?;
    let f5 = f.substitute(&pair(gen("t12"), gen("t23")))?;
    let lhs = f1.checked_mul(&f2)?;
    let rhs = f3.checked_mul(&f4)?.checked_mul(&f5)?;
    let diff = lhs.checked_sub(&rhs)?;
    Ok(quotient.reduce(&diff).expect("difference lives in the quotient context"))
}

pub fn check_duality(e: &GTElement) -> RelationReport {
    let residual = duality_residual(&e.f).expect("well-formed element");
    RelationReport::from_residual("duality", residual)
}

pub fn check_hexagon(e: &GTElement) -> RelationReport {
    let residual = hexagon_residual(&e.lambda, &e.f).expect("well-formed element");
    RelationReport::from_residual("hexagon", residual)
}

pub fn check_pentagon(e: &GTElement) -> RelationReport {
    let quotient = QuotientAlgebra::drinfeld_kohno_t4(e.truncation());
    let residual = pentagon_residual(&e.f, &quotient).expect("well-formed element");
    RelationReport::from_residual("pentagon", residual)
}

/// Group-likeness of f as a report; the residual lives in the doubled
/// alphabet of the tensor square.
pub fn check_grouplike(e: &GTElement) -> RelationReport {
    RelationReport::from_residual("group-like", e.f.grouplike_defect())
}

/// All four reports: group-likeness, duality, hexagon, pentagon.
pub fn check_all(e: &GTElement) -> Vec<RelationReport> {
    vec![check_grouplike(e), check_duality(e), check_hexagon(e), check_pentagon(e)]
}

/// Composition law: lambdas multiply and, writing g for the right factor,
/// the series compose as f1(g (lambda2 X) g^{-1}, lambda2 Y) g.  The pair
/// (1, 1) is a two-sided identity.
pub fn gt_compose(a: &GTElement, b: &GTElement) -> Result<GTElement, GTError> {
    a.f.check_compatible(&b.f)?;
    let al = a.f.alphabet();
    let n = a.f.truncation();
    let g = &b.f;
    let g_inv = g.inverse()?;
    let lx = NCSeries::generator(al, n, 0).scale(&b.lambda);
    let ly = NCSeries::generator(al, n, 1).scale(&b.lambda);
    let x_img = g.checked_mul(&lx)?.checked_mul(&g_inv)?;
    let mut images = BTreeMap::new();
    images.insert("X".to_string(), x_img);
    images.insert("Y".to_string(), ly);
    let f = a.f.substitute(&images)?.checked_mul(g)?;
    Ok(GTElement { lambda: &a.lambda * &b.lambda, f })
}

/// Affine description of the degree-d coefficient vectors extending the
/// already-fixed lower degrees; `solution` is None when infeasible.
#[derive(Debug, Clone)]
pub struct DegreeSolution {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub solution: Option<AffineSolution>,
}

#[derive(Debug, Clone)]
pub struct GTSolution {
    pub lambda: Scalar,
    pub truncation: u32,
    pub degrees: Vec<DegreeSolution>,
    /// Canonical element (free coefficients zero), present when every degree
    /// was feasible.
    pub element: Option<GTElement>,
}

/// Keyed degree-d coefficients of a residual series; the family tag keeps
/// rows from different relations apart.
fn keyed_degree_part(
    out: &mut BTreeMap<(u8, Monomial), Scalar>,
    family: u8,
    series: &NCSeries,
    d: u32,
) {
    for (m, c) in series.homogeneous(d).terms() {
        out.insert((family, m.clone()), c.clone());
    }
}

/// Degree-by-degree solver: at each degree d the relation residuals and the
/// group-likeness defect are affine in the unknown degree-d coefficients
/// (quadratic interaction starts at degree 2d), so probing the residuals at
/// the zero vector and at each unit vector yields exact constraint rows.
pub fn solve_relations(lambda: &Scalar, truncation: u32) -> GTSolution {
    let al = Alphabet::xy();
    let mut known = NCSeries::one(&al, truncation);
    let mut degrees = Vec::new();
    let mut feasible = true;

    for d in 1..=truncation {
        let monos = monomials_of_degree(&al, d);
        let k = monos.len();
        let quotient = QuotientAlgebra::drinfeld_kohno_t4(d);
        let base = known.truncated(d);

        let eval = |coeffs: &[Scalar]| -> BTreeMap<(u8, Monomial), Scalar> {
            let mut cand = base.clone();
            for (m, c) in monos.iter().zip(coeffs) {
                cand.add_term(m.clone(), c.clone());
            }
            let mut out = BTreeMap::new();
            keyed_degree_part(&mut out, 0, &cand.grouplike_defect(), d);
            keyed_degree_part(&mut out, 1, &duality_residual(&cand).expect("same context"), d);
            keyed_degree_part(
                &mut out,
                2,
                &hexagon_residual(lambda, &cand).expect("same context"),
                d,
            );
            keyed_degree_part(
                &mut out,
                3,
                &pentagon_residual(&cand, &quotient).expect("same context"),
                d,
            );
            out
        };

        // Probe zero first so the quotient degree caches build once.
        let zero_probe = eval(&vec![Scalar::zero(); k]);
        let unit_probes = exec::map_indices(k, |i| {
            let mut coeffs = vec![Scalar::zero(); k];
            coeffs[i] = Scalar::one();
            eval(&coeffs)
        });

        let mut keys: std::collections::BTreeSet<(u8, Monomial)> =
            zero_probe.keys().cloned().collect();
        for p in &unit_probes {
            keys.extend(p.keys().cloned());
        }
        let rows: Vec<(SparseRow, Scalar)> = keys
            .iter()
            .map(|key| {
                let base_val = zero_probe.get(key).cloned().unwrap_or_else(Scalar::zero);
                let row: SparseRow = unit_probes
                    .iter()
                    .enumerate()
                    .filter_map(|(i, p)| {
                        let v = p.get(key).cloned().unwrap_or_else(Scalar::zero) - &base_val;
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
                        known.add_term(m.clone(), c.clone());
                    }
                }
            }
            None => feasible = false,
        }
        degrees.push(DegreeSolution { degree: d, monomials: monos, solution });
        if !feasible {
            break;
        }
    }

    let element = feasible.then(|| GTElement { lambda: lambda.clone(), f: known });
    GTSolution { lambda: lambda.clone(), truncation, degrees, element }
}

/// An element with the degree-d part of `solution` replaced by `coeffs`; used
/// to turn nullspace directions into checkable elements.
pub fn element_with_degree_part(
    base: &GTElement,
    degree_solution: &DegreeSolution,
    coeffs: &[Scalar],
) -> GTElement {
    let mut f = base.f.clone();
    let d = degree_solution.degree;
    for m in monomials_of_degree(base.f.alphabet(), d) {
        f.add_term(m.clone(), -f.coeff(&m));
    }
    for (m, c) in degree_solution.monomials.iter().zip(coeffs) {
        if !c.is_zero() {
            f.add_term(m.clone(), c.clone());
        }
    }
    GTElement { lambda: base.lambda.clone(), f }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::FreeWord;
    use crate::scalar::{frac, int};
    use crate::series::commutator;

    fn exp_commutator(c: Scalar, n: u32) -> NCSeries {
        let al = Alphabet::xy();
        let x = NCSeries::generator(&al, n, 0);
        let y = NCSeries::generator(&al, n, 1);
        commutator(&x, &y).scale(&c).exp().unwrap()
    }

    #[test]
    fn identity_satisfies_all_relations() {
        let e = GTElement::identity(4);
        for report in check_all(&e) {
            assert!(report.holds, "{} fails", report.relation);
        }
    }

    #[test]
    fn duality_failure_of_exp_x_starts_at_degree_one() {
        let al = Alphabet::xy();
        let f = NCSeries::generator(&al, 3, 0).exp().unwrap();
        let report = check_duality(&GTElement::new(int(1), f).unwrap());
        assert!(!report.holds);
        assert_eq!(report.first_failing_degree, Some(1));
        // exp(X) exp(Y) - 1 has degree-1 part X + Y.
        let x_plus_y = NCSeries::generator(&al, 3, 0)
            .checked_add(&NCSeries::generator(&al, 3, 1))
            .unwrap();
        assert_eq!(report.residual.homogeneous(1), x_plus_y);
    }

    #[test]
    fn exp_of_commutator_passes_duality_exactly() {
        let f = exp_commutator(frac(7, 3), 4);
        let report = check_duality(&GTElement::new(int(1), f).unwrap());
        assert!(report.holds);
    }

    #[test]
    fn minus_one_with_f_one_passes_hexagon() {
        let e = GTElement { lambda: int(-1), f: NCSeries::one(&Alphabet::xy(), 5) };
        assert!(check_hexagon(&e).holds);

        // Oracle: with m = -1 the middle factors are the Magnus images of
        // free-group inverses, so the product telescopes like the word
        // (xy)(y^{-1})(x^{-1}).
        let al = Alphabet::xy();
        let x1 = NCSeries::generator(&al, 5, 0).exp().unwrap();
        let x2 = NCSeries::generator(&al, 5, 1).exp().unwrap();
        let x3_inv_via_word = FreeWord::parse("x y").unwrap().magnus(5);
        assert_eq!(x1.checked_mul(&x2).unwrap(), x3_inv_via_word);
    }

    #[test]
    fn hexagon_defect_of_exp_commutator_is_three_times_the_bracket() {
        let f = exp_commutator(int(1), 3);
        let report = check_hexagon(&GTElement::new(int(1), f).unwrap());
        assert!(!report.holds);
        assert_eq!(report.first_failing_degree, Some(2));
        let al = Alphabet::xy();
        let x = NCSeries::generator(&al, 3, 0);
        let y = NCSeries::generator(&al, 3, 1);
        assert_eq!(report.residual.homogeneous(2), commutator(&x, &y).scale(&int(3)));
    }

    #[test]
    fn pentagon_holds_for_identity_and_for_exp_commutator() {
        assert!(check_pentagon(&GTElement::identity(3)).holds);
        // The raw degree-2 defect of exp(c[X,Y]) is -c([t12,t34] + [t13,t24]),
        // which the disjoint-pair relations kill.
        let report = check_pentagon(&GTElement::new(int(1), exp_commutator(int(1), 3)).unwrap());
        assert!(report.holds, "{:?}", report.residual_lines());
    }

    #[test]
    fn pentagon_fails_for_symmetric_degree_two_part() {
        // f = 1 + XY has defect -(t12 t34 + t13 t24) mod relations, nonzero.
        let al = Alphabet::xy();
        let x = NCSeries::generator(&al, 3, 0);
        let y = NCSeries::generator(&al, 3, 1);
        let f = &NCSeries::one(&al, 3) + &(&x * &y);
        let report = check_pentagon(&GTElement::new(int(1), f).unwrap());
        assert!(!report.holds);
        assert_eq!(report.first_failing_degree, Some(2));
        let q = QuotientAlgebra::drinfeld_kohno_t4(3);
        let t = |name: &str| {
            NCSeries::generator(q.alphabet(), 3, q.alphabet().index_of(name).unwrap())
        };
        let expected = -&(&(&t("t12") * &t("t34")) + &(&t("t13") * &t("t24")));
        assert_eq!(report.residual.homogeneous(2), q.reduce(&expected).unwrap());
    }

    #[test]
    fn compose_has_identity_and_multiplies_lambdas() {
        let id = GTElement::identity(3);
        let e = GTElement::new(int(5), exp_commutator(frac(1, 2), 3)).unwrap();
        assert_eq!(gt_compose(&e, &id).unwrap(), e);
        assert_eq!(gt_compose(&id, &e).unwrap(), e);
        let c = gt_compose(&e, &e).unwrap();
        assert_eq!(c.lambda, int(25));
    }

    #[test]
    fn solver_at_lambda_one_gives_only_the_identity_through_degree_two() {
        let sol = solve_relations(&int(1), 2);
        let e = sol.element.expect("feasible");
        assert_eq!(e.f, NCSeries::one(&Alphabet::xy(), 2));
        for ds in &sol.degrees {
            let s = ds.solution.as_ref().unwrap();
            assert!(s.particular.iter().all(|c| c.is_zero()));
            assert!(s.nullspace.is_empty(), "degree {} unexpectedly free", ds.degree);
        }
    }

    #[test]
    fn solver_degree_two_dimension_matches_hand_derived_rows() {
        // Independent oracle for the degree-2 space at lambda = 1, unknowns
        // (a, b, c, d) on XX, XY, YX, YY: group-likeness forces 2a = 0,
        // b + c = 0, 2d = 0; duality forces a + d = 0 and b + c = 0; the
        // hexagon forces 3b = 0.  Rank 4, so the space is {0}.
        let rows: Vec<Vec<i64>> = vec![
            vec![2, 0, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 0, 2],
            vec![1, 0, 0, 1],
            vec![0, 3, 0, 0],
        ];
        let sparse: Vec<(SparseRow, Scalar)> = rows
            .iter()
            .map(|r| {
                let row: SparseRow = r
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i, int(*v)))
                    .collect();
                (row, int(0))
            })
            .collect();
        let oracle = solve_affine(4, &sparse).unwrap();
        let sol = solve_relations(&int(1), 2);
        let d2 = sol.degrees[1].solution.as_ref().unwrap();
        assert_eq!(d2.nullspace.len(), oracle.nullspace.len());
        assert!(d2.nullspace.is_empty());
    }

    #[test]
    fn minus_one_is_a_solution_through_degree_two() {
        let sol = solve_relations(&int(-1), 2);
        let e = sol.element.expect("feasible");
        assert_eq!(e.f, NCSeries::one(&Alphabet::xy(), 2));
        assert_eq!(e.lambda, int(-1));
    }

    #[test]
    fn solver_degree_three_space_is_one_dimensional_at_lambda_one() {
        let sol = solve_relations(&int(1), 3);
        let d3 = sol.degrees[2].solution.as_ref().unwrap();
        assert_eq!(d3.nullspace.len(), 1);
        // The free direction really solves everything modulo degree 4.
        let base = sol.element.as_ref().unwrap();
        let shifted = element_with_degree_part(base, &sol.degrees[2], &d3.nullspace[0]);
        for report in check_all(&shifted) {
            assert!(report.holds, "{} fails on the degree-3 direction", report.relation);
        }
    }
}
