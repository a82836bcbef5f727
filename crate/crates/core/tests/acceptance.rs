//! Acceptance gate: one test per shipped guarantee.  Every comparison is
//! exact rational equality, and every derived value is checked against an
//! oracle computed by an independent route inside this file.

use gtcalc_core::catalog::{
    diagonal_trialgebra, s3_group_algebra, sl2_metrized, sweedler_h4, z2_group_algebra,
    z3_group_algebra,
};
use gtcalc_core::ihara::PolyFunction;
use gtcalc_core::lie::lyndon_basis_of_degree;
use gtcalc_core::scalar::{frac, int};
use gtcalc_core::trialgebra::TrialgebraError;
use gtcalc_core::{
    check_all, check_b1, check_b3, check_b4, check_hopf, check_quasitriangular, check_trialgebra,
    chi, commutator, drinfeld_double, dual_hopf, eckmann_hilton, element_with_degree_part,
    equal_braids, ihara_bracket, is_involution, kirillov_bracket, lie_dimensions, solve_b4,
    solve_relations, Alphabet, BraidWord, GTElement, HGTPair, LieElement, Monomial, NCSeries,
    QuotientAlgebra, Scalar, Tensor3,
};
use gtcalc_core::{burau, io};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::path::Path;

// ---------------------------------------------------------------------------
// Shared random generators; fixed seeds keep every run identical.

fn random_grouplike(rng: &mut ChaCha8Rng, n: u32) -> NCSeries {
    random_lie(rng, n).embed().exp().expect("primitive has no constant term")
}

fn random_lie(rng: &mut ChaCha8Rng, n: u32) -> LieElement {
    let al = Alphabet::xy();
    let mut coords = Vec::new();
    for d in 1..=n {
        for w in lyndon_basis_of_degree(&al, d) {
            let c = rng.gen_range(-2i64..=2);
            if c != 0 {
                coords.push((w, int(c)));
            }
        }
    }
    LieElement::from_coords(&al, n, coords).expect("Lyndon coordinates")
}

// ---------------------------------------------------------------------------
// Criterion 1: BCH series against a naive convolution oracle.

type WordPoly = HashMap<Vec<u8>, Scalar>;

fn wp_one() -> WordPoly {
    HashMap::from([(Vec::new(), Scalar::one())])
}

fn wp_add(a: &WordPoly, b: &WordPoly) -> WordPoly {
    let mut out = a.clone();
    for (w, c) in b {
        let e = out.entry(w.clone()).or_insert_with(Scalar::zero);
        *e += c.clone();
    }
    out
}

fn wp_scale(a: &WordPoly, k: &Scalar) -> WordPoly {
    a.iter().map(|(w, c)| (w.clone(), c * k)).collect()
}

/// Plain double loop over stored words, dropping anything past the bound.
fn wp_mul(a: &WordPoly, b: &WordPoly, max: usize) -> WordPoly {
    let mut out = WordPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() <= max {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let e = out.entry(w).or_insert_with(Scalar::zero);
                *e += ca * cb;
            }
        }
    }
    out
}

fn wp_exp(z: &WordPoly, max: usize) -> WordPoly {
    let mut out = wp_one();
    let mut power = wp_one();
    let mut factorial = Scalar::one();
    for k in 1..=max {
        power = wp_mul(&power, z, max);
        factorial *= int(k as i64);
        out = wp_add(&out, &wp_scale(&power, &(Scalar::one() / &factorial)));
    }
    out
}

fn wp_log(u: &WordPoly, max: usize) -> WordPoly {
    let mut v = u.clone();
    let e = v.entry(Vec::new()).or_insert_with(Scalar::zero);
    *e -= Scalar::one();
    let mut out = WordPoly::new();
    let mut power = wp_one();
    for k in 1..=max {
        power = wp_mul(&power, &v, max);
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        out = wp_add(&out, &wp_scale(&power, &(sign / int(k as i64))));
    }
    out
}

#[test]
fn criterion_01_bch_matches_the_convolution_oracle() {
    let al = Alphabet::xy();
    let n = 4u32;
    let x = NCSeries::generator(&al, n, 0);
    let y = NCSeries::generator(&al, n, 1);
    let bch = (&x.exp().unwrap() * &y.exp().unwrap()).log().unwrap();

    let gx = WordPoly::from([(vec![0u8], Scalar::one())]);
    let gy = WordPoly::from([(vec![1u8], Scalar::one())]);
    let product = wp_mul(&wp_exp(&gx, n as usize), &wp_exp(&gy, n as usize), n as usize);
    let oracle = wp_log(&product, n as usize);

    let mut nonzero = 0usize;
    for (w, c) in &oracle {
        let lib = bch.coeff(&Monomial::new(&al, w.clone()));
        assert_eq!(&lib, c, "word {w:?}");
        if !c.is_zero() {
            nonzero += 1;
        }
    }
    for (m, c) in bch.terms() {
        let oracle_c = oracle.get(m.letters()).cloned().unwrap_or_else(Scalar::zero);
        assert_eq!(c, &oracle_c, "word {:?}", m.letters());
    }
    assert!(nonzero >= 8, "oracle produced {nonzero} nonzero terms");

    let half_comm = commutator(&x, &y).scale(&frac(1, 2));
    assert_eq!(bch.homogeneous(2), half_comm);
}

// ---------------------------------------------------------------------------
// Criterion 2: Lyndon basis sizes against the necklace-count formula.

fn moebius(mut m: u64) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

fn witt(n: u64, d: u64) -> usize {
    let mut total = 0i64;
    for e in 1..=d {
        if d % e == 0 {
            total += moebius(d / e) * (n.pow(e as u32) as i64);
        }
    }
    assert_eq!(total % d as i64, 0);
    (total / d as i64) as usize
}

#[test]
fn criterion_02_free_lie_dimensions_match_the_necklace_oracle() {
    let dims = lie_dimensions(2, 8);
    assert_eq!(dims, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    for d in 1..=8u64 {
        assert_eq!(dims[d as usize - 1], witt(2, d), "degree {d}");
    }
}

// ---------------------------------------------------------------------------
// Criterion 3: graded dimensions of the three-strand quotient against the
// PBW product formula.

#[test]
fn criterion_03_t3_graded_dimensions_match_the_pbw_oracle() {
    let max = 4usize;
    let q = QuotientAlgebra::drinfeld_kohno_t3(max as u32);
    assert_eq!(q.dimensions(), vec![1, 3, 7, 15, 31]);

    // The Lie algebra splits as a central degree-1 line plus a free Lie
    // algebra on two degree-1 generators, so its graded dimensions are
    // 3, witt(2, 2), witt(2, 3), ...; PBW turns those into the product
    // of geometric series expanded below.
    let mut ell = vec![0usize; max + 1];
    ell[1] = 3;
    for d in 2..=max {
        ell[d] = witt(2, d as u64);
    }
    let mut series = vec![0u64; max + 1];
    series[0] = 1;
    for d in 1..=max {
        for _ in 0..ell[d] {
            // Multiply by 1/(1 - q^d): running sums with stride d.
            for i in d..=max {
                series[i] += series[i - d];
            }
        }
    }
    assert_eq!(series, vec![1, 3, 7, 15, 31]);
}

// ---------------------------------------------------------------------------
// Criterion 4: the relation solver's outputs re-pass the relation checks.

#[test]
fn criterion_04_relation_solver_outputs_repass_all_checks() {
    let one = solve_relations(&int(1), 1);
    let d1 = &one.degrees[0];
    assert_eq!(d1.monomials.len(), 2);
    let affine = d1.solution.as_ref().expect("feasible");
    assert!(affine.is_unique());
    assert!(affine.particular.iter().all(|c| c.is_zero()), "degree-1 space is {{0}}");

    for lambda in [int(1), int(-1), int(3), frac(1, 2)] {
        for n in 1..=3 {
            let sol = solve_relations(&lambda, n);
            let element = sol.element.as_ref().expect("canonical element");
            for report in check_all(element) {
                assert!(report.holds, "lambda {lambda}, N {n}, {}", report.relation);
            }
        }
    }

    // The degree-3 solution space at lambda = 1 has a free direction; a
    // shifted representative must still pass everything.
    let sol = solve_relations(&int(1), 3);
    let d3 = &sol.degrees[2];
    let affine = d3.solution.as_ref().expect("feasible");
    assert_eq!(affine.nullspace.len(), 1);
    let coeffs: Vec<Scalar> = affine
        .particular
        .iter()
        .zip(&affine.nullspace[0])
        .map(|(p, v)| p + &(v * &int(6)))
        .collect();
    let shifted = element_with_degree_part(sol.element.as_ref().unwrap(), d3, &coeffs);
    for report in check_all(&shifted) {
        assert!(report.holds, "shifted element, {}", report.relation);
    }

    let identity = GTElement::new(int(1), NCSeries::one(&Alphabet::xy(), 5)).unwrap();
    for report in check_all(&identity) {
        assert!(report.holds, "identity at N = 5, {}", report.relation);
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: braid words against the matrix representation.

fn random_braid(rng: &mut ChaCha8Rng) -> BraidWord {
    let len = rng.gen_range(0..=12);
    BraidWord::from_letters((0..len).map(|_| [1i8, -1, 2, -2][rng.gen_range(0..4)]))
}

#[test]
fn criterion_05_braid_relation_centrality_and_inverses() {
    let lhs = BraidWord::parse("s1 s2 s1").unwrap();
    let rhs = BraidWord::parse("s2 s1 s2").unwrap();
    assert!(equal_braids(&lhs, &rhs));

    let full_twist = BraidWord::parse("s1 s2 s1 s2 s1 s2").unwrap();
    let id = burau(&BraidWord::identity());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let w = random_braid(&mut rng);
        assert!(
            equal_braids(&full_twist.concat(&w), &w.concat(&full_twist)),
            "full twist fails to commute with {}",
            w.tokens()
        );
        assert_eq!(burau(&w.concat(&w.inverse())), id, "inverse of {}", w.tokens());
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: the pair relations agree with their algebraic reformulations.

#[test]
fn criterion_06_b1_b3_b4_equivalences_on_random_pairs() {
    let al = Alphabet::xy();
    let n = 4u32;
    let unit = NCSeries::one(&al, n);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut b1_true = 0usize;
    let mut b1_false = 0usize;
    for i in 0..50 {
        let phi = random_grouplike(&mut rng, n);
        // Every fifth pair is equal so both sides of each equivalence are
        // exercised in the true case as well.
        let psi = if i % 5 == 0 { phi.clone() } else { random_grouplike(&mut rng, n) };

        let u = chi(&phi, &psi).unwrap();
        let b1 = check_b1(&phi, &psi).unwrap();
        assert_eq!(b1, is_involution(&u));
        if b1 {
            b1_true += 1;
        } else {
            b1_false += 1;
        }

        // With the comparison series forced to 1, b3 degenerates to b4.
        assert_eq!(
            check_b3(&phi, &psi, &unit).unwrap(),
            check_b4(&HGTPair::new(phi.clone(), psi.clone()).unwrap())
        );

        let pair = HGTPair::new(phi.clone(), psi.clone()).unwrap();
        let swapped = HGTPair::new(psi, phi).unwrap();
        assert_eq!(check_b4(&pair), check_b4(&swapped));
    }
    assert!(b1_true >= 10, "{b1_true} involutive pairs");
    assert!(b1_false >= 10, "{b1_false} non-involutive pairs");
}

// ---------------------------------------------------------------------------
// Criterion 7: the partner solver against a per-degree halving oracle.

/// Perturbing g by a degree-d term shifts the residual by exactly minus
/// twice that term, so adding half the residual degree by degree is forced.
fn halving_oracle(f: &NCSeries) -> NCSeries {
    let mut g = NCSeries::one(f.alphabet(), f.truncation());
    for d in 1..=f.truncation() {
        let residual = (&chi(f, &g).unwrap() - &chi(&g, f).unwrap()).homogeneous(d);
        g = &g + &residual.scale(&frac(1, 2));
    }
    g
}

#[test]
fn criterion_07_solve_b4_recovers_f_uniquely() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..20 {
        let f = random_grouplike(&mut rng, 5);
        let sol = solve_b4(&f).unwrap();
        assert!(sol.unique(), "case {case}: nontrivial solution space");
        assert_eq!(sol.g.as_ref(), Some(&f), "case {case}: solver answer");
        assert_eq!(halving_oracle(&f), f, "case {case}: oracle answer");
    }
}

// ---------------------------------------------------------------------------
// Criterion 8: the Hopf catalog, duals, and doubles.

#[test]
fn criterion_08_hopf_catalog_duals_and_doubles_pass() {
    for (name, h) in [
        ("k[Z/2]", z2_group_algebra()),
        ("k[Z/3]", z3_group_algebra()),
        ("Sweedler H4", sweedler_h4()),
    ] {
        assert!(check_hopf(&h).all_hold(), "{name}");
        assert!(check_hopf(&dual_hopf(&h)).all_hold(), "{name} dual");
    }
    for (name, h, expected_dim) in
        [("D(k[Z/2])", z2_group_algebra(), 4), ("D(k[Z/3])", z3_group_algebra(), 9)]
    {
        let double = drinfeld_double(&h).unwrap();
        assert_eq!(double.hopf.dim, expected_dim, "{name}");
        assert!(check_hopf(&double.hopf).all_hold(), "{name}");
        assert!(check_quasitriangular(&double.hopf, &double.r).all_hold(), "{name}");
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: the interchange law separates commutative from not.

#[test]
fn criterion_09_diagonal_interchange_verdicts() {
    assert!(check_trialgebra(&diagonal_trialgebra(&z2_group_algebra())).all_hold());
    assert!(check_trialgebra(&diagonal_trialgebra(&z3_group_algebra())).all_hold());

    let report = check_trialgebra(&diagonal_trialgebra(&s3_group_algebra()));
    assert!(!report.all_hold());
    let failure = report.first_failure().expect("a failing axiom");
    assert_eq!(failure.axiom, "interchange");
    assert_eq!(failure.witness, Some(vec![0, 1, 3, 0]));
}

// ---------------------------------------------------------------------------
// Criterion 10: the two-products collapse argument on a generated set.

/// e_i e_j = e_{i+j} while the exponent stays below m, else zero.
fn truncated_poly_mult(m: usize) -> Tensor3 {
    Tensor3::from_fn(m, |i, j, k| if i + j == k && i + j < m { int(1) } else { int(0) })
}

/// Componentwise product on m idempotent lines.
fn split_mult(m: usize) -> Tensor3 {
    Tensor3::from_fn(m, |i, j, k| if i == j && j == k { int(1) } else { int(0) })
}

fn basis_unit(m: usize, at: usize) -> Vec<Scalar> {
    (0..m).map(|i| if i == at { int(1) } else { int(0) }).collect()
}

fn eckmann_hilton_inputs() -> Vec<(Tensor3, Vec<Scalar>, Tensor3, Vec<Scalar>)> {
    let mut inputs = Vec::new();

    // Commutative associative products paired with themselves satisfy the
    // hypotheses; the conclusions must then hold with no exceptions.
    let z2 = z2_group_algebra();
    let z3 = z3_group_algebra();
    let mut commutative: Vec<(Tensor3, Vec<Scalar>)> = vec![
        (z2.mult.clone(), z2.unit.clone()),
        (z3.mult.clone(), z3.unit.clone()),
        (truncated_poly_mult(1), basis_unit(1, 0)),
        (truncated_poly_mult(2), basis_unit(2, 0)),
        (truncated_poly_mult(3), basis_unit(3, 0)),
        (split_mult(2), vec![int(1), int(1)]),
        (split_mult(3), vec![int(1), int(1), int(1)]),
    ];
    // A rescaled one-dimensional product with its adjusted unit.
    commutative.push((Tensor3::from_fn(1, |_, _, _| int(2)), vec![frac(1, 2)]));
    for (p, u) in &commutative {
        inputs.push((p.clone(), u.clone(), p.clone(), u.clone()));
    }

    // Cross pairs of distinct products: the interchange hypothesis must
    // reject them rather than produce a bad report.
    for a in 0..commutative.len() {
        for b in (a + 1)..commutative.len() {
            let (pa, ua) = &commutative[a];
            let (pb, ub) = &commutative[b];
            if pa.n() == pb.n() {
                inputs.push((pa.clone(), ua.clone(), pb.clone(), ub.clone()));
            }
        }
    }

    // Upper triangular 2x2 matrices (basis e11, e22, e12): associative and
    // unital but not commutative, so pairing it with itself must be
    // rejected by the interchange hypothesis.
    let triangular = Tensor3::from_fn(3, |i, j, k| {
        let value = match (i, j) {
            (0, 0) => Some(0),
            (1, 1) => Some(1),
            (0, 2) | (2, 1) => Some(2),
            _ => None,
        };
        if value == Some(k) {
            int(1)
        } else {
            int(0)
        }
    });
    let triangular_unit = vec![int(1), int(1), int(0)];
    inputs.push((triangular.clone(), triangular_unit.clone(), triangular.clone(), triangular_unit.clone()));

    // A wrong unit vector must be rejected by the unit hypothesis.
    inputs.push((z2.mult.clone(), z2.unit.clone(), z2.mult.clone(), basis_unit(2, 1)));

    // Random unital tables: force e_0 as a two-sided unit and leave the
    // rest small and arbitrary.  Interchange almost always fails; whatever
    // survives the filter must satisfy the conclusions.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..40 {
        let m = rng.gen_range(2..=3usize);
        let random_unital = |rng: &mut ChaCha8Rng| {
            let entries: Vec<i64> = (0..m * m * m).map(|_| rng.gen_range(-1..=1)).collect();
            Tensor3::from_fn(m, |i, j, k| {
                if i == 0 {
                    int((j == k) as i64)
                } else if j == 0 {
                    int((i == k) as i64)
                } else {
                    int(entries[(i * m + j) * m + k])
                }
            })
        };
        let p1 = random_unital(&mut rng);
        let p2 = random_unital(&mut rng);
        inputs.push((p1, basis_unit(m, 0), p2, basis_unit(m, 0)));
    }

    inputs
}

#[test]
fn criterion_10_eckmann_hilton_has_zero_counterexamples() {
    let mut satisfied = 0usize;
    let mut rejected = 0usize;
    for (index, (p1, u1, p2, u2)) in eckmann_hilton_inputs().into_iter().enumerate() {
        match eckmann_hilton(&p1, &p2, &u1, &u2) {
            Ok(report) => {
                satisfied += 1;
                assert!(
                    report.all_hold(),
                    "input {index}: hypotheses hold but conclusions fail: {:?}",
                    report.witness
                );
            }
            Err(TrialgebraError::HypothesisFailed { .. }) => rejected += 1,
            Err(other) => panic!("input {index}: unexpected error {other}"),
        }
    }
    assert!(satisfied >= 8, "{satisfied} hypothesis-satisfying inputs");
    assert!(rejected >= 10, "{rejected} rejected inputs");
}

// ---------------------------------------------------------------------------
// Criterion 11: bracket identities and the Lie-Poisson structure.

#[test]
fn criterion_11_ihara_and_kirillov_identities() {
    let al = Alphabet::xy();
    let n = 6u32;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..30 {
        let f = random_lie(&mut rng, n);
        let g = random_lie(&mut rng, n);
        let h = random_lie(&mut rng, n);
        let fg = ihara_bracket(&f, &g).unwrap();
        let gf = ihara_bracket(&g, &f).unwrap();
        assert_eq!(fg, gf.scale(&int(-1)), "case {case}: antisymmetry");

        let jacobi = ihara_bracket(&f, &ihara_bracket(&g, &h).unwrap())
            .unwrap()
            .checked_add(&ihara_bracket(&g, &ihara_bracket(&h, &f).unwrap()).unwrap())
            .unwrap()
            .checked_add(&ihara_bracket(&h, &fg).unwrap())
            .unwrap();
        assert_eq!(jacobi, LieElement::zero(&al, n), "case {case}: Jacobi");
    }

    let alg = sl2_metrized();
    let m = 3usize;
    let coord = |i: usize| PolyFunction::coordinate(m, i);
    for i in 0..m {
        for j in 0..m {
            let bracket = kirillov_bracket(&coord(i), &coord(j), &alg);
            let mut expected = PolyFunction::zero(m);
            for k in 0..m {
                expected = &expected + &coord(k).scale(alg.bracket_tensor().get(i, j, k));
            }
            assert_eq!(bracket, expected, "coordinates {i}, {j}");
        }
    }
    // Frozen spot value on the H, E pair.
    assert_eq!(kirillov_bracket(&coord(0), &coord(1), &alg), coord(1).scale(&int(2)));

    let casimir = alg.casimir();
    assert_eq!(
        casimir,
        PolyFunction::from_terms(m, [(vec![2, 0, 0], frac(1, 2)), (vec![0, 1, 1], int(2))])
    );
    for i in 0..m {
        assert_eq!(
            kirillov_bracket(&casimir, &coord(i), &alg),
            PolyFunction::zero(m),
            "Casimir against coordinate {i}"
        );
    }
}

// ---------------------------------------------------------------------------
// Criterion 12: the shipped corpus survives a byte-exact round trip.

#[test]
fn criterion_12_io_round_trip_is_identity_on_the_corpus() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    assert!(paths.len() >= 17, "corpus has {} files", paths.len());
    for path in paths {
        let text = std::fs::read_to_string(&path).expect("readable corpus file");
        let doc = io::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(io::print(&doc), text, "{}", path.display());
    }
}
