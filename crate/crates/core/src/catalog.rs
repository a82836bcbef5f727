//! Stock examples: group algebras, the four-dimensional Sweedler algebra,
//! and distinguished pairings and R-matrices on them.
//!
//! Group algebras are generated from multiplication tables, so the only
//! hand-entered data here are the Sweedler tensors and the pairings.

use crate::hopf::{HopfData, RMatrix, Tensor3};
use crate::scalar::{frac, int, Scalar};
use num_traits::{One, Zero};

/// Group algebra k[G] from a multiplication table, with group-like coproduct.
/// `table[i][j]` is the index of g_i g_j; index 0 must be the identity.
pub fn group_algebra(labels: &[&str], table: &[Vec<usize>]) -> HopfData {
    let n = labels.len();
    assert_eq!(table.len(), n);
    let mult = Tensor3::from_fn(n, |i, j, k| {
        if table[i][j] == k {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let comult = Tensor3::from_fn(n, |i, j, k| {
        if i == k && j == k {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = Scalar::one();
    let counit = vec![Scalar::one(); n];
    let mut antipode = vec![Scalar::zero(); n * n];
    for j in 0..n {
        let inv = (0..n).find(|i| table[j][*i] == 0).expect("group table has inverses");
        antipode[inv * n + j] = Scalar::one();
    }
    HopfData::new(
        labels.iter().map(|s| s.to_string()).collect(),
        mult,
        unit,
        comult,
        counit,
        Some(antipode),
    )
    .expect("catalog data is well shaped")
}

/// k[Z/m] with basis 1, g, g^2, ...
pub fn cyclic_group_algebra(m: usize) -> HopfData {
    let labels: Vec<String> = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    group_algebra(&refs, &table)
}

pub fn z2_group_algebra() -> HopfData {
    cyclic_group_algebra(2)
}

pub fn z3_group_algebra() -> HopfData {
    cyclic_group_algebra(3)
}

/// k[Z/2 x Z/2], basis indexed by bit pairs 1, a, b, ab.
pub fn klein_group_algebra() -> HopfData {
    let table: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    group_algebra(&["1", "a", "b", "ab"], &table)
}

/// Permutations of three points under composition; identity first, then the
/// two rotations, then the three reflections.
pub fn s3_group_algebra() -> HopfData {
    let elements: [[usize; 3]; 6] =
        [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [2, 1, 0], [0, 2, 1]];
    let index_of = |p: &[usize; 3]| elements.iter().position(|e| e == p).unwrap();
    let compose = |f: &[usize; 3], g: &[usize; 3]| [f[g[0]], f[g[1]], f[g[2]]];
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|f| elements.iter().map(|g| index_of(&compose(f, g))).collect())
        .collect();
    group_algebra(&["e", "r", "rr", "s", "rs", "rrs"], &table)
}

/// Sweedler's four-dimensional Hopf algebra, basis 1, g, x, gx with
/// g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x.
pub fn sweedler_h4() -> HopfData {
    let n = 4;
    let mut mult = Tensor3::zero(n);
    // Rows: (i, j) -> sum of signed basis vectors.
    let products: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (1, 0), (1, 3), (1, 2)],
        [(1, 2), (-1, 3), (0, 0), (0, 0)],
        [(1, 3), (-1, 2), (0, 0), (0, 0)],
    ];
    for i in 0..n {
        for j in 0..n {
            let (c, k) = products[i][j];
            if c != 0 {
                *mult.get_mut(i, j, k) = int(c);
            }
        }
    }
    let mut comult = Tensor3::zero(n);
    *comult.get_mut(0, 0, 0) = Scalar::one();
    *comult.get_mut(1, 1, 1) = Scalar::one();
    *comult.get_mut(2, 0, 2) = Scalar::one();
    *comult.get_mut(1, 2, 2) = Scalar::one();
    *comult.get_mut(3, 1, 3) = Scalar::one();
    *comult.get_mut(0, 3, 3) = Scalar::one();
    let mut unit = vec![Scalar::zero(); n];
    unit[0] = Scalar::one();
    let counit = vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()];
    // S(1) = 1, S(g) = g, S(x) = -gx, S(gx) = x.
    let mut antipode = vec![Scalar::zero(); n * n];
    antipode[0] = Scalar::one();
    antipode[n + 1] = Scalar::one();
    antipode[3 * n + 2] = -Scalar::one();
    antipode[2 * n + 3] = Scalar::one();
    HopfData::new(
        vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        mult,
        unit,
        comult,
        counit,
        Some(antipode),
    )
    .expect("catalog data is well shaped")
}

/// The nontrivial triangular structure on k[Z/2]:
/// R = (1 x 1 + 1 x g + g x 1 - g x g) / 2.
pub fn z2_triangular_r() -> RMatrix {
    RMatrix::new(2, vec![frac(1, 2), frac(1, 2), frac(1, 2), frac(-1, 2)]).unwrap()
}

/// Fourier pairing on k[Z/2]: B(g^a, g^b) = (-1)^{ab}.
pub fn z2_fourier_pairing() -> Vec<Scalar> {
    vec![int(1), int(1), int(1), int(-1)]
}

/// Rational attempt at a character pairing on k[Z/3]; over the rationals the
/// only character is trivial, so this pairing is degenerate.
pub fn z3_trivial_pairing() -> Vec<Scalar> {
    vec![Scalar::one(); 9]
}

/// Fourier pairing on the Klein four-group: B((a,b), (c,d)) = (-1)^{ac+bd}.
pub fn klein_fourier_pairing() -> Vec<Scalar> {
    let mut b = Vec::with_capacity(16);
    for i in 0..4usize {
        for j in 0..4usize {
            let bits = (i & 1) * (j & 1) + ((i >> 1) & 1) * ((j >> 1) & 1);
            b.push(if bits % 2 == 0 { int(1) } else { int(-1) });
        }
    }
    b
}

/// Diagonal trialgebra on a bialgebra: star = dot = its product, with a
/// total mask.
pub fn diagonal_trialgebra(h: &HopfData) -> crate::trialgebra::TrialgebraData {
    let n = h.dim;
    crate::trialgebra::TrialgebraData::new(
        h.basis.clone(),
        h.mult.clone(),
        vec![vec![true; n]; n],
        h.mult.clone(),
        h.comult.clone(),
        h.counit.clone(),
    )
    .expect("catalog data is well shaped")
}

/// Diagonal quadraalgebra on a bialgebra: both products and both coproducts
/// taken from it.
pub fn diagonal_quadraalgebra(h: &HopfData) -> crate::trialgebra::QuadraalgebraData {
    crate::trialgebra::QuadraalgebraData::new(
        h.basis.clone(),
        h.mult.clone(),
        h.mult.clone(),
        h.comult.clone(),
        h.comult.clone(),
        h.counit.clone(),
        h.counit.clone(),
    )
    .expect("catalog data is well shaped")
}

/// sl2 with basis H, E, F ([H,E] = 2E, [H,F] = -2F, [E,F] = H) and the
/// trace form of the defining representation.
pub fn sl2_metrized() -> crate::ihara::MetrizedLieAlgebra {
    let entries: &[(usize, usize, usize, i64)] = &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)];
    let bracket = Tensor3::from_fn(3, |i, j, k| {
        for &(a, b, c, v) in entries {
            if (i, j, k) == (a, b, c) {
                return int(v);
            }
            if (i, j, k) == (b, a, c) {
                return int(-v);
            }
        }
        Scalar::zero()
    });
    let metric = vec![
        int(2),
        int(0),
        int(0),
        int(0),
        int(0),
        int(1),
        int(0),
        int(1),
        int(0),
    ];
    crate::ihara::MetrizedLieAlgebra::new(
        vec!["H".into(), "E".into(), "F".into()],
        bracket,
        metric,
    )
    .expect("catalog data satisfies the axioms")
}

/// so(3) with cyclic brackets [e1,e2] = e3 and the identity metric.
pub fn so3_metrized() -> crate::ihara::MetrizedLieAlgebra {
    let bracket = Tensor3::from_fn(3, |i, j, k| {
        if (i + 1) % 3 == j && (j + 1) % 3 == k {
            Scalar::one()
        } else if (j + 1) % 3 == i && (i + 1) % 3 == k {
            -Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let mut metric = vec![Scalar::zero(); 9];
    for i in 0..3 {
        metric[i * 3 + i] = Scalar::one();
    }
    crate::ihara::MetrizedLieAlgebra::new(
        vec!["e1".into(), "e2".into(), "e3".into()],
        bracket,
        metric,
    )
    .expect("catalog data satisfies the axioms")
}
