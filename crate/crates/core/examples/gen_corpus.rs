//! Regenerates corpus/ from the built-in catalog.  Run from anywhere in the
//! workspace: `cargo run -p gtcalc-core --example gen_corpus`.

use gtcalc_core::catalog::{
    diagonal_quadraalgebra, diagonal_trialgebra, s3_group_algebra, sl2_metrized, so3_metrized,
    sweedler_h4, z2_group_algebra, z3_group_algebra,
};
use gtcalc_core::io::{print, Document};
use gtcalc_core::scalar::int;
use gtcalc_core::series::commutator;
use gtcalc_core::{drinfeld_double, dual_hopf, Alphabet, BraidWord, GTElement, HGTPair, NCSeries};
use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    std::fs::create_dir_all(&dir).expect("create corpus dir");

    let al = Alphabet::xy();
    let exp_x = NCSeries::generator(&al, 5, 0).exp().expect("constant term zero");
    let exp_comm = commutator(
        &NCSeries::generator(&al, 4, 0),
        &NCSeries::generator(&al, 4, 1),
    )
    .exp()
    .expect("constant term zero");

    let z2 = z2_group_algebra();
    let sweedler = sweedler_h4();
    let docs: Vec<(&str, Document)> = vec![
        (
            "z2_group_algebra.json",
            Document::Hopf { name: Some("k[Z/2]".into()), data: z2.clone() },
        ),
        (
            "z3_group_algebra.json",
            Document::Hopf { name: Some("k[Z/3]".into()), data: z3_group_algebra() },
        ),
        (
            "sweedler_h4.json",
            Document::Hopf { name: Some("Sweedler H4".into()), data: sweedler.clone() },
        ),
        (
            "sweedler_h4_dual.json",
            Document::Hopf { name: Some("Sweedler H4 dual".into()), data: dual_hopf(&sweedler) },
        ),
        (
            "double_z2.json",
            Document::Hopf {
                name: Some("D(k[Z/2])".into()),
                data: drinfeld_double(&z2).expect("double of a group algebra").hopf,
            },
        ),
        (
            "z2_diagonal_trialgebra.json",
            Document::Trialgebra {
                name: Some("diagonal on k[Z/2]".into()),
                data: diagonal_trialgebra(&z2),
            },
        ),
        (
            "s3_diagonal.json",
            Document::Trialgebra {
                name: Some("diagonal on k[S3]".into()),
                data: diagonal_trialgebra(&s3_group_algebra()),
            },
        ),
        (
            "z2_diagonal_quadraalgebra.json",
            Document::Quadraalgebra {
                name: Some("diagonal on k[Z/2]".into()),
                data: diagonal_quadraalgebra(&z2),
            },
        ),
        ("sl2.json", Document::LieMetrized { name: Some("sl2".into()), data: sl2_metrized() }),
        ("so3.json", Document::LieMetrized { name: Some("so(3)".into()), data: so3_metrized() }),
        ("f_expX.json", Document::Series { name: Some("exp(X)".into()), data: exp_x }),
        (
            "prim_x.json",
            Document::Series {
                name: Some("X".into()),
                data: NCSeries::generator(&al, 5, 0),
            },
        ),
        (
            "prim_y.json",
            Document::Series {
                name: Some("Y".into()),
                data: NCSeries::generator(&al, 5, 1),
            },
        ),
        (
            "gt_identity.json",
            Document::GT {
                name: Some("identity".into()),
                data: GTElement::new(int(1), NCSeries::one(&al, 5)).expect("constant term one"),
            },
        ),
        (
            "gt_minus_one.json",
            Document::GT {
                name: Some("lambda = -1".into()),
                data: GTElement::new(int(-1), NCSeries::one(&al, 5)).expect("constant term one"),
            },
        ),
        (
            "hgt_exp_commutator.json",
            Document::HGT {
                name: Some("f = g = exp([X,Y])".into()),
                data: HGTPair::new(exp_comm.clone(), exp_comm).expect("group-like pair"),
            },
        ),
        (
            "braid_relation_lhs.json",
            Document::Braid {
                name: Some("sigma1 sigma2 sigma1".into()),
                data: BraidWord::parse("s1 s2 s1").expect("valid tokens"),
            },
        ),
    ];

    for (file, doc) in docs {
        let path = dir.join(file);
        std::fs::write(&path, print(&doc)).expect("write corpus file");
        println!("wrote {}", path.display());
    }
}
