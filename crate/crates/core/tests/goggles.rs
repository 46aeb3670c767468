//! Goggle and torsion model checks against the worked two-singularity
//! computations.

use trophom::arith::int;
use trophom::cech::{cohomology, verify_pl_duality, vertex_star_cech};
use trophom::chain::{chain_complex, homology, Field, RelMode};
use trophom::models::grid2d::{build_goggles, build_torsion_pair, GoggleVariant};
use trophom::pairing::{pairing_matrix, TropicalCycle};
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

fn goggle_checks(variant: GoggleVariant) {
    let m = build_goggles(variant).unwrap();
    let cx = &m.complex;
    let geom = SheafGeometry::new(cx, &m.system);
    let dual_sys = m.system.dual(cx);
    let dual_geom = SheafGeometry::new(cx, &dual_sys);
    let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let open_dual = SheafFunctor::pushforward(&dual_geom, 1, SheafKind::Open).unwrap();
    let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();

    // cohomology of the dual sheaf: H^0 = Z e2*, H^1 = Z e1*
    let cech_dual = vertex_star_cech(cx, &open_dual);
    let coh_dual = cohomology(&cech_dual, Field::Integers);
    assert_eq!(coh_dual[0].betti, 1, "H^0(B, dual) rank");
    assert_eq!(coh_dual[1].betti, 1, "H^1(B, dual) rank");
    assert!(coh_dual[1].torsion.is_empty());

    // the H^0 generator is the invariant e2* direction: the global section
    // lattice is spanned by a section whose value is ±e2* everywhere
    let h0rep = &coh_dual[0].representatives;
    assert_eq!(h0rep.cols(), 1);

    // cohomology of ι_*Λ: H^0 = Z e1, H^1 = Z e2
    let cech = vertex_star_cech(cx, &open);
    let coh = cohomology(&cech, Field::Integers);
    assert_eq!(coh[0].betti, 1);
    assert_eq!(coh[1].betti, 1);

    // homology: H_1(B, ι_*Λ) = Z, generated by the bundled goggle
    let complex = chain_complex(cx, &closed, RelMode::None);
    let h = homology(&complex, Field::Integers);
    assert_eq!(h[1].betti, 1, "H_1 rank");
    assert!(h[1].torsion.is_empty());
    let (name, goggle) = &m.cycles[0];
    assert_eq!(name, "goggle");
    assert!(goggle.is_cycle(&closed, &complex.terms[1], &complex.diffs[0]));

    // cap pairing of the goggle against the H^1 basis: gram = (±1)
    let gcoords = goggle.term_coordinates(&closed, &complex.terms[1]).unwrap();
    let greps = trophom::matrix::Mat::from_columns(gcoords.len(), &[gcoords]);
    let rep = pairing_matrix(
        &closed,
        &complex.terms[1],
        &greps,
        &open_dual,
        &cech_dual.terms[1],
        &coh_dual[1].representatives,
    );
    assert_eq!(rep.gram.rows(), 1);
    assert_eq!(rep.gram.cols(), 1);
    let v = rep.gram.at(0, 0).clone();
    assert!(
        v == int(1) || v == int(-1),
        "goggle pairing should be ±1, got {}",
        v
    );
    assert!(rep.perfect_over_z);

    // duality
    for p in 0..=2 {
        let d = verify_pl_duality(cx, &m.system, p);
        assert!(d.passed, "duality p={} failed: {:?}", p, d);
    }

    // boundaries pair to zero against cocycles
    let bd = &complex.diffs[1];
    for c in 0..bd.cols().min(4) {
        let col = bd.column(c);
        let val = trophom::pairing::pair_vectors(
            &closed,
            &complex.terms[1],
            &col,
            &open_dual,
            &cech_dual.terms[1],
            &coh_dual[1].representatives.column(0),
        );
        assert!(val == int(0), "boundary pairs nonzero");
    }
    let _ = TropicalCycle {
        p: 1,
        q: 1,
        cells: vec![],
    };
}

#[test]
fn goggles_shared_line() {
    goggle_checks(GoggleVariant::SharedLine);
}

#[test]
fn goggles_parallel_lines() {
    goggle_checks(GoggleVariant::ParallelLines);
}

#[test]
fn torsion_pair_groups() {
    for (d1, d2, det) in [
        ([1i64, 1], [1i64, -1], 2i64),
        ([1, 0], [1, 2], 2),
        ([1, 0], [1, 3], 3),
    ] {
        let m = build_torsion_pair(&d1, &d2).unwrap();
        let dual_sys = m.system.dual(&m.complex);
        let dual_geom = SheafGeometry::new(&m.complex, &dual_sys);
        let open_dual = SheafFunctor::pushforward(&dual_geom, 1, SheafKind::Open).unwrap();
        let coh = cohomology(&vertex_star_cech(&m.complex, &open_dual), Field::Integers);
        assert_eq!(coh[1].betti, 0, "H^1 should be pure torsion");
        assert_eq!(coh[1].torsion, vec![int(det)], "H^1 torsion for {:?}, {:?}", d1, d2);
    }
}
