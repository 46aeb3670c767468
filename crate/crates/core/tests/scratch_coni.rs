//! Conifold wedge-2 diagnostics.

use trophom::chain::{chain_complex, homology, Field, RelMode};
use trophom::models::build_named;
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

#[test]
fn conifold_p2() {
    let m = build_named("conifold").unwrap();
    let cx = &m.complex;
    let geom = SheafGeometry::new(cx, &m.system);
    let closed = SheafFunctor::pushforward(&geom, 2, SheafKind::Closed).unwrap();
    for v in cx.ids_of_dim(0) {
        eprintln!("vertex {:?}: closed rank {}", cx.vertices_of(*v), closed.rank_at(*v));
    }
    for e in cx.ids_of_dim(1) {
        eprintln!("edge {:?}: closed rank {}", cx.vertices_of(*e), closed.rank_at(*e));
    }
    let complex = chain_complex(cx, &closed, RelMode::None);
    let h = homology(&complex, Field::Integers);
    for g in &h {
        eprintln!("H_{} = betti {} torsion {:?}", g.degree, g.betti, g.torsion);
    }
    // open kind at the center
    let open = SheafFunctor::pushforward(&geom, 2, SheafKind::Open).unwrap();
    let p = cx.lookup(&[0]).unwrap();
    eprintln!("open rank at center: {}", open.rank_at(p));
}

#[test]
fn conifold_p2_subdivided() {
    let m = build_named("conifold").unwrap();
    let (sub, carrier, _) = m.complex.barycentric();
    let sys = m.system.subdivided(&m.complex, &sub, &carrier).unwrap();
    let geom = SheafGeometry::new(&sub, &sys);
    let closed = SheafFunctor::pushforward(&geom, 2, SheafKind::Closed).unwrap();
    let complex = chain_complex(&sub, &closed, RelMode::None);
    let h = homology(&complex, Field::Integers);
    for g in &h {
        eprintln!("H_{} = betti {} torsion {:?}", g.degree, g.betti, g.torsion);
    }
    let rep = trophom::cech::verify_pl_duality(&sub, &sys, 2);
    eprintln!("duality p=2 passed: {}", rep.passed);
}

#[test]
fn bary_flags_debug() {
    // reproduce the boundary closure failure on a single tetrahedron ball
    let cx = trophom::complex::DeltaComplex::new(3, 4, &[vec![0, 1, 2, 3]], &[], None).unwrap();
    let (sub, _, _) = cx.barycentric();
    eprintln!("tet bary ok: {} simplices", sub.simplex_count());
    let m = build_named("conifold").unwrap();
    let r = std::panic::catch_unwind(|| m.complex.barycentric());
    eprintln!("conifold bary: {:?}", r.is_ok());
}

#[test]
fn symple_3d_higher_wedge_duality() {
    let m = build_named("symple:s2xi1").unwrap();
    for p in 0..=3usize {
        let rep = trophom::cech::verify_pl_duality(&m.complex, &m.system, p);
        eprintln!("symple s2xi1 duality p={} passed={}", p, rep.passed);
    }
}

#[test]
fn graded_focus_focus_p0() {
    let m = build_named("focus-focus").unwrap();
    let geom = SheafGeometry::new(&m.complex, &m.system);
    let closed = SheafFunctor::pushforward(&geom, 0, SheafKind::Closed).unwrap();
    let mc = trophom::cech::maxcell_cech(&m.complex, &geom, &closed);
    let g = trophom::cech::graded_concentration_check(&m.complex, &geom, &closed, &mc);
    eprintln!("passed: {}", g.passed);
    eprintln!("expected diagonal: {:?}", g.expected_diagonal);
    for row in &g.table {
        eprintln!("codim {} degree {} betti {} torsion {}", row.0, row.1, row.2, row.3);
    }
}
