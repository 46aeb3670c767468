//! Intersection-number checks: the local formula and the pairing route must
//! agree on the worked configurations.

use trophom::arith::int;
use trophom::cech::{b7_identification, maxcell_cech};
use trophom::models::grid2d::{build_goggles, GoggleVariant};
use trophom::pairing::{
    duality_cocycle_is_cocycle, duality_cocycle_surface, intersection_via_pairing,
};
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

#[test]
fn goggle_self_intersection_via_pairing() {
    for variant in [GoggleVariant::SharedLine, GoggleVariant::ParallelLines] {
        let m = build_goggles(variant).unwrap();
        let cx = &m.complex;
        let geom = SheafGeometry::new(cx, &m.system);
        let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
        let orientation = cx.orientation().unwrap();
        let goggle = &m.cycles[0].1;

        let mc = maxcell_cech(cx, &geom, &closed);
        let id = b7_identification(cx, &geom, &closed, &mc, Some(&orientation)).unwrap();
        let s = duality_cocycle_surface(cx, &geom, &closed, &id, goggle).unwrap();
        assert!(
            duality_cocycle_is_cocycle(&closed, &mc, &s),
            "duality cocycle fails the cocycle condition ({:?})",
            variant
        );

        let self_int = intersection_via_pairing(
            cx,
            &geom,
            &closed,
            &mc,
            &id,
            goggle,
            goggle,
            m.omega_sign,
        )
        .unwrap();
        assert_eq!(self_int, int(-2), "goggle self-intersection ({:?})", variant);
    }
}

#[test]
fn goggle_duality_class_is_nonzero() {
    let m = build_goggles(GoggleVariant::SharedLine).unwrap();
    let cx = &m.complex;
    let geom = SheafGeometry::new(cx, &m.system);
    let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let orientation = cx.orientation().unwrap();
    let goggle = &m.cycles[0].1;
    let mc = maxcell_cech(cx, &geom, &closed);
    let id = b7_identification(cx, &geom, &closed, &mc, Some(&orientation)).unwrap();
    let s = duality_cocycle_surface(cx, &geom, &closed, &id, goggle).unwrap();
    let term = &mc.complex.terms[1];
    let mut vec = vec![int(0); term.total];
    for (cells, val) in &s.components {
        let pos = mc.sets[1].iter().position(|t| &t.cells == cells).unwrap();
        let sigma = mc.sets[1][pos].sigma;
        let off = term.offsets[pos];
        let coords = closed.lattices[sigma]
            .coordinates_of(&trophom::matrix::Mat::from_columns(val.len(), &[val.clone()]))
            .unwrap();
        for r in 0..coords.rows() {
            vec[off + r] += coords.at(r, 0);
        }
    }
    let coh = trophom::cech::cohomology(&mc.complex, trophom::chain::Field::Integers);
    let reps = &coh[1].representatives;
    let stacked = reps.hstack(&mc.complex.diffs[0]);
    let b = trophom::matrix::Mat::from_columns(vec.len(), &[vec]);
    let x = trophom::snf::solve(&stacked, &b).expect("class solve");
    eprintln!("duality class coefficient: {}", x.at(0, 0));
    assert!(!trophom::arith::is_zero(x.at(0, 0)), "duality image of the goggle vanishes");
}

