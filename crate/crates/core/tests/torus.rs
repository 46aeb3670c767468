//! Intersection numbers on a flat torus: the coordinate circles give the
//! standard symmetric hyperbolic-plane values.

use std::collections::BTreeMap;
use trophom::arith::int;
use trophom::complex::DeltaComplex;
use trophom::local_system::LocalSystem;
use trophom::cech::maxcell_cech;
use trophom::pairing::{intersection_via_pairing, TropicalCycle};
use trophom::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

fn torus(n: usize) -> DeltaComplex {
    let v = |x: usize, y: usize| ((y % n) * n + (x % n)) as u32;
    let mut tris = Vec::new();
    for y in 0..n {
        for x in 0..n {
            let mut a = vec![v(x, y), v(x + 1, y), v(x + 1, y + 1)];
            let mut b = vec![v(x, y), v(x + 1, y + 1), v(x, y + 1)];
            a.sort_unstable();
            b.sort_unstable();
            tris.push(a);
            tris.push(b);
        }
    }
    DeltaComplex::new(2, n * n, &tris, &[], None).unwrap()
}

#[test]
fn torus_intersections() {
    let n = 4;
    let cx = torus(n);
    let sys = LocalSystem::new(&cx, 2, BTreeMap::new()).unwrap();
    let geom = SheafGeometry::new(&cx, &sys);
    let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
    let orientation = cx.orientation().unwrap();
    let v = |x: usize, y: usize| ((y % n) * n + (x % n)) as u32;
    // horizontal circle at y=0 carrying e1; vertical circle at x=0 carrying e2
    let mut hor = Vec::new();
    for x in 0..n {
        let (a, b) = (v(x, 0), v(x + 1, 0));
        let e = cx.lookup(&[a.min(b), a.max(b)]).unwrap();
        // orient along increasing x: coefficient signs flip with vertex order
        let sign = if a < b { 1 } else { -1 };
        hor.push((e, vec![int(sign), int(0)]));
    }
    let mut ver = Vec::new();
    for y in 0..n {
        let (a, b) = (v(0, y), v(0, y + 1));
        let e = cx.lookup(&[a.min(b), a.max(b)]).unwrap();
        let sign = if a < b { 1 } else { -1 };
        ver.push((e, vec![int(0), int(sign)]));
    }
    let hcyc = TropicalCycle { p: 1, q: 1, cells: hor };
    let vcyc = TropicalCycle { p: 1, q: 1, cells: ver };
    // cycle sanity
    let complex = trophom::chain::chain_complex(&cx, &closed, trophom::chain::RelMode::None);
    assert!(hcyc.is_cycle(&closed, &complex.terms[1], &complex.diffs[0]));
    assert!(vcyc.is_cycle(&closed, &complex.terms[1], &complex.diffs[0]));

    let mc = maxcell_cech(&cx, &geom, &closed);
    let id = trophom::cech::b7_identification(&cx, &geom, &closed, &mc, Some(&orientation)).unwrap();
    let hv = intersection_via_pairing(&cx, &geom, &closed, &mc, &id, &hcyc, &vcyc, 1).unwrap();
    let vh = intersection_via_pairing(&cx, &geom, &closed, &mc, &id, &vcyc, &hcyc, 1).unwrap();
    let hh = intersection_via_pairing(&cx, &geom, &closed, &mc, &id, &hcyc, &hcyc, 1).unwrap();
    let vv = intersection_via_pairing(&cx, &geom, &closed, &mc, &id, &vcyc, &vcyc, 1).unwrap();
    eprintln!("h.v = {}, v.h = {}, h.h = {}, v.v = {}", hv, vh, hh, vv);
    assert_eq!(hh, int(0));
    assert_eq!(vv, int(0));
    // the (1,1) intersection form on a surface is symmetric
    assert_eq!(hv, vh, "symmetry");
    assert_eq!(hv, int(1), "h.v should be +1 in the positive orientation");
}
