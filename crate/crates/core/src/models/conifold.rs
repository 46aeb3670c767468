//! The conifold counter-example: a triangulated 3-ball around a four-valent
//! discriminant vertex, with monodromy shears around the four legs sharing
//! one invariant direction but spanning both transverse covectors.

use super::{Model, ModelError};
use crate::complex::DeltaComplex;
use crate::local_system::LocalSystem;
use crate::matrix::Mat;
use crate::punctured::transvection;
use crate::arith::{int, Int};
use std::collections::BTreeMap;

/// Octahedron ball: center vertex 0, outer vertices 1..=6 in the order
/// +x, -x, +y, -y, +z, -z. Tetrahedra are the cones over the eight faces.
/// The discriminant is the four legs along ±y and ±z.
pub fn build_conifold() -> Result<Model, ModelError> {
    let (xp, xm, yp, ym, zp, zm) = (1u32, 2, 3, 4, 5, 6);
    let faces = [
        [xp, yp, zp],
        [xp, yp, zm],
        [xp, ym, zp],
        [xp, ym, zm],
        [xm, yp, zp],
        [xm, yp, zm],
        [xm, ym, zp],
        [xm, ym, zm],
    ];
    let tets: Vec<Vec<u32>> = faces
        .iter()
        .map(|f| {
            let mut t = vec![0u32, f[0], f[1], f[2]];
            t.sort_unstable();
            t
        })
        .collect();
    let delta: Vec<Vec<u32>> = vec![
        vec![0],
        vec![yp],
        vec![ym],
        vec![zp],
        vec![zm],
        vec![0, yp],
        vec![0, ym],
        vec![0, zp],
        vec![0, zm],
    ];
    let cx = DeltaComplex::new(3, 7, &tets, &delta, None)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    // Slit membranes: triangle (0, leg, xp) for each leg; crossing it applies
    // the leg's shear. Shear for legs ±y: v ↦ v + κ ⟨v, z*⟩ e_x;
    // for legs ±z: v ↦ v + κ ⟨v, y*⟩ e_x. Signs κ are solved so that the
    // monodromy around the two non-discriminant interior edges (0,±x) is
    // trivial.
    let ex = [int(1)];
    let ystar = |k: i64| vec![int(k), Int::from(0)];
    let zstar = |k: i64| vec![Int::from(0), int(k)];
    let legs = [(yp, true), (ym, true), (zp, false), (zm, false)];
    let membrane = |leg: u32| -> usize {
        let mut m = vec![0u32, leg, xp];
        m.sort_unstable();
        cx.lookup(&m).expect("membrane triangle")
    };
    let mut solution = None;
    'search: for mask in 0..16u32 {
        let mut transitions: BTreeMap<usize, Mat> = BTreeMap::new();
        for (i, &(leg, is_y)) in legs.iter().enumerate() {
            let k: i64 = if mask & (1 << i) != 0 { 1 } else { -1 };
            let cov = if is_y { zstar(k) } else { ystar(k) };
            let t = transvection(3, &ex, 0, &cov, 1);
            transitions.insert(membrane(leg), t);
        }
        let system = match LocalSystem::new(&cx, 3, transitions) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if system.validate_cocycle(&cx).is_ok() {
            solution = Some(system);
            break 'search;
        }
    }
    let system = solution.ok_or_else(|| {
        ModelError::Verification("no shear sign pattern balances the conifold vertex".into())
    })?;
    let monos = system
        .validate_cocycle(&cx)
        .map_err(|e| ModelError::Verification(e.to_string()))?;
    if monos.len() != 4 {
        return Err(ModelError::Verification(format!(
            "expected 4 discriminant legs with monodromy, found {}",
            monos.len()
        )));
    }
    for m in monos.values() {
        let d = m.sub(&Mat::identity(3));
        if d.is_zero() || !d.mul(&d).is_zero() {
            return Err(ModelError::Verification(
                "leg monodromy is not a unipotent shear".into(),
            ));
        }
    }
    // one barycentric subdivision makes the pushforward sheaves of all
    // wedge degrees acyclic on every simplex
    let (sub, carrier, _) = cx.barycentric();
    let system = system
        .subdivided(&cx, &sub, &carrier)
        .map_err(|e| ModelError::Construction(e.to_string()))?;
    let model = Model {
        name: "conifold".into(),
        complex: sub,
        system,
        omega_sign: 1,
        cycles: Vec::new(),
    };
    model.verify()?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{chain_complex, homology, Field, RelMode};
    use crate::cech::{cohomology, vertex_star_cech};
    use crate::sheaf::{SheafFunctor, SheafGeometry, SheafKind};

    #[test]
    fn conifold_groups() {
        let m = build_conifold().unwrap();
        let geom = SheafGeometry::new(&m.complex, &m.system);
        let closed = SheafFunctor::pushforward(&geom, 1, SheafKind::Closed).unwrap();
        let open = SheafFunctor::pushforward(&geom, 1, SheafKind::Open).unwrap();
        // H^1(U, ι_*Λ) = 0
        let coh = cohomology(&vertex_star_cech(&m.complex, &open), Field::Integers);
        assert_eq!(coh[1].betti, 0);
        // rank H_1(U, ι_*Λ) = 1
        let h = homology(&chain_complex(&m.complex, &closed, RelMode::None), Field::Integers);
        assert_eq!(h[1].betti, 1);
    }
}
