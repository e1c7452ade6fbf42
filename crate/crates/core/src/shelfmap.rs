//! Self-distributive maps `q: X⊗X → X` on coalgebras: constructions from
//! racks, Lie algebras and Hopf algebras, and the axiom checks.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coalgebra::{adjoint_composite, build_augmented, build_lie_n, Coalgebra, CoalgebraError, HopfData};
use crate::exactfield::FieldSpec;
use crate::liecoh::LieAlgebra;
use crate::quandlecoh::FiniteRack;
use crate::tensorspace::LinearMap;
use crate::wiring::{Diagram, SparseMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShelfError {
    #[error("q must be a 2→1 map on the coalgebra's space")]
    Shape,
    #[error("q is not self-distributive")]
    NotSelfDistributive,
    #[error("invalid rack: {0}")]
    Rack(String),
    #[error(transparent)]
    Coalgebra(#[from] CoalgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Rack,
    Lie,
    HopfAdjoint,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CounitReport {
    /// `εq = ε⊗ε`.
    pub strict: bool,
    /// `εq = q(ε⊗1)`, with `k` identified with the ground line of the
    /// coalgebra; `None` when the coalgebra has no ground line.
    pub weak: Option<bool>,
}

/// Sparse copies of `q`, `Δ` and `ε` for diagram building.
#[derive(Clone)]
pub struct StructureMaps {
    pub q: Arc<SparseMap>,
    pub delta: Arc<SparseMap>,
    pub epsilon: Arc<SparseMap>,
}

impl StructureMaps {
    pub fn new(q: &LinearMap, c: &Coalgebra) -> Self {
        StructureMaps {
            q: SparseMap::new(q),
            delta: SparseMap::new(&c.delta),
            epsilon: SparseMap::new(&c.epsilon),
        }
    }
}

fn check_shape(q: &LinearMap, c: &Coalgebra) -> Result<(), ShelfError> {
    if q.space != c.space || q.domain_power != 2 || q.codomain_power != 1 {
        return Err(ShelfError::Shape);
    }
    Ok(())
}

/// The self-distributivity defect `q(q⊗1) − q(q⊗q)τ₂(1⊗1⊗Δ)` as a 3→1 map.
pub fn sd_defect(q: &LinearMap, c: &Coalgebra) -> LinearMap {
    let m = StructureMaps::new(q, c);
    let (mut lhs, w) = Diagram::new(&c.space, 3);
    let a = lhs.bin(&m.q, w[0], w[1]);
    let o = lhs.bin(&m.q, a, w[2]);
    let lhs = lhs.finish(&[o]);
    let (mut rhs, w) = Diagram::new(&c.space, 3);
    let (z1, z2) = rhs.split(&m.delta, w[2]);
    let a = rhs.bin(&m.q, w[0], z1);
    let b = rhs.bin(&m.q, w[1], z2);
    let o = rhs.bin(&m.q, a, b);
    let rhs = rhs.finish(&[o]);
    lhs.to_map(None).sub(&rhs.to_map(None))
}

/// The compatibility defect `Δq − (q⊗q)τ₂(Δ⊗Δ)` as a 2→2 map.
pub fn compat_defect(q: &LinearMap, c: &Coalgebra) -> LinearMap {
    let m = StructureMaps::new(q, c);
    let (mut lhs, w) = Diagram::new(&c.space, 2);
    let a = lhs.bin(&m.q, w[0], w[1]);
    let (o1, o2) = lhs.split(&m.delta, a);
    let lhs = lhs.finish(&[o1, o2]);
    let (mut rhs, w) = Diagram::new(&c.space, 2);
    let (x1, x2) = rhs.split(&m.delta, w[0]);
    let (y1, y2) = rhs.split(&m.delta, w[1]);
    let a = rhs.bin(&m.q, x1, y1);
    let b = rhs.bin(&m.q, x2, y2);
    let rhs = rhs.finish(&[a, b]);
    lhs.to_map(None).sub(&rhs.to_map(None))
}

pub fn check_self_distributive(q: &LinearMap, c: &Coalgebra) -> Result<bool, ShelfError> {
    check_shape(q, c)?;
    Ok(sd_defect(q, c).is_zero())
}

pub fn check_comult_compatible(q: &LinearMap, c: &Coalgebra) -> Result<bool, ShelfError> {
    check_shape(q, c)?;
    Ok(compat_defect(q, c).is_zero())
}

pub fn check_counit_behavior(q: &LinearMap, c: &Coalgebra) -> Result<CounitReport, ShelfError> {
    check_shape(q, c)?;
    let m = StructureMaps::new(q, c);
    let (mut eq, w) = Diagram::new(&c.space, 2);
    let a = eq.bin(&m.q, w[0], w[1]);
    eq.apply(&m.epsilon, &[a]);
    let eq = eq.finish(&[]).to_map(None);
    let (mut ee, w) = Diagram::new(&c.space, 2);
    ee.apply(&m.epsilon, &[w[0]]);
    ee.apply(&m.epsilon, &[w[1]]);
    let ee = ee.finish(&[]).to_map(None);
    let strict = eq == ee;
    let weak = c.ground.map(|g| {
        // η ε q versus q(η ε ⊗ 1), with η(1) the ground basis vector
        let field = c.field();
        let eta = SparseMap::new(&LinearMap::from_fn(&c.space, 0, 1, |_| vec![(vec![g], field.one())]));
        let (mut l, w) = Diagram::new(&c.space, 2);
        let a = l.bin(&m.q, w[0], w[1]);
        l.apply(&m.epsilon, &[a]);
        let u = l.apply(&eta, &[])[0];
        let l = l.finish(&[u]).to_map(None);
        let (mut r, w) = Diagram::new(&c.space, 2);
        r.apply(&m.epsilon, &[w[0]]);
        let u = r.apply(&eta, &[])[0];
        let o = r.bin(&m.q, u, w[1]);
        let r = r.finish(&[o]).to_map(None);
        l == r
    });
    Ok(CounitReport { strict, weak })
}

/// A self-distributive map on a coalgebra.
#[derive(Debug, Clone)]
pub struct ShelfStructure {
    pub coalgebra: Coalgebra,
    pub q: LinearMap,
    pub provenance: Provenance,
    pub compatible: bool,
    pub counit: CounitReport,
}

impl ShelfStructure {
    /// Wraps `q`, rejecting it unless it is self-distributive; compatibility
    /// and counit behaviour are recorded, not required.
    pub fn new(coalgebra: Coalgebra, q: LinearMap, provenance: Provenance) -> Result<Self, ShelfError> {
        if !check_self_distributive(&q, &coalgebra)? {
            return Err(ShelfError::NotSelfDistributive);
        }
        let compatible = check_comult_compatible(&q, &coalgebra)?;
        let counit = check_counit_behavior(&q, &coalgebra)?;
        Ok(ShelfStructure {
            coalgebra,
            q,
            provenance,
            compatible,
            counit,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.coalgebra.field()
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    pub fn maps(&self) -> StructureMaps {
        StructureMaps::new(&self.q, &self.coalgebra)
    }
}

/// The rack shelf on `W = k ⊕ kX`: `q(x⊗y) = x◁y`, `q(1⊗x) = 1`,
/// `q(x⊗1) = q(1⊗1) = 0`.
pub fn q_from_rack(r: &FiniteRack, field: FieldSpec) -> Result<ShelfStructure, ShelfError> {
    let w = build_augmented(r.size(), field);
    let one = field.one();
    let q = LinearMap::from_fn(&w.space, 2, 1, |i| match (i[0], i[1]) {
        (0, 0) | (_, 0) => vec![],
        (0, _) => vec![(vec![0], one.clone())],
        (x, y) => vec![(vec![r.op(x - 1, y - 1) + 1], one.clone())],
    });
    ShelfStructure::new(w, q, Provenance::Rack)
}

/// The Lie shelf on `N = k ⊕ 𝔤`: `q((a,x)⊗(b,y)) = (ab, bx + [x,y])`.
pub fn q_from_lie(g: &LieAlgebra) -> Result<ShelfStructure, ShelfError> {
    let n = build_lie_n(g)?;
    let one = g.field().one();
    let q = LinearMap::from_fn(&n.space, 2, 1, |i| match (i[0], i[1]) {
        (0, 0) => vec![(vec![0], one.clone())],
        (x, 0) => vec![(vec![x], one.clone())],
        (0, _) => vec![],
        (x, y) => g
            .bracket_basis(x - 1, y - 1)
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (vec![k + 1], v))
            .collect(),
    });
    ShelfStructure::new(n, q, Provenance::Lie)
}

/// The adjoint map `q(x⊗y) = S(y₍₁₎) x y₍₂₎` of a Hopf algebra.
pub fn q_adjoint(h: &HopfData) -> Result<ShelfStructure, ShelfError> {
    let q = adjoint_composite(h);
    ShelfStructure::new(h.coalgebra.clone(), q, Provenance::HopfAdjoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{build_group_hopf, build_setlike, cyclic_table, s3_table};
    use crate::liecoh::sl2_type;
    use crate::quandlecoh::make_rack;
    use crate::quandlecoh::RackKind;

    #[test]
    fn rack_shelf_properties() {
        let r = make_rack(&RackKind::Dihedral(3)).unwrap();
        let s = q_from_rack(&r, FieldSpec::Prime(5)).unwrap();
        assert!(s.compatible);
        assert!(!s.counit.strict);
        assert_eq!(s.counit.weak, Some(true));
        let one = FieldSpec::Prime(5).one();
        assert_eq!(s.q.get(&[1], &[2, 3]), &one);
        assert_eq!(s.q.get(&[0], &[0, 2]), &one);
    }

    #[test]
    fn zero_map_is_sd() {
        let c = build_setlike(&["x".into(), "y".into()], FieldSpec::Rationals);
        let z = LinearMap::zero(&c.space, 2, 1);
        assert!(check_self_distributive(&z, &c).unwrap());
        assert!(check_comult_compatible(&z, &c).unwrap());
    }

    #[test]
    fn degenerate_counit() {
        let f = FieldSpec::Rationals;
        let sp = crate::tensorspace::BasedSpace::numbered(1, f);
        let c = Coalgebra::unchecked(LinearMap::zero(&sp, 1, 2), LinearMap::zero(&sp, 1, 0), Some(0)).unwrap();
        let r = check_counit_behavior(&LinearMap::zero(&sp, 2, 1), &c).unwrap();
        assert!(r.strict);
        assert_eq!(r.weak, Some(true));
    }

    #[test]
    fn lie_shelf_properties() {
        let g = sl2_type(FieldSpec::Rationals).unwrap();
        let s = q_from_lie(&g).unwrap();
        assert!(s.compatible && s.counit.strict);
        // q((0,x)⊗(0,y)) = (0,[x,y]): [h,e] = 2e
        assert_eq!(s.q.get(&[2], &[1, 2]), &FieldSpec::Rationals.from_i64(2));
        assert_eq!(s.q.get(&[1], &[1, 0]), &FieldSpec::Rationals.one());
    }

    #[test]
    fn adjoint_shelves() {
        let f = FieldSpec::Rationals;
        let h = build_group_hopf(&s3_table(), None, f).unwrap();
        let s = q_adjoint(&h).unwrap();
        let t = s3_table();
        let inv = |g: usize| (0..6).find(|&k| t[g][k] == 0).unwrap();
        for g in 0..6 {
            for k in 0..6 {
                let conj = t[t[inv(k)][g]][k];
                assert_eq!(s.q.get(&[conj], &[g, k]), &f.one());
            }
        }
        let z2 = build_group_hopf(&cyclic_table(2), None, f).unwrap();
        let s = q_adjoint(&z2).unwrap();
        for g in 0..2 {
            for k in 0..2 {
                assert_eq!(s.q.get(&[g], &[g, k]), &f.one());
            }
        }
    }
}
