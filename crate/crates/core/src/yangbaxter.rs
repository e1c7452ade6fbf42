//! Yang–Baxter operators induced by shelves and shelves induced by
//! Yang–Baxter operators.

use serde::Serialize;

use crate::coalgebra::{Coalgebra, HopfData};
use crate::liecoh::LieAlgebra;
use crate::shelfmap::{check_comult_compatible, check_counit_behavior, check_self_distributive, ShelfStructure};
use crate::tensorspace::{BasedSpace, LinearMap};
use crate::wiring::{Diagram, SparseMap};

#[derive(Debug, Clone)]
pub struct YbOperator {
    pub space: BasedSpace,
    pub r: LinearMap,
    pub invertible: bool,
}

impl YbOperator {
    pub fn new(r: LinearMap) -> Self {
        assert_eq!((r.domain_power, r.codomain_power), (2, 2), "R must be a 2→2 map");
        let invertible = r.matrix.rank() == r.matrix.rows;
        YbOperator {
            space: r.space.clone(),
            r,
            invertible,
        }
    }
}

/// `R_q = (1⊗q)(τ⊗1)(1⊗Δ)`, i.e. `x⊗y ↦ y₍₁₎ ⊗ q(x⊗y₍₂₎)`.
pub fn r_from_q(q: &LinearMap, c: &Coalgebra) -> YbOperator {
    let qs = SparseMap::new(q);
    let ds = SparseMap::new(&c.delta);
    let (mut dg, w) = Diagram::new(&c.space, 2);
    let (y1, y2) = dg.split(&ds, w[1]);
    let o = dg.bin(&qs, w[0], y2);
    YbOperator::new(dg.finish(&[y1, o]).to_map(None))
}

pub fn r_from_shelf(s: &ShelfStructure) -> YbOperator {
    r_from_q(&s.q, &s.coalgebra)
}

/// `q_R = (ε⊗1)R`.
pub fn q_from_r(r: &YbOperator, c: &Coalgebra) -> LinearMap {
    let rs = SparseMap::new(&r.r);
    let es = SparseMap::new(&c.epsilon);
    let (mut dg, w) = Diagram::new(&c.space, 2);
    let o = dg.apply(&rs, &w);
    dg.apply(&es, &[o[0]]);
    dg.finish(&[o[1]]).to_map(None)
}

pub fn check_ybe(r: &YbOperator) -> bool {
    let rs = SparseMap::new(&r.r);
    // (R⊗1)(1⊗R)(R⊗1)
    let (mut l, w) = Diagram::new(&r.space, 3);
    let a = l.apply(&rs, &[w[0], w[1]]);
    let b = l.apply(&rs, &[a[1], w[2]]);
    let c = l.apply(&rs, &[a[0], b[0]]);
    let l = l.finish(&[c[0], c[1], b[1]]);
    // (1⊗R)(R⊗1)(1⊗R)
    let (mut m, w) = Diagram::new(&r.space, 3);
    let a = m.apply(&rs, &[w[1], w[2]]);
    let b = m.apply(&rs, &[w[0], a[0]]);
    let c = m.apply(&rs, &[b[1], a[1]]);
    let m = m.finish(&[b[0], c[0], c[1]]);
    l.to_map(None) == m.to_map(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InducedShelfReport {
    pub ybe: bool,
    /// `(ε⊗ε)R = ε⊗ε`.
    pub counit_condition: bool,
    /// `R_{q_R} = R`.
    pub fixed_point: bool,
    pub self_distributive: bool,
    pub compatible: bool,
    pub strict_counit: bool,
    /// Whether `(X, q_R)` is a shelf in coalgebras; `None` unless every
    /// hypothesis holds.
    pub conclusion: Option<bool>,
}

/// Checks the hypotheses under which `q_R` is a shelf in coalgebras and,
/// when they hold, whether it is one.
pub fn check_induced_shelf(r: &YbOperator, c: &Coalgebra) -> InducedShelfReport {
    let ybe = check_ybe(r);
    let es = SparseMap::new(&c.epsilon);
    let rs = SparseMap::new(&r.r);
    let (mut l, w) = Diagram::new(&c.space, 2);
    let o = l.apply(&rs, &w);
    l.apply(&es, &[o[0]]);
    l.apply(&es, &[o[1]]);
    let l = l.finish(&[]).to_map(None);
    let (mut e, w) = Diagram::new(&c.space, 2);
    e.apply(&es, &[w[0]]);
    e.apply(&es, &[w[1]]);
    let e = e.finish(&[]).to_map(None);
    let counit_condition = l == e;

    let qr = q_from_r(r, c);
    let fixed_point = r_from_q(&qr, c).r == r.r;
    let self_distributive = check_self_distributive(&qr, c).unwrap_or(false);
    let compatible = check_comult_compatible(&qr, c).unwrap_or(false);
    let strict_counit = check_counit_behavior(&qr, c).map(|x| x.strict).unwrap_or(false);
    let conclusion = (ybe && counit_condition && fixed_point).then_some(self_distributive && compatible && strict_counit);
    InducedShelfReport {
        ybe,
        counit_condition,
        fixed_point,
        self_distributive,
        compatible,
        strict_counit,
        conclusion,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjointIdentities {
    /// `q(q⊗1) = q(1⊗μ)`.
    pub eq1: bool,
    /// `(q⊗μ)(1⊗τ⊗1)(Δ⊗Δ) = (1⊗μ)(τ⊗1)(1⊗Δ)(1⊗q)(τ⊗1)(1⊗Δ)`.
    pub eq2: bool,
}

/// The two identities relating an adjoint-type `q` to the Hopf structure.
pub fn check_adjoint_identities(q: &LinearMap, h: &HopfData) -> AdjointIdentities {
    let space = &h.coalgebra.space;
    let qs = SparseMap::new(q);
    let ms = SparseMap::new(&h.mu);
    let ds = SparseMap::new(&h.coalgebra.delta);

    let (mut l, w) = Diagram::new(space, 3);
    let a = l.bin(&qs, w[0], w[1]);
    let o = l.bin(&qs, a, w[2]);
    let l = l.finish(&[o]);
    let (mut r, w) = Diagram::new(space, 3);
    let a = r.bin(&ms, w[1], w[2]);
    let o = r.bin(&qs, w[0], a);
    let r = r.finish(&[o]);
    let eq1 = l.to_map(None) == r.to_map(None);

    let (mut l, w) = Diagram::new(space, 2);
    let (x1, x2) = l.split(&ds, w[0]);
    let (y1, y2) = l.split(&ds, w[1]);
    let a = l.bin(&qs, x1, y1);
    let b = l.bin(&ms, x2, y2);
    let l = l.finish(&[a, b]);
    let (mut r, w) = Diagram::new(space, 2);
    let (y1, y2) = r.split(&ds, w[1]);
    let c = r.bin(&qs, w[0], y2);
    let (c1, c2) = r.split(&ds, c);
    let b = r.bin(&ms, y1, c2);
    let r = r.finish(&[c1, b]);
    let eq2 = l.to_map(None) == r.to_map(None);
    AdjointIdentities { eq1, eq2 }
}

/// `R((a,x)⊗(b,y)) = (b,y)⊗(a,x) + (1,0)⊗(0,[x,y])` on `k ⊕ 𝔤`.
pub fn lie_r_closed_form(g: &LieAlgebra, space: &BasedSpace) -> LinearMap {
    let one = g.field().one();
    LinearMap::from_fn(space, 2, 2, |i| {
        let mut out = vec![(vec![i[1], i[0]], one.clone())];
        if i[0] > 0 && i[1] > 0 {
            for (k, v) in g.bracket_basis(i[0] - 1, i[1] - 1).into_iter().enumerate() {
                if !v.is_zero() {
                    out.push((vec![0, k + 1], v));
                }
            }
        }
        out
    })
}
