//! The shelf cochain complex `C^{n,i} = Hom(X^⊗(n+1−i), X^⊗i)` of a shelf in
//! coalgebras, its differentials in degrees 1 to 3, and the restricted
//! complex `ker d^{1,2} → C^{2,1} → C^{3,1} → C^{4,1}`.
//!
//! Each differential component is a signed list of string diagrams with a
//! single cochain slot. The same list evaluates a concrete cochain and
//! assembles the matrix of the differential.
//!
//! Degree-3 components are the linearizations of the syzygies among the
//! self-distributivity defect `S`, the compatibility defect `C` and the
//! coassociativity defect `A`, obtained by rewriting `((xy)z)w`, `Δ((xy)z)`
//! and `(Δ⊗1)Δ(xy)` in two ways. The first two syzygies need `τΔ = Δ`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactfield::{FieldElement, FieldSpec};
use crate::shelfmap::{ShelfStructure, StructureMaps};
use crate::tensorspace::{rank_kernel_matrix, subspace_membership, BasedSpace, LinearMap, Matrix};
use crate::wiring::{Diagram, SparseMap, Wire};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("C^{{{n},{i}}} needs a map {expected_in}→{expected_out}, got {got_in}→{got_out}")]
    Shape {
        n: usize,
        i: usize,
        expected_in: usize,
        expected_out: usize,
        got_in: usize,
        got_out: usize,
    },
    #[error("degree-3 differentials need a cocommutative coalgebra")]
    NotCocommutative,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("restricted complex is available in degrees {0}")]
    Degree(&'static str),
}

/// An element of `C^{n,i} = Hom(X^⊗(n+1−i), X^⊗i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub n: usize,
    pub i: usize,
    pub map: LinearMap,
}

impl Cochain {
    pub fn try_new(n: usize, i: usize, map: LinearMap) -> Result<Self, CohomologyError> {
        if i == 0 || i > n || map.domain_power != n + 1 - i || map.codomain_power != i {
            return Err(CohomologyError::Shape {
                n,
                i,
                expected_in: (n + 1).saturating_sub(i),
                expected_out: i,
                got_in: map.domain_power,
                got_out: map.codomain_power,
            });
        }
        Ok(Cochain { n, i, map })
    }

    /// Panics on a shape mismatch; see [`Cochain::try_new`].
    pub fn new(n: usize, i: usize, map: LinearMap) -> Self {
        Self::try_new(n, i, map).expect("cochain shape")
    }

    pub fn zero(s: &ShelfStructure, n: usize, i: usize) -> Self {
        Self::new(n, i, LinearMap::zero(&s.coalgebra.space, n + 1 - i, i))
    }

    pub fn random<R: rand::Rng + ?Sized>(s: &ShelfStructure, n: usize, i: usize, rng: &mut R) -> Self {
        Self::new(n, i, LinearMap::random(&s.coalgebra.space, n + 1 - i, i, rng))
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

/// The matrix of a differential between Hom spaces, columns indexed by
/// `source_basis` when the source is a subspace.
#[derive(Debug, Clone)]
pub struct DifferentialMatrix {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Matrix,
    pub source_basis: Option<Vec<Vec<FieldElement>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub z: usize,
    pub b: usize,
    pub h: usize,
}

struct Builder<'a> {
    dg: Diagram,
    m: &'a StructureMaps,
}

impl<'a> Builder<'a> {
    fn new(space: &BasedSpace, m: &'a StructureMaps, n: usize) -> (Self, Vec<Wire>) {
        let (dg, w) = Diagram::new(space, n);
        (Builder { dg, m }, w)
    }

    fn q(&mut self, a: Wire, b: Wire) -> Wire {
        self.dg.bin(&self.m.q, a, b)
    }

    fn d(&mut self, a: Wire) -> (Wire, Wire) {
        self.dg.split(&self.m.delta, a)
    }

    fn d3(&mut self, a: Wire) -> (Wire, Wire, Wire) {
        let (a1, a2) = self.d(a);
        let (a11, a12) = self.d(a1);
        (a11, a12, a2)
    }

    fn slot(&mut self, ins: &[Wire], n_out: usize) -> Vec<Wire> {
        self.dg.slot(ins, n_out)
    }

    fn plus(self, outs: &[Wire]) -> Diagram {
        self.dg.finish(outs)
    }

    fn minus(self, outs: &[Wire]) -> Diagram {
        self.dg.finish(outs).negated()
    }
}

/// A diagram term together with the position of the cochain filling its slot.
type Terms = Vec<(usize, Diagram)>;

/// The four slot placements of `ξ₃` that come from rewriting
/// `τ₂P − P`, `P = (Δ⊗Δ)Δ`, in terms of the coassociativity defect:
/// `τ₂(ξ₃⊗1)Δ`, `−τ₂(Δ⊗1²)ξ₃`, `−(ξ₃⊗1)Δ`, `+(Δ⊗1²)ξ₃`.
fn xi3_placement(b: &mut Builder, w: Wire, pattern: usize) -> [Wire; 4] {
    match pattern {
        0 | 2 => {
            let (w1, w2) = b.d(w);
            let t = b.slot(&[w1], 3);
            if pattern == 0 {
                [t[0], t[2], t[1], w2]
            } else {
                [t[0], t[1], t[2], w2]
            }
        }
        _ => {
            let t = b.slot(&[w], 3);
            let (a1, a2) = b.d(t[0]);
            if pattern == 1 {
                [a1, t[1], a2, t[2]]
            } else {
                [a1, a2, t[1], t[2]]
            }
        }
    }
}

fn placement_negative(pattern: usize) -> bool {
    pattern == 1 || pattern == 2
}

/// The differentials of the shelf complex for a fixed shelf `(X, q, Δ)`.
#[derive(Clone)]
pub struct ShelfComplex {
    space: BasedSpace,
    maps: StructureMaps,
    cocommutative: bool,
}

impl ShelfComplex {
    pub fn new(s: &ShelfStructure) -> Self {
        ShelfComplex {
            space: s.coalgebra.space.clone(),
            maps: s.maps(),
            cocommutative: s.coalgebra.is_cocommutative(),
        }
    }

    pub fn space(&self) -> &BasedSpace {
        &self.space
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    fn b(&self, n: usize) -> (Builder<'_>, Vec<Wire>) {
        Builder::new(&self.space, &self.maps, n)
    }

    fn terms_d1(&self, component: usize) -> Terms {
        let mut t = Terms::new();
        match component {
            1 => {
                let (mut b, w) = self.b(2);
                let f = b.slot(&[w[1]], 1)[0];
                let o = b.q(w[0], f);
                t.push((0, b.plus(&[o])));
                let (mut b, w) = self.b(2);
                let a = b.q(w[0], w[1]);
                let o = b.slot(&[a], 1)[0];
                t.push((0, b.minus(&[o])));
                let (mut b, w) = self.b(2);
                let f = b.slot(&[w[0]], 1)[0];
                let o = b.q(f, w[1]);
                t.push((0, b.plus(&[o])));
            }
            _ => {
                let (mut b, w) = self.b(1);
                let (x1, x2) = b.d(w[0]);
                let f = b.slot(&[x2], 1)[0];
                t.push((0, b.plus(&[x1, f])));
                let (mut b, w) = self.b(1);
                let f = b.slot(&[w[0]], 1)[0];
                let (o1, o2) = b.d(f);
                t.push((0, b.minus(&[o1, o2])));
                let (mut b, w) = self.b(1);
                let (x1, x2) = b.d(w[0]);
                let f = b.slot(&[x1], 1)[0];
                t.push((0, b.plus(&[f, x2])));
            }
        }
        t
    }

    fn terms_d2(&self, component: usize) -> Terms {
        let mut t = Terms::new();
        match component {
            1 => {
                let (mut b, w) = self.b(3);
                let e = b.slot(&[w[0], w[1]], 1)[0];
                let o = b.q(e, w[2]);
                t.push((0, b.plus(&[o])));

                let (mut b, w) = self.b(3);
                let a = b.q(w[0], w[1]);
                let o = b.slot(&[a, w[2]], 1)[0];
                t.push((0, b.plus(&[o])));

                let (mut b, w) = self.b(3);
                let (z1, z2) = b.d(w[2]);
                let a = b.q(w[0], z1);
                let c = b.q(w[1], z2);
                let o = b.slot(&[a, c], 1)[0];
                t.push((0, b.minus(&[o])));

                let (mut b, w) = self.b(3);
                let (z1, z2) = b.d(w[2]);
                let e = b.slot(&[w[0], z1], 1)[0];
                let c = b.q(w[1], z2);
                let o = b.q(e, c);
                t.push((0, b.minus(&[o])));

                let (mut b, w) = self.b(3);
                let (z1, z2) = b.d(w[2]);
                let a = b.q(w[0], z1);
                let e = b.slot(&[w[1], z2], 1)[0];
                let o = b.q(a, e);
                t.push((0, b.minus(&[o])));

                let (mut b, w) = self.b(3);
                let h = b.slot(&[w[2]], 2);
                let a = b.q(w[0], h[0]);
                let c = b.q(w[1], h[1]);
                let o = b.q(a, c);
                t.push((1, b.minus(&[o])));
            }
            2 => {
                let (mut b, w) = self.b(2);
                let e = b.slot(&[w[0], w[1]], 1)[0];
                let (o1, o2) = b.d(e);
                t.push((0, b.plus(&[o1, o2])));

                let (mut b, w) = self.b(2);
                let a = b.q(w[0], w[1]);
                let h = b.slot(&[a], 2);
                t.push((1, b.plus(&h)));

                let (mut b, w) = self.b(2);
                let (x1, x2) = b.d(w[0]);
                let (y1, y2) = b.d(w[1]);
                let e = b.slot(&[x1, y1], 1)[0];
                let o = b.q(x2, y2);
                t.push((0, b.minus(&[e, o])));

                let (mut b, w) = self.b(2);
                let (x1, x2) = b.d(w[0]);
                let (y1, y2) = b.d(w[1]);
                let o = b.q(x1, y1);
                let e = b.slot(&[x2, y2], 1)[0];
                t.push((0, b.minus(&[o, e])));

                let (mut b, w) = self.b(2);
                let h = b.slot(&[w[0]], 2);
                let (y1, y2) = b.d(w[1]);
                let o1 = b.q(h[0], y1);
                let o2 = b.q(h[1], y2);
                t.push((1, b.minus(&[o1, o2])));

                let (mut b, w) = self.b(2);
                let (x1, x2) = b.d(w[0]);
                let h = b.slot(&[w[1]], 2);
                let o1 = b.q(x1, h[0]);
                let o2 = b.q(x2, h[1]);
                t.push((1, b.minus(&[o1, o2])));
            }
            _ => {
                let (mut b, w) = self.b(1);
                let (x1, x2) = b.d(w[0]);
                let h = b.slot(&[x1], 2);
                t.push((1, b.plus(&[h[0], h[1], x2])));

                let (mut b, w) = self.b(1);
                let h = b.slot(&[w[0]], 2);
                let (a1, a2) = b.d(h[0]);
                t.push((1, b.plus(&[a1, a2, h[1]])));

                let (mut b, w) = self.b(1);
                let (x1, x2) = b.d(w[0]);
                let h = b.slot(&[x2], 2);
                t.push((1, b.minus(&[x1, h[0], h[1]])));

                let (mut b, w) = self.b(1);
                let h = b.slot(&[w[0]], 2);
                let (c1, c2) = b.d(h[1]);
                t.push((1, b.minus(&[h[0], c1, c2])));
            }
        }
        t
    }

    fn terms_d31(&self) -> Terms {
        let mut t = Terms::new();

        // q(ξ₁(x,y,z), w)
        let (mut b, w) = self.b(4);
        let e = b.slot(&w[..3], 1)[0];
        let o = b.q(e, w[3]);
        t.push((0, b.plus(&[o])));

        // ξ₁(xz₁, yz₂, w)
        let (mut b, w) = self.b(4);
        let (z1, z2) = b.d(w[2]);
        let a = b.q(w[0], z1);
        let c = b.q(w[1], z2);
        let o = b.slot(&[a, c, w[3]], 1)[0];
        t.push((0, b.plus(&[o])));

        // q(ξ₁(x,z₁,w₁), (yz₂)w₂)
        let (mut b, w) = self.b(4);
        let (z1, z2) = b.d(w[2]);
        let (w1, w2) = b.d(w[3]);
        let e = b.slot(&[w[0], z1, w1], 1)[0];
        let c = b.q(w[1], z2);
        let u = b.q(c, w2);
        let o = b.q(e, u);
        t.push((0, b.plus(&[o])));

        // q((xw₁₁)(z₁w₁₂), ξ₁(y,z₂,w₂))
        let (mut b, w) = self.b(4);
        let (z1, z2) = b.d(w[2]);
        let (w11, w12, w2) = b.d3(w[3]);
        let a = b.q(w[0], w11);
        let c = b.q(z1, w12);
        let u = b.q(a, c);
        let e = b.slot(&[w[1], z2, w2], 1)[0];
        let o = b.q(u, e);
        t.push((0, b.plus(&[o])));

        // ξ₁(xy, z, w)
        let (mut b, w) = self.b(4);
        let a = b.q(w[0], w[1]);
        let o = b.slot(&[a, w[2], w[3]], 1)[0];
        t.push((0, b.minus(&[o])));

        // q(ξ₁(x,y,w₁), zw₂)
        let (mut b, w) = self.b(4);
        let (w1, w2) = b.d(w[3]);
        let e = b.slot(&[w[0], w[1], w1], 1)[0];
        let c = b.q(w[2], w2);
        let o = b.q(e, c);
        t.push((0, b.minus(&[o])));

        // ξ₁(xw₁₁, yw₁₂, zw₂)
        let (mut b, w) = self.b(4);
        let (w11, w12, w2) = b.d3(w[3]);
        let a = b.q(w[0], w11);
        let c = b.q(w[1], w12);
        let e = b.q(w[2], w2);
        let o = b.slot(&[a, c, e], 1)[0];
        t.push((0, b.minus(&[o])));

        // q((xw₁₁)ξ₂(z,w₂)′, (yw₁₂)ξ₂(z,w₂)″)
        let (mut b, w) = self.b(4);
        let (w11, w12, w2) = b.d3(w[3]);
        let h = b.slot(&[w[2], w2], 2);
        let a = b.q(w[0], w11);
        let a = b.q(a, h[0]);
        let c = b.q(w[1], w12);
        let c = b.q(c, h[1]);
        let o = b.q(a, c);
        t.push((1, b.minus(&[o])));

        // G(α,β,γ,δ) = ((xα)(z₁γ))((yβ)(z₂δ)) on the ξ₃ placements
        for pattern in 0..4 {
            let (mut b, w) = self.b(4);
            let [al, be, ga, de] = xi3_placement(&mut b, w[3], pattern);
            let (z1, z2) = b.d(w[2]);
            let a = b.q(w[0], al);
            let c = b.q(z1, ga);
            let u = b.q(a, c);
            let a = b.q(w[1], be);
            let c = b.q(z2, de);
            let v = b.q(a, c);
            let o = b.q(u, v);
            t.push((2, if placement_negative(pattern) { b.minus(&[o]) } else { b.plus(&[o]) }));
        }
        t
    }

    fn terms_d32(&self) -> Terms {
        let mut t = Terms::new();

        // Δξ₁(x,y,z)
        let (mut b, w) = self.b(3);
        let e = b.slot(&w, 1)[0];
        let (o1, o2) = b.d(e);
        t.push((0, b.plus(&[o1, o2])));

        // ξ₂(xz₁, yz₂)
        let (mut b, w) = self.b(3);
        let (z1, z2) = b.d(w[2]);
        let a = b.q(w[0], z1);
        let c = b.q(w[1], z2);
        let h = b.slot(&[a, c], 2);
        t.push((1, b.plus(&h)));

        // ξ₂(x,z₁)′ b₁ ⊗ ξ₂(x,z₁)″ b₂ with b = Δ(yz₂)
        let (mut b, w) = self.b(3);
        let (z1, z2) = b.d(w[2]);
        let h = b.slot(&[w[0], z1], 2);
        let c = b.q(w[1], z2);
        let (b1, b2) = b.d(c);
        let o1 = b.q(h[0], b1);
        let o2 = b.q(h[1], b2);
        t.push((1, b.plus(&[o1, o2])));

        // (x₁z₁₁)ξ₂(y,z₂)′ ⊗ (x₂z₁₂)ξ₂(y,z₂)″
        let (mut b, w) = self.b(3);
        let (z11, z12, z2) = b.d3(w[2]);
        let (x1, x2) = b.d(w[0]);
        let h = b.slot(&[w[1], z2], 2);
        let a = b.q(x1, z11);
        let o1 = b.q(a, h[0]);
        let a = b.q(x2, z12);
        let o2 = b.q(a, h[1]);
        t.push((1, b.plus(&[o1, o2])));

        // ξ₂(xy, z)
        let (mut b, w) = self.b(3);
        let a = b.q(w[0], w[1]);
        let h = b.slot(&[a, w[2]], 2);
        t.push((1, b.minus(&h)));

        // ξ₂(x,y)′ z₁ ⊗ ξ₂(x,y)″ z₂
        let (mut b, w) = self.b(3);
        let h = b.slot(&[w[0], w[1]], 2);
        let (z1, z2) = b.d(w[2]);
        let o1 = b.q(h[0], z1);
        let o2 = b.q(h[1], z2);
        t.push((1, b.minus(&[o1, o2])));

        // ξ₁(x₁,y₁,z₁) ⊗ (x₂y₂)z₂
        let (mut b, w) = self.b(3);
        let (x1, x2) = b.d(w[0]);
        let (y1, y2) = b.d(w[1]);
        let (z1, z2) = b.d(w[2]);
        let e = b.slot(&[x1, y1, z1], 1)[0];
        let a = b.q(x2, y2);
        let o = b.q(a, z2);
        t.push((0, b.minus(&[e, o])));

        // (x₁z₁₁)(y₁z₁₂) ⊗ ξ₁(x₂,y₂,z₂)
        let (mut b, w) = self.b(3);
        let (x1, x2) = b.d(w[0]);
        let (y1, y2) = b.d(w[1]);
        let (z11, z12, z2) = b.d3(w[2]);
        let a = b.q(x1, z11);
        let c = b.q(y1, z12);
        let o = b.q(a, c);
        let e = b.slot(&[x2, y2, z2], 1)[0];
        t.push((0, b.minus(&[o, e])));

        // H(α,β,γ,δ) = (x₁α)(y₁β) ⊗ (x₂γ)(y₂δ) on the ξ₃ placements
        for pattern in 0..4 {
            let (mut b, w) = self.b(3);
            let [al, be, ga, de] = xi3_placement(&mut b, w[2], pattern);
            let (x1, x2) = b.d(w[0]);
            let (y1, y2) = b.d(w[1]);
            let a = b.q(x1, al);
            let c = b.q(y1, be);
            let o1 = b.q(a, c);
            let a = b.q(x2, ga);
            let c = b.q(y2, de);
            let o2 = b.q(a, c);
            t.push((
                2,
                if placement_negative(pattern) {
                    b.minus(&[o1, o2])
                } else {
                    b.plus(&[o1, o2])
                },
            ));
        }
        t
    }

    fn terms_d33(&self) -> Terms {
        let mut t = Terms::new();

        // (Δ⊗1)ξ₂
        let (mut b, w) = self.b(2);
        let h = b.slot(&w, 2);
        let (a1, a2) = b.d(h[0]);
        t.push((1, b.plus(&[a1, a2, h[1]])));

        // ξ₂(x₁,y₁) ⊗ x₂y₂
        let (mut b, w) = self.b(2);
        let (x1, x2) = b.d(w[0]);
        let (y1, y2) = b.d(w[1]);
        let h = b.slot(&[x1, y1], 2);
        let o = b.q(x2, y2);
        t.push((1, b.plus(&[h[0], h[1], o])));

        // q⊗q⊗q on ξ₃x ⊗ (Δ⊗1)Δy
        let (mut b, w) = self.b(2);
        let a = b.slot(&[w[0]], 3);
        let (y11, y12, y2) = b.d3(w[1]);
        let o1 = b.q(a[0], y11);
        let o2 = b.q(a[1], y12);
        let o3 = b.q(a[2], y2);
        t.push((2, b.plus(&[o1, o2, o3])));

        // q⊗q⊗q on (1⊗Δ)Δx ⊗ ξ₃y
        let (mut b, w) = self.b(2);
        let (x1, x2) = b.d(w[0]);
        let (x21, x22) = b.d(x2);
        let c = b.slot(&[w[1]], 3);
        let o1 = b.q(x1, c[0]);
        let o2 = b.q(x21, c[1]);
        let o3 = b.q(x22, c[2]);
        t.push((2, b.plus(&[o1, o2, o3])));

        // ξ₃(xy)
        let (mut b, w) = self.b(2);
        let a = b.q(w[0], w[1]);
        let o = b.slot(&[a], 3);
        t.push((2, b.minus(&o)));

        // (1⊗Δ)ξ₂
        let (mut b, w) = self.b(2);
        let h = b.slot(&w, 2);
        let (c1, c2) = b.d(h[1]);
        t.push((1, b.minus(&[h[0], c1, c2])));

        // x₁y₁ ⊗ ξ₂(x₂,y₂)
        let (mut b, w) = self.b(2);
        let (x1, x2) = b.d(w[0]);
        let (y1, y2) = b.d(w[1]);
        let o = b.q(x1, y1);
        let h = b.slot(&[x2, y2], 2);
        t.push((1, b.minus(&[o, h[0], h[1]])));
        t
    }

    fn terms_d34(&self) -> Terms {
        let mut t = Terms::new();
        let (mut b, w) = self.b(1);
        let (x1, x2) = b.d(w[0]);
        let a = b.slot(&[x2], 3);
        t.push((2, b.plus(&[x1, a[0], a[1], a[2]])));

        let (mut b, w) = self.b(1);
        let a = b.slot(&w, 3);
        let (a1, a2) = b.d(a[0]);
        t.push((2, b.minus(&[a1, a2, a[1], a[2]])));

        let (mut b, w) = self.b(1);
        let a = b.slot(&w, 3);
        let (b1, b2) = b.d(a[1]);
        t.push((2, b.plus(&[a[0], b1, b2, a[2]])));

        let (mut b, w) = self.b(1);
        let a = b.slot(&w, 3);
        let (c1, c2) = b.d(a[2]);
        t.push((2, b.minus(&[a[0], a[1], c1, c2])));

        let (mut b, w) = self.b(1);
        let (x1, x2) = b.d(w[0]);
        let a = b.slot(&[x1], 3);
        t.push((2, b.plus(&[a[0], a[1], a[2], x2])));
        t
    }

    fn terms(&self, degree: usize, component: usize) -> Terms {
        match (degree, component) {
            (1, c) => self.terms_d1(c),
            (2, c) => self.terms_d2(c),
            (3, 1) => self.terms_d31(),
            (3, 2) => self.terms_d32(),
            (3, 3) => self.terms_d33(),
            (3, 4) => self.terms_d34(),
            _ => panic!("no differential d^{{{degree},{component}}}"),
        }
    }

    fn evaluate(&self, degree: usize, component: usize, inputs: &[Option<&Cochain>]) -> LinearMap {
        let sparse: Vec<Option<Arc<SparseMap>>> = inputs
            .iter()
            .map(|c| c.filter(|c| !c.is_zero()).map(|c| SparseMap::new(&c.map)))
            .collect();
        let n_in = degree + 2 - component;
        let mut acc = LinearMap::zero(&self.space, n_in, component);
        for (src, dg) in self.terms(degree, component) {
            if let Some(m) = &sparse[src] {
                dg.add_into(Some(m), &mut acc);
            }
        }
        acc
    }

    /// The matrix of `c ↦ d^{degree,component}` restricted to the cochain in
    /// position `source` (the others set to zero).
    pub fn component_matrix(&self, degree: usize, component: usize, source: usize) -> Matrix {
        let slot_in = degree - source;
        let slot_out = source + 1;
        let n_in = degree + 2 - component;
        let rows = self.space.power_dim(n_in) * self.space.power_dim(component);
        let cols = self.space.power_dim(slot_in) * self.space.power_dim(slot_out);
        let mut m = Matrix::zeros(rows, cols, self.field());
        for (src, dg) in self.terms(degree, component) {
            if src == source {
                dg.assemble_into(&mut m);
            }
        }
        m
    }

    pub fn d11(&self, f: &Cochain) -> LinearMap {
        self.evaluate(1, 1, &[Some(f)])
    }

    pub fn d12(&self, f: &Cochain) -> LinearMap {
        self.evaluate(1, 2, &[Some(f)])
    }

    /// `D₁(f) = (d^{1,1}f, −d^{1,2}f)`.
    pub fn d1(&self, f: &Cochain) -> (Cochain, Cochain) {
        let m = self.field().one().neg_ref();
        (Cochain::new(2, 1, self.d11(f)), Cochain::new(2, 2, self.d12(f).scale(&m)))
    }

    pub fn d21(&self, eta1: &Cochain, eta2: &Cochain) -> LinearMap {
        self.evaluate(2, 1, &[Some(eta1), Some(eta2)])
    }

    pub fn d22(&self, eta1: &Cochain, eta2: &Cochain) -> LinearMap {
        self.evaluate(2, 2, &[Some(eta1), Some(eta2)])
    }

    pub fn d23(&self, eta2: &Cochain) -> LinearMap {
        self.evaluate(2, 3, &[None, Some(eta2)])
    }

    pub fn d2(&self, eta1: &Cochain, eta2: &Cochain) -> (Cochain, Cochain, Cochain) {
        (
            Cochain::new(3, 1, self.d21(eta1, eta2)),
            Cochain::new(3, 2, self.d22(eta1, eta2)),
            Cochain::new(3, 3, self.d23(eta2)),
        )
    }

    /// `d^{3,1}(ξ₁, 0, 0)`.
    pub fn d31(&self, xi1: &Cochain) -> LinearMap {
        self.evaluate(3, 1, &[Some(xi1), None, None])
    }

    pub fn d3(&self, xi1: &Cochain, xi2: &Cochain, xi3: &Cochain) -> Result<[Cochain; 4], CohomologyError> {
        if !self.cocommutative {
            return Err(CohomologyError::NotCocommutative);
        }
        Ok(self.d3_unchecked(xi1, xi2, xi3))
    }

    /// [`ShelfComplex::d3`] without the cocommutativity check.
    pub fn d3_unchecked(&self, xi1: &Cochain, xi2: &Cochain, xi3: &Cochain) -> [Cochain; 4] {
        let ins = [Some(xi1), Some(xi2), Some(xi3)];
        [1, 2, 3, 4].map(|c| Cochain::new(4, c, self.evaluate(3, c, &ins)))
    }

    /// `D′₁`: `d^{1,1}` on a basis of `ker d^{1,2}`.
    pub fn restricted_d1(&self) -> DifferentialMatrix {
        let k = rank_kernel_matrix(&self.component_matrix(1, 2, 0)).kernel;
        let d11 = self.component_matrix(1, 1, 0);
        let cols: Vec<Vec<FieldElement>> = k.iter().map(|v| d11.mul_vec(v)).collect();
        DifferentialMatrix {
            source_dim: k.len(),
            target_dim: d11.rows,
            matrix: Matrix::from_columns(&cols, d11.rows, self.field()),
            source_basis: Some(k),
        }
    }

    /// `D′ₙ`: `d^{n,1}` on `C^{n,1}` with the other components zero; `n` is
    /// 1, 2 or 3.
    pub fn restricted(&self, n: usize) -> Result<DifferentialMatrix, CohomologyError> {
        match n {
            1 => Ok(self.restricted_d1()),
            2 | 3 => {
                if n == 3 && !self.cocommutative {
                    return Err(CohomologyError::NotCocommutative);
                }
                let m = self.component_matrix(n, 1, 0);
                Ok(DifferentialMatrix {
                    source_dim: m.cols,
                    target_dim: m.rows,
                    matrix: m,
                    source_basis: None,
                })
            }
            _ => Err(CohomologyError::Degree("1, 2 and 3")),
        }
    }

    /// The restricted differentials with the `C^{3,2}` component kept:
    /// `η₁ ↦ (d^{2,1}, d^{2,2})(η₁, 0)` for `n = 2` and
    /// `(ξ₁, ξ₂) ↦ d^{3,1}(ξ₁, ξ₂, 0)` for `n = 3`.
    pub fn coupled_restricted(&self, n: usize) -> Result<DifferentialMatrix, CohomologyError> {
        let m = match n {
            2 => self.component_matrix(2, 1, 0).vstack(&self.component_matrix(2, 2, 0)),
            3 => {
                if !self.cocommutative {
                    return Err(CohomologyError::NotCocommutative);
                }
                hstack(&self.component_matrix(3, 1, 0), &self.component_matrix(3, 1, 1))
            }
            _ => return Err(CohomologyError::Degree("2 and 3")),
        };
        Ok(DifferentialMatrix {
            source_dim: m.cols,
            target_dim: m.rows,
            matrix: m,
            source_basis: None,
        })
    }

    /// Dimensions of `Z^{j,1}`, `B^{j,1}` and `H^{j,1}` for `j` = 2 or 3.
    ///
    /// `h` is `dim Z − dim(B ∩ Z)`, which is `dim Z − dim B` whenever the
    /// restricted sequence is a complex at `j`.
    pub fn cohomology_dim(&self, j: usize) -> Result<CohomologyDims, CohomologyError> {
        if !(2..=3).contains(&j) {
            return Err(CohomologyError::Degree("2 and 3"));
        }
        let dj = self.restricted(j)?;
        let prev = self.restricted(j - 1)?;
        let z = dj.source_dim - dj.matrix.rank();
        let b = prev.matrix.rank();
        let leak = dj.matrix.mul(&prev.matrix).expect("shapes").rank();
        Ok(CohomologyDims { z, b, h: z - (b - leak) })
    }

    /// A basis of `Z^{j,1}` as maps.
    pub fn cocycle_basis(&self, j: usize) -> Result<Vec<Cochain>, CohomologyError> {
        if !(2..=3).contains(&j) {
            return Err(CohomologyError::Degree("2 and 3"));
        }
        let dj = self.restricted(j)?;
        Ok(rank_kernel_matrix(&dj.matrix)
            .kernel
            .iter()
            .map(|v| Cochain::new(j, 1, LinearMap::from_vector(&self.space, j, 1, v)))
            .collect())
    }

    /// Whether a cocycle `c ∈ C^{j,1}` lies in the image of `D′_{j−1}`.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool, CohomologyError> {
        if c.i != 1 || !(2..=3).contains(&c.n) {
            return Err(CohomologyError::Degree("2 and 3"));
        }
        let v = c.map.to_vector();
        let dj = self.restricted(c.n)?;
        if !dj.matrix.mul_vec(&v).iter().all(FieldElement::is_zero) {
            return Err(CohomologyError::NotACocycle);
        }
        let image = rank_kernel_matrix(&self.restricted(c.n - 1)?.matrix).image;
        Ok(subspace_membership(&v, &image))
    }
}

fn hstack(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.rows, b.rows);
    let mut m = Matrix::zeros(a.rows, a.cols + b.cols, a.field);
    for r in 0..a.rows {
        for c in 0..a.cols {
            m.set(r, c, a.get(r, c).clone());
        }
        for c in 0..b.cols {
            m.set(r, a.cols + c, b.get(r, c).clone());
        }
    }
    m
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeTrial {
    pub kind: &'static str,
    /// Which of the four components of `D₃D₂(η₁, η₂)` vanish.
    pub components_zero: [bool; 4],
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub trials: Vec<ProbeTrial>,
}

impl ProbeReport {
    pub fn summary(&self, kind: &str) -> [usize; 4] {
        let mut out = [0; 4];
        for t in self.trials.iter().filter(|t| t.kind == kind) {
            for (k, z) in t.components_zero.iter().enumerate() {
                out[k] += *z as usize;
            }
        }
        out
    }
}

/// Evaluates `D₃D₂(η₁, η₂)` on the zero pair, on `(η₁, 0)`, on pairs with
/// symmetric `η₂` and on unrestricted random pairs.
pub fn probe_full_complex(s: &ShelfStructure, trials: usize, seed: u64) -> Result<ProbeReport, CohomologyError> {
    let cx = ShelfComplex::new(s);
    if !cx.cocommutative {
        return Err(CohomologyError::NotCocommutative);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = &s.coalgebra.space;
    let swap = crate::tensorspace::permutation_map(&[1, 0], space);
    let mut out = Vec::new();
    let mut run = |kind: &'static str, e1: Cochain, e2: Cochain| {
        let (x1, x2, x3) = cx.d2(&e1, &e2);
        let d = cx.d3_unchecked(&x1, &x2, &x3);
        out.push(ProbeTrial {
            kind,
            components_zero: [0, 1, 2, 3].map(|k| d[k].is_zero()),
        });
    };
    run("zero", Cochain::zero(s, 2, 1), Cochain::zero(s, 2, 2));
    for _ in 0..trials {
        let e1 = Cochain::random(s, 2, 1, &mut rng);
        run("eta1_only", e1, Cochain::zero(s, 2, 2));
        let e1 = Cochain::random(s, 2, 1, &mut rng);
        let h = LinearMap::random(space, 1, 2, &mut rng);
        let sym = h.add(&crate::tensorspace::compose(&swap, &h).expect("shape"));
        run("symmetric_eta2", e1, Cochain::new(2, 2, sym));
        let e1 = Cochain::random(s, 2, 1, &mut rng);
        let e2 = Cochain::random(s, 2, 2, &mut rng);
        run("random", e1, e2);
    }
    Ok(ProbeReport { trials: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{build_augmented, Coalgebra};
    use crate::quandlecoh::{make_rack, RackKind};
    use crate::shelfmap::{compat_defect, q_from_rack, sd_defect, Provenance};
    use crate::tensorspace::{compose, permutation_map};

    fn w_r3(p: u64) -> ShelfStructure {
        q_from_rack(&make_rack(&RackKind::Dihedral(3)).unwrap(), FieldSpec::Prime(p)).unwrap()
    }

    /// A structure carrying an arbitrary `q` and `Δ`, bypassing the axioms.
    fn raw(q: LinearMap, delta: LinearMap) -> ShelfStructure {
        let space = q.space.clone();
        let eps = LinearMap::zero(&space, 1, 0);
        let coalgebra = Coalgebra::unchecked(delta, eps, None).unwrap();
        let counit = crate::shelfmap::check_counit_behavior(&q, &coalgebra).unwrap();
        ShelfStructure {
            coalgebra,
            q,
            provenance: Provenance::Explicit,
            compatible: false,
            counit,
        }
    }

    fn coassoc_defect(delta: &LinearMap) -> LinearMap {
        let s = delta.space.clone();
        let id = LinearMap::identity(&s, 1);
        let l = compose(&crate::tensorspace::kron(delta, &id).unwrap(), delta).unwrap();
        let r = compose(&crate::tensorspace::kron(&id, delta).unwrap(), delta).unwrap();
        l.sub(&r)
    }

    #[test]
    fn d1_of_identity() {
        let s = w_r3(3);
        let cx = ShelfComplex::new(&s);
        let id = Cochain::new(1, 1, LinearMap::identity(&s.coalgebra.space, 1));
        assert_eq!(cx.d11(&id), s.q);
        assert_eq!(cx.d12(&id), s.coalgebra.delta);
    }

    #[test]
    fn d2_after_d1_vanishes() {
        let s = w_r3(7);
        let cx = ShelfComplex::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let f = Cochain::random(&s, 1, 1, &mut rng);
            let (e1, e2) = cx.d1(&f);
            let (a, b, c) = cx.d2(&e1, &e2);
            assert!(a.is_zero() && b.is_zero() && c.is_zero());
        }
    }

    #[test]
    fn unsigned_pair_is_not_a_chain_map() {
        let s = w_r3(7);
        let cx = ShelfComplex::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = Cochain::random(&s, 1, 1, &mut rng);
        let e1 = Cochain::new(2, 1, cx.d11(&f));
        let e2 = Cochain::new(2, 2, cx.d12(&f));
        let (a, b, c) = cx.d2(&e1, &e2);
        assert!(!(a.is_zero() && b.is_zero() && c.is_zero()));
    }

    #[test]
    fn degree_three_syzygies() {
        // plugging the defects of an arbitrary q and a symmetric Δ into d³ gives 0
        let f = FieldSpec::Prime(7);
        let space = BasedSpace::numbered(3, f);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let swap = permutation_map(&[1, 0], &space);
        for _ in 0..2 {
            let q = LinearMap::random(&space, 2, 1, &mut rng);
            let h = LinearMap::random(&space, 1, 2, &mut rng);
            let delta = h.add(&compose(&swap, &h).unwrap());
            let s = raw(q.clone(), delta.clone());
            let cx = ShelfComplex::new(&s);
            let xi1 = Cochain::new(3, 1, sd_defect(&q, &s.coalgebra));
            let xi2 = Cochain::new(3, 2, compat_defect(&q, &s.coalgebra));
            let xi3 = Cochain::new(3, 3, coassoc_defect(&delta));
            assert!(!xi3.is_zero());
            let d = cx.d3(&xi1, &xi2, &xi3).unwrap();
            for (k, c) in d.iter().enumerate() {
                assert!(c.is_zero(), "component {}", k + 1);
            }
        }
    }

    #[test]
    fn d2_linearizes_the_defects() {
        // S(q + tη₁, Δ + tη₂) − S(q, Δ) has linear term d^{2,1}(η₁, η₂) over 𝔽_p
        let f = FieldSpec::Prime(11);
        let space = BasedSpace::numbered(2, f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = LinearMap::random(&space, 2, 1, &mut rng);
        let delta = LinearMap::random(&space, 1, 2, &mut rng);
        let e1 = LinearMap::random(&space, 2, 1, &mut rng);
        let e2 = LinearMap::random(&space, 1, 2, &mut rng);
        let s = raw(q.clone(), delta.clone());
        let cx = ShelfComplex::new(&s);
        let lin = cx.d21(&Cochain::new(2, 1, e1.clone()), &Cochain::new(2, 2, e2.clone()));
        let lin2 = cx.d22(&Cochain::new(2, 1, e1.clone()), &Cochain::new(2, 2, e2.clone()));
        // finite differences at t = ±1, ±2 isolate the linear term of a quartic
        let at = |t: i64| {
            let tt = f.from_i64(t);
            let q2 = q.add(&e1.scale(&tt));
            let d2 = delta.add(&e2.scale(&tt));
            let c = Coalgebra::unchecked(d2, LinearMap::zero(&space, 1, 0), None).unwrap();
            (sd_defect(&q2, &c), compat_defect(&q2, &c))
        };
        let (s1, c1) = at(1);
        let (sm1, cm1) = at(-1);
        let (s2, c2) = at(2);
        let (sm2, cm2) = at(-2);
        // f′(0) = [8(f(1) − f(−1)) − (f(2) − f(−2))] / 12 for degree ≤ 4
        let twelfth = f.from_i64(12).inv().unwrap();
        let eight = f.from_i64(8);
        let deriv = |a: &LinearMap, b: &LinearMap, c: &LinearMap, d: &LinearMap| a.sub(b).scale(&eight).sub(&c.sub(d)).scale(&twelfth);
        assert_eq!(deriv(&s1, &sm1, &s2, &sm2), lin);
        assert_eq!(deriv(&c1, &cm1, &c2, &cm2), lin2);
    }

    #[test]
    fn restricted_dims() {
        let s = w_r3(5);
        let cx = ShelfComplex::new(&s);
        let d2 = cx.restricted(2).unwrap();
        assert_eq!((d2.source_dim, d2.target_dim), (64, 256));
        let d1 = cx.restricted(1).unwrap();
        let prod = d2.matrix.mul(&d1.matrix).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn coboundaries_are_detected() {
        // on a set-like coalgebra only f = 0 satisfies d^{1,2}f = 0
        let s = w_r3(3);
        let cx = ShelfComplex::new(&s);
        assert_eq!(cx.restricted(1).unwrap().source_dim, 0);
        let dims = cx.cohomology_dim(2).unwrap();
        assert_eq!((dims.b, dims.h), (0, dims.z));

        let g = crate::liecoh::sl2_type(FieldSpec::Rationals).unwrap();
        let s = crate::shelfmap::q_from_lie(&g).unwrap();
        let cx = ShelfComplex::new(&s);
        let d1 = cx.restricted(1).unwrap();
        assert!(d1.source_dim > 0);
        let v = d1.matrix.column(0);
        let c = Cochain::new(2, 1, LinearMap::from_vector(&s.coalgebra.space, 2, 1, &v));
        assert!(cx.is_coboundary(&c).unwrap());
        assert!(cx.is_coboundary(&Cochain::zero(&s, 2, 1)).unwrap());
    }

    #[test]
    fn shape_errors() {
        let s = build_augmented(1, FieldSpec::Rationals);
        assert!(Cochain::try_new(2, 1, LinearMap::zero(&s.space, 1, 1)).is_err());
        assert!(Cochain::try_new(2, 2, LinearMap::zero(&s.space, 1, 2)).is_ok());
    }
}
